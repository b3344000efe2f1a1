#include "tsc/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace tsc {

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.len_ != len_)
    throw std::invalid_argument("BitVector xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] ^= o.words_[i];
  return *this;
}

bool BitVector::dot(const BitVector& o) const {
  if (o.len_ != len_)
    throw std::invalid_argument("BitVector dot: length mismatch");
  unsigned acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    acc ^= std::popcount(words_[i] & o.words_[i]) & 1u;
  return acc & 1u;
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (uint64_t w : words_)
    n += std::popcount(w);
  return n;
}

bool BitVector::any() const {
  for (uint64_t w : words_)
    if (w)
      return true;
  return false;
}

long BitVector::first_set() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i])
      return long(i * 64 + std::countr_zero(words_[i]));
  return -1;
}

bool BitVector::lex_less(const BitVector& o) const {
  // Bit 0 is most significant: the vector whose first differing bit is 0
  // sorts first.
  for (std::size_t i = 0; i < words_.size() && i < o.words_.size(); ++i) {
    uint64_t diff = words_[i] ^ o.words_[i];
    if (diff) {
      int bit = std::countr_zero(diff);
      return !((words_[i] >> bit) & 1u);
    }
  }
  return len_ < o.len_;
}

void BitMatrix::add_row(BitVector v) {
  if (v.size() != cols_)
    throw std::invalid_argument("BitMatrix add_row: width mismatch");
  rows_.push_back(std::move(v));
}

std::size_t BitMatrix::rank() const {
  std::vector<BitVector> work = rows_;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < work.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < work.size() && !work[pivot].get(c))
      ++pivot;
    if (pivot == work.size())
      continue;
    std::swap(work[r], work[pivot]);
    for (std::size_t i = r + 1; i < work.size(); ++i)
      if (work[i].get(c))
        work[i] ^= work[r];
    ++r;
  }
  return r;
}

BitMatrix BitMatrix::rref(std::vector<std::size_t>* pivots) const {
  BitMatrix out = *this;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < out.rows_.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < out.rows_.size() && !out.rows_[pivot].get(c))
      ++pivot;
    if (pivot == out.rows_.size())
      continue;
    std::swap(out.rows_[r], out.rows_[pivot]);
    for (std::size_t i = 0; i < out.rows_.size(); ++i)
      if (i != r && out.rows_[i].get(c))
        out.rows_[i] ^= out.rows_[r];
    piv.push_back(c);
    ++r;
  }
  out.rows_.resize(r, BitVector(cols_));
  if (pivots)
    *pivots = piv;
  return out;
}

BitMatrix BitMatrix::kernel_basis() const {
  std::vector<std::size_t> piv;
  BitMatrix R = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : piv)
    is_pivot[c] = true;
  BitMatrix out(cols_);
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f])
      continue;
    BitVector v(cols_);
    v.set(f);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (R.rows_[i].get(f))
        v.set(piv[i]);
    out.add_row(std::move(v));
  }
  return out;
}

BitMatrix BitMatrix::left_kernel_basis() const {
  // Eliminate rows while tracking the applied combinations in an identity
  // block; combinations that zero out a row span the left kernel.
  std::size_t m = rows_.size();
  std::vector<BitVector> work = rows_;
  std::vector<BitVector> track(m, BitVector(m));
  for (std::size_t i = 0; i < m; ++i)
    track[i].set(i);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < m; ++c) {
    std::size_t pivot = r;
    while (pivot < m && !work[pivot].get(c))
      ++pivot;
    if (pivot == m)
      continue;
    std::swap(work[r], work[pivot]);
    std::swap(track[r], track[pivot]);
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && work[i].get(c)) {
        work[i] ^= work[r];
        track[i] ^= track[r];
      }
    ++r;
  }
  BitMatrix combos(m);
  for (std::size_t i = r; i < m; ++i)
    combos.add_row(track[i]);
  // Canonical form for reproducibility.
  return combos.rref();
}

std::optional<Gf2Solution> BitMatrix::solve(const BitVector& b) const {
  if (b.size() != rows_.size())
    throw std::invalid_argument("BitMatrix solve: rhs length mismatch");
  std::size_t m = rows_.size();
  std::vector<BitVector> work = rows_;
  BitVector rhs = b;
  std::vector<std::size_t> piv;
  std::vector<std::size_t> piv_row;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < m; ++c) {
    std::size_t pivot = r;
    while (pivot < m && !work[pivot].get(c))
      ++pivot;
    if (pivot == m)
      continue;
    std::swap(work[r], work[pivot]);
    {
      bool t = rhs.get(r);
      rhs.set(r, rhs.get(pivot));
      rhs.set(pivot, t);
    }
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && work[i].get(c)) {
        work[i] ^= work[r];
        rhs.set(i, rhs.get(i) ^ rhs.get(r));
      }
    piv.push_back(c);
    ++r;
  }
  // Rows past the rank are fully reduced to zero; a surviving rhs bit
  // means b is outside the column space.
  for (std::size_t i = r; i < m; ++i)
    if (rhs.get(i))
      return std::nullopt;
  BitVector particular(cols_);
  for (std::size_t i = 0; i < piv.size(); ++i)
    if (rhs.get(i))
      particular.set(piv[i]);
  // Kernel from the same elimination.
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : piv)
    is_pivot[c] = true;
  Gf2Solution sol;
  sol.particular = std::move(particular);
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f])
      continue;
    BitVector v(cols_);
    v.set(f);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (work[i].get(f))
        v.set(piv[i]);
    sol.kernel_rows.push_back(std::move(v));
  }
  return sol;
}

bool BitMatrix::row_space_contains(const BitVector& v) const {
  Gf2Echelon ech(cols_);
  for (const auto& r : rows_)
    ech.add_row(r);
  return ech.contains(v);
}

bool BitMatrix::same_row_space(const BitMatrix& a, const BitMatrix& b) {
  if (a.n_cols() != b.n_cols())
    return false;
  Gf2Echelon ea(a.n_cols());
  for (const auto& r : a.rows())
    ea.add_row(r);
  for (const auto& r : b.rows())
    if (!ea.contains(r))
      return false;
  Gf2Echelon eb(b.n_cols());
  for (const auto& r : b.rows())
    eb.add_row(r);
  for (const auto& r : a.rows())
    if (!eb.contains(r))
      return false;
  return true;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix out(cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (rows_[i].get(j))
        out.row(j).set(i);
  return out;
}

bool Gf2Echelon::add_row(BitVector v) {
  v = reduce(std::move(v));
  long p = v.first_set();
  if (p < 0)
    return false;
  // Insert keeping pivot columns ascending.
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < std::size_t(p))
    ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, std::size_t(p));
  return true;
}

BitVector Gf2Echelon::reduce(BitVector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v.get(pivots_[i]))
      v ^= rows_[i];
  return v;
}

} // namespace tsc
