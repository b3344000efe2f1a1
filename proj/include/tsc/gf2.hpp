#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tsc {

/// Packed GF(2) vector. XOR is the group operation; the length is fixed at
/// construction time.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

  std::size_t size() const { return len_; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool v = true) {
    if (v)
      words_[i >> 6] |= uint64_t(1) << (i & 63);
    else
      words_[i >> 6] &= ~(uint64_t(1) << (i & 63));
  }
  void flip(std::size_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  /// Parity of the AND with another vector of equal length.
  bool dot(const BitVector& o) const;

  std::size_t popcount() const;
  bool any() const;
  bool is_zero() const { return !any(); }

  /// Index of the lowest set bit, or -1 if zero.
  long first_set() const;

  bool operator==(const BitVector& o) const = default;

  /// Lexicographic order with bit 0 most significant; used for
  /// deterministic tie-breaking.
  bool lex_less(const BitVector& o) const;

  const std::vector<uint64_t>& words() const { return words_; }

private:
  std::size_t len_ = 0;
  std::vector<uint64_t> words_;
};

class BitMatrix;

struct Gf2Solution {
  BitVector particular;
  // Kernel rows are returned via BitMatrix, declared below.
  std::vector<BitVector> kernel_rows;
};

/// Dense bit-packed GF(2) matrix. Rows all share one length.
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t n_rows, std::size_t n_cols)
      : cols_(n_cols), rows_(n_rows, BitVector(n_cols)) {}
  explicit BitMatrix(std::size_t n_cols) : cols_(n_cols) {}

  std::size_t n_rows() const { return rows_.size(); }
  std::size_t n_cols() const { return cols_; }

  BitVector& row(std::size_t i) { return rows_[i]; }
  const BitVector& row(std::size_t i) const { return rows_[i]; }
  void add_row(BitVector v);

  /// GF(2) row rank.
  std::size_t rank() const;

  /// Reduced row echelon form, pivots chosen left to right.
  BitMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;

  /// Basis of {v : M v = 0}, one row per basis vector. Rows are ordered by
  /// their free column and fully determined by the RREF, so the basis is
  /// reproducible.
  BitMatrix kernel_basis() const;

  /// Basis of {c : c^T M = 0} (coefficient vectors of vanishing row
  /// combinations).
  BitMatrix left_kernel_basis() const;

  /// Solves M x = b. Returns the particular solution with all free
  /// variables zero together with a kernel basis, or nullopt when b is
  /// outside the column space.
  std::optional<Gf2Solution> solve(const BitVector& b) const;

  bool row_space_contains(const BitVector& v) const;
  static bool same_row_space(const BitMatrix& a, const BitMatrix& b);

  BitMatrix transposed() const;

  const std::vector<BitVector>& rows() const { return rows_; }

private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Incremental echelon form: feed rows one by one, query rank and
/// membership of the accumulated row space. Rows are reduced against the
/// pivots seen so far; insertion order does not change rank answers.
class Gf2Echelon {
public:
  explicit Gf2Echelon(std::size_t cols) : cols_(cols) {}

  /// Returns true if the row enlarged the span.
  bool add_row(BitVector v);

  /// Reduces v against the current pivots.
  BitVector reduce(BitVector v) const;

  bool contains(const BitVector& v) const { return reduce(v).is_zero(); }
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

private:
  std::size_t cols_;
  std::vector<BitVector> rows_;        // echelon rows, pivot cols ascending
  std::vector<std::size_t> pivots_;
};

} // namespace tsc
