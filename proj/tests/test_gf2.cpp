#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tsc/gf2.hpp"
#include "tsc/pauli.hpp"

#include <complex>
#include <random>
#include <set>
#include <vector>

using namespace tsc;

namespace {

BitVector bv(std::initializer_list<int> bits) {
  BitVector v(bits.size());
  std::size_t i = 0;
  for (int b : bits)
    v.set(i++, b);
  return v;
}

BitMatrix from_rows(std::size_t cols,
                    std::initializer_list<std::initializer_list<int>> rows) {
  BitMatrix m(cols);
  for (auto r : rows) {
    BitVector v(cols);
    std::size_t i = 0;
    for (int b : r)
      v.set(i++, b);
    m.add_row(std::move(v));
  }
  return m;
}

BitMatrix random_matrix(std::mt19937& rng, std::size_t rows,
                        std::size_t cols) {
  BitMatrix m(cols);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < rows; ++i) {
    BitVector v(cols);
    for (std::size_t j = 0; j < cols; ++j)
      if (coin(rng))
        v.set(j);
    m.add_row(std::move(v));
  }
  return m;
}

// Brute-force oracles ------------------------------------------------

// Rank via row-space enumeration: the span of up to `rows` vectors is
// enumerated by all subsets; rank = log2 of the span size.
std::size_t rank_oracle(const BitMatrix& m) {
  std::set<std::vector<bool>> span;
  std::size_t rows = m.n_rows();
  for (std::size_t mask = 0; mask < (std::size_t(1) << rows); ++mask) {
    BitVector acc(m.n_cols());
    for (std::size_t i = 0; i < rows; ++i)
      if ((mask >> i) & 1)
        acc ^= m.row(i);
    std::vector<bool> key;
    for (std::size_t j = 0; j < m.n_cols(); ++j)
      key.push_back(acc.get(j));
    span.insert(key);
  }
  std::size_t r = 0;
  while ((std::size_t(1) << r) < span.size())
    ++r;
  return r;
}

BitVector vec_from_mask(std::size_t mask, std::size_t n) {
  BitVector v(n);
  for (std::size_t j = 0; j < n; ++j)
    if ((mask >> j) & 1)
      v.set(j);
  return v;
}

bool annihilates(const BitMatrix& m, const BitVector& v) {
  for (std::size_t i = 0; i < m.n_rows(); ++i)
    if (m.row(i).dot(v))
      return false;
  return true;
}

// Dense Pauli-matrix oracle for the symplectic product: builds the two
// operators as 2^n x 2^n complex matrices and compares the explicit sign
// of u v u^-1 v^-1 against the GF(2) value.
using CMat = std::vector<std::vector<std::complex<double>>>;

CMat kron(const CMat& a, const CMat& b) {
  std::size_t na = a.size(), nb = b.size();
  CMat out(na * nb, std::vector<std::complex<double>>(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
  return out;
}

CMat matmul(const CMat& a, const CMat& b) {
  std::size_t n = a.size();
  CMat out(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      auto aik = a[i][k];
      if (aik == std::complex<double>(0, 0))
        continue;
      for (std::size_t j = 0; j < n; ++j)
        out[i][j] += aik * b[k][j];
    }
  return out;
}

CMat pauli_matrix(const PauliVec& p) {
  const CMat I = {{1, 0}, {0, 1}};
  const CMat X = {{0, 1}, {1, 0}};
  const CMat Z = {{1, 0}, {0, -1}};
  const CMat Y = {{0, std::complex<double>(0, -1)},
                  {std::complex<double>(0, 1), 0}};
  CMat out = {{1}};
  for (std::size_t q = 0; q < p.n(); ++q) {
    bool x = p.x.get(q), z = p.z.get(q);
    const CMat& f = x && z ? Y : x ? X : z ? Z : I;
    out = kron(out, f);
  }
  return out;
}

int comm_oracle(const PauliVec& u, const PauliVec& v) {
  CMat mu = pauli_matrix(u), mv = pauli_matrix(v);
  CMat uv = matmul(mu, mv);
  CMat vu = matmul(mv, mu);
  // uv = s * vu with s = +-1 for Pauli operators
  for (std::size_t i = 0; i < uv.size(); ++i)
    for (std::size_t j = 0; j < uv.size(); ++j)
      if (std::abs(vu[i][j]) > 1e-9) {
        double s = (uv[i][j] / vu[i][j]).real();
        return s > 0 ? 0 : 1;
      }
  return 0;
}

} // namespace

TEST_CASE("symplectic product basic pairs") {
  PauliVec x0(1), z0(1);
  x0.x.set(0);
  z0.z.set(0);
  CHECK(symplectic_product(x0, z0) == 1);
  CHECK(symplectic_product(x0, x0) == 0);
  CHECK(symplectic_product(z0, z0) == 0);
}

TEST_CASE("symplectic product matches the dense matrix oracle") {
  std::mt19937 rng(11);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 40; ++trial) {
    PauliVec u(6), v(6);
    for (std::size_t q = 0; q < 6; ++q) {
      if (coin(rng))
        u.x.set(q);
      if (coin(rng))
        u.z.set(q);
      if (coin(rng))
        v.x.set(q);
      if (coin(rng))
        v.z.set(q);
    }
    CHECK(symplectic_product(u, v) == comm_oracle(u, v));
  }
}

TEST_CASE("symplectic product is bilinear and symmetric") {
  std::mt19937 rng(5);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    PauliVec u(9), v(9), w(9);
    for (std::size_t q = 0; q < 9; ++q) {
      if (coin(rng)) u.x.set(q);
      if (coin(rng)) u.z.set(q);
      if (coin(rng)) v.x.set(q);
      if (coin(rng)) v.z.set(q);
      if (coin(rng)) w.x.set(q);
      if (coin(rng)) w.z.set(q);
    }
    CHECK(symplectic_product(u, v) == symplectic_product(v, u));
    CHECK(symplectic_product(u ^ w, v) ==
          (symplectic_product(u, v) ^ symplectic_product(w, v)));
  }
}

TEST_CASE("rank of identity and zero matrices") {
  BitMatrix id(4, 4);
  for (int i = 0; i < 4; ++i)
    id.row(i).set(i);
  CHECK(id.rank() == 4);
  BitMatrix zero(3, 5);
  CHECK(zero.rank() == 0);
}

TEST_CASE("rank matches span enumeration on all 3x3 matrices") {
  for (std::size_t bits = 0; bits < 512; ++bits) {
    BitMatrix m(3);
    for (int i = 0; i < 3; ++i) {
      BitVector v(3);
      for (int j = 0; j < 3; ++j)
        if ((bits >> (3 * i + j)) & 1)
          v.set(j);
      m.add_row(std::move(v));
    }
    CHECK(m.rank() == rank_oracle(m));
  }
}

TEST_CASE("kernel basis: identity and zero rows") {
  BitMatrix id(3, 3);
  for (int i = 0; i < 3; ++i)
    id.row(i).set(i);
  CHECK(id.kernel_basis().n_rows() == 0);
  BitMatrix zero(1, 3);
  CHECK(zero.kernel_basis().n_rows() == 3);
}

TEST_CASE("kernel basis: exhaustive check on random 5x8") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    BitMatrix m = random_matrix(rng, 5, 8);
    BitMatrix ker = m.kernel_basis();
    CHECK(ker.n_rows() + m.rank() == 8);
    for (const auto& kr : ker.rows()) {
      // Every kernel row is annihilated.
      BitVector img(5);
      for (std::size_t i = 0; i < 5; ++i)
        if (m.row(i).dot(kr))
          img.set(i);
      CHECK(!img.any());
    }
    // Exhaustive: count of annihilated vectors equals 2^dim(kernel).
    std::size_t count = 0;
    for (std::size_t mask = 0; mask < 256; ++mask)
      if (annihilates(m, vec_from_mask(mask, 8)))
        ++count;
    CHECK(count == (std::size_t(1) << ker.n_rows()));
  }
}

TEST_CASE("solve: identity, zero rhs, inconsistent") {
  BitMatrix id(4, 4);
  for (int i = 0; i < 4; ++i)
    id.row(i).set(i);
  BitVector b = bv({1, 0, 1, 1});
  auto sol = id.solve(b);
  REQUIRE(sol.has_value());
  CHECK(sol->particular == b);
  CHECK(sol->kernel_rows.empty());

  BitVector zero(4);
  auto sol0 = id.solve(zero);
  REQUIRE(sol0.has_value());
  CHECK(!sol0->particular.any());

  // b outside the column space
  BitMatrix m = from_rows(2, {{1, 0}, {1, 0}});
  auto bad = m.solve(bv({1, 0}));
  CHECK(!bad.has_value());
}

TEST_CASE("solve: soundness and completeness vs exhaustive search") {
  std::mt19937 rng(31);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t cols = 1 + std::size_t(rng() % 12);
    std::size_t rows = 1 + std::size_t(rng() % 8);
    BitMatrix m = random_matrix(rng, rows, cols);
    BitVector b(rows);
    for (std::size_t i = 0; i < rows; ++i)
      if (coin(rng))
        b.set(i);
    bool exists = false;
    for (std::size_t mask = 0; mask < (std::size_t(1) << cols) && !exists;
         ++mask) {
      BitVector x = vec_from_mask(mask, cols);
      BitVector img(rows);
      for (std::size_t i = 0; i < rows; ++i)
        if (m.row(i).dot(x))
          img.set(i);
      exists = img == b;
    }
    auto sol = m.solve(b);
    CHECK(sol.has_value() == exists);
    if (sol) {
      BitVector img(rows);
      for (std::size_t i = 0; i < rows; ++i)
        if (m.row(i).dot(sol->particular))
          img.set(i);
      CHECK(img == b);
    }
  }
}

TEST_CASE("rank-nullity holds for random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t rows = 1 + rng() % 10, cols = 1 + rng() % 14;
    BitMatrix m = random_matrix(rng, rows, cols);
    CHECK(m.rank() + m.kernel_basis().n_rows() == cols);
  }
}

TEST_CASE("left kernel spans exactly the vanishing row combinations") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 9;
    BitMatrix m = random_matrix(rng, rows, cols);
    BitMatrix lk = m.left_kernel_basis();
    CHECK(lk.n_rows() == rows - m.rank());
    for (const auto& c : lk.rows()) {
      BitVector acc(cols);
      for (std::size_t i = 0; i < rows; ++i)
        if (c.get(i))
          acc ^= m.row(i);
      CHECK(!acc.any());
    }
  }
}

TEST_CASE("row space helpers") {
  BitMatrix a = from_rows(3, {{1, 1, 0}, {0, 1, 1}});
  BitMatrix b = from_rows(3, {{1, 0, 1}, {1, 1, 0}});
  CHECK(BitMatrix::same_row_space(a, b));
  CHECK(a.row_space_contains(bv({1, 0, 1})));
  CHECK(!a.row_space_contains(bv({1, 0, 0})));
}

TEST_CASE("flat and dual layouts agree with the symplectic product") {
  std::mt19937 rng(3);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 30; ++trial) {
    PauliVec u(7), v(7);
    for (std::size_t q = 0; q < 7; ++q) {
      if (coin(rng)) u.x.set(q);
      if (coin(rng)) u.z.set(q);
      if (coin(rng)) v.x.set(q);
      if (coin(rng)) v.z.set(q);
    }
    CHECK(from_flat(to_flat(u)) == u);
    CHECK(int(to_flat(u).dot(dual_flat(v))) == symplectic_product(u, v));
  }
}
