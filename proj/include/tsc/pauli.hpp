#pragma once

#include "tsc/gf2.hpp"

namespace tsc {

/// Projective Pauli operator on n qubits as a symplectic bit pair: x bits
/// for X factors, z bits for Z factors, both set meaning Y. Phases are not
/// tracked here.
struct PauliVec {
  BitVector x, z;

  PauliVec() = default;
  explicit PauliVec(std::size_t n) : x(n), z(n) {}

  std::size_t n() const { return x.size(); }
  bool is_identity() const { return !x.any() && !z.any(); }

  PauliVec& operator^=(const PauliVec& o) {
    x ^= o.x;
    z ^= o.z;
    return *this;
  }
  friend PauliVec operator^(PauliVec a, const PauliVec& b) {
    a ^= b;
    return a;
  }
  bool operator==(const PauliVec& o) const = default;

  std::size_t weight() const;
};

/// Symplectic product: 0 when the operators commute, 1 when they
/// anticommute.
int symplectic_product(const PauliVec& u, const PauliVec& v);

/// Commutator sign [u, v] = u v u^-1 v^-1 as +1 / -1.
inline int comm_sign(const PauliVec& u, const PauliVec& v) {
  return symplectic_product(u, v) ? -1 : 1;
}

/// Flat 2n-bit layout (x half, then z half); rows of group matrices use it.
BitVector to_flat(const PauliVec& p);
PauliVec from_flat(const BitVector& f);

/// Swapped layout (z half, then x half): dot(flat(p), dual_flat(q)) equals
/// the symplectic product.
BitVector dual_flat(const PauliVec& p);

} // namespace tsc
