#include "tsc/pauli.hpp"

#include <stdexcept>

namespace tsc {

std::size_t PauliVec::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < n(); ++i)
    if (x.get(i) || z.get(i))
      ++w;
  return w;
}

int symplectic_product(const PauliVec& u, const PauliVec& v) {
  if (u.n() != v.n())
    throw std::invalid_argument("symplectic_product: length mismatch");
  return int(u.x.dot(v.z)) ^ int(u.z.dot(v.x));
}

BitVector to_flat(const PauliVec& p) {
  std::size_t n = p.n();
  BitVector f(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.x.get(i))
      f.set(i);
    if (p.z.get(i))
      f.set(n + i);
  }
  return f;
}

PauliVec from_flat(const BitVector& f) {
  std::size_t n = f.size() / 2;
  PauliVec p(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.get(i))
      p.x.set(i);
    if (f.get(n + i))
      p.z.set(i);
  }
  return p;
}

BitVector dual_flat(const PauliVec& p) {
  std::size_t n = p.n();
  BitVector f(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.z.get(i))
      f.set(i);
    if (p.x.get(i))
      f.set(n + i);
  }
  return f;
}

} // namespace tsc
