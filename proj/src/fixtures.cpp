#include "tsc/fixtures.hpp"

#include "tsc/error.hpp"

namespace tsc {

namespace {

const char* kEmpty = R"(# No qubits at all.
code empty
qubits 0
)";

const char* kTrivial = R"(# One qubit per site, pinned by a single-qubit Z.
code trivial
qubits 1
stab Z: Z(0,0,0)
)";

const char* kSubsystemTrivial = R"(# Trivial stabilizer; the gauge group is the full Pauli group.
code subsystem-trivial
qubits 1
gauge GX: X(0,0,0)
gauge GZ: Z(0,0,0)
)";

const char* kToric = R"(# Two qubits per site: qubit 0 on horizontal links, qubit 1 on vertical.
code toric
qubits 2
stab SX: X(0,0,0) X(-1,0,0) X(0,0,1) X(0,-1,1)
stab SZ: Z(0,0,0) Z(0,1,0) Z(0,0,1) Z(1,0,1)
)";

const char* kSubsystemToric = R"(# Toric lattice; only the plaquette type is a stabilizer.
code subsystem-toric
qubits 2
stab SZ: Z(0,0,0) Z(0,1,0) Z(0,0,1) Z(1,0,1)
gauge GX: X(0,0,0) X(-1,0,0) X(0,0,1) X(0,-1,1)
gauge GZH: Z(0,0,0)
gauge GZV: Z(0,0,1)
)";

const char* kHoneycomb = R"(# Two qubits per site; hexagon stabilizer with link gauge generators.
code honeycomb
qubits 2
stab SH: X(0,0,1) Z(1,0,0) Y(1,0,1) X(1,1,0) Y(0,1,0) Z(0,1,1)
gauge GX: X(0,0,0) X(0,0,1)
gauge GY: Y(1,0,0) Y(0,0,1)
gauge GZ: Z(0,1,0) Z(0,0,1)
)";

const char* kSubsystemColor = R"(# Six qubits per site; two stabilizer types and ten link gauge types.
code subsystem-color
qubits 6
stab S1: Z(0,0,0) Z(1,0,1) Z(1,0,2) Z(1,1,3) Z(0,1,4) Z(0,1,5)
stab S2: X(0,0,0) Y(1,0,1) X(1,0,2) Y(1,1,3) X(0,1,4) Y(0,1,5) Y(0,1,0) Y(0,1,1) Y(0,0,2) Y(1,0,3) Y(1,0,4) Y(1,1,5) X(1,0,0) X(1,1,1) X(0,1,2) X(0,1,3) X(0,0,4) X(1,0,5)
gauge G1: X(0,0,0) Y(1,0,1)
gauge G2: X(1,0,1) Y(1,0,2)
gauge G3: X(1,0,2) Y(1,1,3)
gauge G4: X(1,1,3) Y(0,1,4)
gauge G5: X(0,1,4) Y(0,1,5)
gauge G6: X(0,1,5) Y(0,0,0)
gauge G7: Z(0,0,0) Z(0,0,4)
gauge G8: Z(0,0,2) Z(0,0,4)
gauge G9: Z(0,0,1) Z(0,0,3)
gauge G10: Z(0,0,1) Z(0,0,5)
)";

const char* kZzLinks = R"(# Nearest-neighbor ZZ link group: every plaquette is a local constraint.
code zz-links
qubits 1
stab LH: Z(0,0,0) Z(1,0,0)
stab LV: Z(0,0,0) Z(0,1,0)
)";

const char* kToricTrivial = R"(# Toric code with one disentangled pinned qubit per site.
code toric-trivial
qubits 3
stab SX: X(0,0,0) X(-1,0,0) X(0,0,1) X(0,-1,1)
stab SZ: Z(0,0,0) Z(0,1,0) Z(0,0,1) Z(1,0,1)
stab ZT: Z(0,0,2)
)";

} // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = {
      {"empty", kEmpty},
      {"trivial", kTrivial},
      {"subsystem-trivial", kSubsystemTrivial},
      {"toric", kToric},
      {"subsystem-toric", kSubsystemToric},
      {"honeycomb", kHoneycomb},
      {"subsystem-color", kSubsystemColor},
      {"zz-links", kZzLinks},
      {"toric-trivial", kToricTrivial},
  };
  return all;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : fixtures())
    if (f.name == name)
      return f;
  throw Error(ErrorKind::Usage, "unknown fixture '" + name + "'");
}

} // namespace tsc
