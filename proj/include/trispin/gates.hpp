#pragma once

#include <string>
#include <vector>

#include "trispin/qcore.hpp"
#include "trispin/states.hpp"

// Ideal gate-level construction of the generic three-qubit state and its
// GHZ / W special cases. Qubits are numbered 1..3 at this interface,
// qubit 1 being the most significant bit.

namespace trispin::gates {

struct Gate {
    CMatrix unitary;          // 8x8, unitary to 1e-12
    std::string name;         // rot1, cnot, crot, toffoli, ccphase, transition_pi
    std::vector<int> qubits;  // 1-based qubit (or level) operands
    std::vector<double> params;  // angles, radians
};

struct Circuit {
    std::vector<Gate> gates;  // applied left to right
};

// Single-qubit rotation exp(-i angle/2 (cos(axis_phase) sx + sin(axis_phase) sy))
// lifted to the 3-qubit register. axis_phase = pi/2 is a +y rotation, which
// maps |0> to cos(angle/2)|0> + sin(angle/2)|1>.
Gate rot1(int qubit, double angle, double axis_phase);

Gate cnot(int control, int target);

// Controlled rotation by theta = angle2theta/2 on the target:
// |1>_c|0>_t -> cos(theta)|10> + sin(theta)|11>; identity on the control-0
// sector. angle2theta = 0 gives the identity.
Gate crot(int control, int target, double angle2theta);

Gate toffoli(int control1, int control2, int target);

// Doubly controlled phase: |111> -> e^{i phi}|111>, identity elsewhere.
Gate ccphase(int control1, int control2, int target, double phi);

// pi rotation in the two-level subspace {|a>,|b>} about the in-plane axis at
// angle phi + pi/2 from x, identity elsewhere:
//   <b|U|a> = e^{i phi},  <a|U|b> = -e^{-i phi}.
Gate transition_pi(int level_a, int level_b, double phi);

// Gate sequence of the generic-state preparation:
//   U1_{2a}, CROT12^{2b}, CNOT21, CROT13^{2g}, CNOT31, CROT12^{2d},
// then either the fused transition-selective pulse on |110>-|111> (fuse=true)
// or the explicit Toffoli + doubly-controlled-phase pair.
Circuit build_generic_circuit(const states::GenericParams& p, bool fuse = true);

// U1_{2a}, CNOT12, CNOT13.
Circuit build_ghz_circuit(double alpha);

// U2_{2b}, CNOT21, CROT13^{2g}, CNOT31, starting from |100>.
Circuit build_w_circuit(double beta, double gamma);

Ket apply(const Circuit& c, const Ket& k);

CMatrix circuit_unitary(const Circuit& c);

}  // namespace trispin::gates
