#include "trispin/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trispin::gates {

namespace {

constexpr double kPi = std::numbers::pi;

int check_qubit(int q) {
    if (q < 1 || q > 3) throw std::invalid_argument("gate qubit index must be 1..3");
    return q - 1;  // 0-based, qubit 1 = MSB
}

// Bit of basis index i belonging to 0-based qubit q.
int bit_of(int i, int q) { return (i >> (2 - q)) & 1; }

int with_bit_flipped(int i, int q) { return i ^ (1 << (2 - q)); }

}  // namespace

Gate rot1(int qubit, double angle, double axis_phase) {
    const int q = check_qubit(qubit);
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    const Cplx e_m = std::exp(Cplx(0.0, -axis_phase));
    const Cplx e_p = std::exp(Cplx(0.0, axis_phase));
    CMatrix u(2, 2);
    // exp(-i angle/2 (cos(ph) sx + sin(ph) sy))
    u << c, Cplx(0.0, -s) * e_m,
         Cplx(0.0, -s) * e_p, c;
    return Gate{lift1(u, q, 3), "rot1", {qubit}, {angle, axis_phase}};
}

Gate cnot(int control, int target) {
    const int c = check_qubit(control), t = check_qubit(target);
    if (c == t) throw std::invalid_argument("cnot: control and target collide");
    CMatrix u = CMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        u(bit_of(i, c) ? with_bit_flipped(i, t) : i, i) = 1.0;
    }
    return Gate{std::move(u), "cnot", {control, target}, {}};
}

Gate crot(int control, int target, double angle2theta) {
    const int c = check_qubit(control), t = check_qubit(target);
    if (c == t) throw std::invalid_argument("crot: control and target collide");
    const double theta = angle2theta / 2.0;
    const double ct = std::cos(theta), st = std::sin(theta);
    CMatrix u = CMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        if (!bit_of(i, c)) {
            u(i, i) = 1.0;
            continue;
        }
        const int j = with_bit_flipped(i, t);
        if (!bit_of(i, t)) {
            u(i, i) = ct;   // |..0..> -> cos|..0..> + sin|..1..>
            u(j, i) = st;
        } else {
            u(i, i) = ct;
            u(j, i) = -st;
        }
    }
    return Gate{std::move(u), "crot", {control, target}, {angle2theta}};
}

Gate toffoli(int control1, int control2, int target) {
    const int c1 = check_qubit(control1), c2 = check_qubit(control2), t = check_qubit(target);
    if (c1 == c2 || c1 == t || c2 == t) throw std::invalid_argument("toffoli: qubit collision");
    CMatrix u = CMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        u(bit_of(i, c1) && bit_of(i, c2) ? with_bit_flipped(i, t) : i, i) = 1.0;
    }
    return Gate{std::move(u), "toffoli", {control1, control2, target}, {}};
}

Gate ccphase(int control1, int control2, int target, double phi) {
    const int c1 = check_qubit(control1), c2 = check_qubit(control2), t = check_qubit(target);
    if (c1 == c2 || c1 == t || c2 == t) throw std::invalid_argument("ccphase: qubit collision");
    CMatrix u = CMatrix::Identity(8, 8);
    // phases the basis state with all three qubits set
    u(7, 7) = std::exp(Cplx(0.0, phi));
    return Gate{std::move(u), "ccphase", {control1, control2, target}, {phi}};
}

Gate transition_pi(int level_a, int level_b, double phi) {
    if (level_a < 0 || level_a > 7 || level_b < 0 || level_b > 7 || level_a == level_b) {
        throw std::invalid_argument("transition_pi: bad levels");
    }
    CMatrix u = CMatrix::Identity(8, 8);
    u(level_a, level_a) = 0.0;
    u(level_b, level_b) = 0.0;
    u(level_b, level_a) = std::exp(Cplx(0.0, phi));
    u(level_a, level_b) = -std::exp(Cplx(0.0, -phi));
    return Gate{std::move(u), "transition_pi", {level_a, level_b}, {phi}};
}

Circuit build_generic_circuit(const states::GenericParams& p, bool fuse) {
    p.validate();
    Circuit c;
    c.gates.push_back(rot1(1, 2.0 * p.alpha, kPi / 2.0));
    c.gates.push_back(crot(1, 2, 2.0 * p.beta));
    c.gates.push_back(cnot(2, 1));
    c.gates.push_back(crot(1, 3, 2.0 * p.gamma));
    c.gates.push_back(cnot(3, 1));
    c.gates.push_back(crot(1, 2, 2.0 * p.delta));
    if (fuse) {
        c.gates.push_back(transition_pi(6, 7, p.phi));
    } else {
        c.gates.push_back(toffoli(1, 2, 3));
        c.gates.push_back(ccphase(1, 2, 3, p.phi));
    }
    return c;
}

Circuit build_ghz_circuit(double alpha) {
    Circuit c;
    c.gates.push_back(rot1(1, 2.0 * alpha, kPi / 2.0));
    c.gates.push_back(cnot(1, 2));
    c.gates.push_back(cnot(1, 3));
    return c;
}

Circuit build_w_circuit(double beta, double gamma) {
    Circuit c;
    c.gates.push_back(rot1(2, 2.0 * beta, kPi / 2.0));
    c.gates.push_back(cnot(2, 1));
    c.gates.push_back(crot(1, 3, 2.0 * gamma));
    c.gates.push_back(cnot(3, 1));
    return c;
}

Ket apply(const Circuit& c, const Ket& k) {
    CVector v = k.amps();
    for (const Gate& g : c.gates) {
        if (g.unitary.cols() != v.size()) throw std::invalid_argument("apply: dimension mismatch");
        v = g.unitary * v;
    }
    return Ket(std::move(v));
}

CMatrix circuit_unitary(const Circuit& c) {
    CMatrix u = CMatrix::Identity(8, 8);
    for (const Gate& g : c.gates) u = g.unitary * u;
    return u;
}

}  // namespace trispin::gates
