#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "trispin/qcore.hpp"
#include "trispin/states.hpp"

// NMR pulse-level simulation: Zeeman + weak (IzIz) J-coupling evolution,
// compilation of the preparation sequences with refocusing echoes and
// relative-phase bookkeeping, and optional phenomenological relaxation.
//
// Rf pulses are modeled as instantaneous rotations
//   exp(-i flip/2 (cos(phase) sx + sin(phase) sy)).
// Spins are indexed 0..2 (spin 0 = qubit A = most significant bit).

namespace trispin::pulse {

struct SpinSystem {
    std::array<double, 3> nu{0.0, 0.0, 0.0};  // Hz, rotating-frame offsets
    std::array<double, 3> j{0.0, 0.0, 0.0};   // Hz: J12, J13, J23
    double t1 = 5.0;                          // s
    double t2 = 1.0;                          // s

    double coupling(int a, int b) const;  // signed J between spins a, b (0-based)

    // Trifluoroiodoethylene 19F three-spin parameters.
    static SpinSystem tfie();
};

// Index of the coupling between spins a<b in SpinSystem::j / coupling masks:
// (0,1) -> 0, (0,2) -> 1, (1,2) -> 2.
int coupling_index(int a, int b);

using CouplingMask = std::array<bool, 3>;
inline constexpr CouplingMask kAllCouplings{true, true, true};

struct RfPulse {
    std::vector<int> targets;
    double flip = 0.0;
    double phase = 0.0;
};

struct Delay {
    double duration = 0.0;  // seconds, >= 0
    CouplingMask couplings = kAllCouplings;
};

struct ZRot {
    std::vector<int> targets;
    double angle = 0.0;
};

struct TransitionPulse {
    int level_a = 0;
    int level_b = 0;
    double axis_phase = 0.0;  // angle of the rotation axis from x
};

using PulseEvent = std::variant<RfPulse, Delay, ZRot, TransitionPulse>;

struct PulseProgram {
    std::vector<PulseEvent> events;
    // Compensation z-rotations still pending per spin (radians). Compiled
    // sequences emit their compensation as terminal ZRot events and leave
    // this empty unless the sequence intentionally keeps a relative phase.
    std::array<double, 3> pending_z{0.0, 0.0, 0.0};
    int initial_state = 0;  // basis state the sequence is designed to start from
    std::vector<std::string> notes;

    double total_duration() const;  // sum of delay durations
    bool has_pending_z() const;
};

// U = exp(-i 2 pi H t), H = sum nu_i Iz_i (if include_offsets)
//                         + sum_{active} J_ij Iz_i Iz_j.   Diagonal.
CMatrix delay_unitary(double t, const SpinSystem& sys, const CouplingMask& active,
                      bool include_offsets);

enum class CrotVariant { Ideal, Short };

// Controlled rotation by theta = angle2theta/2 between coupled spins, driven
// by their J coupling.
//
// Both variants realize the pulse-level controlled-rotation gate
//   |0><0|_c (x) I + |1><1|_c (x) [[cos t, sin t], [sin t, -cos t]]
// up to global phase. On inputs where the target is |0> whenever the control
// is |1> this acts exactly as gates::crot; the two differ by a conditional
// phase on the |11> column, which a fixed-duration echo sequence cannot
// remove (the conditional block of any such sequence is a pi rotation).
//
// Ideal: explicit z-rotation pulses inside the sequence, no pending phases.
// Short: drops them; the compensation z-rotations are recorded in pending_z.
PulseProgram compile_crot(int control, int target, double angle2theta,
                          const SpinSystem& sys, CrotVariant variant);

// Full generic-state sequence from |000>: preparation pulse, short CROT/CNOT
// blocks with refocusing echoes, the transition-selective pulse on
// |110> <-> |111>, and terminal compensation z-rotations.
PulseProgram compile_generic(const states::GenericParams& p, const SpinSystem& sys);

// Parallel CNOT12/CNOT13 schedule: shared 1/(2 J12) window evolving J12 and
// J13 together, flanked by two (tau13 - tau12)/2 windows evolving J13 alone.
// Falls back to a sequential schedule (with a note) when tau13 <= tau12.
PulseProgram compile_ghz(double alpha, const SpinSystem& sys);

// W-state sequence from |100>. The terminal compensation leaves the relative
// phase the experiment keeps, so the raw output is (i|001>+|010>+|100>)-like;
// the z-rotation removing it stays in pending_z.
PulseProgram compile_w(double beta, double gamma, const SpinSystem& sys);

// Apply events in order. Rf/transition pulses are instantaneous unitaries;
// delays apply delay_unitary and then, if relaxation is on, per-spin
// amplitude damping (rate 1/T1) and pure dephasing (rate 1/T2 - 1/(2 T1),
// clipped at zero) for the delay duration.
DensityMatrix evolve(const PulseProgram& prog, const DensityMatrix& rho,
                     const SpinSystem& sys, bool relaxation);

// Net unitary of the program (no relaxation).
CMatrix program_unitary(const PulseProgram& prog, const SpinSystem& sys);

// Unitary of the pending compensation z-rotations.
CMatrix pending_z_unitary(const PulseProgram& prog);

// evolve(), then apply any pending compensation z-rotations.
DensityMatrix evolve_compensated(const PulseProgram& prog, const DensityMatrix& rho,
                                 const SpinSystem& sys, bool relaxation);

CMatrix event_unitary(const PulseEvent& ev, const SpinSystem& sys);

}  // namespace trispin::pulse
