#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "test_helpers.hpp"
#include "trispin/gates.hpp"
#include "trispin/pulsesim.hpp"
#include "trispin/states.hpp"

using namespace trispin;
using namespace trispin::pulse;
using namespace trispin::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// Conditional phase on the two addressed qubits (1-based labels).
CMatrix cz(int q1, int q2) {
    CMatrix m = CMatrix::Identity(8, 8);
    for (int i = 0; i < 8; ++i) {
        if (((i >> (3 - q1)) & 1) && ((i >> (3 - q2)) & 1)) m(i, i) = -1.0;
    }
    return m;
}

// The controlled gate the pulse sequences implement: gates::crot followed by
// a conditional phase (identical to crot on control-1/target-0 columns).
CMatrix pulse_crot_target(int control, int target, double angle2theta) {
    return gates::crot(control, target, angle2theta).unitary * cz(control, target);
}

states::GenericParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    return states::GenericParams{u(rng), u(rng), u(rng), u(rng), uphi(rng)};
}

// Sequence-gate product the generic compilation targets.
CMatrix generic_target(const states::GenericParams& p) {
    CMatrix u = gates::rot1(1, 2.0 * p.alpha, kPi / 2.0).unitary;
    u = pulse_crot_target(1, 2, 2.0 * p.beta) * u;
    u = pulse_crot_target(2, 1, kPi) * u;
    u = pulse_crot_target(1, 3, 2.0 * p.gamma) * u;
    u = pulse_crot_target(3, 1, kPi) * u;
    u = pulse_crot_target(1, 2, 2.0 * p.delta) * u;
    u = gates::transition_pi(6, 7, p.phi).unitary * u;
    return u;
}

SpinSystem offsets_system() {
    SpinSystem s = SpinSystem::tfie();
    s.nu = {2100.0, -830.0, 470.0};
    return s;
}

Ket evolve_pure(const PulseProgram& prog, const SpinSystem& sys) {
    const CMatrix u = program_unitary(prog, sys);
    return Ket(u * Ket::basis(8, prog.initial_state).amps());
}

}  // namespace

TEST_CASE("delay_unitary matches direct exponentiation") {
    const SpinSystem sys = SpinSystem::tfie();
    CHECK(max_abs_diff(delay_unitary(0.0, sys, kAllCouplings, true), CMatrix::Identity(8, 8)) <
          1e-15);

    // Independent oracle: build the diagonal Hamiltonian entry by entry.
    const SpinSystem s2 = offsets_system();
    const double t = 1.0 / (2.0 * s2.j[0]);
    CMatrix want = CMatrix::Zero(8, 8);
    for (int b = 0; b < 8; ++b) {
        const double z1 = ((b >> 2) & 1) ? -0.5 : 0.5;
        const double z2 = ((b >> 1) & 1) ? -0.5 : 0.5;
        const double z3 = (b & 1) ? -0.5 : 0.5;
        const double h = s2.nu[0] * z1 + s2.nu[1] * z2 + s2.nu[2] * z3 + s2.j[0] * z1 * z2 +
                         s2.j[1] * z1 * z3 + s2.j[2] * z2 * z3;
        want(b, b) = std::exp(Cplx(0.0, -2.0 * kPi * h * t));
    }
    CHECK(max_abs_diff(delay_unitary(t, s2, kAllCouplings, true), want) < 1e-12);

    // J12-only evolution for 1/(2 J12): the |00> and |01> blocks of spins
    // 1,2 pick up a pi/2 relative phase.
    const CMatrix u = delay_unitary(t, sys, CouplingMask{true, false, false}, false);
    const Cplx r = u(2, 2) / u(0, 0);  // |010> vs |000>
    CHECK(std::abs(r - std::exp(Cplx(0.0, kPi / 2.0))) < 1e-12);
}

TEST_CASE("negative coupling gives conjugate phases") {
    SpinSystem pos = SpinSystem::tfie();
    pos.j = {0.0, 0.0, 129.0};
    SpinSystem neg = pos;
    neg.j[2] = -129.0;
    const double t = 1.0 / (2.0 * 129.0);
    const CMatrix up = delay_unitary(t, pos, kAllCouplings, false);
    const CMatrix un = delay_unitary(t, neg, kAllCouplings, false);
    CHECK(max_abs_diff(un, up.conjugate()) < 1e-13);
    CHECK_THROWS_AS(delay_unitary(-1.0, pos, kAllCouplings, false), std::invalid_argument);
}

TEST_CASE("ideal crot variant at theta = pi/2 is a CNOT up to global phase") {
    const SpinSystem sys = SpinSystem::tfie();
    const PulseProgram prog = compile_crot(0, 1, kPi, sys, CrotVariant::Ideal);
    CHECK_FALSE(prog.has_pending_z());
    const CMatrix u = program_unitary(prog, sys);
    CHECK(phase_free_distance(u, gates::cnot(1, 2).unitary) < 1e-9);
}

TEST_CASE("short crot variant plus recorded z-rotations equals the ideal variant") {
    const SpinSystem sys = SpinSystem::tfie();
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int rep = 0; rep < 25; ++rep) {
        const double angle = (rep == 0) ? 0.0 : u(rng);
        for (auto [c, t] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}, std::pair{2, 0}}) {
            const PulseProgram sp = compile_crot(c, t, angle, sys, CrotVariant::Short);
            const PulseProgram ip = compile_crot(c, t, angle, sys, CrotVariant::Ideal);
            const CMatrix compensated = pending_z_unitary(sp) * program_unitary(sp, sys);
            REQUIRE(phase_free_distance(compensated, program_unitary(ip, sys)) < 1e-9);
        }
    }
}

TEST_CASE("compiled crot realizes the pulse-level controlled rotation") {
    const SpinSystem sys = SpinSystem::tfie();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int rep = 0; rep < 10; ++rep) {
        const double angle = u(rng);
        const PulseProgram ip = compile_crot(0, 2, angle, sys, CrotVariant::Ideal);
        REQUIRE(phase_free_distance(program_unitary(ip, sys), pulse_crot_target(1, 3, angle)) <
                1e-9);
        // On control-1 / target-0 input the block acts exactly as gates::crot.
        const CVector col = program_unitary(ip, sys) * Ket::basis(8, 4).amps();
        const CVector want = gates::crot(1, 3, angle).unitary * Ket::basis(8, 4).amps();
        REQUIRE(phase_free_distance(col, want) < 1e-9);
    }
}

TEST_CASE("zero-angle short variant is a pure echo") {
    const SpinSystem sys = SpinSystem::tfie();
    const PulseProgram prog = compile_crot(0, 1, 0.0, sys, CrotVariant::Short);
    const CMatrix u = program_unitary(prog, sys);
    // Populations are untouched: the unitary is diagonal.
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            if (r != c) REQUIRE(std::abs(u(r, c)) < 1e-12);
        }
        REQUIRE(std::abs(std::abs(u(r, r)) - 1.0) < 1e-12);
    }
}

TEST_CASE("zero coupling is rejected") {
    SpinSystem sys = SpinSystem::tfie();
    sys.j[0] = 0.0;
    CHECK_THROWS_AS(compile_crot(0, 1, kPi, sys, CrotVariant::Short), std::invalid_argument);
}

TEST_CASE("echo pairs cancel offsets and spectator couplings") {
    const SpinSystem full = offsets_system();
    SpinSystem only12 = full;
    only12.nu = {0.0, 0.0, 0.0};
    only12.j = {full.j[0], 0.0, 0.0};
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int rep = 0; rep < 10; ++rep) {
        const PulseProgram prog = compile_crot(0, 1, u(rng), full, CrotVariant::Short);
        REQUIRE(phase_free_distance(program_unitary(prog, full), program_unitary(prog, only12)) <
                1e-8);
    }
}

TEST_CASE("negative-coupling short blocks compensate the same way") {
    SpinSystem sys = SpinSystem::tfie();  // J23 = -129 Hz
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int rep = 0; rep < 10; ++rep) {
        const double angle = u(rng);
        const PulseProgram sp = compile_crot(1, 2, angle, sys, CrotVariant::Short);
        const PulseProgram ip = compile_crot(1, 2, angle, sys, CrotVariant::Ideal);
        REQUIRE(phase_free_distance(pending_z_unitary(sp) * program_unitary(sp, sys),
                                    program_unitary(ip, sys)) < 1e-9);
        REQUIRE(phase_free_distance(program_unitary(ip, sys), pulse_crot_target(2, 3, angle)) <
                1e-9);
    }
}

TEST_CASE("generic compilation matches the sequence-gate product") {
    const SpinSystem sys = SpinSystem::tfie();
    std::mt19937_64 rng(45);
    for (int rep = 0; rep < 100; ++rep) {
        const states::GenericParams p = random_params(rng);
        const PulseProgram prog = compile_generic(p, sys);
        REQUIRE_FALSE(prog.has_pending_z());
        REQUIRE(phase_free_distance(program_unitary(prog, sys), generic_target(p)) < 1e-8);
    }
}

TEST_CASE("generic compilation reproduces the closed-form state") {
    const SpinSystem sys = SpinSystem::tfie();
    const states::GenericParams headline{45 * kDeg, 55 * kDeg, 60 * kDeg, 58 * kDeg, 125 * kDeg};
    const PulseProgram prog = compile_generic(headline, sys);

    const DensityMatrix out =
        evolve(prog, states::pseudopure(states::PseudopureSpec{0, 1.0}), sys, false);
    CHECK(fidelity(out, DensityMatrix::pure(states::generic_ket(headline))) >= 0.999);

    const Ket pure_out = evolve_pure(prog, sys);
    CHECK(std::abs(pure_out.amp(0)) == doctest::Approx(0.707).epsilon(2e-3));
    CHECK(std::abs(pure_out.amp(1)) == doctest::Approx(0.351).epsilon(2e-3));
    CHECK(std::abs(pure_out.amp(2)) == doctest::Approx(0.579).epsilon(2e-3));
    CHECK(std::abs(pure_out.amp(4)) == doctest::Approx(0.107).epsilon(2e-2));
    CHECK(std::abs(pure_out.amp(7)) == doctest::Approx(0.172).epsilon(2e-2));

    // All-zero parameters leave |000> untouched.
    const PulseProgram idle = compile_generic(states::GenericParams{}, sys);
    const Ket idle_out = evolve_pure(idle, sys);
    CHECK(phase_free_distance(idle_out.amps(), Ket::basis(8, 0).amps()) < 1e-9);

    // Random parameter sets agree with the gate-level circuit output.
    std::mt19937_64 rng(46);
    for (int rep = 0; rep < 25; ++rep) {
        const states::GenericParams p = random_params(rng);
        const Ket sim = evolve_pure(compile_generic(p, sys), sys);
        const Ket circ = gates::apply(gates::build_generic_circuit(p), Ket::basis(8, 0));
        REQUIRE(phase_free_distance(sim.amps(), circ.amps()) < 1e-9);
    }
}

TEST_CASE("ghz compilation") {
    const SpinSystem sys = SpinSystem::tfie();
    const PulseProgram prog = compile_ghz(kPi / 4.0, sys);
    CHECK(prog.notes.empty());
    const DensityMatrix out =
        evolve(prog, states::pseudopure(states::PseudopureSpec{0, 1.0}), sys, false);
    CHECK(fidelity(out, DensityMatrix::pure(states::ghz_ket(kPi / 4.0))) >= 0.999);

    const Ket zero = evolve_pure(compile_ghz(0.0, sys), sys);
    CHECK(phase_free_distance(zero.amps(), Ket::basis(8, 0).amps()) < 1e-9);

    // Offsets are refocused by the echo pulses.
    const SpinSystem off = offsets_system();
    const Ket with_offsets = evolve_pure(compile_ghz(kPi / 4.0, off), off);
    CHECK(phase_free_distance(with_offsets.amps(), states::ghz_ket(kPi / 4.0).amps()) < 1e-8);
}

TEST_CASE("parallel and sequential ghz schedules agree") {
    const SpinSystem sys = SpinSystem::tfie();
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double a = u(rng);
        const PulseProgram par = compile_ghz(a, sys);
        REQUIRE(par.notes.empty());

        SpinSystem swapped = sys;  // make |J13| > |J12| to force the fallback
        std::swap(swapped.j[0], swapped.j[1]);
        const PulseProgram seq = compile_ghz(a, swapped);
        REQUIRE_FALSE(seq.notes.empty());

        const Ket kp = evolve_pure(par, sys);
        const Ket ks = evolve_pure(seq, swapped);
        REQUIRE(phase_free_distance(kp.amps(), ks.amps()) < 1e-9);
        REQUIRE(phase_free_distance(kp.amps(), states::ghz_ket(a).amps()) < 1e-9);
    }
}

TEST_CASE("w compilation") {
    const SpinSystem sys = SpinSystem::tfie();
    const double beta = std::asin(1.0 / std::sqrt(3.0));
    const PulseProgram prog = compile_w(beta, kPi / 4.0, sys);

    // Raw sequence carries the relative phase of the standard form.
    const DensityMatrix raw =
        evolve(prog, states::pseudopure(states::PseudopureSpec{4, 1.0}), sys, false);
    CHECK(fidelity(raw, DensityMatrix::pure(states::w_ket_standard())) >= 0.999);

    // Applying the pending z-rotation recovers the all-real W ket.
    const DensityMatrix comp =
        evolve_compensated(prog, states::pseudopure(states::PseudopureSpec{4, 1.0}), sys, false);
    CHECK(fidelity(comp, DensityMatrix::pure(states::w_ket(beta, kPi / 4.0))) >= 1.0 - 1e-9);

    const PulseProgram idle = compile_w(0.0, 0.0, sys);
    const Ket idle_out = evolve_pure(idle, sys);
    CHECK(phase_free_distance(idle_out.amps(), Ket::basis(8, 4).amps()) < 1e-9);

    // Cross-module agreement with the gate-level circuit for random angles.
    std::mt19937_64 rng(48);
    std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
    for (int rep = 0; rep < 20; ++rep) {
        const double b = u(rng), g = u(rng);
        const PulseProgram pw = compile_w(b, g, sys);
        const CMatrix uu = pending_z_unitary(pw) * program_unitary(pw, sys);
        const Ket sim = Ket(uu * Ket::basis(8, 4).amps());
        const Ket circ = gates::apply(gates::build_w_circuit(b, g), Ket::basis(8, 4));
        REQUIRE(phase_free_distance(sim.amps(), circ.amps()) < 1e-9);
    }
}

TEST_CASE("evolve basics") {
    const SpinSystem sys = SpinSystem::tfie();
    std::mt19937_64 rng(49);
    const DensityMatrix rho = random_density(rng);
    const DensityMatrix same = evolve(PulseProgram{}, rho, sys, false);
    CHECK(max_abs_diff(same.matrix(), rho.matrix()) < 1e-12);

    // Unitary evolution preserves purity.
    const states::GenericParams p{0.3, 0.8, 0.5, 0.9, 2.0};
    const PulseProgram prog = compile_generic(p, sys);
    const DensityMatrix in = states::pseudopure(states::PseudopureSpec{0, 1.0});
    const DensityMatrix out = evolve(prog, in, sys, false);
    CHECK(out.purity() == doctest::Approx(1.0).epsilon(1e-12));

    PulseProgram bad;
    bad.events.push_back(Delay{-0.5, kAllCouplings});
    CHECK_THROWS_AS(evolve(bad, rho, sys, false), std::invalid_argument);
    PulseProgram badt;
    badt.events.push_back(TransitionPulse{3, 3, 0.0});
    CHECK_THROWS_AS(evolve(badt, rho, sys, false), std::invalid_argument);
}

TEST_CASE("relaxation lowers but does not wreck the generic fidelity") {
    const SpinSystem sys = SpinSystem::tfie();  // T1 = 5 s, T2 = 1 s
    const states::GenericParams headline{45 * kDeg, 55 * kDeg, 60 * kDeg, 58 * kDeg, 125 * kDeg};
    const PulseProgram prog = compile_generic(headline, sys);
    CHECK(prog.total_duration() > 0.03);
    CHECK(prog.total_duration() < 0.06);
    const DensityMatrix out =
        evolve(prog, states::pseudopure(states::PseudopureSpec{0, 1.0}), sys, true);
    const double f = fidelity(out, DensityMatrix::pure(states::generic_ket(headline)));
    CHECK(f < 1.0);
    CHECK(f > 0.9);
}

TEST_CASE("delay-only programs can be reordered") {
    const SpinSystem sys = offsets_system();
    PulseProgram a, b;
    a.events = {Delay{0.001, kAllCouplings}, Delay{0.002, CouplingMask{true, false, true}},
                Delay{0.0005, CouplingMask{false, true, false}}};
    b.events = {a.events[2], a.events[0], a.events[1]};
    CHECK(max_abs_diff(program_unitary(a, sys), program_unitary(b, sys)) < 1e-14);
}
