#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "test_helpers.hpp"
#include "trispin/gates.hpp"
#include "trispin/states.hpp"

using namespace trispin;
using namespace trispin::gates;
using namespace trispin::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

states::GenericParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    return states::GenericParams{u(rng), u(rng), u(rng), u(rng), uphi(rng)};
}

// The eight intermediate states of the preparation sequence, in closed form.
CVector intermediate(const states::GenericParams& p, int stage) {
    const double ca = std::cos(p.alpha), sa = std::sin(p.alpha);
    const double cb = std::cos(p.beta), sb = std::sin(p.beta);
    const double cg = std::cos(p.gamma), sg = std::sin(p.gamma);
    const double cd = std::cos(p.delta), sd = std::sin(p.delta);
    CVector v = CVector::Zero(8);
    switch (stage) {
        case 0:  // U1_{2a}
            v(0) = ca; v(4) = sa;
            break;
        case 1:  // CROT12^{2b}
            v(0) = ca; v(4) = sa * cb; v(6) = sa * sb;
            break;
        case 2:  // CNOT21
            v(0) = ca; v(4) = sa * cb; v(2) = sa * sb;
            break;
        case 3:  // CROT13^{2g}
            v(0) = ca; v(4) = sa * cb * cg; v(5) = sa * cb * sg; v(2) = sa * sb;
            break;
        case 4:  // CNOT31
            v(0) = ca; v(4) = sa * cb * cg; v(1) = sa * cb * sg; v(2) = sa * sb;
            break;
        case 5:  // CROT12^{2d}
            v(0) = ca; v(4) = sa * cb * cg * cd; v(6) = sa * cb * cg * sd;
            v(1) = sa * cb * sg; v(2) = sa * sb;
            break;
        case 6:  // CCN12,3
            v(0) = ca; v(4) = sa * cb * cg * cd; v(7) = sa * cb * cg * sd;
            v(1) = sa * cb * sg; v(2) = sa * sb;
            break;
        case 7:  // Ph12,3
            v(0) = ca; v(4) = sa * cb * cg * cd;
            v(7) = sa * cb * cg * sd * std::exp(Cplx(0.0, p.phi));
            v(1) = sa * cb * sg; v(2) = sa * sb;
            break;
    }
    return v;
}

}  // namespace

TEST_CASE("rot1") {
    const Ket out = apply(Circuit{{rot1(1, kPi / 2.0, kPi / 2.0)}}, Ket::basis(8, 0));
    CHECK(std::abs(out.amp(0) - Cplx(std::cos(kPi / 4), 0)) < 1e-15);
    CHECK(std::abs(out.amp(4) - Cplx(std::sin(kPi / 4), 0)) < 1e-15);

    CHECK(max_abs_diff(rot1(2, 0.0, 0.0).unitary, CMatrix::Identity(8, 8)) < 1e-15);

    const double twob = 70.53 * kDeg;
    const Ket w1 = apply(Circuit{{rot1(2, twob, kPi / 2.0)}}, Ket::basis(8, 4));
    CHECK(std::abs(w1.amp(4) - Cplx(std::cos(twob / 2), 0)) < 1e-12);
    CHECK(std::abs(w1.amp(6) - Cplx(std::sin(twob / 2), 0)) < 1e-12);
}

TEST_CASE("cnot, crot, toffoli, ccphase") {
    const Ket c21 = apply(Circuit{{cnot(2, 1)}}, Ket::basis(8, 6));  // |110> -> |010>
    CHECK(std::abs(c21.amp(2) - Cplx(1, 0)) < 1e-15);

    CHECK(max_abs_diff(crot(1, 2, 0.0).unitary, CMatrix::Identity(8, 8)) < 1e-15);

    const double theta = 0.37;
    const Ket cr = apply(Circuit{{crot(1, 2, 2.0 * theta)}}, Ket::basis(8, 4));
    CHECK(std::abs(cr.amp(4) - Cplx(std::cos(theta), 0)) < 1e-15);
    CHECK(std::abs(cr.amp(6) - Cplx(std::sin(theta), 0)) < 1e-15);
    // control off: untouched
    const Ket cr0 = apply(Circuit{{crot(1, 2, 2.0 * theta)}}, Ket::basis(8, 2));
    CHECK(std::abs(cr0.amp(2) - Cplx(1, 0)) < 1e-15);

    const Gate ph = ccphase(1, 2, 3, 1.25);
    for (int i = 0; i < 7; ++i) CHECK(std::abs(ph.unitary(i, i) - Cplx(1, 0)) < 1e-15);
    CHECK(std::abs(ph.unitary(7, 7) - std::exp(Cplx(0, 1.25))) < 1e-15);

    const Ket tof = apply(Circuit{{toffoli(1, 2, 3)}}, Ket::basis(8, 6));
    CHECK(std::abs(tof.amp(7) - Cplx(1, 0)) < 1e-15);

    CHECK_THROWS_AS(cnot(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(crot(2, 2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(toffoli(1, 1, 3), std::invalid_argument);
}

TEST_CASE("transition-selective pi pulse") {
    const double phi = 0.8;
    const Gate t = transition_pi(6, 7, phi);
    CHECK(std::abs(t.unitary(7, 6) - std::exp(Cplx(0, phi))) < 1e-15);
    CHECK(std::abs(t.unitary(6, 7) + std::exp(Cplx(0, -phi))) < 1e-15);
    const Ket out = apply(Circuit{{t}}, Ket::basis(8, 6));
    CHECK(std::abs(out.amp(7) - std::exp(Cplx(0, phi))) < 1e-15);
    const Ket idle = apply(Circuit{{t}}, Ket::basis(8, 0));
    CHECK(std::abs(idle.amp(0) - Cplx(1, 0)) < 1e-15);

    // Toffoli equals the phi = 0 transition pulse combined with a phase
    // supported on the {|110>,|111>} subspace.
    CMatrix sub_phase = CMatrix::Identity(8, 8);
    sub_phase(7, 7) = -1.0;
    CHECK(max_abs_diff(toffoli(1, 2, 3).unitary, transition_pi(6, 7, 0.0).unitary * sub_phase) <
          1e-15);
    // and the two agree column-by-column up to a phase.
    for (int i = 0; i < 8; ++i) {
        const CVector a = toffoli(1, 2, 3).unitary.col(i);
        const CVector b = transition_pi(6, 7, 0.0).unitary.col(i);
        CHECK(phase_free_distance(a, b) < 1e-15);
    }

    CHECK_THROWS_AS(transition_pi(3, 3, 0.0), std::invalid_argument);
}

TEST_CASE("all gates are unitary") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    for (int rep = 0; rep < 20; ++rep) {
        const Circuit c = build_generic_circuit(random_params(rng), rep % 2 == 0);
        for (const Gate& g : c.gates) {
            REQUIRE(max_abs_diff(g.unitary.adjoint() * g.unitary, CMatrix::Identity(8, 8)) <
                    1e-12);
        }
        const Gate t = transition_pi(rep % 8, (rep + 3) % 8, u(rng));
        REQUIRE(max_abs_diff(t.unitary.adjoint() * t.unitary, CMatrix::Identity(8, 8)) < 1e-12);
    }
}

TEST_CASE("generic circuit reproduces the closed form") {
    const states::GenericParams headline{45 * kDeg, 55 * kDeg, 60 * kDeg, 58 * kDeg, 125 * kDeg};
    const Ket out = apply(build_generic_circuit(headline), Ket::basis(8, 0));
    CHECK(std::abs(out.amp(0)) == doctest::Approx(0.707).epsilon(1e-3));
    CHECK(std::abs(out.amp(1)) == doctest::Approx(0.351).epsilon(1e-3));
    CHECK(std::abs(out.amp(2)) == doctest::Approx(0.579).epsilon(1e-3));
    CHECK(std::abs(out.amp(4)) == doctest::Approx(0.107).epsilon(1e-2));
    CHECK(std::abs(out.amp(7)) == doctest::Approx(0.172).epsilon(1e-2));

    const Ket idle = apply(build_generic_circuit(states::GenericParams{}), Ket::basis(8, 0));
    CHECK(std::abs(idle.amp(0) - Cplx(1, 0)) < 1e-12);

    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 300; ++rep) {
        const states::GenericParams p = random_params(rng);
        const Ket circ = apply(build_generic_circuit(p, rep % 2 == 0), Ket::basis(8, 0));
        REQUIRE(overlap(circ, states::generic_ket(p)) >= 1.0 - 1e-10);
    }
}

TEST_CASE("intermediate states match the closed-form sequence") {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 100; ++rep) {
        const states::GenericParams p = random_params(rng);
        const Circuit c = build_generic_circuit(p, /*fuse=*/false);
        CVector v = Ket::basis(8, 0).amps();
        for (int stage = 0; stage < 8; ++stage) {
            v = c.gates[stage].unitary * v;
            REQUIRE(phase_free_distance(v, intermediate(p, stage)) < 1e-10);
        }
    }
}

TEST_CASE("ghz and w circuits specialize the generic circuit") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double a = u(rng);
        const states::GenericParams pg{a, 0, 0, kPi / 2.0, 0};
        const Ket out = apply(build_generic_circuit(pg), Ket::basis(8, 0));
        REQUIRE(phase_free_distance(out.amps(), states::ghz_ket(a).amps()) < 1e-10);
    }
    for (int rep = 0; rep < 100; ++rep) {
        const double b = u(rng), g = u(rng);
        const states::GenericParams pw{kPi / 2.0, b, g, 0, 0};
        const Ket out = apply(build_generic_circuit(pw), Ket::basis(8, 0));
        REQUIRE(phase_free_distance(out.amps(), states::w_ket(b, g).amps()) < 1e-10);
    }
}

TEST_CASE("apply") {
    const Ket in = Ket::basis(8, 5);
    const Ket same = apply(Circuit{}, in);
    CHECK(phase_free_distance(same.amps(), in.amps()) == 0.0);

    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
    const double a = u(rng);
    const Ket ghz_out = apply(build_ghz_circuit(a), Ket::basis(8, 0));
    CHECK(std::abs(ghz_out.amp(0) - Cplx(std::cos(a), 0)) < 1e-12);
    CHECK(std::abs(ghz_out.amp(7) - Cplx(std::sin(a), 0)) < 1e-12);

    const double b = u(rng), g = u(rng);
    const Ket w_out = apply(build_w_circuit(b, g), Ket::basis(8, 4));
    CHECK(std::abs(w_out.amp(4) - Cplx(std::cos(g) * std::cos(b), 0)) < 1e-12);
    CHECK(std::abs(w_out.amp(1) - Cplx(std::sin(g) * std::cos(b), 0)) < 1e-12);
    CHECK(std::abs(w_out.amp(2) - Cplx(std::sin(b), 0)) < 1e-12);

    CHECK_THROWS_AS(apply(build_ghz_circuit(0.3), Ket::basis(4, 0)), std::invalid_argument);
}

TEST_CASE("fused and explicit endings agree from the prepared subspace") {
    std::mt19937_64 rng(36);
    for (int rep = 0; rep < 20; ++rep) {
        const states::GenericParams p = random_params(rng);
        const Ket fused = apply(build_generic_circuit(p, true), Ket::basis(8, 0));
        const Ket plain = apply(build_generic_circuit(p, false), Ket::basis(8, 0));
        REQUIRE(phase_free_distance(fused.amps(), plain.amps()) < 1e-12);
    }
}
