#include "trispin/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trispin::states {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_range(double v, double lo, double hi, const char* name) {
    if (!(v >= lo && v <= hi)) {
        throw std::invalid_argument(std::string(name) + " out of range");
    }
}

}  // namespace

void GenericParams::validate() const {
    check_range(alpha, 0.0, kHalfPi, "alpha");
    check_range(beta, 0.0, kHalfPi, "beta");
    check_range(gamma, 0.0, kHalfPi, "gamma");
    check_range(delta, 0.0, kHalfPi, "delta");
    // phi is periodic; accept [0, 2pi] with endpoints identified.
    check_range(phi, 0.0, kTwoPi, "phi");
}

void PseudopureSpec::validate() const {
    if (basis_state < 0 || basis_state > 7) {
        throw std::invalid_argument("pseudopure basis_state out of range");
    }
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("pseudopure epsilon out of range");
    }
}

Amplitudes generic_amplitudes(const GenericParams& p) {
    p.validate();
    Amplitudes a;
    a.a1 = std::cos(p.alpha);
    a.a2 = std::sin(p.alpha) * std::cos(p.beta) * std::sin(p.gamma);
    a.a3 = std::sin(p.alpha) * std::sin(p.beta);
    a.a4 = std::sin(p.alpha) * std::cos(p.beta) * std::cos(p.gamma) * std::cos(p.delta);
    a.a5 = std::sin(p.alpha) * std::cos(p.beta) * std::cos(p.gamma) * std::sin(p.delta);
    a.phi = p.phi;
    return a;
}

Ket generic_ket(const GenericParams& p) {
    const Amplitudes a = generic_amplitudes(p);
    CVector v = CVector::Zero(8);
    v(0) = a.a1;                                     // |000>
    v(1) = a.a2;                                     // |001>
    v(2) = a.a3;                                     // |010>
    v(4) = a.a4;                                     // |100>
    v(7) = a.a5 * std::exp(Cplx(0.0, a.phi));        // |111>
    return Ket(std::move(v));
}

Ket ghz_ket(double alpha) {
    check_range(alpha, 0.0, kHalfPi, "alpha");
    CVector v = CVector::Zero(8);
    v(0) = std::cos(alpha);
    v(7) = std::sin(alpha);
    return Ket(std::move(v));
}

Ket w_ket(double beta, double gamma) {
    check_range(beta, 0.0, kHalfPi, "beta");
    check_range(gamma, 0.0, kHalfPi, "gamma");
    CVector v = CVector::Zero(8);
    v(4) = std::cos(gamma) * std::cos(beta);  // |100>
    v(1) = std::sin(gamma) * std::cos(beta);  // |001>
    v(2) = std::sin(beta);                    // |010>
    return Ket(std::move(v));
}

Ket w_ket_standard() {
    CVector v = CVector::Zero(8);
    const double s = 1.0 / std::sqrt(3.0);
    v(1) = Cplx(0.0, s);
    v(2) = s;
    v(4) = s;
    return Ket(std::move(v));
}

DensityMatrix pseudopure(const PseudopureSpec& spec) {
    spec.validate();
    CMatrix m = CMatrix::Identity(8, 8) * ((1.0 - spec.epsilon) / 8.0);
    m(spec.basis_state, spec.basis_state) += spec.epsilon;
    return DensityMatrix(std::move(m));
}

}  // namespace trispin::states
