#pragma once

#include <random>
#include <string>

#include "trispin/io.hpp"
#include "trispin/qcore.hpp"

namespace trispin::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(TRISPIN_FIXTURES_DIR) + "/" + name;
}

inline DensityMatrix load_fixture(const std::string& name) {
    return io::as_density(io::load_state(fixture_path(name)));
}

inline Ket random_ket(std::mt19937_64& rng, int dim = 8) {
    std::normal_distribution<double> n(0.0, 1.0);
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Cplx(n(rng), n(rng));
    return Ket(std::move(v));
}

// Random full-rank density matrix (Wishart-style).
inline DensityMatrix random_density(std::mt19937_64& rng, int dim = 8) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Cplx(n(rng), n(rng));
    CMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(0.5 * (m + m.adjoint()));
}

inline CMatrix random_hermitian(std::mt19937_64& rng, int dim = 8) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Cplx(n(rng), n(rng));
    return 0.5 * (g + g.adjoint());
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// min over a global phase of the entrywise distance between unitaries/kets.
inline double phase_free_distance(const CMatrix& u, const CMatrix& v) {
    const Cplx tr = (v.adjoint() * u).trace();
    const Cplx ph = std::abs(tr) > 1e-14 ? tr / std::abs(tr) : Cplx(1.0, 0.0);
    return (u - ph * v).cwiseAbs().maxCoeff();
}

inline double phase_free_distance(const CVector& a, const CVector& b) {
    const Cplx ip = b.dot(a);
    const Cplx ph = std::abs(ip) > 1e-14 ? ip / std::abs(ip) : Cplx(1.0, 0.0);
    return (a - ph * b).cwiseAbs().maxCoeff();
}

}  // namespace trispin::testing
