#include "trispin/reconstruct.hpp"

#include <cmath>
#include <string>

namespace trispin::recon {

namespace {

constexpr double kRankOneTol = 1e-9;

// Swap the two qubits of a 4-dim operator (basis |q q'> -> |q' q>).
CMatrix swap_pair(const CMatrix& m) {
    static const int perm[4] = {0, 2, 1, 3};
    CMatrix out(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = m(perm[r], perm[c]);
    return out;
}

// Swap qubits A and B of an 8-dim ket.
CVector swap_ab(const CVector& v) {
    static const int perm[8] = {0, 1, 4, 5, 2, 3, 6, 7};
    CVector out(8);
    for (int i = 0; i < 8; ++i) out(perm[i]) = v(i);
    return out;
}

}  // namespace

SchmidtData schmidt_from_marginals(const DensityMatrix& rho_bc, const DensityMatrix& rho_ab,
                                   const Options& opt) {
    if (rho_bc.dim() != 4 || rho_ab.dim() != 4) {
        throw std::invalid_argument("schmidt_from_marginals: marginals must be two-qubit");
    }
    const DensityMatrix bc = psd_project(rho_bc);
    const DensityMatrix ab = psd_project(rho_ab);

    const CMatrix rho_a = partial_trace_matrix(ab.matrix(), {0}, 2);
    const Eigensystem ea = eig_hermitian(rho_a);
    const Eigensystem ebc = eig_hermitian(bc.matrix());

    for (int i = 0; i < 2; ++i) {
        if (std::abs(ea.values(i) - ebc.values(i)) > opt.tol_inconsistent) {
            throw MarginalInconsistencyError(
                "marginal spectra disagree beyond " + std::to_string(opt.tol_inconsistent) +
                ": rho_A gives " + std::to_string(ea.values(i)) + ", rho_BC gives " +
                std::to_string(ebc.values(i)));
        }
    }

    SchmidtData out;
    out.p(0) = 0.5 * (ea.values(0) + ebc.values(0));
    out.p(1) = 0.5 * (ea.values(1) + ebc.values(1));
    out.p = out.p.cwiseMax(0.0);
    out.p /= out.p.sum();
    if (out.p(0) - out.p(1) < opt.tol_degen) {
        throw DegenerateSpectrumError("marginal spectrum degenerate within " +
                                      std::to_string(opt.tol_degen) +
                                      ": generalized GHZ class");
    }
    out.a_vectors = ea.vectors;
    out.bc_vectors = ebc.vectors.leftCols(2);
    return out;
}

double phase_fit(const SchmidtData& schmidt, const DensityMatrix& rho_ab) {
    if (schmidt.p(1) <= 0.0) {
        throw std::invalid_argument("phase_fit: rank-one Schmidt data has no free phase");
    }
    // Cross term of the candidate AB marginal:
    //   X(alpha) = e^{i alpha} sqrt(p0 p1) |a1><a0| (x) Tr_C |v1><v0|.
    const CMatrix v10 = schmidt.bc_vectors.col(1) * schmidt.bc_vectors.col(0).adjoint();
    const CMatrix t = partial_trace_matrix(v10, {0}, 2);  // 2x2 on B
    const double xnorm = std::sqrt(schmidt.p(0) * schmidt.p(1)) * t.norm();
    if (xnorm < 1e-9) {
        throw PhaseIndeterminateError(
            "AB cross block vanishes: relative phase unobservable (generalized GHZ class)");
    }
    // Matching cross block of the input: Y = <a1| rho_AB |a0> on B.
    const CVector a0 = schmidt.a_vectors.col(0);
    const CVector a1 = schmidt.a_vectors.col(1);
    CMatrix y = CMatrix::Zero(2, 2);
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj)
            for (int ai = 0; ai < 2; ++ai)
                for (int aj = 0; aj < 2; ++aj)
                    y(bi, bj) += std::conj(a1(ai)) * rho_ab.matrix()(2 * ai + bi, 2 * aj + bj) *
                                 a0(aj);
    const Cplx inner = (t.adjoint() * y).trace();
    return std::arg(inner);
}

Ket reconstruct_pure(const DensityMatrix& rho_ab, const DensityMatrix& rho_bc,
                     const Options& opt) {
    const SchmidtData s = schmidt_from_marginals(rho_bc, rho_ab, opt);
    CVector psi(8);
    if (s.p(1) < kRankOneTol) {
        // Schmidt rank 1: product of the leading eigenvectors.
        for (int a = 0; a < 2; ++a)
            for (int bc = 0; bc < 4; ++bc)
                psi(4 * a + bc) = s.a_vectors(a, 0) * s.bc_vectors(bc, 0);
        return Ket(std::move(psi));
    }
    const double alpha = phase_fit(s, psd_project(rho_ab));
    const Cplx ph = std::exp(Cplx(0.0, alpha));
    for (int a = 0; a < 2; ++a) {
        for (int bc = 0; bc < 4; ++bc) {
            psi(4 * a + bc) = std::sqrt(s.p(0)) * s.a_vectors(a, 0) * s.bc_vectors(bc, 0) +
                              ph * std::sqrt(s.p(1)) * s.a_vectors(a, 1) * s.bc_vectors(bc, 1);
        }
    }
    return Ket(std::move(psi));
}

Ket reconstruct_from_ab_ac(const DensityMatrix& rho_ab, const DensityMatrix& rho_ac,
                           const Options& opt) {
    // Relabel (A,B,C) -> (B,A,C): rho_BA plays the outer-pair role and
    // rho_AC the inner one; the result is permuted back.
    const DensityMatrix rho_ba = DensityMatrix(swap_pair(rho_ab.matrix()));
    const Ket psi_bac = reconstruct_pure(rho_ba, rho_ac, opt);
    return Ket(swap_ab(psi_bac.amps()));
}

}  // namespace trispin::recon
