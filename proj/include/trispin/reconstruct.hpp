#pragma once

#include <stdexcept>

#include "trispin/qcore.hpp"

// Reconstruction of a three-qubit pure state from two of its two-party
// reduced density matrices. A pure rho_ABC shares its spectrum between
// rho_A and rho_BC; the state is rebuilt as
//   |psi> = sqrt(p0)|a0>|v0> + e^{i alpha} sqrt(p1)|a1>|v1>
// with the single free phase fixed against rho_AB. Generalized GHZ states
// are the exception class: they fail either the spectral-gap gate or the
// cross-block gate below.

namespace trispin::recon {

// p0 - p1 below tolerance: the spectrum does not single out a Schmidt pair.
struct DegenerateSpectrumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The AB cross block vanishes, so the relative phase is unobservable.
struct PhaseIndeterminateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The two marginals do not look like reductions of a common near-pure state.
struct MarginalInconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    double tol_degen = 1e-3;         // spectral-gap gate
    double tol_inconsistent = 0.2;   // allowed mismatch of the paired spectra
};

struct SchmidtData {
    Eigen::Vector2d p;   // descending, sums to 1
    CMatrix a_vectors;   // 2x2, orthonormal eigenvector columns of rho_A
    CMatrix bc_vectors;  // 4x2, top-2 eigenvector columns of rho_BC
};

// rho_A = Tr_B(rho_AB); pair the two rho_A eigenvalues with the two largest
// rho_BC eigenvalues by descending order and average them.
SchmidtData schmidt_from_marginals(const DensityMatrix& rho_bc, const DensityMatrix& rho_ab,
                                   const Options& opt = {});

// Analytic minimizer of the Frobenius distance between the candidate's AB
// marginal and rho_ab over the free phase: alpha* = arg <X(0), Y> with X the
// candidate cross term and Y the matching cross block of rho_ab.
double phase_fit(const SchmidtData& schmidt, const DensityMatrix& rho_ab);

Ket reconstruct_pure(const DensityMatrix& rho_ab, const DensityMatrix& rho_bc,
                     const Options& opt = {});

// Same reconstruction driven by (rho_AB, rho_AC), by relabeling the qubits
// so that A plays the inner role.
Ket reconstruct_from_ab_ac(const DensityMatrix& rho_ab, const DensityMatrix& rho_ac,
                           const Options& opt = {});

}  // namespace trispin::recon
