#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Dense complex linear algebra for 1-3 qubit systems.
//
// Conventions used throughout:
//   - qubit 1 = A = most significant bit of the computational-basis index,
//     so |q1 q2 q3> has index q1*4 + q2*2 + q3 and the basis runs in binary
//     order from |000> to |111>.
//   - Iz|0> = +1/2 |0> (spin-up is the ground label |0>).

namespace trispin {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Qubit indices. A is the most significant bit.
inline constexpr int kQubitA = 0;
inline constexpr int kQubitB = 1;
inline constexpr int kQubitC = 2;

enum class Pair { AB, BC, AC };

// The two qubits of a pair, in A<B<C order.
std::pair<int, int> pair_qubits(Pair p);
const char* pair_label(Pair p);

// Pure state of 1-3 qubits, unit norm enforced at construction.
class Ket {
public:
    explicit Ket(CVector amps);
    static Ket basis(int dim, int index);

    int dim() const { return static_cast<int>(amps_.size()); }
    int num_qubits() const;
    const CVector& amps() const { return amps_; }
    Cplx amp(int i) const { return amps_(i); }

private:
    CVector amps_;
};

// Hermitian, unit-trace operator. Strict construction checks hermiticity and
// trace to 1e-10; rounded-data sources (matrices printed to two decimals)
// go through from_rounded(), which symmetrizes and renormalizes instead.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix m);
    static DensityMatrix pure(const Ket& psi);
    static DensityMatrix from_rounded(const CMatrix& m);

    int dim() const { return static_cast<int>(m_.rows()); }
    int num_qubits() const;
    const CMatrix& matrix() const { return m_; }

    double purity() const;
    // Smallest eigenvalue; >= -1e-8 for states produced by clean pipelines.
    double min_eigenvalue() const;

private:
    DensityMatrix() = default;
    CMatrix m_;
};

// Tensor product. Result dimension is rejected above 8.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Lift a single-qubit operator onto one qubit of an n-qubit register.
CMatrix lift1(const CMatrix& op, int qubit, int num_qubits);

// Reduced state on `keep` (subset of {kQubitA,kQubitB,kQubitC}, size 1 or 2),
// kept subsystems stay in A<B<C order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
CMatrix partial_trace_matrix(const CMatrix& rho, const std::vector<int>& keep, int num_qubits);

struct Eigensystem {
    Eigen::VectorXd values;  // descending
    CMatrix vectors;         // orthonormal columns, vectors.col(k) <-> values(k)
};

// Hermitian eigendecomposition. The input is symmetrized as (h + h^dag)/2;
// asymmetry beyond herm_tol is rejected. Eigenvector phases are fixed by
// making the largest-magnitude component real positive.
Eigensystem eig_hermitian(const CMatrix& h, double herm_tol = 1e-8);

// Normalized Hilbert-Schmidt overlap
//   F = Tr(r1^dag r2) / (sqrt(Tr r1^dag r1) sqrt(Tr r2^dag r2)).
double fidelity(const DensityMatrix& r1, const DensityMatrix& r2);

// Clip negative eigenvalues at zero and renormalize to unit trace. The raw
// overload symmetrizes its input first and rejects an entirely non-positive
// spectrum.
DensityMatrix psd_project(const DensityMatrix& rho);
DensityMatrix psd_project(const CMatrix& hermitian);

// |<psi|phi>| -- overlap magnitude, insensitive to global phase.
double overlap(const Ket& a, const Ket& b);

}  // namespace trispin
