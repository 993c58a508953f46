#include "trispin/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trispin {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_dim(int dim) {
    int n = 0;
    while ((1 << n) < dim) ++n;
    return n;
}

}  // namespace

std::pair<int, int> pair_qubits(Pair p) {
    switch (p) {
        case Pair::AB: return {kQubitA, kQubitB};
        case Pair::BC: return {kQubitB, kQubitC};
        case Pair::AC: return {kQubitA, kQubitC};
    }
    throw std::invalid_argument("pair_qubits: bad pair");
}

const char* pair_label(Pair p) {
    switch (p) {
        case Pair::AB: return "AB";
        case Pair::BC: return "BC";
        case Pair::AC: return "AC";
    }
    return "?";
}

Ket::Ket(CVector amps) : amps_(std::move(amps)) {
    const int d = static_cast<int>(amps_.size());
    if (!is_power_of_two(d) || d < 2 || d > 8) {
        throw std::invalid_argument("Ket: dimension must be 2, 4 or 8");
    }
    if (!amps_.allFinite()) throw std::invalid_argument("Ket: non-finite amplitude");
    const double n = amps_.norm();
    if (n < 1e-12) throw std::invalid_argument("Ket: zero vector");
    amps_ /= n;
}

Ket Ket::basis(int dim, int index) {
    if (index < 0 || index >= dim) throw std::invalid_argument("Ket::basis: index out of range");
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return Ket(std::move(v));
}

int Ket::num_qubits() const { return log2_dim(dim()); }

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
    const int d = static_cast<int>(m_.rows());
    if (m_.cols() != d || !is_power_of_two(d) || d < 2 || d > 8) {
        throw std::invalid_argument("DensityMatrix: dimension must be 2, 4 or 8");
    }
    if (!m_.allFinite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    }
    if (std::abs(m_.trace() - Cplx(1.0, 0.0)) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-10");
    }
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
    return DensityMatrix(psi.amps() * psi.amps().adjoint());
}

DensityMatrix DensityMatrix::from_rounded(const CMatrix& m) {
    const int d = static_cast<int>(m.rows());
    if (m.cols() != d || !is_power_of_two(d) || d < 2 || d > 8) {
        throw std::invalid_argument("DensityMatrix::from_rounded: bad dimension");
    }
    CMatrix h = 0.5 * (m + m.adjoint());
    const double tr = h.trace().real();
    if (tr <= 0.0) throw std::invalid_argument("DensityMatrix::from_rounded: non-positive trace");
    DensityMatrix out;
    out.m_ = h / tr;
    return out;
}

int DensityMatrix::num_qubits() const { return log2_dim(dim()); }

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const int ra = static_cast<int>(a.rows()), ca = static_cast<int>(a.cols());
    const int rb = static_cast<int>(b.rows()), cb = static_cast<int>(b.cols());
    if (!is_power_of_two(ra) || !is_power_of_two(rb)) {
        throw std::invalid_argument("kron: dimensions must be powers of two");
    }
    if (ra * rb > 8 || ca * cb > 8) {
        throw std::invalid_argument("kron: product dimension exceeds 8");
    }
    CMatrix out(ra * rb, ca * cb);
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

CMatrix lift1(const CMatrix& op, int qubit, int num_qubits) {
    if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("lift1: operator must be 2x2");
    if (qubit < 0 || qubit >= num_qubits) throw std::invalid_argument("lift1: qubit out of range");
    CMatrix out = CMatrix::Identity(1, 1);
    for (int q = 0; q < num_qubits; ++q) {
        out = kron(out, q == qubit ? op : CMatrix::Identity(2, 2));
    }
    return out;
}

CMatrix partial_trace_matrix(const CMatrix& rho, const std::vector<int>& keep, int num_qubits) {
    std::vector<int> k = keep;
    std::sort(k.begin(), k.end());
    if (k.empty() || static_cast<int>(k.size()) >= num_qubits) {
        throw std::invalid_argument("partial_trace: keep set must be a proper non-empty subset");
    }
    for (size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 0 || k[i] >= num_qubits || (i > 0 && k[i] == k[i - 1])) {
            throw std::invalid_argument("partial_trace: bad keep set");
        }
    }
    std::vector<int> tr;
    for (int q = 0; q < num_qubits; ++q) {
        if (std::find(k.begin(), k.end(), q) == k.end()) tr.push_back(q);
    }
    const int nk = static_cast<int>(k.size());
    const int nt = static_cast<int>(tr.size());
    const int dk = 1 << nk;
    const int dt = 1 << nt;

    // Bit q of the full index sits at position (num_qubits - 1 - q).
    auto full_index = [&](int kept_bits, int traced_bits) {
        int b = 0;
        for (int i = 0; i < nk; ++i)
            b |= ((kept_bits >> (nk - 1 - i)) & 1) << (num_qubits - 1 - k[i]);
        for (int i = 0; i < nt; ++i)
            b |= ((traced_bits >> (nt - 1 - i)) & 1) << (num_qubits - 1 - tr[i]);
        return b;
    };

    CMatrix out = CMatrix::Zero(dk, dk);
    for (int r = 0; r < dk; ++r)
        for (int c = 0; c < dk; ++c)
            for (int t = 0; t < dt; ++t)
                out(r, c) += rho(full_index(r, t), full_index(c, t));
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    return DensityMatrix(partial_trace_matrix(rho.matrix(), keep, rho.num_qubits()));
}

Eigensystem eig_hermitian(const CMatrix& h, double herm_tol) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eig_hermitian: not square");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > herm_tol) {
        throw std::invalid_argument("eig_hermitian: matrix not Hermitian within tolerance");
    }
    CMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");

    const int d = static_cast<int>(h.rows());
    Eigensystem out;
    out.values.resize(d);
    out.vectors.resize(d, d);
    // Eigen sorts ascending; flip to descending.
    for (int i = 0; i < d; ++i) {
        out.values(i) = es.eigenvalues()(d - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
    }
    // Phase convention: largest-magnitude component real positive.
    for (int i = 0; i < d; ++i) {
        int imax = 0;
        out.vectors.col(i).cwiseAbs().maxCoeff(&imax);
        const Cplx z = out.vectors(imax, i);
        if (std::abs(z) > 0.0) out.vectors.col(i) *= std::conj(z) / std::abs(z);
    }
    return out;
}

double fidelity(const DensityMatrix& r1, const DensityMatrix& r2) {
    if (r1.dim() != r2.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    const double n1 = std::sqrt((r1.matrix().adjoint() * r1.matrix()).trace().real());
    const double n2 = std::sqrt((r2.matrix().adjoint() * r2.matrix()).trace().real());
    if (n1 < 1e-15 || n2 < 1e-15) throw std::invalid_argument("fidelity: zero-norm input");
    const Cplx num = (r1.matrix().adjoint() * r2.matrix()).trace();
    if (std::abs(num.imag()) > 1e-10 * std::max(1.0, std::abs(num.real()))) {
        throw std::runtime_error("fidelity: overlap has non-negligible imaginary part");
    }
    return num.real() / (n1 * n2);
}

DensityMatrix psd_project(const CMatrix& hermitian) {
    const CMatrix sym = 0.5 * (hermitian + hermitian.adjoint());
    Eigensystem es = eig_hermitian(sym);
    Eigen::VectorXd w = es.values.cwiseMax(0.0);
    const double s = w.sum();
    if (s <= 0.0) throw std::invalid_argument("psd_project: spectrum entirely non-positive");
    w /= s;
    CMatrix out = es.vectors * w.asDiagonal() * es.vectors.adjoint();
    return DensityMatrix(0.5 * (out + out.adjoint()));
}

DensityMatrix psd_project(const DensityMatrix& rho) { return psd_project(rho.matrix()); }

double overlap(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("overlap: dimension mismatch");
    return std::abs(a.amps().dot(b.amps()));
}

}  // namespace trispin
