#include "trispin/tomo.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace trispin::tomo {

namespace {

constexpr double kPi = std::numbers::pi;

CMatrix letter_unitary(char c) {
    CMatrix u(2, 2);
    const double h = 1.0 / std::sqrt(2.0);
    switch (c) {
        case 'I': return CMatrix::Identity(2, 2);
        case 'X':
            u << h, Cplx(0.0, -h), Cplx(0.0, -h), h;
            return u;  // exp(-i pi/4 sx)
        case 'Y':
            u << h, -h, h, h;
            return u;  // exp(-i pi/4 sy)
        default: throw std::invalid_argument("TomoOp letter must be I, X or Y");
    }
}

// Spectator qubits of spin k, ascending.
std::array<int, 2> spectators(int k) {
    switch (k) {
        case 0: return {1, 2};
        case 1: return {0, 2};
        default: return {0, 1};
    }
}

// Basis index with spin k set to `kbit` and the spectators set to the two
// bits of s (first spectator = high bit).
int line_index(int k, int s, int kbit) {
    const auto sp = spectators(k);
    int idx = kbit << (2 - k);
    idx |= ((s >> 1) & 1) << (2 - sp[0]);
    idx |= (s & 1) << (2 - sp[1]);
    return idx;
}

// Traceless Hermitian parameterization of a d-dim space: for i<j a symmetric
// and an antisymmetric generator, then d-1 diagonal generators. Generators
// touch at most two entries, so traces against them are read off directly.
std::vector<std::string> deviation_labels(int dim) {
    std::vector<std::string> labels;
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            labels.push_back("Re(" + std::to_string(i) + "," + std::to_string(j) + ")");
            labels.push_back("Im(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    for (int i = 1; i < dim; ++i) labels.push_back("D(" + std::to_string(i) + ")");
    return labels;
}

// Row of Tr(B_p W) over the parameterization, for a fixed detection operator.
Eigen::VectorXcd basis_traces(const CMatrix& w) {
    const int dim = static_cast<int>(w.rows());
    Eigen::VectorXcd out(dim * dim - 1);
    int p = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            out(p++) = w(i, j) + w(j, i);                       // e_ij + e_ji
            out(p++) = Cplx(0.0, 1.0) * (w(i, j) - w(j, i));    // -i e_ij + i e_ji
        }
    }
    for (int i = 1; i < dim; ++i) out(p++) = w(0, 0) - w(i, i);
    return out;
}

// I/dim + sum_p x_p B_p.
CMatrix assemble_deviation(const Eigen::VectorXd& x, int dim) {
    CMatrix m = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
    int p = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const double xr = x(p++);
            const double xi = x(p++);
            m(i, j) += Cplx(xr, -xi);
            m(j, i) += Cplx(xr, xi);
        }
    }
    for (int i = 1; i < dim; ++i) {
        const double xd = x(p++);
        m(0, 0) += xd;
        m(i, i) -= xd;
    }
    return m;
}

// Detection operators of an n-qubit register: lift of |0><1|_k (x) P_s.
std::vector<CMatrix> detection_ops(int num_qubits) {
    std::vector<CMatrix> ops;
    CMatrix low = CMatrix::Zero(2, 2);
    low(0, 1) = 1.0;
    const int nspec = num_qubits - 1;
    for (int k = 0; k < num_qubits; ++k) {
        for (int s = 0; s < (1 << nspec); ++s) {
            CMatrix m = CMatrix::Identity(1, 1);
            int si = 0;
            for (int q = 0; q < num_qubits; ++q) {
                if (q == k) {
                    m = kron(m, low);
                } else {
                    const int bit = (s >> (nspec - 1 - si)) & 1;
                    ++si;
                    CMatrix p = CMatrix::Zero(2, 2);
                    p(bit, bit) = 1.0;
                    m = kron(m, p);
                }
            }
            ops.push_back(std::move(m));
        }
    }
    return ops;
}

CMatrix pair_op_unitary(const TomoOp& op, Pair which) {
    const auto [qa, qb] = pair_qubits(which);
    return kron(letter_unitary(op.letters[qa]), letter_unitary(op.letters[qb]));
}

struct LinearMap {
    Eigen::MatrixXd a;                 // rows x params
    std::vector<std::string> labels;   // param labels
};

// Stacked real map from deviation parameters to line amplitudes for the
// given op set acting on an n-qubit register.
LinearMap build_map(const std::vector<TomoOp>& ops, int num_qubits, Pair which = Pair::AB,
                    bool use_pair = false) {
    const int dim = 1 << num_qubits;
    const int nparams = dim * dim - 1;
    const auto dets = detection_ops(num_qubits);
    const int rows_per_op = static_cast<int>(dets.size()) * 2;

    LinearMap lm;
    lm.labels = deviation_labels(dim);
    lm.a.resize(static_cast<int>(ops.size()) * rows_per_op, nparams);
    int row = 0;
    for (const auto& op : ops) {
        const CMatrix u = use_pair ? pair_op_unitary(op, which) : op_unitary(op);
        for (const auto& det : dets) {
            const CMatrix w = u.adjoint() * det * u;
            const Eigen::VectorXcd tr = basis_traces(w);
            lm.a.row(row) = tr.real().transpose();
            lm.a.row(row + 1) = tr.imag().transpose();
            row += 2;
        }
    }
    return lm;
}

int rank_of(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double tol = 1e-9 * sv(0) * std::max(a.rows(), a.cols());
    int r = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) ++r;
    }
    return r;
}

// Solve the least-squares system and assemble I/dim + sum x_p B_p.
CMatrix solve_deviation(const LinearMap& lm, const Eigen::VectorXd& b, int dim) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(lm.a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double tol = 1e-9 * sv(0) * std::max(lm.a.rows(), lm.a.cols());
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) ++rank;
    }
    const int nparams = static_cast<int>(lm.a.cols());
    if (rank < nparams) {
        // Name the unresolved directions by their dominant generator.
        std::string missing;
        int named = 0;
        for (int i = rank; i < sv.size() && named < 4; ++i, ++named) {
            int imax = 0;
            svd.matrixV().col(i).cwiseAbs().maxCoeff(&imax);
            if (!missing.empty()) missing += ", ";
            missing += lm.labels[imax];
        }
        throw std::invalid_argument("tomographic inversion rank-deficient: rank " +
                                    std::to_string(rank) + " of " + std::to_string(nparams) +
                                    "; unresolved directions near: " + missing);
    }
    const Eigen::VectorXd x = svd.solve(b);
    return assemble_deviation(x, dim);
}

}  // namespace

TomoOp TomoOp::parse(const std::string& s) {
    if (s.size() != 3) throw std::invalid_argument("TomoOp: need three letters");
    TomoOp op;
    for (int i = 0; i < 3; ++i) {
        const char c = s[i];
        if (c != 'I' && c != 'X' && c != 'Y') {
            throw std::invalid_argument("TomoOp: letters must be I, X or Y");
        }
        op.letters[i] = c;
    }
    return op;
}

std::string TomoOp::str() const { return std::string(letters.begin(), letters.end()); }

CMatrix op_unitary(const TomoOp& op) {
    CMatrix u = CMatrix::Identity(1, 1);
    for (char c : op.letters) u = kron(u, letter_unitary(c));
    return u;
}

TomoRecord simulate_readout(const DensityMatrix& rho, const TomoOp& op) {
    if (rho.dim() != 8) throw std::invalid_argument("simulate_readout: need a 3-qubit state");
    const CMatrix u = op_unitary(op);
    const CMatrix r = u * rho.matrix() * u.adjoint();
    TomoRecord rec;
    rec.op = op;
    for (int k = 0; k < 3; ++k) {
        for (int s = 0; s < 4; ++s) {
            rec.lines[k][s] = r(line_index(k, s, 1), line_index(k, s, 0));
        }
    }
    return rec;
}

std::vector<TomoRecord> simulate_readouts(const DensityMatrix& rho,
                                          const std::vector<TomoOp>& ops) {
    std::vector<TomoRecord> out;
    out.reserve(ops.size());
    for (const auto& op : ops) out.push_back(simulate_readout(rho, op));
    return out;
}

void add_line_noise(std::vector<TomoRecord>& records, double sigma, std::uint64_t seed) {
    if (sigma <= 0.0) return;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, sigma);
    for (auto& rec : records) {
        for (auto& spin : rec.lines) {
            for (auto& v : spin) v += Cplx(n(rng), n(rng));
        }
    }
}

DensityMatrix invert(const std::vector<TomoRecord>& records) {
    if (records.empty()) throw std::invalid_argument("invert: no records");
    std::vector<TomoOp> ops;
    Eigen::VectorXd b(static_cast<int>(records.size()) * 24);
    int row = 0;
    for (const auto& rec : records) {
        ops.push_back(rec.op);
        for (int k = 0; k < 3; ++k) {
            for (int s = 0; s < 4; ++s) {
                b(row++) = rec.lines[k][s].real();
                b(row++) = rec.lines[k][s].imag();
            }
        }
    }
    const LinearMap lm = build_map(ops, 3);
    return psd_project(DensityMatrix(solve_deviation(lm, b, 8)));
}

MarginalPair invert_pair(const std::vector<TomoRecord>& records, Pair which) {
    if (records.empty()) throw std::invalid_argument("invert_pair: no records");
    const auto [qa, qb] = pair_qubits(which);
    const int other = 3 - qa - qb;

    // Spectator-summed lines of the pair's spins: summing the third spin's
    // configurations reduces the record to the pair marginal.
    std::vector<TomoOp> ops;
    Eigen::VectorXd b(static_cast<int>(records.size()) * 8);
    int row = 0;
    for (const auto& rec : records) {
        if (rec.op.letters[other] != 'I') {
            throw std::invalid_argument("invert_pair: op acts on the traced-out spin");
        }
        ops.push_back(rec.op);
        for (int k : {qa, qb}) {
            const int mate = (k == qa) ? qb : qa;
            const auto sp = spectators(k);
            const int mate_slot = (sp[0] == mate) ? 1 : 0;  // shift of mate bit in s
            const int other_slot = 1 - mate_slot;
            for (int mate_bit = 0; mate_bit < 2; ++mate_bit) {
                Cplx sum = 0.0;
                for (int obit = 0; obit < 2; ++obit) {
                    const int s = (mate_bit << mate_slot) | (obit << other_slot);
                    sum += rec.lines[k][s];
                }
                b(row++) = sum.real();
                b(row++) = sum.imag();
            }
        }
    }
    const LinearMap lm = build_map(ops, 2, which, /*use_pair=*/true);
    return MarginalPair{which, psd_project(DensityMatrix(solve_deviation(lm, b, 4)))};
}

int measurement_rank(const std::vector<TomoOp>& ops) {
    return rank_of(build_map(ops, 3).a);
}

int measurement_rank_pair(const std::vector<TomoOp>& ops, Pair which) {
    for (const auto& op : ops) {
        const auto [qa, qb] = pair_qubits(which);
        if (op.letters[3 - qa - qb] != 'I') {
            throw std::invalid_argument("measurement_rank_pair: op acts on the traced-out spin");
        }
    }
    return rank_of(build_map(ops, 2, which, /*use_pair=*/true).a);
}

std::vector<TomoOp> full_op_set() {
    std::vector<TomoOp> ops;
    for (const char* s : {"III", "IIX", "IXI", "XII", "IIY", "IYI", "YII", "YYI", "IXX",
                          "XXX", "YYY"}) {
        ops.push_back(TomoOp::parse(s));
    }
    return ops;
}

std::vector<TomoOp> seven_op_set() {
    std::vector<TomoOp> ops;
    for (const char* s : {"III", "XXX", "IIY", "XYX", "YII", "XXY", "IYY"}) {
        ops.push_back(TomoOp::parse(s));
    }
    return ops;
}

std::vector<TomoOp> pair_op_set(Pair which) {
    std::vector<const char*> names;
    switch (which) {
        case Pair::AB: names = {"III", "IXI", "IYI", "XXI"}; break;
        case Pair::BC: names = {"III", "IIX", "IIY", "IXX"}; break;
        case Pair::AC: names = {"III", "IIX", "IIY", "XIX"}; break;
    }
    std::vector<TomoOp> ops;
    for (const char* s : names) ops.push_back(TomoOp::parse(s));
    return ops;
}

}  // namespace trispin::tomo
