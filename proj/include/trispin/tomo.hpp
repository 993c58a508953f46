#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trispin/qcore.hpp"

// Simulated NMR state tomography: spin-selective pi/2 readout operations,
// per-transition complex line amplitudes, and linear least-squares inversion
// back to a density matrix. Supports the full 11-operation protocol on the
// 63-parameter deviation space and the pairwise 4-operation protocols on the
// 15-parameter two-qubit spaces.

namespace trispin::tomo {

// One readout operation: a letter from {I, X, Y} per spin. X and Y are pi/2
// rotations about x and y.
struct TomoOp {
    std::array<char, 3> letters{'I', 'I', 'I'};

    static TomoOp parse(const std::string& s);
    std::string str() const;
};

// Line amplitudes of one readout: for each spin k and each computational
// configuration s of the two spectator spins (in A<B<C order), the complex
// amplitude  Tr[ U rho U^dag (|0><1|_k (x) P_s) ].
struct TomoRecord {
    TomoOp op;
    std::array<std::array<Cplx, 4>, 3> lines{};  // [spin][spectator config]
};

struct MarginalPair {
    Pair label = Pair::AB;
    DensityMatrix rho;
};

CMatrix op_unitary(const TomoOp& op);

TomoRecord simulate_readout(const DensityMatrix& rho, const TomoOp& op);

std::vector<TomoRecord> simulate_readouts(const DensityMatrix& rho,
                                          const std::vector<TomoOp>& ops);

// Additive Gaussian noise of width sigma on the real and imaginary part of
// every line, deterministic per seed.
void add_line_noise(std::vector<TomoRecord>& records, double sigma, std::uint64_t seed);

// Least-squares inversion of full-system records over the 63-dimensional
// traceless-Hermitian deviation space, followed by psd_project. Throws if the
// records' operation set does not span the space.
DensityMatrix invert(const std::vector<TomoRecord>& records);

// Pairwise inversion: spectator-summed lines of the pair's two spins feed the
// 15-parameter two-qubit deviation space.
MarginalPair invert_pair(const std::vector<TomoRecord>& records, Pair which);

// Rank of the stacked real measurement map on the 63-parameter space.
int measurement_rank(const std::vector<TomoOp>& ops);

// Rank of the pairwise map on the 15-parameter two-qubit space.
int measurement_rank_pair(const std::vector<TomoOp>& ops, Pair which);

// {III, IIX, IXI, XII, IIY, IYI, YII, YYI, IXX, XXX, YYY}
std::vector<TomoOp> full_op_set();

// {III, XXX, IIY, XYX, YII, XXY, IYY}
std::vector<TomoOp> seven_op_set();

// {III, IXI, IYI, XXI} for AB, {III, IIX, IIY, IXX} for BC,
// {III, IIX, IIY, XIX} for AC.
std::vector<TomoOp> pair_op_set(Pair which);

}  // namespace trispin::tomo
