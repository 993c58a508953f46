#pragma once

#include "trispin/qcore.hpp"

// Closed-form construction of the canonical five-parameter three-qubit state
//   a1|000> + a2|001> + a3|010> + a4|100> + a5 e^{i phi}|111>,
// its GHZ and W special cases, and the pseudopure initial state.

namespace trispin::states {

struct GenericParams {
    double alpha = 0.0;  // [0, pi/2]
    double beta = 0.0;   // [0, pi/2]
    double gamma = 0.0;  // [0, pi/2]
    double delta = 0.0;  // [0, pi/2]
    double phi = 0.0;    // [0, 2*pi), endpoints identified

    void validate() const;
};

struct Amplitudes {
    double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0;  // all >= 0, sum of squares 1
    double phi = 0;
};

struct PseudopureSpec {
    int basis_state = 0;   // 0..7
    double epsilon = 1.0;  // (0, 1]

    void validate() const;
};

// a1 = cos a, a2 = sin a cos b sin g, a3 = sin a sin b,
// a4 = sin a cos b cos g cos d, a5 = sin a cos b cos g sin d.
Amplitudes generic_amplitudes(const GenericParams& p);

Ket generic_ket(const GenericParams& p);

// cos(alpha)|000> + sin(alpha)|111>
Ket ghz_ket(double alpha);

// cos(gamma)cos(beta)|100> + sin(gamma)cos(beta)|001> + sin(beta)|010>
Ket w_ket(double beta, double gamma);

// The standard W state produced by the pulse implementation,
// (i|001> + |010> + |100>)/sqrt(3).
Ket w_ket_standard();

// (1-eps)/8 * I + eps |s><s|
DensityMatrix pseudopure(const PseudopureSpec& spec);

}  // namespace trispin::states
