#include "trispin/pulsesim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trispin::pulse {

namespace {

constexpr double kPi = std::numbers::pi;

// Pulse phases (angle of the rotation axis from x).
constexpr double kX = 0.0;
constexpr double kY = kPi / 2.0;
constexpr double kMx = kPi;
constexpr double kMy = 3.0 * kPi / 2.0;

double wrap_angle(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}

CMatrix rot2(double flip, double phase) {
    const double c = std::cos(flip / 2.0), s = std::sin(flip / 2.0);
    CMatrix u(2, 2);
    u << c, Cplx(0.0, -s) * std::exp(Cplx(0.0, -phase)),
         Cplx(0.0, -s) * std::exp(Cplx(0.0, phase)), c;
    return u;
}

CMatrix zrot2(double angle) {
    CMatrix u = CMatrix::Zero(2, 2);
    u(0, 0) = std::exp(Cplx(0.0, -angle / 2.0));
    u(1, 1) = std::exp(Cplx(0.0, angle / 2.0));
    return u;
}

void check_spin(int s) {
    if (s < 0 || s > 2) throw std::invalid_argument("spin index must be 0..2");
}

}  // namespace

double SpinSystem::coupling(int a, int b) const { return j[coupling_index(a, b)]; }

SpinSystem SpinSystem::tfie() {
    SpinSystem s;
    s.nu = {0.0, 0.0, 0.0};
    s.j = {69.8, 47.5, -129.0};
    s.t1 = 5.0;
    s.t2 = 1.0;
    return s;
}

int coupling_index(int a, int b) {
    check_spin(a);
    check_spin(b);
    if (a == b) throw std::invalid_argument("coupling_index: identical spins");
    if (a > b) std::swap(a, b);
    if (a == 0) return b == 1 ? 0 : 1;
    return 2;
}

double PulseProgram::total_duration() const {
    double t = 0.0;
    for (const auto& ev : events) {
        if (const auto* d = std::get_if<Delay>(&ev)) t += d->duration;
    }
    return t;
}

bool PulseProgram::has_pending_z() const {
    return std::abs(pending_z[0]) > 1e-12 || std::abs(pending_z[1]) > 1e-12 ||
           std::abs(pending_z[2]) > 1e-12;
}

CMatrix delay_unitary(double t, const SpinSystem& sys, const CouplingMask& active,
                      bool include_offsets) {
    if (t < 0.0) throw std::invalid_argument("delay_unitary: negative duration");
    CMatrix u = CMatrix::Zero(8, 8);
    for (int b = 0; b < 8; ++b) {
        // Iz eigenvalue +1/2 for bit 0.
        const double z[3] = {((b >> 2) & 1) ? -0.5 : 0.5,
                             ((b >> 1) & 1) ? -0.5 : 0.5,
                             (b & 1) ? -0.5 : 0.5};
        double h = 0.0;
        if (include_offsets) {
            for (int q = 0; q < 3; ++q) h += sys.nu[q] * z[q];
        }
        if (active[0]) h += sys.j[0] * z[0] * z[1];
        if (active[1]) h += sys.j[1] * z[0] * z[2];
        if (active[2]) h += sys.j[2] * z[1] * z[2];
        u(b, b) = std::exp(Cplx(0.0, -2.0 * kPi * h * t));
    }
    return u;
}

CMatrix event_unitary(const PulseEvent& ev, const SpinSystem& sys) {
    if (const auto* p = std::get_if<RfPulse>(&ev)) {
        CMatrix u = CMatrix::Identity(8, 8);
        for (int t : p->targets) {
            check_spin(t);
            u = lift1(rot2(p->flip, p->phase), t, 3) * u;
        }
        return u;
    }
    if (const auto* d = std::get_if<Delay>(&ev)) {
        return delay_unitary(d->duration, sys, d->couplings, true);
    }
    if (const auto* z = std::get_if<ZRot>(&ev)) {
        CMatrix u = CMatrix::Identity(8, 8);
        for (int t : z->targets) {
            check_spin(t);
            u = lift1(zrot2(z->angle), t, 3) * u;
        }
        return u;
    }
    const auto& tp = std::get<TransitionPulse>(ev);
    if (tp.level_a < 0 || tp.level_a > 7 || tp.level_b < 0 || tp.level_b > 7 ||
        tp.level_a == tp.level_b) {
        throw std::invalid_argument("TransitionPulse: bad levels");
    }
    // pi rotation about the in-plane axis at axis_phase in the {a,b} subspace.
    CMatrix u = CMatrix::Identity(8, 8);
    u(tp.level_a, tp.level_a) = 0.0;
    u(tp.level_b, tp.level_b) = 0.0;
    u(tp.level_b, tp.level_a) = Cplx(0.0, -1.0) * std::exp(Cplx(0.0, tp.axis_phase));
    u(tp.level_a, tp.level_b) = Cplx(0.0, -1.0) * std::exp(Cplx(0.0, -tp.axis_phase));
    return u;
}

namespace {

// Emits events while tracking the compensation z-rotation pending on each
// spin. Every rf pulse is emitted with its phase shifted by the pending
// angle of its spin, which keeps the running product equal to
//   (pending z-rotations)^dag * (ideal block product)
// up to global phase.
class Compiler {
public:
    explicit Compiler(const SpinSystem& sys) : sys_(sys) {}

    void rf(const std::vector<int>& targets, double flip, double nominal_phase) {
        // Group targets whose shifted phases coincide to keep simultaneous
        // pulses as single events where possible.
        std::vector<bool> done(3, false);
        for (int t : targets) check_spin(t);
        for (size_t i = 0; i < targets.size(); ++i) {
            if (done[targets[i]]) continue;
            const double phase = wrap_angle(nominal_phase - pending_[targets[i]]);
            RfPulse p;
            p.flip = flip;
            p.phase = phase;
            for (size_t k = i; k < targets.size(); ++k) {
                if (done[targets[k]]) continue;
                if (std::abs(wrap_angle(nominal_phase - pending_[targets[k]]) - phase) < 1e-12) {
                    p.targets.push_back(targets[k]);
                    done[targets[k]] = true;
                }
            }
            prog_.events.push_back(std::move(p));
        }
    }

    void zrot(const std::vector<int>& targets, double angle) {
        prog_.events.push_back(ZRot{targets, angle});
    }

    void delay(double duration, const CouplingMask& mask = kAllCouplings) {
        prog_.events.push_back(Delay{duration, mask});
    }

    // Evolution window of length T keeping only the a-b coupling: pi pulses
    // on both active spins at T/2 and T refocus their offsets, pi pairs on
    // the spectator at T/4 and 3T/4 cancel the other couplings and the
    // spectator offset. All couplings stay physically active.
    void coupled_window(int a, int b, double duration) {
        const int spect = 3 - a - b;
        const double q = duration / 4.0;
        delay(q);
        rf({spect}, kPi, kX);
        delay(q);
        rf({a, b}, kPi, kY);
        delay(q);
        rf({spect}, kPi, kX);
        delay(q);
        rf({a, b}, kPi, kY);
    }

    // Shortened controlled-rotation block: (theta) pulse, echoed 1/(2|J|)
    // J-evolution, (theta) pulse about the quadrature axis. Leaves a pending
    // -pi/2 (or +pi/2 for negative J) z-rotation on both spins.
    void short_block(int control, int target, double angle2theta) {
        const double j = sys_.coupling(control, target);
        if (std::abs(j) < 1e-9) throw std::invalid_argument("compile: zero coupling");
        const double theta = angle2theta / 2.0;
        const double comp = j > 0 ? -kPi / 2.0 : kPi / 2.0;
        rf({target}, theta, kMy);
        coupled_window(control, target, 1.0 / (2.0 * std::abs(j)));
        rf({target}, theta, j > 0 ? kMx : kX);
        pending_[control] += comp;
        pending_[target] += comp;
    }

    // Full-length block with explicit z-rotation pulses; no pending phases.
    void ideal_block(int control, int target, double angle2theta) {
        const double j = sys_.coupling(control, target);
        if (std::abs(j) < 1e-9) throw std::invalid_argument("compile: zero coupling");
        const double theta = angle2theta / 2.0;
        const double sign = j > 0 ? 1.0 : -1.0;
        rf({target}, theta, kMy);
        zrot({control, target}, sign * kPi / 2.0);
        coupled_window(control, target, 1.0 / (2.0 * std::abs(j)));
        rf({target}, theta, kMy);
        zrot({control, target}, sign * kPi);
    }

    // Transition-selective pi pulse delivering <b|U|a> = e^{i gate_phase}
    // (before frame correction); the pending phase of the flipped spin
    // shifts the emitted axis.
    void transition(int level_a, int level_b, double gate_phase) {
        const int diff = level_a ^ level_b;
        if (diff == 0 || (diff & (diff - 1)) != 0) {
            throw std::invalid_argument("transition: levels must differ in one spin");
        }
        const int spin = diff == 4 ? 0 : (diff == 2 ? 1 : 2);
        const double eff = gate_phase - pending_[spin];
        prog_.events.push_back(TransitionPulse{level_a, level_b, wrap_angle(eff + kPi / 2.0)});
    }

    // Emit terminal compensation z-rotations; angles in `keep` stay pending.
    void finalize(const std::array<double, 3>& keep = {0.0, 0.0, 0.0}) {
        for (int q = 0; q < 3; ++q) {
            const double emit = wrap_angle(pending_[q] - keep[q]);
            if (std::abs(emit) > 1e-12) zrot({q}, emit);
            prog_.pending_z[q] = wrap_angle(keep[q]);
        }
    }

    double pending(int q) const { return pending_[q]; }
    void add_pending(int q, double a) { pending_[q] += a; }
    PulseProgram& program() { return prog_; }

private:
    const SpinSystem& sys_;
    PulseProgram prog_;
    std::array<double, 3> pending_{0.0, 0.0, 0.0};
};

}  // namespace

PulseProgram compile_crot(int control, int target, double angle2theta,
                          const SpinSystem& sys, CrotVariant variant) {
    check_spin(control);
    check_spin(target);
    if (control == target) throw std::invalid_argument("compile_crot: spin collision");
    Compiler c(sys);
    if (variant == CrotVariant::Ideal) {
        c.ideal_block(control, target, angle2theta);
        c.finalize();
    } else {
        c.short_block(control, target, angle2theta);
        // Keep the compensation pending; this is the point of the variant.
        const double p0 = c.pending(control), p1 = c.pending(target);
        c.program().pending_z[control] = wrap_angle(p0);
        c.program().pending_z[target] = wrap_angle(p1);
    }
    return std::move(c.program());
}

PulseProgram compile_generic(const states::GenericParams& p, const SpinSystem& sys) {
    p.validate();
    Compiler c(sys);
    c.program().initial_state = 0;
    c.rf({0}, 2.0 * p.alpha, kY);          // U1_{2 alpha}
    c.short_block(0, 1, 2.0 * p.beta);     // CROT12
    c.short_block(1, 0, kPi);              // CNOT21
    c.short_block(0, 2, 2.0 * p.gamma);    // CROT13
    c.short_block(2, 0, kPi);              // CNOT31
    c.short_block(0, 1, 2.0 * p.delta);    // CROT12
    c.transition(6, 7, p.phi);             // fused Toffoli + phase
    c.finalize();
    return std::move(c.program());
}

PulseProgram compile_ghz(double alpha, const SpinSystem& sys) {
    if (!(alpha >= 0.0 && alpha <= kPi / 2.0)) {
        throw std::invalid_argument("compile_ghz: alpha out of range");
    }
    Compiler c(sys);
    c.program().initial_state = 0;
    c.rf({0}, 2.0 * alpha, kY);  // U1_{2 alpha}

    const double j12 = sys.coupling(0, 1);
    const double j13 = sys.coupling(0, 2);
    if (std::abs(j12) < 1e-9 || std::abs(j13) < 1e-9) {
        throw std::invalid_argument("compile_ghz: zero coupling");
    }
    const double tau12 = 1.0 / (2.0 * std::abs(j12));
    const double tau13 = 1.0 / (2.0 * std::abs(j13));

    if (tau13 <= tau12) {
        c.program().notes.push_back(
            "tau13 <= tau12: parallel CNOT schedule not applicable, using sequential blocks");
        c.short_block(0, 1, kPi);
        c.short_block(0, 2, kPi);
        c.finalize();
        return std::move(c.program());
    }

    const double tau_d = (tau13 - tau12) / 2.0;
    const double comp12 = j12 > 0 ? -kPi / 2.0 : kPi / 2.0;
    const double comp13 = j13 > 0 ? -kPi / 2.0 : kPi / 2.0;

    c.rf({1, 2}, kPi / 2.0, kMy);
    // J13-only windows around a shared window where J12 and J13 both run.
    // J23 cannot be refocused inside the shared window without also breaking
    // J12 or J13, so it is gated off there; the offset echo stays physical.
    c.coupled_window(0, 2, tau_d);
    CouplingMask shared{true, true, false};
    c.delay(tau12 / 2.0, shared);
    c.rf({0, 1, 2}, kPi, kX);
    c.delay(tau12 / 2.0, shared);
    c.rf({0, 1, 2}, kPi, kX);
    c.coupled_window(0, 2, tau_d);
    c.rf({1}, kPi / 2.0, j12 > 0 ? kMx : kX);
    c.rf({2}, kPi / 2.0, j13 > 0 ? kMx : kX);
    c.add_pending(0, comp12 + comp13);
    c.add_pending(1, comp12);
    c.add_pending(2, comp13);
    c.finalize();
    return std::move(c.program());
}

PulseProgram compile_w(double beta, double gamma, const SpinSystem& sys) {
    if (!(beta >= 0.0 && beta <= kPi / 2.0) || !(gamma >= 0.0 && gamma <= kPi / 2.0)) {
        throw std::invalid_argument("compile_w: parameter out of range");
    }
    Compiler c(sys);
    c.program().initial_state = 4;  // |100>
    c.rf({1}, 2.0 * beta, kY);      // U2_{2 beta}
    c.short_block(1, 0, kPi);       // CNOT21
    c.short_block(0, 2, 2.0 * gamma);  // CROT13
    c.short_block(2, 0, kPi);       // CNOT31
    // Keep the CROT13 target phase on spin 3 pending: the raw sequence then
    // produces the standard i|001> + |010> + |100> form, and the recorded
    // z-rotation maps it onto the all-real W ket.
    const double keep3 = sys.coupling(0, 2) > 0 ? -kPi / 2.0 : kPi / 2.0;
    c.finalize({0.0, 0.0, keep3});
    c.program().notes.push_back(
        "relative phase on spin 3 left uncompensated; pending z-rotation restores the real-amplitude form");
    return std::move(c.program());
}

DensityMatrix evolve(const PulseProgram& prog, const DensityMatrix& rho,
                     const SpinSystem& sys, bool relaxation) {
    if (rho.dim() != 8) throw std::invalid_argument("evolve: state must be 3-qubit");
    if (relaxation && (sys.t1 <= 0.0 || sys.t2 <= 0.0)) {
        throw std::invalid_argument("evolve: relaxation requires positive T1, T2");
    }
    CMatrix m = rho.matrix();
    for (const auto& ev : prog.events) {
        const CMatrix u = event_unitary(ev, sys);
        m = u * m * u.adjoint();
        if (!relaxation) continue;
        const auto* d = std::get_if<Delay>(&ev);
        if (d == nullptr || d->duration <= 0.0) continue;

        // Per-spin amplitude damping toward |0>.
        const double pd = 1.0 - std::exp(-d->duration / sys.t1);
        CMatrix k0(2, 2), k1(2, 2);
        k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - pd);
        k1 << 0.0, std::sqrt(pd), 0.0, 0.0;
        for (int q = 0; q < 3; ++q) {
            const CMatrix K0 = lift1(k0, q, 3), K1 = lift1(k1, q, 3);
            m = K0 * m * K0.adjoint() + K1 * m * K1.adjoint();
        }
        // Pure dephasing at rate 1/T2 - 1/(2 T1), clipped at zero.
        const double rate = std::max(0.0, 1.0 / sys.t2 - 0.5 / sys.t1);
        const double f = std::exp(-d->duration * rate);
        for (int q = 0; q < 3; ++q) {
            const int bit = 1 << (2 - q);
            for (int r = 0; r < 8; ++r)
                for (int col = 0; col < 8; ++col)
                    if (((r ^ col) & bit) != 0) m(r, col) *= f;
        }
    }
    m = 0.5 * (m + m.adjoint());
    m /= m.trace().real();
    return DensityMatrix(std::move(m));
}

CMatrix program_unitary(const PulseProgram& prog, const SpinSystem& sys) {
    CMatrix u = CMatrix::Identity(8, 8);
    for (const auto& ev : prog.events) u = event_unitary(ev, sys) * u;
    return u;
}

CMatrix pending_z_unitary(const PulseProgram& prog) {
    CMatrix u = CMatrix::Identity(8, 8);
    for (int q = 0; q < 3; ++q) {
        if (std::abs(prog.pending_z[q]) > 1e-15) {
            u = lift1(zrot2(prog.pending_z[q]), q, 3) * u;
        }
    }
    return u;
}

DensityMatrix evolve_compensated(const PulseProgram& prog, const DensityMatrix& rho,
                                 const SpinSystem& sys, bool relaxation) {
    DensityMatrix out = evolve(prog, rho, sys, relaxation);
    const CMatrix z = pending_z_unitary(prog);
    return DensityMatrix(z * out.matrix() * z.adjoint());
}

}  // namespace trispin::pulse
