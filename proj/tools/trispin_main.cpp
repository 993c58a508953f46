// trispin: construct canonical three-qubit states at the closed-form, gate
// or NMR pulse level, simulate their tomography, and rebuild them from
// two-party reduced density matrices.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "trispin/gates.hpp"
#include "trispin/io.hpp"
#include "trispin/pulsesim.hpp"
#include "trispin/qcore.hpp"
#include "trispin/reconstruct.hpp"
#include "trispin/states.hpp"
#include "trispin/tomo.hpp"

namespace {

using namespace trispin;

constexpr double kDeg = std::numbers::pi / 180.0;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitInconsistent = 3;

struct ParamFlags {
    double alpha = 0, beta = 0, gamma = 0, delta = 0, phi = 0;  // degrees
    std::string params_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "alpha in degrees");
        cmd->add_option("--beta", beta, "beta in degrees");
        cmd->add_option("--gamma", gamma, "gamma in degrees");
        cmd->add_option("--delta", delta, "delta in degrees");
        cmd->add_option("--phi", phi, "phi in degrees");
        cmd->add_option("--params", params_file,
                        "JSON parameter file (overrides the angle flags)");
    }

    // Flags are degrees; a --params file takes precedence.
    void resolve() {
        if (params_file.empty()) return;
        const states::GenericParams p = io::params_from_json(io::read_file(params_file));
        alpha = p.alpha / kDeg;
        beta = p.beta / kDeg;
        gamma = p.gamma / kDeg;
        delta = p.delta / kDeg;
        phi = p.phi / kDeg;
    }

    states::GenericParams generic() const {
        return states::GenericParams{alpha * kDeg, beta * kDeg, gamma * kDeg, delta * kDeg,
                                     phi * kDeg};
    }
};

int parse_basis_state(const std::string& s) {
    if (s.size() == 3 && s.find_first_not_of("01") == std::string::npos) {
        return ((s[0] - '0') << 2) | ((s[1] - '0') << 1) | (s[2] - '0');
    }
    return std::stoi(s);
}

std::string basis_label(int i) {
    std::string s = "|";
    s += static_cast<char>('0' + ((i >> 2) & 1));
    s += static_cast<char>('0' + ((i >> 1) & 1));
    s += static_cast<char>('0' + (i & 1));
    return s + ">";
}

void print_amplitudes(const Ket& k) {
    std::printf("%-8s %12s %12s %10s %11s\n", "basis", "re", "im", "|amp|", "phase(deg)");
    for (int i = 0; i < k.dim(); ++i) {
        const Cplx a = k.amp(i);
        if (std::abs(a) < 1e-12) continue;
        std::printf("%-8s %12.6f %12.6f %10.6f %11.3f\n", basis_label(i).c_str(), a.real(),
                    a.imag(), std::abs(a), std::arg(a) / kDeg);
    }
}

pulse::SpinSystem system_or_default(const std::string& path) {
    if (path.empty()) return pulse::SpinSystem::tfie();
    return io::load_system(path);
}

Ket target_ket(const std::string& kind, const ParamFlags& p) {
    if (kind == "generic") return states::generic_ket(p.generic());
    if (kind == "ghz") return states::ghz_ket(p.alpha * kDeg);
    if (kind == "w") return states::w_ket(p.beta * kDeg, p.gamma * kDeg);
    throw CLI::ValidationError("kind must be generic, ghz or w");
}

gates::Circuit build_circuit(const std::string& kind, const ParamFlags& p, bool fuse) {
    if (kind == "generic") return gates::build_generic_circuit(p.generic(), fuse);
    if (kind == "ghz") return gates::build_ghz_circuit(p.alpha * kDeg);
    if (kind == "w") return gates::build_w_circuit(p.beta * kDeg, p.gamma * kDeg);
    throw CLI::ValidationError("kind must be generic, ghz or w");
}

pulse::PulseProgram build_program(const std::string& kind, const ParamFlags& p,
                                  const pulse::SpinSystem& sys) {
    if (kind == "generic") return pulse::compile_generic(p.generic(), sys);
    if (kind == "ghz") return pulse::compile_ghz(p.alpha * kDeg, sys);
    if (kind == "w") return pulse::compile_w(p.beta * kDeg, p.gamma * kDeg, sys);
    throw CLI::ValidationError("kind must be generic, ghz or w");
}

int initial_basis_state(const std::string& kind) { return kind == "w" ? 4 : 0; }

std::vector<tomo::TomoOp> op_set_by_name(const std::string& name) {
    if (name == "full") return tomo::full_op_set();
    if (name == "seven") return tomo::seven_op_set();
    if (name == "ab") return tomo::pair_op_set(Pair::AB);
    if (name == "bc") return tomo::pair_op_set(Pair::BC);
    if (name == "ac") return tomo::pair_op_set(Pair::AC);
    throw CLI::ValidationError("--ops must be full, seven, ab, bc or ac");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canonical three-qubit state construction, tomography and reconstruction"};
    app.require_subcommand(1);

    // ---- make ----
    auto* make = app.add_subcommand("make", "write a state file from closed forms");
    std::string make_kind, make_out, make_state = "000";
    double make_eps = 1.0;
    ParamFlags make_params;
    make->add_option("kind", make_kind, "generic | ghz | w | pseudopure")->required();
    make_params.attach(make);
    make->add_option("--state", make_state, "pseudopure basis state, e.g. 000 or 100");
    make->add_option("--epsilon", make_eps, "pseudopure polarization in (0, 1]");
    make->add_option("--out", make_out, "output state JSON");

    // ---- circuit ----
    auto* circuit = app.add_subcommand("circuit", "emit or apply the gate-level circuit");
    std::string circ_kind, circ_out, circ_state_out, circ_in;
    bool circ_no_fusion = false;
    ParamFlags circ_params;
    circuit->add_option("kind", circ_kind, "generic | ghz | w")->required();
    circ_params.attach(circuit);
    circuit->add_flag("--no-fusion", circ_no_fusion,
                      "emit the explicit Toffoli + phase pair instead of the fused pulse");
    circuit->add_option("--out", circ_out, "circuit JSON output");
    circuit->add_option("--in", circ_in, "input state to apply the circuit to");
    circuit->add_option("--out-state", circ_state_out, "apply circuit and write the result");

    // ---- pulse-sim ----
    auto* psim = app.add_subcommand("pulse-sim", "compile and run the NMR pulse sequence");
    std::string ps_kind, ps_out, ps_prog_out, ps_system, ps_relax = "off";
    double ps_eps = 1.0;
    bool ps_pending = false;
    ParamFlags ps_params;
    psim->add_option("kind", ps_kind, "generic | ghz | w")->required();
    ps_params.attach(psim);
    psim->add_option("--system", ps_system, "SpinSystem JSON (default: built-in 19F system)");
    psim->add_option("--relaxation", ps_relax, "on | off")->check(CLI::IsMember({"on", "off"}));
    psim->add_option("--epsilon", ps_eps, "pseudopure polarization of the initial state");
    psim->add_flag("--apply-pending", ps_pending, "apply pending compensation z-rotations");
    psim->add_option("--out", ps_out, "output state JSON");
    psim->add_option("--export-program", ps_prog_out, "write the pulse program JSON");

    // ---- tomo ----
    auto* tm = app.add_subcommand("tomo", "simulate tomography readouts");
    std::string tm_ops = "full", tm_in, tm_out;
    double tm_sigma = 0.0;
    std::uint64_t tm_seed = 0;
    tm->add_option("--ops", tm_ops, "full | seven | ab | bc | ac");
    tm->add_option("--in", tm_in, "input state JSON")->required();
    tm->add_option("--out", tm_out, "records CSV")->required();
    tm->add_option("--noise-sigma", tm_sigma, "additive Gaussian line noise (default off)");
    tm->add_option("--seed", tm_seed, "noise seed");

    // ---- tomo-invert ----
    auto* ti = app.add_subcommand("tomo-invert", "least-squares inversion of records");
    std::string ti_in, ti_out, ti_target = "full";
    ti->add_option("--in", ti_in, "records CSV")->required();
    ti->add_option("--target", ti_target, "full | ab | bc | ac");
    ti->add_option("--out", ti_out, "output density-matrix JSON")->required();

    // ---- reconstruct ----
    auto* rc = app.add_subcommand("reconstruct",
                                  "rebuild the three-qubit state from two marginals");
    std::string rc_ab, rc_bc, rc_ac, rc_out;
    recon::Options rc_opt;
    rc->add_option("--ab", rc_ab, "rho_AB JSON")->required();
    rc->add_option("--bc", rc_bc, "rho_BC JSON");
    rc->add_option("--ac", rc_ac, "rho_AC JSON (alternative to --bc)");
    rc->add_option("--out", rc_out, "output ket JSON");
    rc->add_option("--tol-degen", rc_opt.tol_degen, "spectral degeneracy tolerance");
    rc->add_option("--tol-inconsistent", rc_opt.tol_inconsistent,
                   "marginal spectrum consistency tolerance");

    // ---- fidelity ----
    auto* fid = app.add_subcommand("fidelity", "normalized Hilbert-Schmidt overlap");
    std::string fid_a, fid_b;
    fid->add_option("a", fid_a, "first state file")->required();
    fid->add_option("b", fid_b, "second state file")->required();

    // ---- export-tomograph ----
    auto* et = app.add_subcommand("export-tomograph", "density-matrix bars as CSV");
    std::string et_in, et_out;
    et->add_option("--in", et_in, "state JSON")->required();
    et->add_option("--out", et_out, "CSV output")->required();

    // ---- rank-check ----
    auto* rk = app.add_subcommand("rank-check", "measurement-map ranks of the op sets");

    // ---- pipeline ----
    auto* pl = app.add_subcommand("pipeline", "prepare, tomograph, invert and report");
    std::string pl_kind, pl_prep = "closed", pl_system, pl_relax = "off";
    bool pl_recon = false;
    double pl_sigma = 0.0;
    std::uint64_t pl_seed = 0;
    ParamFlags pl_params;
    pl->add_option("kind", pl_kind, "generic | ghz | w")->required();
    pl_params.attach(pl);
    pl->add_option("--prep", pl_prep, "closed | circuit | pulse")
        ->check(CLI::IsMember({"closed", "circuit", "pulse"}));
    pl->add_option("--system", pl_system, "SpinSystem JSON for pulse preparation");
    pl->add_option("--relaxation", pl_relax, "on | off")->check(CLI::IsMember({"on", "off"}));
    pl->add_option("--noise-sigma", pl_sigma, "line noise for the tomography stage");
    pl->add_option("--seed", pl_seed, "noise seed");
    pl->add_flag("--reconstruct", pl_recon, "also rebuild the state from (rho_AB, rho_BC)");

    CLI11_PARSE(app, argc, argv);

    try {
        make_params.resolve();
        circ_params.resolve();
        ps_params.resolve();
        pl_params.resolve();

        if (*make) {
            if (make_kind == "pseudopure") {
                const DensityMatrix rho = states::pseudopure(
                    states::PseudopureSpec{parse_basis_state(make_state), make_eps});
                if (!make_out.empty()) io::save_state(make_out, rho);
                std::printf("pseudopure |%s> with epsilon = %g\n", make_state.c_str(), make_eps);
            } else {
                const Ket k = target_ket(make_kind, make_params);
                if (!make_out.empty()) io::save_state(make_out, k);
                print_amplitudes(k);
            }
            return kExitOk;
        }

        if (*circuit) {
            const gates::Circuit c = build_circuit(circ_kind, circ_params, !circ_no_fusion);
            if (!circ_out.empty()) io::write_file(circ_out, io::circuit_to_json(c));
            if (!circ_state_out.empty()) {
                const Ket in = circ_in.empty()
                                   ? Ket::basis(8, initial_basis_state(circ_kind))
                                   : std::get<Ket>(io::load_state(circ_in));
                const Ket out = gates::apply(c, in);
                io::save_state(circ_state_out, out);
                print_amplitudes(out);
            }
            std::printf("circuit %s: %zu gates\n", circ_kind.c_str(), c.gates.size());
            return kExitOk;
        }

        if (*psim) {
            const pulse::SpinSystem sys = system_or_default(ps_system);
            const pulse::PulseProgram prog = build_program(ps_kind, ps_params, sys);
            const DensityMatrix init = states::pseudopure(
                states::PseudopureSpec{prog.initial_state, ps_eps});
            const bool relax = ps_relax == "on";
            const DensityMatrix out = ps_pending
                                          ? pulse::evolve_compensated(prog, init, sys, relax)
                                          : pulse::evolve(prog, init, sys, relax);
            if (!ps_out.empty()) io::save_state(ps_out, out);
            if (!ps_prog_out.empty()) io::write_file(ps_prog_out, io::program_to_json(prog));
            for (const auto& note : prog.notes) std::printf("note: %s\n", note.c_str());
            std::printf("pulse-sim %s: %zu events, duration %.3f ms, relaxation %s\n",
                        ps_kind.c_str(), prog.events.size(), prog.total_duration() * 1e3,
                        relax ? "on" : "off");
            const double f =
                fidelity(out, DensityMatrix::pure(target_ket(ps_kind, ps_params)));
            std::printf("fidelity vs closed form = %.9f\n", f);
            return kExitOk;
        }

        if (*tm) {
            const DensityMatrix rho = io::as_density(io::load_state(tm_in));
            auto records = tomo::simulate_readouts(rho, op_set_by_name(tm_ops));
            tomo::add_line_noise(records, tm_sigma, tm_seed);
            io::write_file(tm_out, io::records_to_csv(records));
            std::printf("tomo: %zu records (%s set) -> %s\n", records.size(), tm_ops.c_str(),
                        tm_out.c_str());
            return kExitOk;
        }

        if (*ti) {
            const auto records = io::records_from_csv(io::read_file(ti_in));
            std::optional<DensityMatrix> rho;
            if (ti_target == "full") {
                rho = tomo::invert(records);
            } else if (ti_target == "ab") {
                rho = tomo::invert_pair(records, Pair::AB).rho;
            } else if (ti_target == "bc") {
                rho = tomo::invert_pair(records, Pair::BC).rho;
            } else if (ti_target == "ac") {
                rho = tomo::invert_pair(records, Pair::AC).rho;
            } else {
                std::cerr << "tomo-invert: unknown target " << ti_target << "\n";
                return kExitUsage;
            }
            io::save_state(ti_out, *rho);
            std::printf("tomo-invert: %s target from %zu records -> %s\n", ti_target.c_str(),
                        records.size(), ti_out.c_str());
            return kExitOk;
        }

        if (*rc) {
            const DensityMatrix ab = io::as_density(io::load_state(rc_ab));
            std::optional<Ket> psi;
            if (!rc_bc.empty()) {
                psi = recon::reconstruct_pure(ab, io::as_density(io::load_state(rc_bc)), rc_opt);
            } else if (!rc_ac.empty()) {
                psi = recon::reconstruct_from_ab_ac(
                    ab, io::as_density(io::load_state(rc_ac)), rc_opt);
            } else {
                std::cerr << "reconstruct: need --bc or --ac\n";
                return kExitUsage;
            }
            if (!rc_out.empty()) io::save_state(rc_out, *psi);
            print_amplitudes(*psi);
            return kExitOk;
        }

        if (*fid) {
            const DensityMatrix a = io::as_density(io::load_state(fid_a));
            const DensityMatrix b = io::as_density(io::load_state(fid_b));
            std::printf("fidelity = %.9f\n", fidelity(a, b));
            return kExitOk;
        }

        if (*et) {
            const DensityMatrix rho = io::as_density(io::load_state(et_in));
            io::write_file(et_out, io::tomograph_to_csv(rho));
            std::printf("export-tomograph: %d bars -> %s\n", rho.dim() * rho.dim(),
                        et_out.c_str());
            return kExitOk;
        }

        if (*rk) {
            std::printf("11-op set rank: %d / 63\n", tomo::measurement_rank(tomo::full_op_set()));
            std::printf("7-op set rank:  %d / 63\n",
                        tomo::measurement_rank(tomo::seven_op_set()));
            std::printf("III alone:      %d / 63\n",
                        tomo::measurement_rank({tomo::TomoOp::parse("III")}));
            for (Pair p : {Pair::AB, Pair::BC, Pair::AC}) {
                std::printf("pair %s set:    %d / 15\n", pair_label(p),
                            tomo::measurement_rank_pair(tomo::pair_op_set(p), p));
            }
            return kExitOk;
        }

        if (*pl) {
            const Ket target = target_ket(pl_kind, pl_params);
            const DensityMatrix target_rho = DensityMatrix::pure(target);
            const pulse::SpinSystem sys = system_or_default(pl_system);

            DensityMatrix prepared = target_rho;
            double duration_ms = 0.0;
            if (pl_prep == "circuit") {
                const gates::Circuit c = build_circuit(pl_kind, pl_params, true);
                prepared = DensityMatrix::pure(
                    gates::apply(c, Ket::basis(8, initial_basis_state(pl_kind))));
            } else if (pl_prep == "pulse") {
                const pulse::PulseProgram prog = build_program(pl_kind, pl_params, sys);
                const DensityMatrix init =
                    states::pseudopure(states::PseudopureSpec{prog.initial_state, 1.0});
                prepared = pulse::evolve_compensated(prog, init, sys, pl_relax == "on");
                duration_ms = prog.total_duration() * 1e3;
            }
            const double f_prep = fidelity(prepared, target_rho);
            std::printf("stage prepare (%s): fidelity vs target = %.9f", pl_prep.c_str(),
                        f_prep);
            if (duration_ms > 0) std::printf(", duration %.3f ms", duration_ms);
            std::printf("\n");

            auto records = tomo::simulate_readouts(prepared, tomo::full_op_set());
            tomo::add_line_noise(records, pl_sigma, pl_seed);
            const DensityMatrix inverted = tomo::invert(records);
            const double resid =
                (inverted.matrix() - prepared.matrix()).cwiseAbs().maxCoeff();
            const double f_tomo = fidelity(inverted, target_rho);
            std::printf(
                "stage tomography: inversion residual = %.3e, fidelity vs target = %.9f\n",
                resid, f_tomo);

            double f_recon = -1.0;
            if (pl_recon) {
                const DensityMatrix ab = partial_trace(inverted, {kQubitA, kQubitB});
                const DensityMatrix bc = partial_trace(inverted, {kQubitB, kQubitC});
                const Ket rebuilt = recon::reconstruct_pure(ab, bc);
                f_recon = fidelity(DensityMatrix::pure(rebuilt), target_rho);
                std::printf("stage reconstruct: fidelity vs target = %.9f\n", f_recon);
            }

            std::printf("report: prep=%.3f tomo=%.3f", f_prep, f_tomo);
            if (pl_recon) std::printf(" recon=%.3f", f_recon);
            std::printf("\n");
            return kExitOk;
        }
    } catch (const recon::DegenerateSpectrumError& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const recon::PhaseIndeterminateError& e) {
        std::cerr << "phase-indeterminate: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const recon::MarginalInconsistencyError& e) {
        std::cerr << "inconsistent: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
