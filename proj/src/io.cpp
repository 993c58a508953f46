#include "trispin/io.hpp"

#include <bitset>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace trispin::io {

namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

json complex_grid(const CMatrix& m) {
    json re = json::array(), im = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json rr = json::array(), ri = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

std::string label_bits(int value, int nbits) {
    std::string s;
    for (int b = nbits - 1; b >= 0; --b) s += ((value >> b) & 1) ? '1' : '0';
    return s;
}

}  // namespace

std::string state_to_json(const State& s) {
    json j;
    if (const Ket* k = std::get_if<Ket>(&s)) {
        j["dim"] = k->dim();
        json re = json::array(), im = json::array();
        for (int i = 0; i < k->dim(); ++i) {
            re.push_back(k->amp(i).real());
            im.push_back(k->amp(i).imag());
        }
        j["re"] = std::move(re);
        j["im"] = std::move(im);
    } else {
        const DensityMatrix& d = std::get<DensityMatrix>(s);
        j["dim"] = d.dim();
        json grid = complex_grid(d.matrix());
        j["re"] = grid["re"];
        j["im"] = grid["im"];
    }
    return j.dump(1) + "\n";
}

State state_from_json(const std::string& text) {
    const json j = json::parse(text);
    const int dim = j.at("dim").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.empty()) throw std::invalid_argument("state json: empty data");
    if (re.at(0).is_array()) {
        CMatrix m(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                m(r, c) = Cplx(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
        return DensityMatrix::from_rounded(m);
    }
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Cplx(re.at(i).get<double>(), im.at(i).get<double>());
    return Ket(std::move(v));
}

void save_state(const std::string& path, const State& s) { write_file(path, state_to_json(s)); }

State load_state(const std::string& path) { return state_from_json(read_file(path)); }

DensityMatrix as_density(const State& s) {
    if (const Ket* k = std::get_if<Ket>(&s)) return DensityMatrix::pure(*k);
    return std::get<DensityMatrix>(s);
}

std::string params_to_json(const states::GenericParams& p) {
    json j{{"alpha_deg", p.alpha / kDeg},
           {"beta_deg", p.beta / kDeg},
           {"gamma_deg", p.gamma / kDeg},
           {"delta_deg", p.delta / kDeg},
           {"phi_deg", p.phi / kDeg}};
    return j.dump(1) + "\n";
}

states::GenericParams params_from_json(const std::string& text) {
    const json j = json::parse(text);
    states::GenericParams p;
    p.alpha = j.at("alpha_deg").get<double>() * kDeg;
    p.beta = j.at("beta_deg").get<double>() * kDeg;
    p.gamma = j.at("gamma_deg").get<double>() * kDeg;
    p.delta = j.at("delta_deg").get<double>() * kDeg;
    p.phi = j.at("phi_deg").get<double>() * kDeg;
    p.validate();
    return p;
}

std::string system_to_json(const pulse::SpinSystem& s) {
    json j{{"nu_hz", {s.nu[0], s.nu[1], s.nu[2]}},
           {"j_hz", {s.j[0], s.j[1], s.j[2]}},
           {"t1_s", s.t1},
           {"t2_s", s.t2}};
    return j.dump(1) + "\n";
}

pulse::SpinSystem system_from_json(const std::string& text) {
    const json j = json::parse(text);
    pulse::SpinSystem s;
    for (int i = 0; i < 3; ++i) {
        s.nu[i] = j.at("nu_hz").at(i).get<double>();
        s.j[i] = j.at("j_hz").at(i).get<double>();
    }
    s.t1 = j.value("t1_s", 5.0);
    s.t2 = j.value("t2_s", 1.0);
    return s;
}

pulse::SpinSystem load_system(const std::string& path) {
    return system_from_json(read_file(path));
}

std::string circuit_to_json(const gates::Circuit& c) {
    json arr = json::array();
    for (const auto& g : c.gates) {
        json params = json::array();
        for (double p : g.params) params.push_back(p / kDeg);
        arr.push_back(json{{"gate", g.name}, {"qubits", g.qubits}, {"params_deg", params}});
    }
    return arr.dump(1) + "\n";
}

gates::Circuit circuit_from_json(const std::string& text) {
    const json arr = json::parse(text);
    gates::Circuit c;
    for (const auto& j : arr) {
        const std::string name = j.at("gate").get<std::string>();
        const std::vector<int> q = j.at("qubits").get<std::vector<int>>();
        std::vector<double> p;
        for (const auto& v : j.at("params_deg")) p.push_back(v.get<double>() * kDeg);
        if (name == "rot1") {
            c.gates.push_back(gates::rot1(q.at(0), p.at(0), p.at(1)));
        } else if (name == "cnot") {
            c.gates.push_back(gates::cnot(q.at(0), q.at(1)));
        } else if (name == "crot") {
            c.gates.push_back(gates::crot(q.at(0), q.at(1), p.at(0)));
        } else if (name == "toffoli") {
            c.gates.push_back(gates::toffoli(q.at(0), q.at(1), q.at(2)));
        } else if (name == "ccphase") {
            c.gates.push_back(gates::ccphase(q.at(0), q.at(1), q.at(2), p.at(0)));
        } else if (name == "transition_pi") {
            c.gates.push_back(gates::transition_pi(q.at(0), q.at(1), p.at(0)));
        } else {
            throw std::invalid_argument("circuit json: unknown gate " + name);
        }
    }
    return c;
}

std::string program_to_json(const pulse::PulseProgram& p) {
    json events = json::array();
    for (const auto& ev : p.events) {
        if (const auto* rf = std::get_if<pulse::RfPulse>(&ev)) {
            events.push_back(json{{"type", "rf"},
                                  {"targets", rf->targets},
                                  {"flip_deg", rf->flip / kDeg},
                                  {"phase_deg", rf->phase / kDeg}});
        } else if (const auto* d = std::get_if<pulse::Delay>(&ev)) {
            events.push_back(json{{"type", "delay"},
                                  {"duration_s", d->duration},
                                  {"couplings", {d->couplings[0], d->couplings[1], d->couplings[2]}}});
        } else if (const auto* z = std::get_if<pulse::ZRot>(&ev)) {
            events.push_back(json{{"type", "zrot"},
                                  {"targets", z->targets},
                                  {"angle_deg", z->angle / kDeg}});
        } else {
            const auto& t = std::get<pulse::TransitionPulse>(ev);
            events.push_back(json{{"type", "transition"},
                                  {"level_a", t.level_a},
                                  {"level_b", t.level_b},
                                  {"axis_phase_deg", t.axis_phase / kDeg}});
        }
    }
    json j{{"events", std::move(events)},
           {"pending_z_deg", {p.pending_z[0] / kDeg, p.pending_z[1] / kDeg, p.pending_z[2] / kDeg}},
           {"initial_state", p.initial_state},
           {"notes", p.notes}};
    return j.dump(1) + "\n";
}

pulse::PulseProgram program_from_json(const std::string& text) {
    const json j = json::parse(text);
    pulse::PulseProgram p;
    for (const auto& e : j.at("events")) {
        const std::string type = e.at("type").get<std::string>();
        if (type == "rf") {
            p.events.push_back(pulse::RfPulse{e.at("targets").get<std::vector<int>>(),
                                              e.at("flip_deg").get<double>() * kDeg,
                                              e.at("phase_deg").get<double>() * kDeg});
        } else if (type == "delay") {
            pulse::Delay d;
            d.duration = e.at("duration_s").get<double>();
            for (int i = 0; i < 3; ++i) d.couplings[i] = e.at("couplings").at(i).get<bool>();
            p.events.push_back(d);
        } else if (type == "zrot") {
            p.events.push_back(pulse::ZRot{e.at("targets").get<std::vector<int>>(),
                                           e.at("angle_deg").get<double>() * kDeg});
        } else if (type == "transition") {
            p.events.push_back(pulse::TransitionPulse{e.at("level_a").get<int>(),
                                                      e.at("level_b").get<int>(),
                                                      e.at("axis_phase_deg").get<double>() * kDeg});
        } else {
            throw std::invalid_argument("program json: unknown event type " + type);
        }
    }
    for (int i = 0; i < 3; ++i) p.pending_z[i] = j.at("pending_z_deg").at(i).get<double>() * kDeg;
    p.initial_state = j.value("initial_state", 0);
    if (j.contains("notes")) p.notes = j.at("notes").get<std::vector<std::string>>();
    return p;
}

std::string records_to_csv(const std::vector<tomo::TomoRecord>& records) {
    std::ostringstream out;
    out.precision(17);
    out << "op,spin,spectator_state,re,im\n";
    for (const auto& rec : records) {
        for (int k = 0; k < 3; ++k) {
            for (int s = 0; s < 4; ++s) {
                out << rec.op.str() << ',' << (k + 1) << ',' << label_bits(s, 2) << ','
                    << rec.lines[k][s].real() << ',' << rec.lines[k][s].imag() << '\n';
            }
        }
    }
    return out.str();
}

std::vector<tomo::TomoRecord> records_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("records csv: empty");
    std::vector<tomo::TomoRecord> records;
    auto find_record = [&records](const tomo::TomoOp& op) -> tomo::TomoRecord& {
        for (auto& r : records) {
            if (r.op.str() == op.str()) return r;
        }
        records.push_back(tomo::TomoRecord{op, {}});
        return records.back();
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string ops, spin, spect, re, im;
        std::getline(ls, ops, ',');
        std::getline(ls, spin, ',');
        std::getline(ls, spect, ',');
        std::getline(ls, re, ',');
        std::getline(ls, im, ',');
        tomo::TomoRecord& rec = find_record(tomo::TomoOp::parse(ops));
        const int k = std::stoi(spin) - 1;
        const int s = static_cast<int>(std::bitset<2>(spect).to_ulong());
        if (k < 0 || k > 2) throw std::invalid_argument("records csv: bad spin");
        rec.lines[k][s] = Cplx(std::stod(re), std::stod(im));
    }
    return records;
}

std::string tomograph_to_csv(const DensityMatrix& rho) {
    const int n = rho.num_qubits();
    std::ostringstream out;
    out.precision(17);
    out << "row,col,re,im\n";
    for (int r = 0; r < rho.dim(); ++r) {
        for (int c = 0; c < rho.dim(); ++c) {
            out << label_bits(r, n) << ',' << label_bits(c, n) << ','
                << rho.matrix()(r, c).real() << ',' << rho.matrix()(r, c).imag() << '\n';
        }
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

}  // namespace trispin::io
