#pragma once

#include <string>
#include <variant>
#include <vector>

#include "trispin/gates.hpp"
#include "trispin/pulsesim.hpp"
#include "trispin/qcore.hpp"
#include "trispin/states.hpp"
#include "trispin/tomo.hpp"

// File formats. Matrices and kets share the JSON schema
//   {"dim": n, "re": [[...]], "im": [[...]]}   (ket: 1-d "re"/"im" arrays).
// Angles are degrees in files and radians in memory.

namespace trispin::io {

using State = std::variant<Ket, DensityMatrix>;

std::string state_to_json(const State& s);
State state_from_json(const std::string& text);
void save_state(const std::string& path, const State& s);
State load_state(const std::string& path);

// Any loaded state as a density matrix (kets become pure projectors).
DensityMatrix as_density(const State& s);

// {"alpha_deg":..,"beta_deg":..,"gamma_deg":..,"delta_deg":..,"phi_deg":..}
std::string params_to_json(const states::GenericParams& p);
states::GenericParams params_from_json(const std::string& text);

// {"nu_hz":[..],"j_hz":[J12,J13,J23],"t1_s":..,"t2_s":..}
std::string system_to_json(const pulse::SpinSystem& s);
pulse::SpinSystem system_from_json(const std::string& text);
pulse::SpinSystem load_system(const std::string& path);

// Ordered list of {"gate":..,"qubits":[..],"params_deg":[..]}.
std::string circuit_to_json(const gates::Circuit& c);
gates::Circuit circuit_from_json(const std::string& text);

// Ordered events with a variant tag; durations in seconds, angles in degrees.
std::string program_to_json(const pulse::PulseProgram& p);
pulse::PulseProgram program_from_json(const std::string& text);

// CSV with header op,spin,spectator_state,re,im; spins 1..3, spectator
// states as two-bit strings.
std::string records_to_csv(const std::vector<tomo::TomoRecord>& records);
std::vector<tomo::TomoRecord> records_from_csv(const std::string& text);

// CSV with header row,col,re,im: the 64 density-matrix bars in binary basis
// order |000> .. |111>.
std::string tomograph_to_csv(const DensityMatrix& rho);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace trispin::io
