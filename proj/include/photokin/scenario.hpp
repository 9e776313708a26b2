#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "photokin/linalg.hpp"

namespace photokin {

enum class MaterialKind { None, KronigPenney, FreeElectron };
enum class StateKind { Oscillator, Hydrogenic, Well, GridPotential };

struct ScenarioState {
  StateKind kind = StateKind::Oscillator;
  int n = 0, l = 0, m = 0;       // oscillator / hydrogenic quantum numbers
  double hbar_omega_ev = 1.0;    // oscillator
  double width_nm = 0.5;         // well
  double floor_ev = 0.0;         // well potential floor
  int points = 512;              // well / grid solve resolution
  int index = 0;                 // eigenstate index for well / grid kinds
  std::string file;              // grid_potential two-column text
};

// Declarative scan description, one flat `section.key = value` per line.
struct Scenario {
  MaterialKind material = MaterialKind::None;
  double a_nm = 1.0;
  double strength = 0.0; // m W a / hbar^2
  int cell_points = 256;
  int bands = 3;
  int k_points = 128;

  std::vector<ScenarioState> states;

  std::string process;
  int initial = -1;
  int final_state = -1;
  int band = -1;   // single-band processes (1-based)
  int band_i = -1; // interband pair
  int band_f = -1;
  double k_hole_over_pi_a = 0.5; // recombination hole wave vector

  double emin_ev = 0.0, emax_ev = 0.0;
  int points = 0;
  double incident_ev = 0.0; // fixed incoming photon for scattering sweeps
  Vec3 k_hat{0.0, 0.0, 1.0};
  Vec3 k_hat_out{1.0, 0.0, 0.0};
  std::string polarization = "eps1";
  std::string polarization_out = "eps1";

  double eta_inv_fs = 0.0;
  double gamma_inv_fs = 0.0;
  double window_ev = 0.0;
  bool resonant_only = false;
  bool broad_line_factor = false;
  double recoil_mass_ev = 0.0; // > 0 enables the recoil photon-energy shift
  double recoil_k_invnm = 0.0;
  double recoil_theta_rad = 0.0;

  std::string format = "csv";
  std::string path;

  std::string canonical_text() const;
};

struct ScenarioError {
  int line = 0;
  int column = 0;
  std::string kind; // SyntaxError | UnknownKey | MissingRequirement | RangeError
  std::string message;

  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + kind + ": " + message;
  }
};

struct ParseResult {
  std::optional<Scenario> scenario;
  std::vector<ScenarioError> errors;
  bool ok() const { return scenario.has_value() && errors.empty(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

inline bool parse_int(const std::string& s, int& out) {
  try {
    std::size_t pos = 0;
    out = std::stoi(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

inline bool parse_bool(const std::string& s, bool& out) {
  if (s == "true") { out = true; return true; }
  if (s == "false") { out = false; return true; }
  return false;
}

inline bool parse_vec3(const std::string& s, Vec3& out) {
  std::istringstream ss(s);
  std::string part;
  double vals[3];
  for (int j = 0; j < 3; ++j) {
    if (!std::getline(ss, part, ',')) return false;
    if (!parse_double(trim(part), vals[j])) return false;
  }
  if (std::getline(ss, part, ',')) return false;
  out = {vals[0], vals[1], vals[2]};
  return true;
}

inline std::string format_vec3(const Vec3& v) {
  std::ostringstream ss;
  ss << v.x << ',' << v.y << ',' << v.z;
  return ss.str();
}

} // namespace detail

inline const std::vector<std::string>& known_processes() {
  static const std::vector<std::string> procs = {
      "emission.dd",   "emission.dc",   "emission.dc_capture",
      "emission.cd",   "emission.cc",   "absorption.dd",
      "absorption.dc", "absorption.cd", "absorption.cc",
      "scattering.dd", "scattering.dc", "scattering.cd",
      "scattering.cc", "scattering.full", "recomb.eh"};
  return procs;
}

inline ParseResult parse_scenario(const std::string& text) {
  ParseResult result;
  Scenario sc;
  std::vector<ScenarioError>& errs = result.errors;

  std::map<int, ScenarioState> state_map; // by declared index

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_material_kind = false;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (detail::trim(line).empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errs.push_back({lineno, 1, "SyntaxError", "expected 'section.key = value'"});
      continue;
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const int key_col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    const int val_col = static_cast<int>(eq) + 2;

    auto bad_value = [&](const std::string& what) {
      errs.push_back({lineno, val_col, "RangeError", "key '" + key + "': " + what});
    };
    auto unknown = [&]() {
      errs.push_back({lineno, key_col, "UnknownKey", "unknown key '" + key + "'"});
    };

    if (key.empty() || value.empty()) {
      errs.push_back({lineno, key_col, "SyntaxError", "empty key or value"});
      continue;
    }

    // state.N.field
    if (key.rfind("state.", 0) == 0) {
      const auto rest = key.substr(6);
      const auto dot = rest.find('.');
      int sidx = -1;
      if (dot == std::string::npos || !detail::parse_int(rest.substr(0, dot), sidx) || sidx < 0) {
        unknown();
        continue;
      }
      ScenarioState& st = state_map[sidx];
      const std::string field = rest.substr(dot + 1);
      if (field == "kind") {
        if (value == "oscillator") st.kind = StateKind::Oscillator;
        else if (value == "hydrogenic") st.kind = StateKind::Hydrogenic;
        else if (value == "well") st.kind = StateKind::Well;
        else if (value == "grid_potential") st.kind = StateKind::GridPotential;
        else bad_value("unknown state kind '" + value + "'");
      } else if (field == "n") {
        if (!detail::parse_int(value, st.n)) bad_value("expected integer");
      } else if (field == "l") {
        if (!detail::parse_int(value, st.l)) bad_value("expected integer");
      } else if (field == "m") {
        if (!detail::parse_int(value, st.m)) bad_value("expected integer");
      } else if (field == "hbar_omega_ev") {
        if (!detail::parse_double(value, st.hbar_omega_ev) || st.hbar_omega_ev <= 0.0)
          bad_value("expected positive number");
      } else if (field == "width_nm") {
        if (!detail::parse_double(value, st.width_nm) || st.width_nm <= 0.0)
          bad_value("expected positive number");
      } else if (field == "floor_ev") {
        if (!detail::parse_double(value, st.floor_ev)) bad_value("expected number");
      } else if (field == "points") {
        if (!detail::parse_int(value, st.points) || st.points < 64) bad_value("expected integer >= 64");
      } else if (field == "index") {
        if (!detail::parse_int(value, st.index) || st.index < 0) bad_value("expected integer >= 0");
      } else if (field == "file") {
        st.file = value;
      } else {
        unknown();
      }
      continue;
    }

    if (key == "material.kind") {
      saw_material_kind = true;
      if (value == "kronig_penney") sc.material = MaterialKind::KronigPenney;
      else if (value == "free_electron") sc.material = MaterialKind::FreeElectron;
      else if (value == "none") sc.material = MaterialKind::None;
      else bad_value("unknown material kind '" + value + "'");
    } else if (key == "material.a_nm") {
      if (!detail::parse_double(value, sc.a_nm) || sc.a_nm <= 0.0) bad_value("expected positive number");
    } else if (key == "material.strength") {
      if (!detail::parse_double(value, sc.strength)) bad_value("expected number");
    } else if (key == "material.cell_points") {
      if (!detail::parse_int(value, sc.cell_points) || sc.cell_points < 128)
        bad_value("expected integer >= 128");
    } else if (key == "material.bands") {
      if (!detail::parse_int(value, sc.bands) || sc.bands < 1) bad_value("expected integer >= 1");
    } else if (key == "material.k_points") {
      if (!detail::parse_int(value, sc.k_points) || sc.k_points < 64)
        bad_value("expected integer >= 64");
    } else if (key == "process.kind") {
      const auto& procs = known_processes();
      if (std::find(procs.begin(), procs.end(), value) == procs.end())
        bad_value("unknown process '" + value + "'");
      else sc.process = value;
    } else if (key == "process.initial") {
      if (!detail::parse_int(value, sc.initial) || sc.initial < 0) bad_value("expected index >= 0");
    } else if (key == "process.final") {
      if (!detail::parse_int(value, sc.final_state) || sc.final_state < 0)
        bad_value("expected index >= 0");
    } else if (key == "process.band") {
      if (!detail::parse_int(value, sc.band) || sc.band < 1) bad_value("expected band >= 1");
    } else if (key == "process.band_i") {
      if (!detail::parse_int(value, sc.band_i) || sc.band_i < 1) bad_value("expected band >= 1");
    } else if (key == "process.band_f") {
      if (!detail::parse_int(value, sc.band_f) || sc.band_f < 1) bad_value("expected band >= 1");
    } else if (key == "process.k_hole_over_pi_a") {
      if (!detail::parse_double(value, sc.k_hole_over_pi_a)) bad_value("expected number");
    } else if (key == "photon.emin_ev") {
      if (!detail::parse_double(value, sc.emin_ev)) bad_value("expected number");
    } else if (key == "photon.emax_ev") {
      if (!detail::parse_double(value, sc.emax_ev)) bad_value("expected number");
    } else if (key == "photon.points") {
      if (!detail::parse_int(value, sc.points)) bad_value("expected integer");
    } else if (key == "photon.incident_ev") {
      if (!detail::parse_double(value, sc.incident_ev) || sc.incident_ev <= 0.0)
        bad_value("expected positive number");
    } else if (key == "photon.k_hat") {
      if (!detail::parse_vec3(value, sc.k_hat)) bad_value("expected 'x,y,z'");
    } else if (key == "photon.k_hat_out") {
      if (!detail::parse_vec3(value, sc.k_hat_out)) bad_value("expected 'x,y,z'");
    } else if (key == "photon.polarization") {
      if (value != "eps1" && value != "eps2" && value != "plus" && value != "minus" &&
          value != "unpolarized" && value != "angle_averaged")
        bad_value("unknown polarization '" + value + "'");
      else sc.polarization = value;
    } else if (key == "photon.polarization_out") {
      if (value != "eps1" && value != "eps2" && value != "plus" && value != "minus")
        bad_value("unknown polarization '" + value + "'");
      else sc.polarization_out = value;
    } else if (key == "numerics.eta_inv_fs") {
      if (!detail::parse_double(value, sc.eta_inv_fs) || sc.eta_inv_fs < 0.0)
        bad_value("expected number >= 0");
    } else if (key == "numerics.gamma_inv_fs") {
      if (!detail::parse_double(value, sc.gamma_inv_fs) || sc.gamma_inv_fs < 0.0)
        bad_value("expected number >= 0");
    } else if (key == "numerics.window_ev") {
      if (!detail::parse_double(value, sc.window_ev) || sc.window_ev < 0.0)
        bad_value("expected number >= 0");
    } else if (key == "numerics.resonant_only") {
      if (!detail::parse_bool(value, sc.resonant_only)) bad_value("expected true or false");
    } else if (key == "numerics.broad_line_factor") {
      if (!detail::parse_bool(value, sc.broad_line_factor)) bad_value("expected true or false");
    } else if (key == "numerics.recoil_mass_ev") {
      if (!detail::parse_double(value, sc.recoil_mass_ev) || sc.recoil_mass_ev < 0.0)
        bad_value("expected number >= 0");
    } else if (key == "numerics.recoil_k_invnm") {
      if (!detail::parse_double(value, sc.recoil_k_invnm) || sc.recoil_k_invnm < 0.0)
        bad_value("expected number >= 0");
    } else if (key == "numerics.recoil_theta_rad") {
      if (!detail::parse_double(value, sc.recoil_theta_rad)) bad_value("expected number");
    } else if (key == "output.format") {
      if (value != "csv" && value != "json") bad_value("expected csv or json");
      else sc.format = value;
    } else if (key == "output.path") {
      sc.path = value;
    } else {
      unknown();
    }
  }

  // assemble the state list in declared-index order
  for (auto& [idx, st] : state_map) {
    if (idx != static_cast<int>(sc.states.size()))
      errs.push_back({0, 0, "RangeError",
                      "state indices must be contiguous from 0; missing state." +
                          std::to_string(sc.states.size())});
    sc.states.push_back(st);
  }

  // cross-field validation
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) errs.push_back({0, 0, "MissingRequirement", what});
  };

  if (sc.process.empty()) {
    require(false, "process.kind is required");
  } else {
    const bool has_material = sc.material != MaterialKind::None;
    const std::string p = sc.process;
    const bool needs_band = p == "emission.dc" || p == "emission.dc_capture" ||
                            p == "emission.cd" || p == "absorption.dc" || p == "absorption.cd" ||
                            p == "scattering.dc" || p == "scattering.cd";
    const bool needs_band_pair = p == "emission.cc" || p == "absorption.cc" ||
                                 p == "scattering.cc" || p == "recomb.eh";
    if (needs_band || needs_band_pair) {
      require(has_material, "process '" + p + "' requires a band material");
      if (!saw_material_kind) {
        // covered by the requirement above
      }
    }
    if (needs_band) require(sc.band >= 1, "process '" + p + "' requires process.band");
    if (needs_band_pair)
      require(sc.band_i >= 1 && sc.band_f >= 1,
              "process '" + p + "' requires process.band_i and process.band_f");
    if (has_material) {
      require(sc.band <= sc.bands, "process.band exceeds material.bands");
      require(sc.band_i <= sc.bands && sc.band_f <= sc.bands,
              "process band indices exceed material.bands");
    }

    const bool needs_initial = p == "emission.dd" || p == "emission.dc" ||
                               p == "emission.dc_capture" || p == "absorption.dd" ||
                               p == "absorption.dc" || p == "scattering.dd" || p == "scattering.dc";
    const bool needs_final = p == "emission.dd" || p == "emission.cd" || p == "absorption.dd" ||
                             p == "absorption.cd" || p == "scattering.dd" || p == "scattering.cd";
    if (needs_initial)
      require(sc.initial >= 0 && sc.initial < static_cast<int>(sc.states.size()),
              "process '" + p + "' requires a valid process.initial discrete state");
    if (needs_final)
      require(sc.final_state >= 0 && sc.final_state < static_cast<int>(sc.states.size()),
              "process '" + p + "' requires a valid process.final discrete state");

    const bool needs_gamma = p == "emission.dd" || p == "absorption.dd" || p == "scattering.dd" ||
                             p == "recomb.eh";
    if (needs_gamma) require(sc.gamma_inv_fs > 0.0, "process '" + p + "' requires numerics.gamma_inv_fs");

    const bool scattering_sweep = p == "scattering.dd" || p == "scattering.dc" ||
                                  p == "scattering.cd" || p == "scattering.cc";
    if (scattering_sweep)
      require(sc.incident_ev > 0.0, "process '" + p + "' requires photon.incident_ev");
    const bool is_scattering = scattering_sweep || p == "scattering.full";
    if (is_scattering && (sc.polarization == "unpolarized" || sc.polarization == "angle_averaged"))
      errs.push_back({0, 0, "RangeError",
                      "scattering sweeps need an explicit polarization (eps1|eps2|plus|minus)"});
    if (p == "scattering.full")
      require(sc.initial >= 0 && sc.initial < static_cast<int>(sc.states.size()),
              "scattering.full requires a valid process.initial discrete state");
    if (p == "recomb.eh")
      require(sc.emin_ev > 0.0 && sc.emax_ev < 1.0,
              "recomb.eh sweeps k_i: photon.emin/emax give the range in units of pi/a, within (0,1)");
  }

  if (sc.points < 2) errs.push_back({0, 0, "RangeError", "photon.points must be >= 2"});
  if (!(sc.emax_ev > sc.emin_ev))
    errs.push_back({0, 0, "RangeError", "photon grid must be strictly increasing (emin < emax)"});

  if (errs.empty()) result.scenario = std::move(sc);
  return result;
}

inline std::string Scenario::canonical_text() const {
  std::ostringstream out;
  out.precision(17);
  const char* mat = material == MaterialKind::KronigPenney ? "kronig_penney"
                    : material == MaterialKind::FreeElectron ? "free_electron"
                                                             : "none";
  out << "material.kind = " << mat << "\n";
  if (material != MaterialKind::None) {
    out << "material.a_nm = " << a_nm << "\n";
    out << "material.strength = " << strength << "\n";
    out << "material.cell_points = " << cell_points << "\n";
    out << "material.bands = " << bands << "\n";
    out << "material.k_points = " << k_points << "\n";
  }
  for (std::size_t j = 0; j < states.size(); ++j) {
    const auto& st = states[j];
    const std::string p = "state." + std::to_string(j) + ".";
    switch (st.kind) {
      case StateKind::Oscillator:
        out << p << "kind = oscillator\n";
        out << p << "n = " << st.n << "\n";
        out << p << "hbar_omega_ev = " << st.hbar_omega_ev << "\n";
        break;
      case StateKind::Hydrogenic:
        out << p << "kind = hydrogenic\n";
        out << p << "n = " << st.n << "\n";
        out << p << "l = " << st.l << "\n";
        out << p << "m = " << st.m << "\n";
        break;
      case StateKind::Well:
        out << p << "kind = well\n";
        out << p << "width_nm = " << st.width_nm << "\n";
        out << p << "floor_ev = " << st.floor_ev << "\n";
        out << p << "points = " << st.points << "\n";
        out << p << "index = " << st.index << "\n";
        break;
      case StateKind::GridPotential:
        out << p << "kind = grid_potential\n";
        out << p << "file = " << st.file << "\n";
        out << p << "index = " << st.index << "\n";
        break;
    }
  }
  out << "process.kind = " << process << "\n";
  if (initial >= 0) out << "process.initial = " << initial << "\n";
  if (final_state >= 0) out << "process.final = " << final_state << "\n";
  if (band >= 1) out << "process.band = " << band << "\n";
  if (band_i >= 1) out << "process.band_i = " << band_i << "\n";
  if (band_f >= 1) out << "process.band_f = " << band_f << "\n";
  if (process == "recomb.eh") out << "process.k_hole_over_pi_a = " << k_hole_over_pi_a << "\n";
  out << "photon.emin_ev = " << emin_ev << "\n";
  out << "photon.emax_ev = " << emax_ev << "\n";
  out << "photon.points = " << points << "\n";
  if (incident_ev > 0.0) out << "photon.incident_ev = " << incident_ev << "\n";
  out << "photon.k_hat = " << detail::format_vec3(k_hat) << "\n";
  out << "photon.k_hat_out = " << detail::format_vec3(k_hat_out) << "\n";
  out << "photon.polarization = " << polarization << "\n";
  out << "photon.polarization_out = " << polarization_out << "\n";
  if (eta_inv_fs > 0.0) out << "numerics.eta_inv_fs = " << eta_inv_fs << "\n";
  if (gamma_inv_fs > 0.0) out << "numerics.gamma_inv_fs = " << gamma_inv_fs << "\n";
  if (window_ev > 0.0) out << "numerics.window_ev = " << window_ev << "\n";
  if (recoil_mass_ev > 0.0) {
    out << "numerics.recoil_mass_ev = " << recoil_mass_ev << "\n";
    out << "numerics.recoil_k_invnm = " << recoil_k_invnm << "\n";
    out << "numerics.recoil_theta_rad = " << recoil_theta_rad << "\n";
  }
  out << "numerics.resonant_only = " << (resonant_only ? "true" : "false") << "\n";
  out << "numerics.broad_line_factor = " << (broad_line_factor ? "true" : "false") << "\n";
  out << "output.format = " << format << "\n";
  if (!path.empty()) out << "output.path = " << path << "\n";
  return out.str();
}

} // namespace photokin
