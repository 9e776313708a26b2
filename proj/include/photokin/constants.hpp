#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "photokin/errors.hpp"

namespace photokin {

// Internal unit system: energies in eV, lengths in nm, times in fs.
// Angular frequencies are 1/fs, wavenumbers 1/nm, so hbar*c*k is an energy
// in eV and c*k an angular frequency in 1/fs.
struct Constants {
  double alpha_s = 7.2973525693e-3;      // fine structure constant
  double hbar_c = 197.3269804;           // eV nm
  double electron_mass_energy = 510998.95; // eV (m_e c^2)
  double c = 299.792458;                 // nm/fs

  double hbar() const { return hbar_c / c; }                       // eV fs
  double electron_mass() const { return electron_mass_energy / (c * c); } // eV fs^2/nm^2
  double classical_electron_radius() const {
    return alpha_s * hbar_c / electron_mass_energy;                // nm
  }
  double bohr_radius() const { return hbar_c / (electron_mass_energy * alpha_s); } // nm

  double omega_from_energy(double e_ev) const { return e_ev / hbar(); } // 1/fs
  double energy_from_omega(double w) const { return w * hbar(); }       // eV
  double wavenumber_from_energy(double e_ev) const { return e_ev / hbar_c; } // 1/nm

  void validate() const {
    if (!(alpha_s > 0.0 && alpha_s < 1.0))
      throw Error("Constants: alpha_s must lie in (0,1)");
    if (!(hbar_c > 0.0) || !(electron_mass_energy > 0.0) || !(c > 0.0))
      throw Error("Constants: all constants must be strictly positive");
  }

  // Optional key=value overrides; keys: hbar_c_ev_nm, mec2_ev, c_nm_fs, alpha_s.
  static Constants from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open constants file '" + path + "'");
    Constants k;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
          throw Error("constants file line " + std::to_string(lineno) + ": expected key=value");
        continue;
      }
      auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      std::string key = trim(line.substr(0, eq));
      std::string val = trim(line.substr(eq + 1));
      double x = 0.0;
      try {
        std::size_t pos = 0;
        x = std::stod(val, &pos);
        if (pos != val.size()) throw std::invalid_argument(val);
      } catch (const std::exception&) {
        throw Error("constants file line " + std::to_string(lineno) + ": bad number '" + val + "'");
      }
      if (key == "hbar_c_ev_nm") k.hbar_c = x;
      else if (key == "mec2_ev") k.electron_mass_energy = x;
      else if (key == "c_nm_fs") k.c = x;
      else if (key == "alpha_s") k.alpha_s = x;
      else throw Error("constants file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    k.validate();
    return k;
  }
};

inline const Constants& default_constants() {
  static const Constants k{};
  return k;
}

} // namespace photokin
