#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "photokin/constants.hpp"
#include "photokin/errors.hpp"
#include "photokin/kronig_penney.hpp"

namespace photokin {

struct SurfacePoint {
  double k;      // 1/nm
  double weight; // 1/|dE/dk|, 1/(eV nm)
};

// Solution set of E_n(k) = E; in one dimension the constant-energy "surface"
// degenerates to the pair {+k(E), -k(E)}.
struct EnergySurface {
  double energy = 0.0;
  std::vector<SurfacePoint> points;
};

inline EnergySurface constant_energy_set(const BlochBand& band, double energy) {
  if (!band.contains_energy(energy))
    throw EnergyOutsideBand("E = " + std::to_string(energy) + " eV outside band " + std::to_string(band.n));
  const double a = band.model.a;
  double c = band.model.dispersion_rhs(energy);
  c = std::clamp(c, -1.0, 1.0);
  const double ka = std::acos(c);
  if (std::abs(std::sin(ka)) < 1e-9)
    throw EdgeSingular("constant-energy set at a band edge (dE/dk -> 0)");
  const double dedk = std::abs(band.denergy_dk(ka / a, energy));
  EnergySurface surf;
  surf.energy = energy;
  surf.points = {{ka / a, 1.0 / dedk}, {-ka / a, 1.0 / dedk}};
  return surf;
}

// Per-spin density of states in the band, states/(eV cell):
// rho_{n,V}(E) = (a/2pi) sum_points 1/|dE/dk|; zero outside the band and
// divergent (van Hove) at the edges.
inline double dos_band(const BlochBand& band, double energy) {
  if (!band.contains_energy(energy)) return 0.0;
  try {
    const EnergySurface surf = constant_energy_set(band, energy);
    double acc = 0.0;
    for (const auto& p : surf.points) acc += p.weight;
    return band.model.a / (2.0 * std::numbers::pi) * acc;
  } catch (const EdgeSingular&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Centered finite difference of the sampled dispersion, linearly interpolated
// between samples; exactly zero at the zone center and boundary by symmetry.
// Returns dE/dk in eV nm (divide by hbar for a velocity).
inline double group_velocity(const BlochBand& band, double k) {
  const double pi = std::numbers::pi;
  const double a = band.model.a;
  if (std::abs(k) > pi / a * (1.0 + 1e-12))
    throw OutOfZone("k outside the first Brillouin zone");
  const int m = static_cast<int>(band.k_samples.size());
  const double dk = 2.0 * pi / (a * m);
  auto fd = [&](int j) {
    const int jp = (j + 1) % m, jm = (j - 1 + m) % m;
    return (band.energies[jp] - band.energies[jm]) / (2.0 * dk);
  };
  // samples k_j = -pi/a + (j+1) dk
  const double pos = (k + pi / a) / dk - 1.0;
  int j0 = static_cast<int>(std::floor(pos));
  const double frac = pos - j0;
  const int ja = (j0 % m + m) % m;
  const int jb = (ja + 1) % m;
  return (1.0 - frac) * fd(ja) + frac * fd(jb);
}

// Solutions of E_c(k) - E_v(k) = dE on the non-negative half zone with
// weights 1/|d(E_c - E_v)/dk|; the -k partners follow by time reversal.
inline std::vector<SurfacePoint> joint_constant_energy_set(const BlochBand& band_v,
                                                           const BlochBand& band_c, double de) {
  if (band_c.e_min < band_v.e_min)
    throw Error("joint surface: band_c must lie above band_v");
  if (band_v.k_samples.size() != band_c.k_samples.size() ||
      std::abs(band_v.model.a - band_c.model.a) > 1e-12)
    throw GridMismatch("joint surface: bands sampled on different k grids");

  auto delta_e = [&](double k) { return band_c.energy_at(k) - band_v.energy_at(k); };
  auto delta_slope = [&](double k) {
    return band_c.denergy_dk(k, band_c.energy_at(k)) - band_v.denergy_dk(k, band_v.energy_at(k));
  };

  std::vector<SurfacePoint> points;
  const int m = static_cast<int>(band_c.k_samples.size());
  double prev_k = 0.0, prev_f = 0.0;
  bool have_prev = false;
  for (int j = 0; j < m; ++j) {
    const double k = band_c.k_samples[j];
    if (k < 0.0) continue;
    const double f = (band_c.energies[j] - band_v.energies[j]) - de;
    if (have_prev && (prev_f == 0.0 || prev_f * f < 0.0)) {
      double lo = prev_k, hi = k, flo = prev_f;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = delta_e(mid) - de;
        if ((fm > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
        if (hi - lo < 1e-14) break;
      }
      const double kroot = 0.5 * (lo + hi);
      const double slope = std::abs(delta_slope(kroot));
      points.push_back({kroot, slope < 1e-12 ? std::numeric_limits<double>::infinity() : 1.0 / slope});
    }
    have_prev = true;
    prev_k = k;
    prev_f = f;
  }
  return points;
}

// Joint density of states for the interband pair, pairs/(eV cell):
// rho_{cv}(dE) = (a/2pi) sum over solutions of E_c(k) - E_v(k) = dE of
// 1/|d(E_c - E_v)/dk|, with the +-k branches counted.
inline double joint_dos(const BlochBand& band_v, const BlochBand& band_c, double de) {
  const auto points = joint_constant_energy_set(band_v, band_c, de);
  if (points.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& p : points) acc += p.weight;
  return band_c.model.a / (2.0 * std::numbers::pi) * 2.0 * acc; // +-k branches
}

// Local density of band states, states/(eV nm) per cell normalization:
// (a/2pi) sum_points |u_n(k,x)|^2 / |dE/dk|.
inline double local_dos(const BlochBand& band, double energy, double x) {
  if (x < 0.0 || x > band.model.a) throw Error("local_dos: x outside the Wigner-Seitz cell");
  if (!band.contains_energy(energy)) return 0.0;
  try {
    const EnergySurface surf = constant_energy_set(band, energy);
    double acc = 0.0;
    for (const auto& p : surf.points) {
      const BlochFactor u = band.factor_at(p.k, energy);
      acc += std::norm(u.value(x)) * p.weight;
    }
    return band.model.a / (2.0 * std::numbers::pi) * acc;
  } catch (const EdgeSingular&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Free nonrelativistic electrons, per spin state: the closed form
// rho_e(E) = sqrt(2 m^3 E) / (2 pi^2 hbar^3), states/(eV nm^3).
inline double free_electron_dos(double energy, const Constants& kc = default_constants()) {
  if (energy <= 0.0) return 0.0;
  const double m = kc.electron_mass();
  return std::sqrt(2.0 * m * m * m * energy) / (2.0 * std::numbers::pi * std::numbers::pi *
                                                std::pow(kc.hbar(), 3));
}

// Same density through the k-space surface integral
// (1/8pi^3) * 4pi k^2 / |dE/dk|; companion route for cross-checks.
inline double free_electron_dos_kspace(double energy, const Constants& kc = default_constants()) {
  if (energy <= 0.0) return 0.0;
  const double m = kc.electron_mass();
  const double k = std::sqrt(2.0 * m * energy) / kc.hbar();
  const double dedk = kc.hbar() * kc.hbar() * k / m;
  return 4.0 * std::numbers::pi * k * k / (8.0 * std::pow(std::numbers::pi, 3) * dedk);
}

} // namespace photokin
