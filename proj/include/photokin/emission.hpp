#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "photokin/band_dipoles.hpp"
#include "photokin/band_dos.hpp"
#include "photokin/bound_states.hpp"
#include "photokin/matrix_elements.hpp"
#include "photokin/polarization.hpp"
#include "photokin/recoil.hpp"
#include "photokin/spectrum_table.hpp"

namespace photokin {

enum class EmissionKind {
  DifferentialPolarized,
  DifferentialUnpolarized,
  TotalUnpolarized,
  SpectralDensity,
  CaptureCrossSection
};

struct EmissionResult {
  EmissionKind kind = EmissionKind::TotalUnpolarized;
  double value = 0.0;         // 1/fs, 1/(fs sr), nm/fs per 1/nm, or capture measure
  double photon_energy = 0.0; // eV
  std::string label;
};

namespace detail {

inline void require_polarization(const CVec3& eps, const Vec3& k_hat) {
  if (std::abs(eps.norm() - 1.0) > 1e-9)
    throw NonUnitVector("polarization vector must be unit norm");
  if (std::abs(cdot(k_hat, eps)) > 1e-9)
    throw Error("polarization vector must be transverse to k_hat");
}

// 1D reduction of the differential current density |d j / d^3 k_e|: a Bloch
// wave carries the cell-averaged current v_g / a times the (a/2pi) state
// normalization, i.e. |dj/dk| = v_g / 2pi in nm/fs per unit k measure.
inline double current_per_k(const BlochBand& band, double k_e) {
  const double dedk = std::abs(group_velocity(band, k_e)); // eV nm
  if (dedk < 1e-10)
    throw ZeroCurrent("group velocity vanishes at the band edge");
  const double v = dedk / band.model.constants.hbar(); // nm/fs
  return v / (2.0 * std::numbers::pi);
}

} // namespace detail

// dGamma/dOmega = (alpha_S / 2 pi c^2) omega_if^3 |<f|eps^+ . x|i>|^2 for a
// downhill discrete pair; rates are per spin-preserving channel (the
// (1/2) sum_s of equal channels).
inline EmissionResult emission_dd_differential(const BoundState& f, const BoundState& i,
                                               const Vec3& k_hat, const CVec3& eps,
                                               const Constants& kc = default_constants()) {
  if (!(i.energy > f.energy)) throw NonDecayingPair("emission needs E_i > E_f");
  detail::require_polarization(eps, k_hat);
  const auto d = dipole_matrix_element(f, i, Axis::X, kc);
  const double omega_if = -d.omega_fi;
  EmissionResult out;
  out.kind = EmissionKind::DifferentialPolarized;
  out.value = kc.alpha_s / (2.0 * std::numbers::pi * kc.c * kc.c) * std::pow(omega_if, 3) *
              std::norm(hdot(eps, d.value));
  out.photon_energy = kc.energy_from_omega(omega_if);
  return out;
}

inline EmissionResult emission_dd_differential_unpolarized(const BoundState& f, const BoundState& i,
                                                           const Vec3& k_hat,
                                                           const Constants& kc = default_constants()) {
  if (!(i.energy > f.energy)) throw NonDecayingPair("emission needs E_i > E_f");
  const auto d = dipole_matrix_element(f, i, Axis::X, kc);
  const double omega_if = -d.omega_fi;
  EmissionResult out;
  out.kind = EmissionKind::DifferentialUnpolarized;
  out.value = kc.alpha_s / (2.0 * std::numbers::pi * kc.c * kc.c) * std::pow(omega_if, 3) *
              polarization_sum(d.value, k_hat);
  out.photon_energy = kc.energy_from_omega(omega_if);
  return out;
}

// Einstein A coefficient A_fi = (4 alpha_S / 3 c^2) omega_if^3 |<f|x|i>|^2 in
// 1/fs; an optional recoil context shifts the reported photon energy only.
inline EmissionResult einstein_A(const BoundState& f, const BoundState& i,
                                 const Constants& kc = default_constants(),
                                 const RecoilContext* recoil = nullptr) {
  if (!(i.energy > f.energy)) throw NonDecayingPair("emission needs E_i > E_f");
  const auto d = dipole_matrix_element(f, i, Axis::X, kc);
  const double omega_if = -d.omega_fi;
  EmissionResult out;
  out.kind = EmissionKind::TotalUnpolarized;
  out.value = 4.0 * kc.alpha_s / (3.0 * kc.c * kc.c) * std::pow(omega_if, 3) * d.value.norm2();
  out.photon_energy = kc.energy_from_omega(recoil ? recoil_shift(omega_if, *recoil, kc).ck : omega_if);
  return out;
}

inline double per_second(const EmissionResult& r) { return r.value * 1e15; }

// Unpolarized spectral emission rate dGamma/dk from a discrete state into a
// lower band: (4 alpha_S / 3) hbar c^2 k^3 sum_points |<n,k_e|x|i>|^2 / |dE/dk|
// evaluated on the constant-energy set E_n(k_e) = E_i - hbar c k. Out-of-band
// photon energies give zero rows. The +-k_e branches realize the paper's
// degeneracy-index sum in one dimension.
inline SpectrumTable emission_dc_spectrum(const BoundState& i, const BlochBand& band,
                                          const std::vector<double>& photon_k_grid,
                                          const Constants& kc = default_constants()) {
  SpectrumTable table;
  table.grid_name = "photon_energy_eV";
  std::vector<double> rates;
  for (double k_ph : photon_k_grid) {
    if (!(k_ph > 0.0)) throw Error("photon grid must be positive");
    const double e_f = i.energy - kc.hbar_c * k_ph;
    table.grid.push_back(kc.hbar_c * k_ph);
    if (!band.contains_energy(e_f)) {
      rates.push_back(0.0);
      continue;
    }
    double acc = 0.0;
    try {
      const auto surf = constant_energy_set(band, e_f);
      for (const auto& pt : surf.points) {
        const auto amp = discrete_to_band_dipole(band, pt.k, i);
        acc += amp.value.norm2() * pt.weight;
      }
      acc *= 4.0 * kc.alpha_s / 3.0 * kc.hbar() * kc.c * kc.c * std::pow(k_ph, 3);
    } catch (const EdgeSingular&) {
      acc = std::numeric_limits<double>::infinity();
    }
    rates.push_back(acc);
  }
  table.add_column("rate_per_fs_per_k", std::move(rates));
  table.add_metadata("transition", "discrete->band emission");
  table.add_metadata("band", std::to_string(band.n));
  table.add_metadata("bloch_normalization", "sqrt(a/2pi), delta(k) normalized");
  return table;
}

// Radiative hole capture: sigma = (4 alpha_S / 3 c^2) omega_if^3
// |<n,k_e|x|i>|^2 / |dj_h/dk_e| with the cell-averaged hole current. In the
// 1D reduction sigma carries nm (area per transverse unit length).
inline EmissionResult hole_capture_cross_section(const BoundState& i, const BlochBand& band,
                                                 double k_e,
                                                 const Constants& kc = default_constants()) {
  const double e_band = band.energy_at(k_e);
  if (!(i.energy > e_band)) throw NonDecayingPair("hole capture needs E_i above the band energy");
  const double current = detail::current_per_k(band, k_e);
  const auto amp = discrete_to_band_dipole(band, k_e, i);
  const double omega_if = -amp.omega_fi;
  EmissionResult out;
  out.kind = EmissionKind::CaptureCrossSection;
  out.value = 4.0 * kc.alpha_s / (3.0 * kc.c * kc.c) * std::pow(omega_if, 3) *
              amp.value.norm2() / current;
  out.photon_energy = kc.energy_from_omega(omega_if);
  out.label = "hole_capture";
  return out;
}

// Radiative electron capture from the band into a discrete state below it;
// mirror of hole capture with the electron current.
inline EmissionResult electron_capture_cross_section(const BoundState& f, const BlochBand& band,
                                                     double k_e,
                                                     const Constants& kc = default_constants()) {
  const double e_band = band.energy_at(k_e);
  if (!(e_band > f.energy)) throw NonDecayingPair("electron capture needs the band above E_f");
  const double current = detail::current_per_k(band, k_e);
  const auto amp = discrete_to_band_dipole(band, k_e, f); // <n,k|x|f>, same |.|^2
  const double omega_if = (e_band - f.energy) / kc.hbar();
  EmissionResult out;
  out.kind = EmissionKind::CaptureCrossSection;
  out.value = 4.0 * kc.alpha_s / (3.0 * kc.c * kc.c) * std::pow(omega_if, 3) *
              amp.value.norm2() / current;
  out.photon_energy = kc.energy_from_omega(omega_if);
  out.label = "electron_capture";
  return out;
}

// Direct interband emission at fixed k_e between conduction-type bands:
// Gamma = (4 alpha_S / 3 c^2) omega_if^3 |<u_f|x|u_i>_V|^2. Valence-hole
// recombination is kinematically gated and lives in the recombination module.
inline EmissionResult emission_cc(const BlochBand& band_i, const BlochBand& band_f, double k_e,
                                  const Constants& kc = default_constants()) {
  const double e_i = band_i.energy_at(k_e);
  const double e_f = band_f.energy_at(k_e);
  if (!(e_i > e_f)) throw NonDecayingPair("interband emission needs E_i(k) > E_f(k)");
  const auto amp = cell_dipole(band_f, band_i, k_e);
  const double omega_if = -amp.omega_fi;
  EmissionResult out;
  out.kind = EmissionKind::TotalUnpolarized;
  out.value = 4.0 * kc.alpha_s / (3.0 * kc.c * kc.c) * std::pow(omega_if, 3) * amp.value.norm2();
  out.photon_energy = kc.energy_from_omega(omega_if);
  return out;
}

// Polarized differential version of the direct interband rate.
inline EmissionResult emission_cc_differential(const BlochBand& band_i, const BlochBand& band_f,
                                               double k_e, const Vec3& k_hat, const CVec3& eps,
                                               const Constants& kc = default_constants()) {
  const double e_i = band_i.energy_at(k_e);
  const double e_f = band_f.energy_at(k_e);
  if (!(e_i > e_f)) throw NonDecayingPair("interband emission needs E_i(k) > E_f(k)");
  detail::require_polarization(eps, k_hat);
  const auto amp = cell_dipole(band_f, band_i, k_e);
  const double omega_if = -amp.omega_fi;
  EmissionResult out;
  out.kind = EmissionKind::DifferentialPolarized;
  out.value = kc.alpha_s / (2.0 * std::numbers::pi * kc.c * kc.c) * std::pow(omega_if, 3) *
              std::norm(hdot(eps, amp.value));
  out.photon_energy = kc.energy_from_omega(omega_if);
  return out;
}

// Radiative capture rate recovered from the capture cross section:
// Gamma = Int dk_e sigma(k_e) |dj/dk_e| over the zone (trapezoid on the
// band's k samples, skipping zero-current edge samples).
inline double capture_rate_from_cross_section(const BoundState& state, const BlochBand& band,
                                              bool hole_side,
                                              const Constants& kc = default_constants()) {
  const auto& ks = band.k_samples;
  double acc = 0.0;
  const double dk = ks.size() > 1 ? ks[1] - ks[0] : 0.0;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    try {
      const EmissionResult sigma = hole_side
                                       ? hole_capture_cross_section(state, band, ks[j], kc)
                                       : electron_capture_cross_section(state, band, ks[j], kc);
      acc += sigma.value * detail::current_per_k(band, ks[j]) * dk;
    } catch (const ZeroCurrent&) {
      // band-edge samples carry no current
    }
  }
  return acc;
}

} // namespace photokin
