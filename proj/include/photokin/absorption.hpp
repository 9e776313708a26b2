#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "photokin/band_dipoles.hpp"
#include "photokin/band_dos.hpp"
#include "photokin/bound_states.hpp"
#include "photokin/lineshape.hpp"
#include "photokin/matrix_elements.hpp"
#include "photokin/polarization.hpp"

namespace photokin {

enum class AbsApproximation { SurfaceIntegral, ConstantMatrixElementDOS };

struct AbsorptionResult {
  double sigma = 0.0;         // nm^2, or nm^2 (1/fs) integrated line strength
  bool is_line_strength = false;
  double photon_energy = 0.0; // eV
  AbsApproximation approximation = AbsApproximation::SurfaceIntegral;
  bool broad_line_warning = false;
};

// Both approximation routes of a band absorption cross section.
struct AbsorptionPair {
  double sigma_surface = 0.0;
  double sigma_dos = 0.0;
  double photon_energy = 0.0;
};

// Discrete-discrete absorption. The Delta lineshape yields the integrated
// line strength 4 pi^2 alpha_S omega |<f|eps.x|i>|^2 (area x frequency); the
// Lorentz lineshape resolves sigma(ck) pointwise. angle_averaged applies the
// 1/3 substitution. The optional broad_line_factor multiplies by omega/ck,
// the correction the narrow-line substitution drops.
inline AbsorptionResult abs_dd(const BoundState& f, const BoundState& i, const CVec3& eps,
                               double photon_k, const Lineshape& shape, bool angle_averaged = false,
                               bool broad_line_factor = false,
                               const Constants& kc = default_constants()) {
  if (!(f.energy > i.energy)) throw Error("absorption needs E_f > E_i");
  const auto d = dipole_matrix_element(f, i, Axis::X, kc);
  const double omega_fi = d.omega_fi;
  const double dipole_sq = angle_averaged ? d.value.norm2() / 3.0 : std::norm(cdot(eps, d.value));
  double strength = 4.0 * std::numbers::pi * std::numbers::pi * kc.alpha_s * omega_fi * dipole_sq;

  AbsorptionResult out;
  out.photon_energy = kc.hbar_c * photon_k;
  if (shape.kind == LineshapeKind::Delta) {
    out.sigma = strength;
    out.is_line_strength = true;
    return out;
  }
  if (broad_line_factor) strength *= omega_fi / (kc.c * photon_k);
  out.broad_line_warning = shape.gamma / omega_fi > 0.1;
  out.sigma = strength * lineshape_eval(shape, omega_fi - kc.c * photon_k);
  return out;
}

// Discrete -> band absorption (donor ionization into a conduction band):
// surface route sigma = 4 pi^2 alpha_S hbar c k sum_points
// |<n,k_e|eps.x|i>|^2 / |dE/dk| on E_n(k_e) = E_i + hbar c k, and the
// constant-matrix-element DOS route with the +k_e cell element.
inline AbsorptionPair abs_dc_band(const BoundState& i, const BlochBand& band, const CVec3& eps,
                                  double photon_k, const Constants& kc = default_constants()) {
  AbsorptionPair out;
  out.photon_energy = kc.hbar_c * photon_k;
  const double e_f = i.energy + kc.hbar_c * photon_k;
  if (!band.contains_energy(e_f)) return out;

  const double prefactor =
      4.0 * std::numbers::pi * std::numbers::pi * kc.alpha_s * kc.hbar_c * photon_k;
  try {
    const auto surf = constant_energy_set(band, e_f);
    double acc = 0.0;
    double cell_sq = 0.0;
    for (const auto& pt : surf.points) {
      const auto amp = discrete_to_band_dipole(band, pt.k, i);
      acc += std::norm(cdot(eps, amp.value)) * pt.weight;
      if (pt.k > 0.0)
        cell_sq = std::norm(cdot(eps, amp.value)) * 2.0 * std::numbers::pi / band.model.a;
    }
    out.sigma_surface = prefactor * acc;
    out.sigma_dos = prefactor * dos_band(band, e_f) * cell_sq;
  } catch (const EdgeSingular&) {
    out.sigma_surface = std::numeric_limits<double>::infinity();
    out.sigma_dos = std::numeric_limits<double>::infinity();
  }
  return out;
}

// Band -> discrete absorption (acceptor filling from a valence band); the
// initial states sit on E_n(k_e) = E_f - hbar c k.
inline AbsorptionPair abs_cd_band(const BoundState& f, const BlochBand& band, const CVec3& eps,
                                  double photon_k, const Constants& kc = default_constants()) {
  AbsorptionPair out;
  out.photon_energy = kc.hbar_c * photon_k;
  const double e_i = f.energy - kc.hbar_c * photon_k;
  if (!band.contains_energy(e_i)) return out;

  const double prefactor =
      4.0 * std::numbers::pi * std::numbers::pi * kc.alpha_s * kc.hbar_c * photon_k;
  try {
    const auto surf = constant_energy_set(band, e_i);
    double acc = 0.0;
    double cell_sq = 0.0;
    for (const auto& pt : surf.points) {
      // <f|eps.x|n,k_e> = conj components of the band element
      const auto amp = discrete_to_band_dipole(band, pt.k, f);
      const CVec3 bra{std::conj(amp.value.x), std::conj(amp.value.y), std::conj(amp.value.z)};
      acc += std::norm(cdot(eps, bra)) * pt.weight;
      if (pt.k > 0.0) cell_sq = std::norm(cdot(eps, bra)) * 2.0 * std::numbers::pi / band.model.a;
    }
    out.sigma_surface = prefactor * acc;
    out.sigma_dos = prefactor * dos_band(band, e_i) * cell_sq;
  } catch (const EdgeSingular&) {
    out.sigma_surface = std::numeric_limits<double>::infinity();
    out.sigma_dos = std::numeric_limits<double>::infinity();
  }
  return out;
}

// Interband absorption per lattice cell. Surface route (1D reduction of the
// Wigner-Seitz-cell integral, V -> a):
// sigma_{n'n} = 4 pi^2 alpha_S hbar c k (a/2pi) sum_points
// |<u_{n'}|eps.x|u_n>_V|^2 / |d(dE)/dk|; the joint-DOS route replaces the sum
// with rho_{n'n}(hbar c k) times the cell element at the first solution.
inline AbsorptionPair abs_cc_interband(const BlochBand& band_v, const BlochBand& band_c,
                                       const CVec3& eps, double photon_k,
                                       const Constants& kc = default_constants()) {
  AbsorptionPair out;
  out.photon_energy = kc.hbar_c * photon_k;
  const auto points = joint_constant_energy_set(band_v, band_c, out.photon_energy);
  if (points.empty()) return out;

  const double a = band_c.model.a;
  const double prefactor =
      4.0 * std::numbers::pi * std::numbers::pi * kc.alpha_s * kc.hbar_c * photon_k;
  double acc = 0.0;
  double cell_sq = 0.0;
  for (const auto& pt : points) {
    const auto amp = cell_dipole(band_c, band_v, pt.k);
    const double me = std::norm(cdot(eps, amp.value));
    acc += me * pt.weight;
    if (cell_sq == 0.0) cell_sq = me;
  }
  // +-k branches of each half-zone solution
  out.sigma_surface = prefactor * a / (2.0 * std::numbers::pi) * 2.0 * acc;
  out.sigma_dos = prefactor * joint_dos(band_v, band_c, out.photon_energy) * cell_sq;
  return out;
}

} // namespace photokin
