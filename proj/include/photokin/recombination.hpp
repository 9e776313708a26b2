#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "photokin/band_dos.hpp"
#include "photokin/kronig_penney.hpp"
#include "photokin/lineshape.hpp"
#include "photokin/linalg.hpp"
#include "photokin/emission.hpp"

namespace photokin {

// Conduction electron at k_e_i recombining with a valence hole at k_e_f.
// gamma is the transition linewidth gating the kinematic constraint; it is a
// physical input with no default.
struct EhPair {
  const BlochBand* conduction = nullptr;
  const BlochBand* valence = nullptr;
  double k_e_i = 0.0; // 1/nm
  double k_e_f = 0.0;
  double gamma = 0.0; // 1/fs

  void validate() const {
    if (!conduction || !valence) throw Error("EhPair: bands not set");
    const double edge = std::numbers::pi / conduction->model.a * (1.0 + 1e-12);
    if (std::abs(k_e_i) > edge || std::abs(k_e_f) > edge)
      throw OutOfZone("EhPair wave vectors must lie in the first zone");
    if (!(gamma > 0.0)) throw Error("EhPair: linewidth gamma must be positive");
  }
};

// Purely radiative single-photon electron-hole recombination cross section.
// The energy-conserving constraint survives as the Lorentz gate
// Delta_Gamma[c|k_i - k_f| + omega_v - omega_c]; off-shell pairs are
// suppressed by the profile tail. This is the 1D toy realization: photon
// momentum |k_i - k_f| is a scalar and the electron current follows the
// capture-cross-section conventions.
inline double eh_recombination_cross_section(const EhPair& pair, const CVec3& eps,
                                             bool angle_averaged,
                                             const Constants& kc = default_constants()) {
  pair.validate();
  const BlochBand& bc = *pair.conduction;
  const BlochBand& bv = *pair.valence;

  const double dk = std::abs(pair.k_e_i - pair.k_e_f);
  if (dk < 1e-12) throw DegenerateKinematics("photon momentum |k_i - k_f| vanishes");

  const double e_c = bc.energy_at(pair.k_e_i);
  const double e_v = bv.energy_at(pair.k_e_f);
  if (!(e_c > e_v)) throw Error("eh recombination needs the conduction state above the valence state");
  const double omega_c = e_c / kc.hbar();
  const double omega_v = e_v / kc.hbar();

  // cell element <u_v(k_f)|x|u_c(k_i)> between different wave vectors by
  // direct quadrature, origin at the cell center
  const BlochFactor uv = bv.factor_at(pair.k_e_f);
  const BlochFactor uc = bc.factor_at(pair.k_e_i);
  const double a = bc.model.a;
  const int n = bc.model.cell_grid;
  cplx me = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 0.5 : 1.0;
    const double x = a * j / n;
    me += w * std::conj(uv.value(x)) * (x - 0.5 * a) * uc.value(x);
  }
  me *= a / n;

  const double current = detail::current_per_k(bc, pair.k_e_i); // nm/fs per k
  const double dipole_sq = angle_averaged ? std::norm(me) : std::norm(hdot(eps, CVec3{me, 0.0, 0.0}));
  const double prefactor = angle_averaged ? kc.alpha_s / (6.0 * std::numbers::pi)
                                          : kc.alpha_s / (2.0 * std::numbers::pi);
  const double gate = lorentz_profile(kc.c * dk + omega_v - omega_c, pair.gamma);
  const double dw = omega_c - omega_v;
  return prefactor * dw * dw / dk * dipole_sq / current * gate;
}

// Photon emission rate per volume from sampled cross-section, electron
// current and hole density fields on a common (k_i, k_f) grid: the trapezoid
// double integral of sigma |dj_e/dk_i| |drho_h/dk_f|.
inline double eh_rate_per_volume(const std::vector<double>& k_i_grid,
                                 const std::vector<double>& k_f_grid,
                                 const std::vector<std::vector<double>>& sigma,
                                 const std::vector<double>& j_e,
                                 const std::vector<double>& rho_h) {
  const std::size_t ni = k_i_grid.size(), nf = k_f_grid.size();
  if (ni < 2 || nf < 2) throw GridMismatch("rate-per-volume grids need at least 2 points");
  if (sigma.size() != ni || j_e.size() != ni || rho_h.size() != nf)
    throw GridMismatch("rate-per-volume fields sampled on mismatched grids");
  for (const auto& row : sigma)
    if (row.size() != nf) throw GridMismatch("sigma field row length mismatch");

  double acc = 0.0;
  for (std::size_t p = 0; p < ni; ++p) {
    const double wi = (p == 0 || p + 1 == ni) ? 0.5 : 1.0;
    for (std::size_t q = 0; q < nf; ++q) {
      const double wf = (q == 0 || q + 1 == nf) ? 0.5 : 1.0;
      acc += wi * wf * sigma[p][q] * j_e[p] * rho_h[q];
    }
  }
  const double hi = k_i_grid[1] - k_i_grid[0];
  const double hf = k_f_grid[1] - k_f_grid[0];
  return acc * hi * hf;
}

} // namespace photokin
