#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "photokin/band_dos.hpp"
#include "photokin/bound_states.hpp"
#include "photokin/kronig_penney.hpp"
#include "photokin/matrix_elements.hpp"

namespace photokin {

// Interband cell dipole <u_f|x|u_i>_V at fixed k, computed through the
// gauge-safe velocity route <u_f|(p + hbar k)|u_i>_V / (i m omega_fi).
// Position is not periodic, so the direct length-form cell integral would be
// gauge dependent; the commutator route is not.
inline TransitionAmplitude cell_dipole(const BlochBand& band_f, const BlochBand& band_i, double k,
                                       const BlochFactor& u_f, const BlochFactor& u_i,
                                       double e_f, double e_i) {
  const Constants& kc = band_f.model.constants;
  TransitionAmplitude amp;
  amp.omega_fi = (e_f - e_i) / kc.hbar();
  amp.form = MatrixForm::Length;
  if (std::abs(amp.omega_fi) < 1e-9)
    throw DegenerateBandsAtK("bands " + std::to_string(band_f.n) + "," + std::to_string(band_i.n) +
                             " degenerate at this k");
  const cplx p_el = u_f.momentum_plus_hbar_k(u_i, k, kc.hbar());
  const cplx x_el = p_el / (cplx(0.0, 1.0) * kc.electron_mass() * amp.omega_fi);
  amp.value = CVec3{x_el, 0.0, 0.0};
  (void)band_i;
  return amp;
}

inline TransitionAmplitude cell_dipole(const BlochBand& band_f, const BlochBand& band_i, double k) {
  if (band_f.n == band_i.n)
    throw IncompatibleStates("cell_dipole is defined for interband pairs only");
  const double e_f = band_f.energy_at(k);
  const double e_i = band_i.energy_at(k);
  return cell_dipole(band_f, band_i, k, band_f.factor_at(k, e_f), band_i.factor_at(k, e_i), e_f, e_i);
}

namespace detail {

// Samples of a 1D bound state on its own grid, centered on the cell.
struct CellSamples {
  std::vector<double> xi;  // coordinate relative to the cell center, nm
  std::vector<double> psi; // nm^(-1/2)
  double h = 0.0;
};

inline CellSamples sample_bound_state(const BoundState& state, double a, const Constants& kc) {
  CellSamples s;
  if (state.is_grid()) {
    const auto& wf = state.grid_wf();
    if (wf.grid.span() > a)
      throw StateSpansMultipleCells("grid state spans " + std::to_string(wf.grid.span()) +
                                    " nm > lattice constant");
    const double mid = 0.5 * (wf.grid.x_min() + wf.grid.x_max());
    s.h = wf.grid.h;
    s.xi.resize(wf.grid.n);
    s.psi = wf.psi;
    for (std::size_t j = 0; j < wf.grid.n; ++j) s.xi[j] = wf.grid.x(j) - mid;
    return s;
  }
  if (state.is_oscillator()) {
    const auto& tag = state.oscillator_tag();
    const double x0 = BoundState::oscillator_length(tag.hbar_omega, kc);
    const double half = x0 * (std::sqrt(2.0 * tag.n + 1.0) + 5.0);
    if (2.0 * half > a)
      throw StateSpansMultipleCells("oscillator state spans " + std::to_string(2.0 * half) +
                                    " nm > lattice constant");
    const std::size_t n = 1024;
    s.h = 2.0 * half / static_cast<double>(n - 1);
    s.xi.resize(n);
    s.psi.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      s.xi[j] = -half + s.h * static_cast<double>(j);
      s.psi[j] = oscillator_wavefunction(tag.n, s.xi[j], tag.hbar_omega, kc);
    }
    return s;
  }
  throw IncompatibleStates("band coupling needs a 1D (grid or oscillator) bound state");
}

} // namespace detail

// Dipole matrix element between a Bloch state |n,k> and a discrete state
// localized in one cell, in the long-wavelength replacement exp(ikx) -> 1:
// value = sqrt(a/2pi) Int_cell u_n^+(k,x) (x - cell center) psi_i(x) dx.
// The sqrt(a/2pi) factor carries the delta-in-k state normalization of the
// one-dimensional Bloch states.
inline TransitionAmplitude discrete_to_band_dipole(const BlochBand& band, double k,
                                                   const BoundState& state) {
  const Constants& kc = band.model.constants;
  const double a = band.model.a;
  const auto samples = detail::sample_bound_state(state, a, kc);
  const BlochFactor u = band.factor_at(k);

  cplx acc = 0.0;
  const std::size_t n = samples.xi.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    const double x_cell = 0.5 * a + samples.xi[j];
    acc += w * std::conj(u.value(x_cell)) * samples.xi[j] * samples.psi[j];
  }
  acc *= samples.h;

  TransitionAmplitude amp;
  amp.omega_fi = (band.energy_at(k) - state.energy) / kc.hbar();
  amp.form = MatrixForm::Length;
  amp.value = CVec3{std::sqrt(a / (2.0 * std::numbers::pi)) * acc, 0.0, 0.0};
  return amp;
}

// Overlap <u_n(k)|psi_i> over the cell; vanishes for exact eigenstates of the
// same Hamiltonian but not for impurity states, useful in diagnostics.
inline cplx discrete_to_band_overlap(const BlochBand& band, double k, const BoundState& state) {
  const Constants& kc = band.model.constants;
  const double a = band.model.a;
  const auto samples = detail::sample_bound_state(state, a, kc);
  const BlochFactor u = band.factor_at(k);
  cplx acc = 0.0;
  const std::size_t n = samples.xi.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    acc += w * std::conj(u.value(0.5 * a + samples.xi[j])) * samples.psi[j];
  }
  return acc * samples.h;
}

} // namespace photokin
