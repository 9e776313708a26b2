#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

#include "photokin/bound_states.hpp"
#include "photokin/constants.hpp"
#include "photokin/errors.hpp"
#include "photokin/linalg.hpp"
#include "photokin/quadrature.hpp"

namespace photokin {

enum class Axis { X = 0, Y = 1, Z = 2 };
enum class MatrixForm { Length, Velocity };

// Complex dipole matrix element. Length form carries nm, velocity form
// eV fs / nm; the two are related by <f|p|i> = i m omega_fi <f|x|i>.
struct TransitionAmplitude {
  CVec3 value;
  double omega_fi = 0.0; // (E_f - E_i)/hbar, 1/fs
  MatrixForm form = MatrixForm::Length;
};

namespace hydrogenic {

inline double radial(int n, int l, double r, double a) {
  const double rho = r / a;
  const double s = std::pow(a, -1.5);
  switch (n * 10 + l) {
    case 10: return 2.0 * s * std::exp(-rho);
    case 20: return s / (2.0 * std::sqrt(2.0)) * (2.0 - rho) * std::exp(-0.5 * rho);
    case 21: return s / (2.0 * std::sqrt(6.0)) * rho * std::exp(-0.5 * rho);
    case 30: return 2.0 * s / (81.0 * std::sqrt(3.0)) * (27.0 - 18.0 * rho + 2.0 * rho * rho) * std::exp(-rho / 3.0);
    case 31: return 4.0 * s / (81.0 * std::sqrt(6.0)) * rho * (6.0 - rho) * std::exp(-rho / 3.0);
    case 32: return 4.0 * s / (81.0 * std::sqrt(30.0)) * rho * rho * std::exp(-rho / 3.0);
    default: throw Error("hydrogenic radial function only implemented for n <= 3");
  }
}

inline cplx spherical_harmonic(int l, int m, double cos_t, double phi) {
  const double pi = std::numbers::pi;
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  const cplx e1 = std::polar(1.0, phi);
  switch (l * 10 + (m + l)) { // key = l*10 + (m+l), m in [-l, l]
    case 0: return {0.5 / std::sqrt(pi), 0.0};
    case 10: return 0.5 * std::sqrt(1.5 / pi) * sin_t * std::conj(e1);
    case 11: return {0.5 * std::sqrt(3.0 / pi) * cos_t, 0.0};
    case 12: return -0.5 * std::sqrt(1.5 / pi) * sin_t * e1;
    case 20: return 0.25 * std::sqrt(7.5 / pi) * sin_t * sin_t * std::conj(e1 * e1);
    case 21: return 0.5 * std::sqrt(7.5 / pi) * sin_t * cos_t * std::conj(e1);
    case 22: return {0.25 * std::sqrt(5.0 / pi) * (3.0 * cos_t * cos_t - 1.0), 0.0};
    case 23: return -0.5 * std::sqrt(7.5 / pi) * sin_t * cos_t * e1;
    case 24: return 0.25 * std::sqrt(7.5 / pi) * sin_t * sin_t * e1 * e1;
    default: throw Error("spherical harmonic only implemented for l <= 2");
  }
}

// Int dOmega Y*_{l'm'} n_j Y_{lm}; quadrature is exact for these integrands
// and the table is built once.
inline CVec3 angular_factor(int lf, int mf, int li, int mi) {
  static std::map<std::tuple<int, int, int, int>, CVec3> cache;
  auto key = std::make_tuple(lf, mf, li, mi);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const double pi = std::numbers::pi;
  const int n_ct = 24, n_phi = 48;
  auto ct_nodes = gauss_legendre(n_ct);
  CVec3 out;
  for (int ic = 0; ic < n_ct; ++ic) {
    const double ct = ct_nodes[ic].x;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * pi * ip / n_phi;
      const double w = ct_nodes[ic].w * 2.0 * pi / n_phi;
      const cplx prod = std::conj(spherical_harmonic(lf, mf, ct, phi)) *
                        spherical_harmonic(li, mi, ct, phi) * w;
      out.x += prod * (st * std::cos(phi));
      out.y += prod * (st * std::sin(phi));
      out.z += prod * ct;
    }
  }
  cache.emplace(key, out);
  return out;
}

// Int_0^inf R_{nf lf} r R_{ni li} r^2 dr by composite Gauss-Legendre panels.
inline double radial_dipole_integral(int nf, int lf, int ni, int li, double a) {
  const double r_max = 200.0 * a;
  const int panels = 500, per_panel = 20;
  static const auto base = gauss_legendre(per_panel);
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = r_max * p / panels, hi = r_max * (p + 1) / panels;
    for (const auto& nd : base) {
      const double r = 0.5 * (hi - lo) * nd.x + 0.5 * (hi + lo);
      const double w = 0.5 * (hi - lo) * nd.w;
      acc += w * radial(nf, lf, r, a) * radial(ni, li, r, a) * r * r * r;
    }
  }
  return acc;
}

} // namespace hydrogenic

namespace detail {

inline CVec3 on_axis(cplx value, Axis axis) {
  CVec3 v;
  v[static_cast<int>(axis)] = value;
  return v;
}

inline void require_same_grid(const BoundState& f, const BoundState& i) {
  if (!f.grid_wf().grid.same_as(i.grid_wf().grid))
    throw IncompatibleStates("grid states live on different grids");
}

} // namespace detail

// Length-form dipole matrix element <f|x|i>. For 1D states (grid, oscillator)
// the value lies on the embedding axis; hydrogenic states fill all three
// components. omega_fi = (E_f - E_i)/hbar.
inline TransitionAmplitude dipole_matrix_element(const BoundState& f, const BoundState& i,
                                                 Axis axis = Axis::X,
                                                 const Constants& k = default_constants()) {
  TransitionAmplitude amp;
  amp.omega_fi = (f.energy - i.energy) / k.hbar();
  amp.form = MatrixForm::Length;

  if (f.is_grid() && i.is_grid()) {
    detail::require_same_grid(f, i);
    const auto& wf = f.grid_wf();
    const auto& wi = i.grid_wf();
    double acc = 0.0;
    for (std::size_t j = 0; j < wf.grid.n; ++j) {
      double w = (j == 0 || j + 1 == wf.grid.n) ? 0.5 : 1.0;
      acc += w * wf.psi[j] * wf.grid.x(j) * wi.psi[j];
    }
    amp.value = detail::on_axis(acc * wf.grid.h, axis);
    return amp;
  }
  if (f.is_oscillator() && i.is_oscillator()) {
    const auto& tf = f.oscillator_tag();
    const auto& ti = i.oscillator_tag();
    if (std::abs(tf.hbar_omega - ti.hbar_omega) > 1e-12)
      throw IncompatibleStates("oscillator states with different frequencies");
    const double x0 = BoundState::oscillator_length(ti.hbar_omega, k);
    double v = 0.0;
    if (tf.n == ti.n + 1) v = x0 * std::sqrt((ti.n + 1) / 2.0);
    else if (tf.n == ti.n - 1) v = x0 * std::sqrt(ti.n / 2.0);
    amp.value = detail::on_axis(v, axis);
    return amp;
  }
  if (f.is_hydrogenic() && i.is_hydrogenic()) {
    const auto& tf = f.hydrogenic_tag();
    const auto& ti = i.hydrogenic_tag();
    const double a = k.bohr_radius();
    CVec3 ang = hydrogenic::angular_factor(tf.l, tf.m, ti.l, ti.m);
    if (ang.norm() < 1e-14) {
      amp.value = CVec3{};
      return amp;
    }
    const double rad = hydrogenic::radial_dipole_integral(tf.n, tf.l, ti.n, ti.l, a);
    amp.value = ang * cplx(rad);
    return amp;
  }
  throw IncompatibleStates("dipole matrix element needs two grid, two oscillator, or two hydrogenic states");
}

// Velocity-form element <f|p|i>; grid states use the centered-difference
// derivative, analytic states the ladder algebra or the identity
// <f|p|i> = i m omega_fi <f|x|i>.
inline TransitionAmplitude momentum_matrix_element(const BoundState& f, const BoundState& i,
                                                   Axis axis = Axis::X,
                                                   const Constants& k = default_constants()) {
  TransitionAmplitude amp;
  amp.omega_fi = (f.energy - i.energy) / k.hbar();
  amp.form = MatrixForm::Velocity;
  const cplx ii{0.0, 1.0};

  if (f.is_grid() && i.is_grid()) {
    detail::require_same_grid(f, i);
    const auto& wf = f.grid_wf();
    const auto& wi = i.grid_wf();
    const double h = wf.grid.h;
    double acc = 0.0; // Int psi_f dpsi_i/dx, end nodes vanish under hard walls
    for (std::size_t j = 1; j + 1 < wf.grid.n; ++j)
      acc += wf.psi[j] * (wi.psi[j + 1] - wi.psi[j - 1]) / (2.0 * h);
    amp.value = detail::on_axis(-ii * k.hbar() * acc * h, axis);
    return amp;
  }
  if (f.is_oscillator() && i.is_oscillator()) {
    const auto& tf = f.oscillator_tag();
    const auto& ti = i.oscillator_tag();
    if (std::abs(tf.hbar_omega - ti.hbar_omega) > 1e-12)
      throw IncompatibleStates("oscillator states with different frequencies");
    const double x0 = BoundState::oscillator_length(ti.hbar_omega, k);
    cplx v = 0.0;
    if (tf.n == ti.n + 1) v = ii * k.hbar() / x0 * std::sqrt((ti.n + 1) / 2.0);
    else if (tf.n == ti.n - 1) v = -ii * k.hbar() / x0 * std::sqrt(ti.n / 2.0);
    amp.value = detail::on_axis(v, axis);
    return amp;
  }
  if (f.is_hydrogenic() && i.is_hydrogenic()) {
    TransitionAmplitude x_amp = dipole_matrix_element(f, i, axis, k);
    amp.value = x_amp.value * (ii * k.electron_mass() * amp.omega_fi);
    return amp;
  }
  throw IncompatibleStates("momentum matrix element needs two grid, two oscillator, or two hydrogenic states");
}

// Convert a velocity-form amplitude to length form by dividing out
// i m omega_fi; singular for degenerate pairs.
inline TransitionAmplitude to_length_form(const TransitionAmplitude& amp,
                                          const Constants& k = default_constants()) {
  if (amp.form == MatrixForm::Length) return amp;
  if (std::abs(amp.omega_fi) < 1e-12)
    throw DegenerateTransition("velocity -> length conversion is singular at omega_fi = 0");
  TransitionAmplitude out = amp;
  out.form = MatrixForm::Length;
  out.value = amp.value * (1.0 / (cplx(0.0, 1.0) * k.electron_mass() * amp.omega_fi));
  return out;
}

enum class Dimensionality { OneD, ThreeD };

// Oscillator strength F_fi = (2m / 3 hbar) omega_fi |<f|x|i>|^2 in 3D;
// the one-dimensional convention drops the factor 1/3.
inline double oscillator_strength(const BoundState& f, const BoundState& i, Dimensionality dim,
                                  const Constants& k = default_constants()) {
  TransitionAmplitude d = dipole_matrix_element(f, i, Axis::X, k);
  const double factor = (dim == Dimensionality::ThreeD) ? 2.0 / 3.0 : 2.0;
  return factor * k.electron_mass() / k.hbar() * d.omega_fi * d.value.norm2();
}

// Partial Thomas-Reiche-Kuhn sum over the supplied final states; approaches 1
// as the basis becomes complete.
inline double trk_sum(const BoundState& i, const std::vector<BoundState>& states, Dimensionality dim,
                      const Constants& k = default_constants()) {
  double acc = 0.0;
  for (const auto& f : states) acc += oscillator_strength(f, i, dim, k);
  return acc;
}

} // namespace photokin
