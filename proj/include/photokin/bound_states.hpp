#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <lapacke.h>

#include "photokin/constants.hpp"
#include "photokin/errors.hpp"
#include "photokin/potential.hpp"

namespace photokin {

struct GridWavefunction {
  Grid1D grid;
  std::vector<double> psi; // real samples, unit norm under the trapezoid rule
};

struct HydrogenicTag {
  int n = 1, l = 0, m = 0;
};

struct OscillatorTag {
  int n = 0;
  double hbar_omega = 1.0; // eV
};

// Discrete electronic energy eigenstate: either a grid-solved 1D state or an
// analytic hydrogenic / harmonic-oscillator state.
struct BoundState {
  int index = 0;
  double energy = 0.0; // eV
  std::variant<GridWavefunction, HydrogenicTag, OscillatorTag> payload;

  bool is_grid() const { return std::holds_alternative<GridWavefunction>(payload); }
  bool is_hydrogenic() const { return std::holds_alternative<HydrogenicTag>(payload); }
  bool is_oscillator() const { return std::holds_alternative<OscillatorTag>(payload); }
  const GridWavefunction& grid_wf() const { return std::get<GridWavefunction>(payload); }
  const HydrogenicTag& hydrogenic_tag() const { return std::get<HydrogenicTag>(payload); }
  const OscillatorTag& oscillator_tag() const { return std::get<OscillatorTag>(payload); }

  static BoundState hydrogenic(int n, int l, int m, const Constants& k = default_constants()) {
    if (n < 1 || n > 3 || l < 0 || l >= n || std::abs(m) > l)
      throw Error("hydrogenic states are provided for n <= 3 with valid (l, m)");
    BoundState s;
    s.index = n;
    s.energy = -0.5 * k.electron_mass_energy * k.alpha_s * k.alpha_s / (n * n);
    s.payload = HydrogenicTag{n, l, m};
    return s;
  }

  static BoundState oscillator(int n, double hbar_omega, const Constants& k = default_constants()) {
    if (n < 0 || !(hbar_omega > 0.0)) throw Error("oscillator state needs n >= 0 and hbar_omega > 0");
    BoundState s;
    s.index = n;
    s.energy = hbar_omega * (n + 0.5);
    s.payload = OscillatorTag{n, hbar_omega};
    (void)k;
    return s;
  }

  // Oscillator length scale sqrt(hbar / m omega) in nm.
  static double oscillator_length(double hbar_omega, const Constants& k = default_constants()) {
    return std::sqrt(k.hbar_c * k.hbar_c / (k.electron_mass_energy * hbar_omega));
  }
};

// Normalized 1D oscillator eigenfunction via the Hermite-function recurrence.
inline double oscillator_wavefunction(int n, double x, double hbar_omega,
                                      const Constants& k = default_constants()) {
  const double x0 = BoundState::oscillator_length(hbar_omega, k);
  const double xi = x / x0;
  double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
  if (n == 0) return h0 / std::sqrt(x0);
  double h1 = std::sqrt(2.0) * xi * h0;
  for (int j = 1; j < n; ++j) {
    double h2 = std::sqrt(2.0 / (j + 1.0)) * xi * h1 - std::sqrt(j / (j + 1.0)) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1 / std::sqrt(x0);
}

namespace detail {

// One inverse-iteration + Rayleigh-quotient pass on the tridiagonal pair.
inline void polish_eigenpair(const std::vector<double>& diag, double off, double& lambda,
                             std::vector<double>& vec) {
  const lapack_int m = static_cast<lapack_int>(diag.size());
  std::vector<double> dl(m - 1, off), du(m - 1, off), d(m), b = vec;
  for (lapack_int j = 0; j < m; ++j) d[j] = diag[j] - lambda;
  lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, m, 1, dl.data(), d.data(), du.data(), b.data(), m);
  if (info != 0) return; // shift exactly singular; keep the LAPACK vector
  double norm = 0.0;
  for (double x : b) norm += x * x;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) return;
  for (double& x : b) x /= norm;
  // Rayleigh quotient of the polished vector.
  double rq = 0.0;
  for (lapack_int j = 0; j < m; ++j) {
    double hx = diag[j] * b[j];
    if (j > 0) hx += off * b[j - 1];
    if (j + 1 < m) hx += off * b[j + 1];
    rq += b[j] * hx;
  }
  lambda = rq;
  vec = std::move(b);
}

inline double tridiag_residual(const std::vector<double>& diag, double off, double lambda,
                               const std::vector<double>& vec) {
  const std::size_t m = diag.size();
  double acc = 0.0, nrm = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double hx = diag[j] * vec[j];
    if (j > 0) hx += off * vec[j - 1];
    if (j + 1 < m) hx += off * vec[j + 1];
    double r = hx - lambda * vec[j];
    acc += r * r;
    nrm += vec[j] * vec[j];
  }
  return std::sqrt(acc / nrm);
}

} // namespace detail

// Lowest `count` eigenstates of H = p^2/2m + V(x) with hard walls at the end
// nodes, using the 3-point finite-difference Laplacian. Eigenpairs come from
// the LAPACK symmetric tridiagonal solver and are polished by inverse
// iteration until the relative residual is at machine level.
inline std::vector<BoundState> solve_bound_states(const Potential1D& pot, int count,
                                                  const Constants& k = default_constants()) {
  pot.validate();
  if (count < 1) throw Error("solve_bound_states: count must be >= 1");
  if (static_cast<std::size_t>(count) > pot.grid.n / 4)
    throw GridTooCoarse("requested " + std::to_string(count) + " states on " +
                        std::to_string(pot.grid.n) + " points; need count <= grid_points/4");

  const double h = pot.grid.h;
  const double mass = k.electron_mass();
  const double t = k.hbar() * k.hbar() / (2.0 * mass * h * h); // eV
  const lapack_int m = static_cast<lapack_int>(pot.grid.n - 2); // interior nodes

  std::vector<double> diag(m), off(m - 1, -t);
  for (lapack_int j = 0; j < m; ++j) diag[j] = 2.0 * t + pot.v[j + 1];

  std::vector<double> w(m), z(static_cast<std::size_t>(m) * count);
  std::vector<lapack_int> isuppz(2 * count);
  lapack_int found = 0;
  std::vector<double> dcopy = diag, ecopy(off.begin(), off.end());
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', m, dcopy.data(), ecopy.data(), 0.0,
                                   0.0, 1, count, 0.0, &found, w.data(), z.data(), m, isuppz.data());
  if (info != 0 || found < count)
    throw ConvergenceFailure("LAPACK dstevr failed (info=" + std::to_string(info) + ")");

  std::vector<BoundState> states;
  states.reserve(count);
  for (int s = 0; s < count; ++s) {
    std::vector<double> vec(z.begin() + static_cast<std::size_t>(s) * m,
                            z.begin() + static_cast<std::size_t>(s + 1) * m);
    double lambda = w[s];
    for (int pass = 0; pass < 2; ++pass) {
      if (detail::tridiag_residual(diag, -t, lambda, vec) <= 1e-10) break;
      detail::polish_eigenpair(diag, -t, lambda, vec);
    }
    if (detail::tridiag_residual(diag, -t, lambda, vec) > 1e-8)
      throw ConvergenceFailure("eigenpair residual above 1e-8 for state " + std::to_string(s));

    GridWavefunction wf;
    wf.grid = pot.grid;
    wf.psi.assign(pot.grid.n, 0.0);
    for (lapack_int j = 0; j < m; ++j) wf.psi[j + 1] = vec[j];

    // Trapezoid normalization (end nodes vanish) and deterministic sign: the
    // first sample above noise level is positive.
    double norm2 = 0.0;
    for (double p : wf.psi) norm2 += p * p;
    norm2 *= h;
    double scale = 1.0 / std::sqrt(norm2);
    double peak = 0.0;
    for (double p : wf.psi) peak = std::max(peak, std::abs(p));
    for (std::size_t j = 0; j < wf.psi.size(); ++j) {
      if (std::abs(wf.psi[j]) > 1e-8 * peak) {
        if (wf.psi[j] < 0.0) scale = -scale;
        break;
      }
    }
    for (double& p : wf.psi) p *= scale;

    BoundState st;
    st.index = s;
    st.energy = lambda;
    st.payload = std::move(wf);
    states.push_back(std::move(st));
  }
  return states;
}

// CSV export (x, Re psi, Im psi); grid states are real.
inline void export_states_csv(const std::vector<BoundState>& states, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "state,x_nm,re_psi,im_psi\n";
  for (const auto& s : states) {
    if (!s.is_grid()) continue;
    const auto& wf = s.grid_wf();
    for (std::size_t j = 0; j < wf.grid.n; ++j)
      out << s.index << ',' << wf.grid.x(j) << ',' << wf.psi[j] << ",0\n";
  }
}

} // namespace photokin
