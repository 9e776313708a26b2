#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "photokin/constants.hpp"
#include "photokin/errors.hpp"
#include "photokin/linalg.hpp"

namespace photokin {

// Dirac-comb lattice V(x) = W sum_n delta(x - n a) parameterized by the
// dimensionless strength g = m W a / hbar^2. Bloch energies solve
// cos(k a) = D(E) with D(E) = cos(q a) + g sin(q a)/(q a), E = hbar^2 q^2/2m,
// continued to q = i kappa for E < 0.
struct KronigPenney {
  double a = 1.0;              // lattice constant, nm
  double strength_param = 0.0; // g = m W a / hbar^2
  int cell_grid = 512;         // samples per cell for exports and phase fixing
  Constants constants{};

  void validate() const {
    if (!(a > 0.0)) throw Error("KronigPenney: lattice constant must be positive");
    if (cell_grid < 128) throw Error("KronigPenney: cell_grid must be >= 128");
  }

  double hbar2_over_2m() const {
    return constants.hbar_c * constants.hbar_c / (2.0 * constants.electron_mass_energy); // eV nm^2
  }
  // Delta strength W in eV nm.
  double delta_strength() const { return strength_param * 2.0 * hbar2_over_2m() / a; }

  // Scan parameter tau: E(tau) = sign(tau) hbar^2 tau^2 / 2m, tau in 1/nm.
  double energy_of_tau(double tau) const { return (tau >= 0.0 ? 1.0 : -1.0) * hbar2_over_2m() * tau * tau; }

  double dispersion_rhs(double energy) const {
    const double h22m = hbar2_over_2m();
    const double y = energy * a * a / h22m; // (q a)^2, signed
    if (std::abs(y) < 1e-8) {
      // cos x + g sin(x)/x expanded in y = x^2; analytic through E = 0
      return (1.0 - y / 2.0 + y * y / 24.0) +
             strength_param * (1.0 - y / 6.0 + y * y / 120.0);
    }
    if (energy > 0.0) {
      const double qa = std::sqrt(y);
      return std::cos(qa) + strength_param * std::sin(qa) / qa;
    }
    const double ka = std::sqrt(-y);
    return std::cosh(ka) + strength_param * std::sinh(ka) / ka;
  }

  double dispersion_rhs_denergy(double energy) const {
    const double h22m = hbar2_over_2m();
    const double y = energy * a * a / h22m;
    const double dy_de = a * a / h22m;
    if (std::abs(y) < 1e-8) {
      const double dd_dy = (-0.5 + y / 12.0) + strength_param * (-1.0 / 6.0 + y / 60.0);
      return dd_dy * dy_de;
    }
    if (energy > 0.0) {
      const double qa = std::sqrt(y);
      const double q = qa / a;
      const double dd_dq = -a * std::sin(qa) + strength_param / q * (std::cos(qa) - std::sin(qa) / qa);
      const double dq_de = 1.0 / (2.0 * h22m * q);
      return dd_dq * dq_de;
    }
    const double ka = std::sqrt(-y);
    const double kap = ka / a;
    const double dd_dk = a * std::sinh(ka) + strength_param / kap * (std::cosh(ka) - std::sinh(ka) / ka);
    const double dk_de = -1.0 / (2.0 * h22m * kap);
    return dd_dk * dk_de;
  }
};

namespace detail {

// Int_0^a exp(i w x) dx, stable for small |w a|.
inline cplx cell_exp_integral(cplx w, double a) {
  const cplx iwa = cplx(0.0, 1.0) * w * a;
  if (std::abs(iwa) < 1e-6) {
    return a * (1.0 + iwa / 2.0 + iwa * iwa / 6.0 + iwa * iwa * iwa / 24.0);
  }
  return (std::exp(iwa) - 1.0) / (cplx(0.0, 1.0) * w);
}

} // namespace detail

// Periodic Bloch factor on one cell as a two-term exponential sum
// u(x) = sum_j c_j exp(i mu_j x); cell integrals are closed-form.
struct BlochFactor {
  std::array<cplx, 2> coef{};
  std::array<cplx, 2> expo{};
  double a = 1.0;

  cplx value(double x) const {
    return coef[0] * std::exp(cplx(0.0, 1.0) * expo[0] * x) +
           coef[1] * std::exp(cplx(0.0, 1.0) * expo[1] * x);
  }
  cplx derivative(double x) const {
    return cplx(0.0, 1.0) * (coef[0] * expo[0] * std::exp(cplx(0.0, 1.0) * expo[0] * x) +
                             coef[1] * expo[1] * std::exp(cplx(0.0, 1.0) * expo[1] * x));
  }

  // <this|other>_V over one cell, exact.
  cplx overlap(const BlochFactor& other) const {
    cplx acc = 0.0;
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        acc += std::conj(coef[j]) * other.coef[l] *
               detail::cell_exp_integral(other.expo[l] - std::conj(expo[j]), a);
    return acc;
  }

  // <this|(p + hbar k)|other>_V with p = -i hbar d/dx, exact; hbar in eV fs,
  // result in eV fs / nm.
  cplx momentum_plus_hbar_k(const BlochFactor& other, double k, double hbar) const {
    cplx acc = 0.0;
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l)
        acc += std::conj(coef[j]) * hbar * (other.expo[l] + k) * other.coef[l] *
               detail::cell_exp_integral(other.expo[l] - std::conj(expo[j]), a);
    return acc;
  }
};

class BlochBand {
public:
  int n = 1;            // 1-based band index
  KronigPenney model;
  double e_min = 0.0, e_max = 0.0;   // band window, eV
  double tau_lo = 0.0, tau_hi = 0.0; // window in the scan parameter
  bool rising = true;                // D goes +1 -> -1 (E(k) increasing) or reverse
  std::vector<double> k_samples;     // spans (-pi/a, pi/a]
  std::vector<double> energies;
  std::vector<BlochFactor> factors;

  double zone_edge() const { return std::numbers::pi / model.a; }
  bool contains_energy(double e) const { return e >= e_min && e <= e_max; }

  // Exact dispersion inversion: bisection of D(E) = cos(k a) inside the band
  // window (D is strictly monotone there).
  double energy_at(double k) const {
    const double target = std::cos(std::abs(k) * model.a);
    double lo = tau_lo, hi = tau_hi;
    double flo = model.dispersion_rhs(model.energy_of_tau(lo)) - target;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = model.dispersion_rhs(model.energy_of_tau(mid)) - target;
      if ((fmid > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
      }
      if (hi - lo < 1e-15 * std::max(1.0, std::abs(hi))) break;
    }
    return model.energy_of_tau(0.5 * (lo + hi));
  }

  // Signed dE/dk in eV nm from implicit differentiation of cos(ka) = D(E).
  double denergy_dk(double k, double energy) const {
    const double dd = model.dispersion_rhs_denergy(energy);
    return -model.a * std::sin(k * model.a) / dd;
  }

  // Bloch factor at arbitrary (k, E(k)), cell-normalized with deterministic
  // phase (largest sampled |u| made real positive).
  BlochFactor factor_at(double k) const { return factor_at(k, energy_at(k)); }

  BlochFactor factor_at(double k, double energy) const {
    const Constants& kc = model.constants;
    const double h22m = model.hbar2_over_2m();
    cplx q;
    if (energy >= 0.0)
      q = cplx(std::sqrt(energy / h22m), 0.0);
    else
      q = cplx(0.0, std::sqrt(-energy / h22m));

    const cplx i{0.0, 1.0};
    const double a = model.a;
    cplx A = std::exp(-i * (q + k) * a) - 1.0;
    cplx B = 1.0 - std::exp(i * (q - k) * a);
    if (std::abs(A) < 1e-13 && std::abs(B) < 1e-13) {
      // unperturbed edge (q a = n pi at a matching zone point): the Bloch
      // condition is trivially satisfied and the delta jump condition picks
      // the sine standing wave with nodes on the comb
      if (std::abs(q) > 1e-12) {
        A = 1.0;
        B = -1.0;
      } else {
        A = 1.0; // q = 0 free bottom edge: constant amplitude
        B = 0.0;
      }
    }

    BlochFactor u;
    u.a = a;
    u.coef = {A, B};
    u.expo = {q - k, -(q + k)};

    const double norm2 = u.overlap(u).real();
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
      throw RootBracketingFailure("Bloch factor normalization failed");
    const double scale = 1.0 / std::sqrt(norm2);
    u.coef[0] *= scale;
    u.coef[1] *= scale;

    double best = -1.0;
    cplx best_val = 1.0;
    for (int j = 0; j < model.cell_grid; ++j) {
      const double x = a * (j + 0.5) / model.cell_grid;
      const cplx v = u.value(x);
      if (std::abs(v) > best) {
        best = std::abs(v);
        best_val = v;
      }
    }
    const cplx phase = std::conj(best_val) / std::abs(best_val);
    u.coef[0] *= phase;
    u.coef[1] *= phase;
    (void)kc;
    return u;
  }
};

namespace detail {

struct BandWindow {
  double tau_lo, tau_hi;
};

inline double bisect_rhs_level(const KronigPenney& m, double lo, double hi, double level) {
  double flo = m.dispersion_rhs(m.energy_of_tau(lo)) - level;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = m.dispersion_rhs(m.energy_of_tau(mid)) - level;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Locate the |D(E)| <= 1 windows in ascending energy: scan the dispersion
// right-hand side, collect transversal crossings of +-1 plus tangent extrema
// (the free limit touches +-1 without crossing).
inline std::vector<BandWindow> find_band_windows(const KronigPenney& m, int bands) {
  const double pi = std::numbers::pi;
  const double tau_min = -(std::abs(m.strength_param) + 10.0) / m.a;
  const double tau_max = (bands + 2) * pi / m.a;
  const int samples = 4096 * (bands + 2);

  std::vector<double> edges;
  auto dval = [&](double tau) { return m.dispersion_rhs(m.energy_of_tau(tau)); };

  double prev_tau = tau_min;
  double prev_d = dval(prev_tau);
  double prev_prev_d = prev_d;
  double prev_prev_tau = prev_tau;
  for (int s = 1; s <= samples; ++s) {
    const double tau = tau_min + (tau_max - tau_min) * s / samples;
    const double d = dval(tau);
    for (double level : {1.0, -1.0}) {
      if ((prev_d - level) == 0.0)
        edges.push_back(prev_tau);
      else if ((prev_d - level) * (d - level) < 0.0)
        edges.push_back(bisect_rhs_level(m, prev_tau, tau, level));
    }
    // tangent extremum: a local min/max of D touching +-1 marks a band edge
    // without a sign change (the free limit has only these)
    if (s >= 2) {
      const bool is_max = prev_d >= prev_prev_d && prev_d >= d;
      const bool is_min = prev_d <= prev_prev_d && prev_d <= d;
      if ((is_max || is_min) && std::abs(std::abs(prev_d) - 1.0) < 1e-2) {
        double lo = prev_prev_tau, hi = tau;
        for (int it = 0; it < 200; ++it) {
          const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
          const double f1 = is_max ? -dval(m1) : dval(m1);
          const double f2 = is_max ? -dval(m2) : dval(m2);
          if (f1 < f2) hi = m2; else lo = m1;
        }
        const double ext = 0.5 * (lo + hi);
        if (std::abs(std::abs(dval(ext)) - 1.0) < 1e-9) edges.push_back(ext);
      }
    }
    prev_prev_d = prev_d;
    prev_prev_tau = prev_tau;
    prev_d = d;
    prev_tau = tau;
  }

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [&](double x, double y) { return std::abs(x - y) < 1e-12 * (tau_max - tau_min); }),
              edges.end());

  std::vector<BandWindow> windows;
  for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
    const double mid = 0.5 * (edges[j] + edges[j + 1]);
    if (std::abs(dval(mid)) <= 1.0) windows.push_back({edges[j], edges[j + 1]});
    if (static_cast<int>(windows.size()) == bands) break;
  }
  if (static_cast<int>(windows.size()) < bands)
    throw RootBracketingFailure("found only " + std::to_string(windows.size()) + " bands in scan range");
  return windows;
}

} // namespace detail

// Solve the lowest `bands` Bloch bands on M k-samples spanning (-pi/a, pi/a].
inline std::vector<BlochBand> solve_dispersion(const KronigPenney& model, int bands, int k_resolution) {
  model.validate();
  if (bands < 1) throw Error("solve_dispersion: need bands >= 1");
  if (k_resolution < 64) throw Error("solve_dispersion: need k_resolution >= 64");

  const double pi = std::numbers::pi;
  auto windows = detail::find_band_windows(model, bands);

  std::vector<BlochBand> out;
  out.reserve(bands);
  for (int b = 0; b < bands; ++b) {
    BlochBand band;
    band.n = b + 1;
    band.model = model;
    band.tau_lo = windows[b].tau_lo;
    band.tau_hi = windows[b].tau_hi;
    const double e_lo = model.energy_of_tau(band.tau_lo);
    const double e_hi = model.energy_of_tau(band.tau_hi);
    band.e_min = std::min(e_lo, e_hi);
    band.e_max = std::max(e_lo, e_hi);
    band.rising = model.dispersion_rhs(band.e_min) > model.dispersion_rhs(band.e_max);

    band.k_samples.resize(k_resolution);
    band.energies.resize(k_resolution);
    band.factors.resize(k_resolution);
    for (int j = 0; j < k_resolution; ++j) {
      const double k = -pi / model.a + (j + 1) * (2.0 * pi / model.a) / k_resolution;
      band.k_samples[j] = k;
      band.energies[j] = band.energy_at(k);
      band.factors[j] = band.factor_at(k, band.energies[j]);
    }
    out.push_back(std::move(band));
  }
  return out;
}

} // namespace photokin
