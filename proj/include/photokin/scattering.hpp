#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "photokin/band_dipoles.hpp"
#include "photokin/band_dos.hpp"
#include "photokin/bound_states.hpp"
#include "photokin/lineshape.hpp"
#include "photokin/matrix_elements.hpp"
#include "photokin/polarization.hpp"

namespace photokin {

// Virtual intermediate states for the second-order dispersion sums: discrete
// levels plus energy bands (integrated over the zone). eta <= 0 selects the
// default regulator 1e-4 x min |omega_vi|; window <= 0 selects the default
// truncation window 50 hbar c k around the resonance energy.
struct IntermediateSet {
  std::vector<BoundState> discrete;
  std::vector<const BlochBand*> bands;
  double eta = 0.0;    // 1/fs
  double window = 0.0; // eV
  bool resonant_only = false;

  bool empty() const { return discrete.empty() && bands.empty(); }
};

struct ScatterKinematics {
  double k_in = 0.0;  // 1/nm
  double k_out = 0.0; // 1/nm
  Vec3 khat_in{0.0, 0.0, 1.0};
  Vec3 khat_out{1.0, 0.0, 0.0};
  CVec3 eps_in{0.0, 0.0, 1.0};  // incoming polarization (plain contraction)
  CVec3 eps_out{0.0, 0.0, 1.0}; // outgoing polarization (conjugated contraction)
};

struct ScatterResult {
  double value = 0.0;            // nm^2/sr, or nm^3 for spectral densities
  double value_dos = 0.0;        // DOS-approximation companion where defined
  double k_out = 0.0;            // 1/nm
  double eta = 0.0;              // regulator actually used, 1/fs
  double truncation_bound = 0.0; // |sum of dropped tail| bound, amplitude units
  bool near_resonance = false;
};

namespace detail {

inline bool same_state(const BoundState& a, const BoundState& b) {
  if (a.payload.index() != b.payload.index()) return false;
  return a.index == b.index && std::abs(a.energy - b.energy) < 1e-12;
}

struct DispersionEntry {
  CVec3 m_fv;      // <f|x|v>
  CVec3 m_vi;      // <v|x|i>
  double e_v = 0;  // eV
  double weight = 1.0; // dk measure for band samples, 1 for discrete states
};

// Precomputed matrix elements for the dispersion sums of a fixed external
// pair; reusable across a photon-energy sweep.
class DispersionTable {
public:
  DispersionTable(const BoundState& f, const BoundState& i, const IntermediateSet& vset,
                  const Constants& kc)
      : e_i_(i.energy), e_f_(f.energy), resonant_only_(vset.resonant_only), kc_(kc) {
    if (vset.empty() && !same_state(f, i))
      throw EmptyIntermediateSet("dispersion sum over an empty intermediate set");
    for (const auto& v : vset.discrete) {
      DispersionEntry e;
      e.m_fv = dipole_matrix_element(f, v, Axis::X, kc).value;
      e.m_vi = dipole_matrix_element(v, i, Axis::X, kc).value;
      e.e_v = v.energy;
      entries_.push_back(e);
    }
    for (const BlochBand* band : vset.bands) {
      const auto& ks = band->k_samples;
      const double dk = ks.size() > 1 ? ks[1] - ks[0] : 0.0;
      for (std::size_t j = 0; j < ks.size(); ++j) {
        DispersionEntry e;
        const auto amp_i = discrete_to_band_dipole(*band, ks[j], i);
        const auto amp_f = discrete_to_band_dipole(*band, ks[j], f);
        e.m_vi = amp_i.value; // <n,k|x|i>
        e.m_fv = CVec3{std::conj(amp_f.value.x), std::conj(amp_f.value.y),
                       std::conj(amp_f.value.z)}; // <f|x|n,k>
        e.e_v = band->energies[j];
        e.weight = dk;
        entries_.push_back(e);
      }
    }
    min_abs_omega_vi_ = std::numeric_limits<double>::infinity();
    for (const auto& e : entries_) {
      const double w = std::abs((e.e_v - e_i_) / kc.hbar());
      if (w > 1e-12) min_abs_omega_vi_ = std::min(min_abs_omega_vi_, w);
    }
    delta_fi_ = same_state(f, i) ? 1.0 : 0.0;
  }

  double resolve_eta(const IntermediateSet& vset) const {
    if (vset.eta > 0.0) return vset.eta;
    if (!std::isfinite(min_abs_omega_vi_)) return 1e-6;
    return 1e-4 * min_abs_omega_vi_;
  }

  // Default truncation window 50 x max(hbar c k, hbar min|omega_vi|): the
  // photon-energy scaling alone would exclude every intermediate state in the
  // soft-photon (Rayleigh) regime.
  double resolve_window(const IntermediateSet& vset, double ck_energy) const {
    if (vset.window > 0.0) return vset.window;
    const double floor_ev =
        std::isfinite(min_abs_omega_vi_) ? kc_.hbar() * min_abs_omega_vi_ : 0.0;
    return 50.0 * std::max(ck_energy, floor_ev);
  }

  struct Amplitude {
    cplx value{};
    double truncation_bound = 0.0;
    double min_detuning = std::numeric_limits<double>::infinity(); // |omega_vi - ck|/ck
  };

  // sum_v w(v) [ <f|eps'.x|v><v|eps.x|i> / (omega_vi - ck - i eta)
  //            + <f|eps.x|v><v|eps'.x|i> / (omega_vi + ck' - i eta) ]
  // with w = 1 (Kramers-Heisenberg) or w = omega_fv omega_vi (full form).
  Amplitude dispersion_sum(const ScatterKinematics& kin, double eta, double window_ev,
                           bool weighted) const {
    Amplitude out;
    const double ck = kc_.c * kin.k_in;
    const double ckp = kc_.c * kin.k_out;
    const double e_res = e_i_ + kc_.hbar() * ck;
    for (const auto& e : entries_) {
      const double omega_vi = (e.e_v - e_i_) / kc_.hbar();
      const double omega_fv = (e_f_ - e.e_v) / kc_.hbar();
      const double w = weighted ? omega_fv * omega_vi : 1.0;
      const cplx res_num = hdot(kin.eps_out, e.m_fv) * cdot(kin.eps_in, e.m_vi) * w * e.weight;
      const cplx anti_num = cdot(kin.eps_in, e.m_fv) * hdot(kin.eps_out, e.m_vi) * w * e.weight;
      const cplx res_den = cplx(omega_vi - ck, -eta);
      const cplx anti_den = cplx(omega_vi + ckp, -eta);
      if (std::abs(e.e_v - e_res) > window_ev) {
        out.truncation_bound += std::abs(res_num) / std::abs(res_den);
        if (!resonant_only_) out.truncation_bound += std::abs(anti_num) / std::abs(anti_den);
        continue;
      }
      out.value += res_num / res_den;
      if (!resonant_only_) out.value += anti_num / anti_den;
      if (ck > 0.0) out.min_detuning = std::min(out.min_detuning, std::abs(omega_vi - ck) / ck);
    }
    return out;
  }

  double delta_fi() const { return delta_fi_; }
  double omega_fi() const { return (e_f_ - e_i_) / kc_.hbar(); }

private:
  std::vector<DispersionEntry> entries_;
  double e_i_, e_f_;
  double min_abs_omega_vi_ = 0.0;
  double delta_fi_ = 0.0;
  bool resonant_only_ = false;
  Constants kc_;
};

inline void require_on_shell(double omega_fi, const ScatterKinematics& kin, const Constants& kc) {
  if (!(kin.k_in > 0.0) || !(kin.k_out > 0.0))
    throw OffShellKinematics("photon wavenumbers must be positive");
  const double ck = kc.c * kin.k_in, ckp = kc.c * kin.k_out;
  const double scale = std::max({std::abs(ck), std::abs(ckp), std::abs(omega_fi), 1e-12});
  if (std::abs(omega_fi - (ck - ckp)) > 1e-9 * scale)
    throw OffShellKinematics("omega_fi != c(k - k') beyond tolerance");
}

} // namespace detail

enum class ScatterForm { Length, Velocity };

// Exact second-order differential cross section including the Thomson term:
// (alpha_S/c)^2 (k'/k) |(hbar/m) delta_fi eps'.eps + dispersion sums|^2.
// The velocity form evaluates the momentum-operator variant of the same
// amplitude; with analytic states the two coincide identically.
inline ScatterResult scatter_full_second_order(const BoundState& f, const BoundState& i,
                                               const ScatterKinematics& kin,
                                               const IntermediateSet& vset,
                                               ScatterForm form = ScatterForm::Length,
                                               const Constants& kc = default_constants()) {
  const double omega_fi = (f.energy - i.energy) / kc.hbar();
  detail::require_on_shell(omega_fi, kin, kc);

  const double ck_energy = kc.hbar_c * kin.k_in;
  cplx amp;
  double trunc = 0.0, eta = 0.0;
  bool near_res = false;

  if (form == ScatterForm::Length) {
    detail::DispersionTable table(f, i, vset, kc);
    eta = table.resolve_eta(vset);
    const auto disp = table.dispersion_sum(kin, eta, table.resolve_window(vset, ck_energy), true);
    amp = kc.hbar() / kc.electron_mass() * table.delta_fi() * hdot(kin.eps_out, kin.eps_in) +
          disp.value;
    trunc = disp.truncation_bound;
    near_res = disp.min_detuning < 0.25;
  } else {
    // velocity form: (alpha_S/m^2 c)^2 (k'/k) |m hbar delta eps'.eps - sum pp/den|^2,
    // algebraically (1/m^2) of the length amplitude when p = i m omega x
    const double m = kc.electron_mass();
    cplx disp_p = 0.0;
    if (vset.empty() && !detail::same_state(f, i))
      throw EmptyIntermediateSet("dispersion sum over an empty intermediate set");
    double min_omega = std::numeric_limits<double>::infinity();
    for (const auto& v : vset.discrete) {
      const double omega_vi = (v.energy - i.energy) / kc.hbar();
      min_omega = std::min(min_omega, std::abs(omega_vi) > 1e-12 ? std::abs(omega_vi) : min_omega);
    }
    eta = vset.eta > 0.0 ? vset.eta : (std::isfinite(min_omega) ? 1e-4 * min_omega : 1e-6);
    const double ck = kc.c * kin.k_in, ckp = kc.c * kin.k_out;
    for (const auto& v : vset.discrete) {
      const double omega_vi = (v.energy - i.energy) / kc.hbar();
      const CVec3 p_fv = momentum_matrix_element(f, v, Axis::X, kc).value;
      const CVec3 p_vi = momentum_matrix_element(v, i, Axis::X, kc).value;
      disp_p += hdot(kin.eps_out, p_fv) * cdot(kin.eps_in, p_vi) / cplx(omega_vi - ck, -eta);
      disp_p += cdot(kin.eps_in, p_fv) * hdot(kin.eps_out, p_vi) / cplx(omega_vi + ckp, -eta);
    }
    const cplx amp_p = m * kc.hbar() * (detail::same_state(f, i) ? 1.0 : 0.0) *
                           hdot(kin.eps_out, kin.eps_in) -
                       disp_p;
    amp = amp_p / (m * m);
  }

  ScatterResult out;
  const double pref = std::pow(kc.alpha_s / kc.c, 2) * (kin.k_out / kin.k_in);
  out.value = pref * std::norm(amp);
  out.k_out = kin.k_out;
  out.eta = eta;
  out.truncation_bound = trunc;
  out.near_resonance = near_res;
  return out;
}

// Kramers-Heisenberg cross section for discrete external states:
// dsigma/dOmega = alpha_S^2 c^2 k k'^3 |dispersion sum|^2.
inline ScatterResult kh_dd(const BoundState& f, const BoundState& i, const ScatterKinematics& kin,
                           const IntermediateSet& vset, const Constants& kc = default_constants()) {
  const double omega_fi = (f.energy - i.energy) / kc.hbar();
  detail::require_on_shell(omega_fi, kin, kc);
  detail::DispersionTable table(f, i, vset, kc);
  if (vset.empty()) throw EmptyIntermediateSet("Kramers-Heisenberg needs intermediate states");
  const double eta = table.resolve_eta(vset);
  const auto disp =
      table.dispersion_sum(kin, eta, table.resolve_window(vset, kc.hbar_c * kin.k_in), false);

  ScatterResult out;
  out.value = kc.alpha_s * kc.alpha_s * kc.c * kc.c * kin.k_in * std::pow(kin.k_out, 3) *
              std::norm(disp.value);
  out.k_out = kin.k_out;
  out.eta = eta;
  out.truncation_bound = disp.truncation_bound;
  out.near_resonance = disp.min_detuning < 0.25;
  return out;
}

// Wigner-Weisskopf resolved version: dsigma/dOmega dk' with the Lorentz
// profile in place of strict energy conservation (no on-shell requirement).
inline ScatterResult kh_dd_ww(const BoundState& f, const BoundState& i,
                              const ScatterKinematics& kin, const IntermediateSet& vset,
                              double gamma, const Constants& kc = default_constants()) {
  detail::DispersionTable table(f, i, vset, kc);
  if (vset.empty()) throw EmptyIntermediateSet("Kramers-Heisenberg needs intermediate states");
  const double eta = table.resolve_eta(vset);
  const auto disp =
      table.dispersion_sum(kin, eta, table.resolve_window(vset, kc.hbar_c * kin.k_in), false);
  const double omega_fi = (f.energy - i.energy) / kc.hbar();
  const double profile = lorentz_profile(omega_fi + kc.c * (kin.k_out - kin.k_in), gamma);

  ScatterResult out;
  out.value = kc.alpha_s * kc.alpha_s * std::pow(kc.c, 3) * kin.k_in * std::pow(kin.k_out, 3) *
              profile * std::norm(disp.value);
  out.k_out = kin.k_out;
  out.eta = eta;
  out.truncation_bound = disp.truncation_bound;
  out.near_resonance = disp.min_detuning < 0.25;
  return out;
}

namespace detail {

// Dispersion amplitude at a band surface point k_e for scattering with one
// band-side external state. Band intermediates enter at the same k_e through
// the Wigner-Seitz cell elements; the diagonal (v equal to the external band)
// term is skipped since the cell position element of a band with itself is
// not gauge defined.
struct BandVertexAmplitude {
  cplx value{};
  double min_detuning = std::numeric_limits<double>::infinity();
};

inline BandVertexAmplitude band_final_amplitude(const BlochBand& band_f, double k_e,
                                                const BoundState& i, const ScatterKinematics& kin,
                                                const IntermediateSet& vset, double eta,
                                                bool resonant_only, const Constants& kc) {
  BandVertexAmplitude out;
  const double ck = kc.c * kin.k_in, ckp = kc.c * kin.k_out;
  for (const auto& v : vset.discrete) {
    const double omega_vi = (v.energy - i.energy) / kc.hbar();
    const CVec3 m_fv = discrete_to_band_dipole(band_f, k_e, v).value; // <n,k|x|v>
    const CVec3 m_vi = dipole_matrix_element(v, i, Axis::X, kc).value;
    out.value += hdot(kin.eps_out, m_fv) * cdot(kin.eps_in, m_vi) / cplx(omega_vi - ck, -eta);
    if (!resonant_only)
      out.value += cdot(kin.eps_in, m_fv) * hdot(kin.eps_out, m_vi) / cplx(omega_vi + ckp, -eta);
    if (ck > 0.0) out.min_detuning = std::min(out.min_detuning, std::abs(omega_vi - ck) / ck);
  }
  for (const BlochBand* vb : vset.bands) {
    if (vb->n == band_f.n) continue;
    const double e_v = vb->energy_at(k_e);
    const double omega_vi = (e_v - i.energy) / kc.hbar();
    const CVec3 m_fv = cell_dipole(band_f, *vb, k_e).value;            // <u_f|x|u_v>_V
    const CVec3 m_vi = discrete_to_band_dipole(*vb, k_e, i).value;     // <v,k|x|i>
    out.value += hdot(kin.eps_out, m_fv) * cdot(kin.eps_in, m_vi) / cplx(omega_vi - ck, -eta);
    if (!resonant_only)
      out.value += cdot(kin.eps_in, m_fv) * hdot(kin.eps_out, m_vi) / cplx(omega_vi + ckp, -eta);
    if (ck > 0.0) out.min_detuning = std::min(out.min_detuning, std::abs(omega_vi - ck) / ck);
  }
  return out;
}

inline BandVertexAmplitude band_initial_amplitude(const BoundState& f, const BlochBand& band_i,
                                                  double k_e, const ScatterKinematics& kin,
                                                  const IntermediateSet& vset, double eta,
                                                  bool resonant_only, const Constants& kc) {
  BandVertexAmplitude out;
  const double e_i = band_i.energy_at(k_e);
  const double ck = kc.c * kin.k_in, ckp = kc.c * kin.k_out;
  auto conj_vec = [](const CVec3& v) {
    return CVec3{std::conj(v.x), std::conj(v.y), std::conj(v.z)};
  };
  for (const auto& v : vset.discrete) {
    const double omega_vi = (v.energy - e_i) / kc.hbar();
    const CVec3 m_fv = dipole_matrix_element(f, v, Axis::X, kc).value;
    const CVec3 m_vi = conj_vec(discrete_to_band_dipole(band_i, k_e, v).value); // <v|x|n,k>
    out.value += hdot(kin.eps_out, m_fv) * cdot(kin.eps_in, m_vi) / cplx(omega_vi - ck, -eta);
    if (!resonant_only)
      out.value += cdot(kin.eps_in, m_fv) * hdot(kin.eps_out, m_vi) / cplx(omega_vi + ckp, -eta);
    if (ck > 0.0) out.min_detuning = std::min(out.min_detuning, std::abs(omega_vi - ck) / ck);
  }
  for (const BlochBand* vb : vset.bands) {
    if (vb->n == band_i.n) continue;
    const double e_v = vb->energy_at(k_e);
    const double omega_vi = (e_v - e_i) / kc.hbar();
    const CVec3 m_fv = conj_vec(discrete_to_band_dipole(*vb, k_e, f).value); // <f|x|v,k>
    const CVec3 m_vi = cell_dipole(*vb, band_i, k_e).value;                  // <u_v|x|u_i>_V
    out.value += hdot(kin.eps_out, m_fv) * cdot(kin.eps_in, m_vi) / cplx(omega_vi - ck, -eta);
    if (!resonant_only)
      out.value += cdot(kin.eps_in, m_fv) * hdot(kin.eps_out, m_vi) / cplx(omega_vi + ckp, -eta);
    if (ck > 0.0) out.min_detuning = std::min(out.min_detuning, std::abs(omega_vi - ck) / ck);
  }
  return out;
}

inline double resolve_band_eta(const IntermediateSet& vset, const std::vector<double>& omegas) {
  if (vset.eta > 0.0) return vset.eta;
  double min_w = std::numeric_limits<double>::infinity();
  for (double w : omegas)
    if (std::abs(w) > 1e-12) min_w = std::min(min_w, std::abs(w));
  return std::isfinite(min_w) ? 1e-4 * min_w : 1e-6;
}

} // namespace detail

// Scattering from a discrete state into a band: dsigma/(dOmega dk') =
// alpha_S^2 hbar c^3 k k'^3 sum_points |D(k_e)|^2 / |dE/dk| on the surface
// E_n(k_e) = E_i + hbar c (k - k'); the DOS companion assumes a constant
// dispersion factor.
inline ScatterResult kh_dc(const BoundState& i, const BlochBand& band_f,
                           const ScatterKinematics& kin, const IntermediateSet& vset,
                           const Constants& kc = default_constants()) {
  if (vset.empty()) throw EmptyIntermediateSet("Kramers-Heisenberg needs intermediate states");
  ScatterResult out;
  out.k_out = kin.k_out;
  const double e_f = i.energy + kc.hbar_c * (kin.k_in - kin.k_out);
  if (!band_f.contains_energy(e_f)) return out;

  std::vector<double> omegas;
  for (const auto& v : vset.discrete) omegas.push_back((v.energy - i.energy) / kc.hbar());
  for (const BlochBand* vb : vset.bands)
    omegas.push_back((0.5 * (vb->e_min + vb->e_max) - i.energy) / kc.hbar());
  const double eta = detail::resolve_band_eta(vset, omegas);
  out.eta = eta;

  const double pref = kc.alpha_s * kc.alpha_s * kc.hbar() * std::pow(kc.c, 3) * kin.k_in *
                      std::pow(kin.k_out, 3);
  try {
    const auto surf = constant_energy_set(band_f, e_f);
    double acc = 0.0, cell_sq = 0.0, min_det = std::numeric_limits<double>::infinity();
    for (const auto& pt : surf.points) {
      const auto amp =
          detail::band_final_amplitude(band_f, pt.k, i, kin, vset, eta, vset.resonant_only, kc);
      acc += std::norm(amp.value) * pt.weight;
      min_det = std::min(min_det, amp.min_detuning);
      if (pt.k > 0.0)
        cell_sq = std::norm(amp.value) * 2.0 * std::numbers::pi / band_f.model.a;
    }
    out.value = pref * acc;
    out.value_dos = pref * dos_band(band_f, e_f) * cell_sq;
    out.near_resonance = min_det < 0.25;
  } catch (const EdgeSingular&) {
    out.value = std::numeric_limits<double>::infinity();
    out.value_dos = out.value;
  }
  return out;
}

// Scattering from a band into a discrete state; the initial states sit on
// the surface E_n(k_e) = E_f + hbar c (k' - k).
inline ScatterResult kh_cd(const BlochBand& band_i, const BoundState& f,
                           const ScatterKinematics& kin, const IntermediateSet& vset,
                           const Constants& kc = default_constants()) {
  if (vset.empty()) throw EmptyIntermediateSet("Kramers-Heisenberg needs intermediate states");
  ScatterResult out;
  out.k_out = kin.k_out;
  const double e_i = f.energy + kc.hbar_c * (kin.k_out - kin.k_in);
  if (!band_i.contains_energy(e_i)) return out;

  std::vector<double> omegas;
  for (const auto& v : vset.discrete) omegas.push_back((v.energy - e_i) / kc.hbar());
  for (const BlochBand* vb : vset.bands)
    omegas.push_back((0.5 * (vb->e_min + vb->e_max) - e_i) / kc.hbar());
  const double eta = detail::resolve_band_eta(vset, omegas);
  out.eta = eta;

  const double pref = kc.alpha_s * kc.alpha_s * kc.hbar() * std::pow(kc.c, 3) * kin.k_in *
                      std::pow(kin.k_out, 3);
  try {
    const auto surf = constant_energy_set(band_i, e_i);
    double acc = 0.0, cell_sq = 0.0, min_det = std::numeric_limits<double>::infinity();
    for (const auto& pt : surf.points) {
      const auto amp =
          detail::band_initial_amplitude(f, band_i, pt.k, kin, vset, eta, vset.resonant_only, kc);
      acc += std::norm(amp.value) * pt.weight;
      min_det = std::min(min_det, amp.min_detuning);
      if (pt.k > 0.0)
        cell_sq = std::norm(amp.value) * 2.0 * std::numbers::pi / band_i.model.a;
    }
    out.value = pref * acc;
    out.value_dos = pref * dos_band(band_i, e_i) * cell_sq;
    out.near_resonance = min_det < 0.25;
  } catch (const EdgeSingular&) {
    out.value = std::numeric_limits<double>::infinity();
    out.value_dos = out.value;
  }
  return out;
}

namespace detail {

inline cplx cc_amplitude(const BlochBand& band_i, const BlochBand& band_f, double k_e,
                         const ScatterKinematics& kin, const std::vector<const BlochBand*>& vbands,
                         double eta, bool resonant_only, const Constants& kc, double* min_det) {
  cplx amp = 0.0;
  const double ck = kc.c * kin.k_in, ckp = kc.c * kin.k_out;
  const double e_i = band_i.energy_at(k_e);
  int used = 0;
  for (const BlochBand* vb : vbands) {
    if (vb->n == band_i.n || vb->n == band_f.n) continue;
    ++used;
    const double omega_vi = (vb->energy_at(k_e) - e_i) / kc.hbar();
    const CVec3 m_fv = cell_dipole(band_f, *vb, k_e).value; // <u_f|x|u_v>
    const CVec3 m_vi = cell_dipole(*vb, band_i, k_e).value; // <u_v|x|u_i>
    amp += hdot(kin.eps_out, m_fv) * cdot(kin.eps_in, m_vi) / cplx(omega_vi - ck, -eta);
    if (!resonant_only)
      amp += cdot(kin.eps_in, m_fv) * hdot(kin.eps_out, m_vi) / cplx(omega_vi + ckp, -eta);
    if (min_det && ck > 0.0) *min_det = std::min(*min_det, std::abs(omega_vi - ck) / ck);
  }
  if (used == 0)
    throw EmptyIntermediateSet("interband scattering needs intermediate bands distinct from the pair");
  return amp;
}

} // namespace detail

// Interband scattering at fixed k_e: all vertices carry the same electron
// wave vector and ck' = ck - omega_{n'n}(k_e).
inline ScatterResult kh_cc(const BlochBand& band_i, const BlochBand& band_f, double k_e,
                           const ScatterKinematics& kin, const IntermediateSet& vset,
                           const Constants& kc = default_constants()) {
  const double omega_fi = (band_f.energy_at(k_e) - band_i.energy_at(k_e)) / kc.hbar();
  ScatterKinematics on_shell = kin;
  on_shell.k_out = kin.k_in - omega_fi / kc.c;
  if (on_shell.k_out <= 0.0)
    throw OffShellKinematics("photon cannot supply the interband energy transfer");

  std::vector<double> omegas;
  for (const BlochBand* vb : vset.bands)
    if (vb->n != band_i.n && vb->n != band_f.n)
      omegas.push_back((vb->energy_at(k_e) - band_i.energy_at(k_e)) / kc.hbar());
  const double eta = detail::resolve_band_eta(vset, omegas);

  double min_det = std::numeric_limits<double>::infinity();
  const cplx amp = detail::cc_amplitude(band_i, band_f, k_e, on_shell, vset.bands, eta,
                                        vset.resonant_only, kc, &min_det);

  ScatterResult out;
  out.value = kc.alpha_s * kc.alpha_s * kc.c * kc.c * on_shell.k_in *
              std::pow(on_shell.k_out, 3) * std::norm(amp);
  out.k_out = on_shell.k_out;
  out.eta = eta;
  out.near_resonance = min_det < 0.25;
  return out;
}

// Spectral interband scattering per lattice cell: the energy transfer
// hbar c (k - k') selects the joint surface, and
// dsigma/(dOmega dk') = alpha_S^2 hbar c^3 k k'^3 (a/2pi) sum |D|^2 / |dDE/dk|
// with the joint-DOS companion value.
inline ScatterResult kh_cc_spectral(const BlochBand& band_i, const BlochBand& band_f,
                                    const ScatterKinematics& kin, const IntermediateSet& vset,
                                    const Constants& kc = default_constants()) {
  ScatterResult out;
  out.k_out = kin.k_out;
  const double de = kc.hbar_c * (kin.k_in - kin.k_out);
  const auto points = joint_constant_energy_set(band_i, band_f, de);
  if (points.empty()) return out;

  std::vector<double> omegas;
  for (const BlochBand* vb : vset.bands)
    if (vb->n != band_i.n && vb->n != band_f.n)
      omegas.push_back((vb->energy_at(points[0].k) - band_i.energy_at(points[0].k)) / kc.hbar());
  const double eta = detail::resolve_band_eta(vset, omegas);
  out.eta = eta;

  const double a = band_f.model.a;
  const double pref = kc.alpha_s * kc.alpha_s * kc.hbar() * std::pow(kc.c, 3) * kin.k_in *
                      std::pow(kin.k_out, 3);
  double acc = 0.0, cell_sq = 0.0, min_det = std::numeric_limits<double>::infinity();
  for (const auto& pt : points) {
    for (double sgn : {1.0, -1.0}) {
      const cplx amp = detail::cc_amplitude(band_i, band_f, sgn * pt.k, kin, vset.bands, eta,
                                            vset.resonant_only, kc, &min_det);
      acc += std::norm(amp) * pt.weight;
      if (cell_sq == 0.0) cell_sq = std::norm(amp);
    }
  }
  out.value = pref * a / (2.0 * std::numbers::pi) * acc;
  out.value_dos = pref * joint_dos(band_i, band_f, de) * cell_sq;
  out.near_resonance = min_det < 0.25;
  return out;
}

} // namespace photokin
