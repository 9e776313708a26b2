#pragma once

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "photokin/absorption.hpp"
#include "photokin/emission.hpp"
#include "photokin/recoil.hpp"
#include "photokin/recombination.hpp"
#include "photokin/scattering.hpp"
#include "photokin/scenario.hpp"
#include "photokin/spectrum_table.hpp"

namespace photokin {

inline constexpr const char* kVersion = "0.1.0";

// States and bands built from a scenario declaration.
struct ScanContext {
  Constants constants;
  std::vector<BoundState> states;
  std::vector<BlochBand> bands;

  const BlochBand& band_at(int n1based) const {
    if (n1based < 1 || n1based > static_cast<int>(bands.size()))
      throw Error("band index " + std::to_string(n1based) + " outside the solved set");
    return bands[n1based - 1];
  }
};

inline ScanContext build_context(const Scenario& sc, const Constants& kc = default_constants()) {
  ScanContext ctx;
  ctx.constants = kc;
  for (const auto& st : sc.states) {
    switch (st.kind) {
      case StateKind::Oscillator:
        ctx.states.push_back(BoundState::oscillator(st.n, st.hbar_omega_ev, kc));
        break;
      case StateKind::Hydrogenic:
        ctx.states.push_back(BoundState::hydrogenic(st.n, st.l, st.m, kc));
        break;
      case StateKind::Well: {
        auto pot = Potential1D::flat(-0.5 * st.width_nm, 0.5 * st.width_nm,
                                     static_cast<std::size_t>(st.points), st.floor_ev);
        auto solved = solve_bound_states(pot, st.index + 1, kc);
        ctx.states.push_back(std::move(solved[st.index]));
        break;
      }
      case StateKind::GridPotential: {
        auto pot = Potential1D::from_file(st.file);
        auto solved = solve_bound_states(pot, st.index + 1, kc);
        ctx.states.push_back(std::move(solved[st.index]));
        break;
      }
    }
  }
  if (sc.material != MaterialKind::None) {
    KronigPenney model;
    model.a = sc.a_nm;
    model.strength_param = sc.material == MaterialKind::FreeElectron ? 0.0 : sc.strength;
    model.cell_grid = sc.cell_points;
    model.constants = kc;
    ctx.bands = solve_dispersion(model, sc.bands, sc.k_points);
  }
  return ctx;
}

namespace detail {

inline std::vector<double> energy_grid(const Scenario& sc) {
  std::vector<double> grid(sc.points);
  for (int j = 0; j < sc.points; ++j)
    grid[j] = sc.emin_ev + (sc.emax_ev - sc.emin_ev) * j / (sc.points - 1);
  return grid;
}

// Polarization vector from the basis of the given direction.
inline CVec3 resolve_polarization(const std::string& spec, const Vec3& k_hat) {
  if (spec == "eps1") return polarization_basis(k_hat, BasisKind::Cartesian).eps1;
  if (spec == "eps2") return polarization_basis(k_hat, BasisKind::Cartesian).eps2;
  if (spec == "plus") return polarization_basis(k_hat, BasisKind::Chiral).eps1;
  if (spec == "minus") return polarization_basis(k_hat, BasisKind::Chiral).eps2;
  throw Error("polarization '" + spec + "' has no single vector");
}

// For matrix elements along the lattice axis x the polarized cross sections
// reduce to a geometry factor times |M_x|^2.
inline double axis_pol_factor(const std::string& spec, const Vec3& k_hat) {
  if (spec == "angle_averaged") return 1.0 / 3.0;
  if (spec == "unpolarized") {
    const auto b = polarization_basis(k_hat, BasisKind::Cartesian);
    return 0.5 * (std::norm(b.eps1.x) + std::norm(b.eps2.x));
  }
  return std::norm(resolve_polarization(spec, k_hat).x);
}

inline IntermediateSet intermediate_set(const Scenario& sc, const ScanContext& ctx) {
  IntermediateSet vset;
  vset.discrete = ctx.states;
  for (const auto& band : ctx.bands) vset.bands.push_back(&band);
  vset.eta = sc.eta_inv_fs;
  vset.window = sc.window_ev;
  vset.resonant_only = sc.resonant_only;
  return vset;
}

inline void base_metadata(SpectrumTable& table, const Scenario& sc) {
  table.add_metadata("generator", std::string("photokin ") + kVersion);
  table.add_metadata("process", sc.process);
  table.add_metadata("polarization", sc.polarization);
  if (sc.eta_inv_fs > 0.0) table.add_metadata("eta_inv_fs", format_double(sc.eta_inv_fs));
  if (sc.gamma_inv_fs > 0.0) table.add_metadata("gamma_inv_fs", format_double(sc.gamma_inv_fs));
  if (sc.resonant_only) table.add_metadata("resonant_only", "true");
  if (sc.broad_line_factor) table.add_metadata("broad_line_factor", "true");
}

} // namespace detail

// Drive the process named in the scenario over the photon grid. The output is
// a pure function of (scenario text, constants): no timestamps, shortest
// round-trip number formatting.
inline SpectrumTable run_scan(const Scenario& sc, const Constants& kc = default_constants()) {
  ScanContext ctx = build_context(sc, kc);
  const auto grid = detail::energy_grid(sc);
  SpectrumTable table;
  table.grid_name = "photon_energy_eV";
  table.grid = grid;
  detail::base_metadata(table, sc);

  auto run_rows = [&](auto&& row_fn) {
    // deterministic ordered assembly; each row is a pure function of its energy
    for (std::size_t j = 0; j < grid.size(); ++j) {
      try {
        row_fn(j, grid[j]);
      } catch (const Error& e) {
        throw Error("row " + std::to_string(j) + " (E = " + format_double(grid[j]) +
                    " eV): " + e.what());
      }
    }
  };

  const std::string& p = sc.process;

  if (p == "emission.dd") {
    const auto& f = ctx.states[sc.final_state];
    const auto& i = ctx.states[sc.initial];
    RecoilContext recoil{sc.recoil_mass_ev, sc.recoil_k_invnm, sc.recoil_theta_rad};
    const bool use_recoil = sc.recoil_mass_ev > 0.0;
    const auto a = einstein_A(f, i, kc, use_recoil ? &recoil : nullptr);
    const double omega_line = a.photon_energy / kc.hbar();
    std::vector<double> rows(grid.size());
    run_rows([&](std::size_t j, double e) {
      rows[j] = a.value * lorentz_profile(omega_line - e / kc.hbar(), sc.gamma_inv_fs) / kc.hbar();
    });
    table.add_column("rate_density_per_fs_per_ev", std::move(rows));
    table.add_metadata("einstein_A_per_fs", format_double(a.value));
    table.add_metadata("einstein_A_per_s", format_double(per_second(a)));
    table.add_metadata("line_center_ev", format_double(a.photon_energy));
    if (use_recoil) table.add_metadata("recoil_shift", "applied to the line center only");
  } else if (p == "emission.dc") {
    const auto& band = ctx.band_at(sc.band);
    std::vector<double> kgrid(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) kgrid[j] = grid[j] / kc.hbar_c;
    SpectrumTable inner = emission_dc_spectrum(ctx.states[sc.initial], band, kgrid, kc);
    table.add_column("rate_per_fs_per_k", std::move(inner.columns[0].second));
    for (auto& [k, v] : inner.metadata) table.add_metadata(k, v);
  } else if (p == "emission.dc_capture") {
    const auto& band = ctx.band_at(sc.band);
    const auto& i = ctx.states[sc.initial];
    std::vector<double> rows(grid.size(), 0.0);
    run_rows([&](std::size_t j, double e) {
      const double e_f = i.energy - e;
      if (!band.contains_energy(e_f)) return;
      try {
        const auto surf = constant_energy_set(band, e_f);
        rows[j] = hole_capture_cross_section(i, band, surf.points[0].k, kc).value;
      } catch (const EdgeSingular&) {
        rows[j] = 0.0;
      } catch (const ZeroCurrent&) {
        rows[j] = 0.0;
      }
    });
    table.add_column("sigma_hole_capture", std::move(rows));
    table.add_metadata("units", "1D capture measure, nm");
  } else if (p == "emission.cd") {
    const auto& band = ctx.band_at(sc.band);
    const auto& f = ctx.states[sc.final_state];
    std::vector<double> rows(grid.size(), 0.0);
    run_rows([&](std::size_t j, double e) {
      const double e_i = f.energy + e;
      if (!band.contains_energy(e_i)) return;
      try {
        const auto surf = constant_energy_set(band, e_i);
        rows[j] = electron_capture_cross_section(f, band, surf.points[0].k, kc).value;
      } catch (const EdgeSingular&) {
        rows[j] = 0.0;
      } catch (const ZeroCurrent&) {
        rows[j] = 0.0;
      }
    });
    table.add_column("sigma_electron_capture", std::move(rows));
    table.add_metadata("units", "1D capture measure, nm");
  } else if (p == "emission.cc") {
    const auto& bi = ctx.band_at(sc.band_i);
    const auto& bf = ctx.band_at(sc.band_f);
    std::vector<double> rates(grid.size(), 0.0), kcol(grid.size(), 0.0);
    run_rows([&](std::size_t j, double e) {
      const auto pts = joint_constant_energy_set(bf, bi, e);
      if (pts.empty()) return;
      rates[j] = emission_cc(bi, bf, pts[0].k, kc).value;
      kcol[j] = pts[0].k * bi.model.a / std::numbers::pi;
    });
    table.add_column("rate_per_fs", std::move(rates));
    table.add_column("k_over_pi_a", std::move(kcol));
  } else if (p == "absorption.dd") {
    const auto& f = ctx.states[sc.final_state];
    const auto& i = ctx.states[sc.initial];
    const bool avg = sc.polarization == "angle_averaged";
    std::vector<double> rows(grid.size());
    bool broad = false;
    run_rows([&](std::size_t j, double e) {
      auto one = [&](const CVec3& eps) {
        const auto r = abs_dd(f, i, eps, e / kc.hbar_c, Lineshape::lorentz(sc.gamma_inv_fs), avg,
                              sc.broad_line_factor, kc);
        broad = broad || r.broad_line_warning;
        return r.sigma;
      };
      if (sc.polarization == "unpolarized") {
        const auto b = polarization_basis(sc.k_hat);
        rows[j] = 0.5 * (one(b.eps1) + one(b.eps2));
      } else if (avg) {
        rows[j] = one(CVec3{1.0, 0.0, 0.0});
      } else {
        rows[j] = one(detail::resolve_polarization(sc.polarization, sc.k_hat));
      }
    });
    table.add_column("sigma_nm2", std::move(rows));
    table.add_metadata("approximation", "lorentz_resolved");
    if (broad) table.add_metadata("broad_line_warning", "gamma/omega_fi > 0.1");
  } else if (p == "absorption.dc" || p == "absorption.cd") {
    const auto& band = ctx.band_at(sc.band);
    const double lambda = detail::axis_pol_factor(sc.polarization, sc.k_hat);
    const CVec3 eps{1.0, 0.0, 0.0};
    std::vector<double> surf_col(grid.size()), dos_col(grid.size());
    run_rows([&](std::size_t j, double e) {
      const AbsorptionPair pair =
          p == "absorption.dc"
              ? abs_dc_band(ctx.states[sc.initial], band, eps, e / kc.hbar_c, kc)
              : abs_cd_band(ctx.states[sc.final_state], band, eps, e / kc.hbar_c, kc);
      surf_col[j] = lambda * pair.sigma_surface;
      dos_col[j] = lambda * pair.sigma_dos;
    });
    table.add_column("sigma_surface_nm2", std::move(surf_col));
    table.add_column("sigma_dos_nm2", std::move(dos_col));
    table.add_metadata("approximation", "surface_integral+constant_matrix_element_dos");
    table.add_metadata("axis_polarization_factor", format_double(lambda));
  } else if (p == "absorption.cc") {
    const auto& bv = ctx.band_at(sc.band_i);
    const auto& bc = ctx.band_at(sc.band_f);
    const double lambda = detail::axis_pol_factor(sc.polarization, sc.k_hat);
    const CVec3 eps{1.0, 0.0, 0.0};
    std::vector<double> surf_col(grid.size()), joint_col(grid.size());
    run_rows([&](std::size_t j, double e) {
      const auto pair = abs_cc_interband(bv, bc, eps, e / kc.hbar_c, kc);
      surf_col[j] = lambda * pair.sigma_surface;
      joint_col[j] = lambda * pair.sigma_dos;
    });
    table.add_column("sigma_surface_nm2", std::move(surf_col));
    table.add_column("sigma_jointdos_nm2", std::move(joint_col));
    table.add_metadata("approximation", "surface_integral+joint_dos");
    table.add_metadata("axis_polarization_factor", format_double(lambda));
  } else if (p == "scattering.dd" || p == "scattering.dc" || p == "scattering.cd" ||
             p == "scattering.cc") {
    table.grid_name = "k_out_energy_eV";
    const auto vset = detail::intermediate_set(sc, ctx);
    ScatterKinematics kin;
    kin.k_in = sc.incident_ev / kc.hbar_c;
    kin.khat_in = normalized(sc.k_hat);
    kin.khat_out = normalized(sc.k_hat_out);
    kin.eps_in = detail::resolve_polarization(sc.polarization, kin.khat_in);
    kin.eps_out = detail::resolve_polarization(sc.polarization_out, kin.khat_out);

    std::vector<double> val(grid.size()), dos(grid.size()), res(grid.size()), etas(grid.size());
    const bool has_dos = p != "scattering.dd";
    run_rows([&](std::size_t j, double e) {
      ScatterKinematics kj = kin;
      kj.k_out = e / kc.hbar_c;
      ScatterResult r;
      if (p == "scattering.dd")
        r = kh_dd_ww(ctx.states[sc.final_state], ctx.states[sc.initial], kj, vset,
                     sc.gamma_inv_fs, kc);
      else if (p == "scattering.dc")
        r = kh_dc(ctx.states[sc.initial], ctx.band_at(sc.band), kj, vset, kc);
      else if (p == "scattering.cd")
        r = kh_cd(ctx.band_at(sc.band), ctx.states[sc.final_state], kj, vset, kc);
      else
        r = kh_cc_spectral(ctx.band_at(sc.band_i), ctx.band_at(sc.band_f), kj, vset, kc);
      val[j] = r.value;
      dos[j] = r.value_dos;
      res[j] = r.near_resonance ? 1.0 : 0.0;
      etas[j] = r.eta;
    });
    table.add_column("dsigma_dOmega_dk", std::move(val));
    if (has_dos) table.add_column("dsigma_dos", std::move(dos));
    table.add_column("resonant_flag", std::move(res));
    table.add_column("eta_used", std::move(etas));
    table.add_metadata("incident_ev", format_double(sc.incident_ev));
  } else if (p == "scattering.full") {
    const auto vset = detail::intermediate_set(sc, ctx);
    const auto& i = ctx.states[sc.initial];
    ScatterKinematics kin;
    kin.khat_in = normalized(sc.k_hat);
    kin.khat_out = normalized(sc.k_hat_out);
    kin.eps_in = detail::resolve_polarization(sc.polarization, kin.khat_in);
    kin.eps_out = detail::resolve_polarization(sc.polarization_out, kin.khat_out);
    std::vector<double> rows(grid.size());
    run_rows([&](std::size_t j, double e) {
      ScatterKinematics kj = kin;
      kj.k_in = kj.k_out = e / kc.hbar_c; // elastic sweep
      rows[j] = scatter_full_second_order(i, i, kj, vset, ScatterForm::Length, kc).value;
    });
    table.add_column("dsigma_dOmega_nm2", std::move(rows));
  } else if (p == "recomb.eh") {
    const auto& bc = ctx.band_at(sc.band_i); // conduction
    const auto& bv = ctx.band_at(sc.band_f); // valence
    const double pi_a = std::numbers::pi / bc.model.a;
    const double k_f = sc.k_hole_over_pi_a * pi_a;
    const bool avg = sc.polarization == "angle_averaged";
    const CVec3 eps = avg ? CVec3{1.0, 0.0, 0.0}
                          : detail::resolve_polarization(sc.polarization, sc.k_hat);
    table.grid_name = "k_i_over_pi_a";
    std::vector<double> ecol(grid.size()), sig(grid.size());
    run_rows([&](std::size_t j, double frac) {
      EhPair pair;
      pair.conduction = &bc;
      pair.valence = &bv;
      pair.k_e_i = frac * pi_a;
      pair.k_e_f = k_f;
      pair.gamma = sc.gamma_inv_fs;
      ecol[j] = bc.energy_at(pair.k_e_i) - bv.energy_at(k_f);
      sig[j] = eh_recombination_cross_section(pair, eps, avg, kc);
    });
    table.add_column("photon_energy_eV", std::move(ecol));
    table.add_column("sigma_eh_nm2", std::move(sig));
    table.add_metadata("k_hole_over_pi_a", format_double(sc.k_hole_over_pi_a));
    table.add_metadata("note", "kinematically gated 1D toy model");
  } else {
    throw Error("process '" + p + "' is not implemented");
  }

  return table;
}

// Band, Bloch-factor and DOS exports for the `bands` CLI verb.
inline void export_band_structure(const Scenario& sc, const std::string& prefix,
                                  const Constants& kc = default_constants()) {
  if (sc.material == MaterialKind::None) throw Error("bands export needs a band material");
  ScanContext ctx = build_context(sc, kc);

  {
    std::ofstream out(prefix + "_bands.csv", std::ios::binary);
    if (!out) throw IoError("cannot write " + prefix + "_bands.csv");
    out << "n,k_a_over_pi,E_eV\n";
    for (const auto& band : ctx.bands)
      for (std::size_t j = 0; j < band.k_samples.size(); ++j)
        out << band.n << ',' << format_double(band.k_samples[j] * band.model.a / std::numbers::pi)
            << ',' << format_double(band.energies[j]) << "\n";
  }
  {
    std::ofstream out(prefix + "_bloch.csv", std::ios::binary);
    if (!out) throw IoError("cannot write " + prefix + "_bloch.csv");
    out << "n,k_a_over_pi,x_over_a,re_u,im_u\n";
    for (const auto& band : ctx.bands) {
      const double k = 0.5 * std::numbers::pi / band.model.a; // representative half-zone point
      const BlochFactor u = band.factor_at(k);
      for (int j = 0; j <= 64; ++j) {
        const double x = band.model.a * j / 64.0;
        const cplx v = u.value(x);
        out << band.n << ",0.5," << format_double(x / band.model.a) << ','
            << format_double(v.real()) << ',' << format_double(v.imag()) << "\n";
      }
    }
  }
  {
    std::ofstream out(prefix + "_dos.csv", std::ios::binary);
    if (!out) throw IoError("cannot write " + prefix + "_dos.csv");
    out << "E_eV,rho_per_eV_cell\n";
    for (const auto& band : ctx.bands) {
      const int n = 200;
      for (int j = 1; j < n; ++j) {
        const double e = band.e_min + (band.e_max - band.e_min) * j / n;
        out << format_double(e) << ',' << format_double(dos_band(band, e)) << "\n";
      }
    }
  }
}

} // namespace photokin
