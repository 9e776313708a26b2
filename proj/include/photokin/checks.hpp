#pragma once

#include <functional>
#include <ostream>
#include <string>

#include "photokin/scan.hpp"
#include "photokin/spin.hpp"

namespace photokin {

// Invariant suite for the `check` CLI verb: builds the scenario's objects and
// verifies the structural identities on them, one PASS/FAIL line each.
// Returns true when every check passes.
inline bool run_checks(const Scenario& sc, std::ostream& out,
                       const Constants& kc = default_constants()) {
  ScanContext ctx = build_context(sc, kc);
  bool all_ok = true;

  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
      ok = body();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out << " (" << detail << ")";
    out << "\n";
    all_ok = all_ok && ok;
  };

  check("constants_positive", [&] {
    kc.validate();
    return true;
  });

  check("polarization_completeness", [&] {
    const Vec3 khat = normalized(sc.k_hat);
    const auto b = polarization_basis(khat);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const cplx lhs = b.eps1[r] * std::conj(b.eps1[c]) + b.eps2[r] * std::conj(b.eps2[c]);
        const double rhs = (r == c ? 1.0 : 0.0) - khat[r] * khat[c];
        if (std::abs(lhs - rhs) > 1e-12) return false;
      }
    return true;
  });

  check("spin_average_identities", [&] {
    return std::abs(spin_average(std::vector<double>{3.0, 3.0}, SpinMode::SpinPreserving) - 3.0) <
               1e-15 &&
           std::abs(spin_average(std::vector<double>{1.0, 1.0, 1.0, 1.0}, SpinMode::General) - 2.0) <
               1e-15;
  });

  check("angle_average_third", [&] {
    const CVec3 d{0.3, cplx(0.0, 0.7), 1.1};
    return std::abs(angle_average_dipole_quadrature(d) - d.norm2() / 3.0) < 1e-10;
  });

  // pairwise discrete-state identities
  for (std::size_t a = 0; a < ctx.states.size(); ++a) {
    for (std::size_t b = a + 1; b < ctx.states.size(); ++b) {
      const auto& sa = ctx.states[a];
      const auto& sb = ctx.states[b];
      const std::string tag = std::to_string(a) + "," + std::to_string(b);
      TransitionAmplitude fwd;
      try {
        fwd = dipole_matrix_element(sa, sb, Axis::X, kc);
      } catch (const IncompatibleStates&) {
        continue;
      }
      check("dipole_hermiticity_" + tag, [&] {
        const auto bwd = dipole_matrix_element(sb, sa, Axis::X, kc);
        for (int c = 0; c < 3; ++c)
          if (std::abs(fwd.value[c] - std::conj(bwd.value[c])) > 1e-12) return false;
        return true;
      });
      check("oscillator_strength_antisymmetry_" + tag, [&] {
        const double f_ab = oscillator_strength(sa, sb, Dimensionality::OneD, kc);
        const double f_ba = oscillator_strength(sb, sa, Dimensionality::OneD, kc);
        return std::abs(f_ab + f_ba) < 1e-12 * std::max(1.0, std::abs(f_ab));
      });
      if (std::abs(fwd.omega_fi) > 1e-9 && fwd.value.norm() > 1e-12) {
        check("length_velocity_consistency_" + tag, [&] {
          const auto p = momentum_matrix_element(sa, sb, Axis::X, kc);
          const auto x_from_p = to_length_form(p, kc);
          return std::abs(x_from_p.value.x - fwd.value.x) <= 1e-4 * std::abs(fwd.value.x);
        });
        check("line_strength_vs_einstein_A_" + tag, [&] {
          const bool a_upper = sa.energy > sb.energy;
          const auto& up = a_upper ? sa : sb;
          const auto& dn = a_upper ? sb : sa;
          const double omega = (up.energy - dn.energy) / kc.hbar();
          const auto line = abs_dd(up, dn, CVec3{1.0, 0.0, 0.0}, omega / kc.c, Lineshape::delta(),
                                   true, false, kc);
          const auto a_coeff = einstein_A(dn, up, kc);
          const double lambda = 2.0 * std::numbers::pi * kc.c / omega;
          return std::abs(line.sigma - lambda * lambda / 4.0 * a_coeff.value) <=
                 1e-10 * line.sigma;
        });
      }
    }
  }

  // oscillator ladder TRK: both neighbors saturate the 1D sum exactly
  for (std::size_t a = 0; a < ctx.states.size(); ++a) {
    if (!ctx.states[a].is_oscillator()) continue;
    const auto& tag_state = ctx.states[a].oscillator_tag();
    check("trk_oscillator_state_" + std::to_string(a), [&] {
      std::vector<BoundState> family;
      if (tag_state.n > 0)
        family.push_back(BoundState::oscillator(tag_state.n - 1, tag_state.hbar_omega, kc));
      family.push_back(BoundState::oscillator(tag_state.n + 1, tag_state.hbar_omega, kc));
      const double sum = trk_sum(ctx.states[a], family, Dimensionality::OneD, kc);
      return std::abs(sum - 1.0) < 1e-10;
    });
    break;
  }

  // grid-state TRK partial sums approach 1 from below
  for (std::size_t a = 0; a < sc.states.size(); ++a) {
    if (sc.states[a].kind != StateKind::Well) continue;
    check("trk_well_partial_sum_" + std::to_string(a), [&] {
      const auto& decl = sc.states[a];
      auto pot = Potential1D::flat(-0.5 * decl.width_nm, 0.5 * decl.width_nm,
                                   static_cast<std::size_t>(decl.points), decl.floor_ev);
      auto family = solve_bound_states(pot, 12, kc);
      double partial = 0.0;
      for (const auto& f : family) {
        partial += oscillator_strength(f, family[0], Dimensionality::OneD, kc);
        if (partial > 1.0 + 1e-6) return false;
      }
      return partial > 0.9;
    });
    break;
  }

  if (!ctx.bands.empty()) {
    check("band_symmetry_in_k", [&] {
      for (const auto& band : ctx.bands)
        for (double ka : {0.4, 1.3})
          if (std::abs(band.energy_at(ka / band.model.a) - band.energy_at(-ka / band.model.a)) >
              1e-8)
            return false;
      return true;
    });

    check("bloch_orthonormality", [&] {
      const double k = 0.7 / ctx.bands[0].model.a;
      for (std::size_t m = 0; m < ctx.bands.size(); ++m)
        for (std::size_t n = 0; n < ctx.bands.size(); ++n) {
          const cplx ov = ctx.bands[m].factor_at(k).overlap(ctx.bands[n].factor_at(k));
          if (std::abs(ov - (m == n ? 1.0 : 0.0)) > 1e-7) return false;
        }
      return true;
    });

    check("group_velocity_vanishes_at_edges", [&] {
      for (const auto& band : ctx.bands) {
        if (std::abs(group_velocity(band, 0.0)) > 1e-10) return false;
        if (std::abs(group_velocity(band, std::numbers::pi / band.model.a)) > 1e-10) return false;
      }
      return true;
    });

    check("dos_zone_counting", [&] {
      for (const auto& band : ctx.bands) {
        const double mid = 0.5 * (band.e_min + band.e_max);
        auto half = [&](double edge, double sgn) {
          const double t_max = std::sqrt(std::abs(mid - edge));
          auto nodes = gauss_legendre(200, 0.0, t_max);
          double acc = 0.0;
          for (const auto& nd : nodes)
            acc += nd.w * 2.0 * nd.x * dos_band(band, edge + sgn * nd.x * nd.x);
          return acc;
        };
        if (std::abs(half(band.e_min, 1.0) + half(band.e_max, -1.0) - 1.0) > 1e-5) return false;
      }
      return true;
    });

    check("local_dos_cell_integral", [&] {
      const auto& band = ctx.bands[0];
      const double e = 0.5 * (band.e_min + band.e_max);
      // the Bloch factor has a cusp at the comb nodes, so the trapezoid
      // needs a dense grid for strongly bound bands
      const int n = 4096;
      double acc = 0.0;
      for (int j = 0; j <= n; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        acc += w * local_dos(band, e, band.model.a * j / n);
      }
      acc *= band.model.a / n;
      return std::abs(acc - dos_band(band, e)) <= 1e-4 * dos_band(band, e);
    });

    if (ctx.bands.size() >= 2) {
      check("joint_dos_support", [&] {
        const auto& bv = ctx.bands[ctx.bands.size() - 2];
        const auto& bc = ctx.bands[ctx.bands.size() - 1];
        const double de_mid = bc.energy_at(0.3) - bv.energy_at(0.3);
        return joint_dos(bv, bc, de_mid) > 0.0 && joint_dos(bv, bc, -1.0) == 0.0;
      });
    }
  }

  check("free_electron_dos_two_routes", [&] {
    for (double e : {0.5, 2.0, 11.0})
      if (std::abs(free_electron_dos(e, kc) - free_electron_dos_kspace(e, kc)) >
          1e-10 * free_electron_dos(e, kc))
        return false;
    return true;
  });

  check("recoil_linear_in_cos_theta", [&] {
    const double omega = 5.0 / kc.hbar();
    RecoilContext fwd{9.4e8, 3.0, 0.0}, bwd{9.4e8, 3.0, std::numbers::pi}, rest{9.4e8, 0.0, 0.0};
    const double mean = 0.5 * (recoil_shift(omega, fwd, kc).ck + recoil_shift(omega, bwd, kc).ck);
    return std::abs(mean - recoil_shift(omega, rest, kc).ck) < 1e-12 * omega;
  });

  check("eh_rate_toy_brute_force", [&] {
    std::vector<double> ki(8), kf(8), je(8, 0.5), rh(8, 0.25);
    std::vector<std::vector<double>> sig(8, std::vector<double>(8, 2.0));
    for (int j = 0; j < 8; ++j) {
      ki[j] = 0.1 + 0.1 * j;
      kf[j] = 0.2 + 0.1 * j;
    }
    const double got = eh_rate_per_volume(ki, kf, sig, je, rh);
    const double want = 2.0 * 0.5 * 0.25 * 0.7 * 0.7; // uniform fields, trapezoid = exact
    return std::abs(got - want) < 1e-12;
  });

  return all_ok;
}

} // namespace photokin
