#pragma once

#include <cmath>

#include "photokin/constants.hpp"
#include "photokin/errors.hpp"

namespace photokin {

// Center-of-mass kinematics of the emitting atom: total mass energy
// (m_p + m_e) c^2, initial wavenumber |K_i| and the angle between K_i and the
// photon direction.
struct RecoilContext {
  double total_mass_energy = 9.38783e8; // eV, hydrogen default
  double k_i = 0.0;                     // 1/nm
  double theta = 0.0;                   // rad

  void validate(const Constants& kc = default_constants()) const {
    if (total_mass_energy < kc.electron_mass_energy)
      throw Error("RecoilContext: total mass below the electron mass");
  }

  // hbar |K_i| c / M c^2 beyond 0.01 leaves the nonrelativistic regime.
  bool relativistic(const Constants& kc = default_constants()) const {
    return kc.hbar_c * std::abs(k_i) / total_mass_energy > 0.01;
  }
};

struct RecoilResult {
  double ck = 0.0; // shifted photon angular frequency, 1/fs
  bool relativistic_warning = false;
};

// Leading-order recoil shift of the emitted photon frequency:
// ck = omega_if (1 + hbar |K_i| cos(theta) / M c) - hbar omega_if^2 / (2 M c^2).
inline RecoilResult recoil_shift(double omega_if, const RecoilContext& ctx,
                                 const Constants& kc = default_constants()) {
  ctx.validate(kc);
  const double doppler = kc.hbar() * std::abs(ctx.k_i) * kc.c * std::cos(ctx.theta) /
                         ctx.total_mass_energy;
  const double recoil = kc.hbar() * omega_if * omega_if / (2.0 * ctx.total_mass_energy);
  RecoilResult out;
  out.ck = omega_if * (1.0 + doppler) - recoil;
  out.relativistic_warning = ctx.relativistic(kc);
  return out;
}

} // namespace photokin
