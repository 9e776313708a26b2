#pragma once

#include <cmath>

#include "photokin/errors.hpp"
#include "photokin/linalg.hpp"
#include "photokin/quadrature.hpp"

namespace photokin {

enum class BasisKind { Cartesian, Chiral };

// Orthonormal polarization pair spanning the plane perpendicular to k_hat:
// eps_a^+ . eps_b = delta_ab, eps_a . k_hat = 0, and
// sum_g eps_g (x) eps_g^+ = 1 - k_hat (x) k_hat^T.
struct PolarizationBasis {
  Vec3 k_hat;
  CVec3 eps1;
  CVec3 eps2;
  BasisKind kind = BasisKind::Cartesian;
};

// Convention: for k_hat away from +-z, eps1 = (z x k_hat)/|z x k_hat| and
// eps2 = k_hat x eps1; for k_hat = +-z, eps1 = x and eps2 = +-y. Chiral
// vectors are eps_+- = (eps1 +- i eps2)/sqrt(2).
inline PolarizationBasis polarization_basis(const Vec3& k_hat, BasisKind kind = BasisKind::Cartesian) {
  if (std::abs(k_hat.norm() - 1.0) > 1e-9)
    throw NonUnitVector("polarization_basis: |k_hat| = " + std::to_string(k_hat.norm()));

  const Vec3 z{0.0, 0.0, 1.0};
  Vec3 e1r, e2r;
  Vec3 zxk = cross(z, k_hat);
  if (zxk.norm() < 1e-12) {
    e1r = {1.0, 0.0, 0.0};
    e2r = {0.0, (k_hat.z > 0.0 ? 1.0 : -1.0), 0.0};
  } else {
    e1r = normalized(zxk);
    e2r = cross(k_hat, e1r);
  }

  PolarizationBasis basis;
  basis.k_hat = k_hat;
  basis.kind = kind;
  if (kind == BasisKind::Cartesian) {
    basis.eps1 = CVec3::from_real(e1r);
    basis.eps2 = CVec3::from_real(e2r);
  } else {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cplx i{0.0, 1.0};
    for (int c = 0; c < 3; ++c) {
      basis.eps1[c] = (e1r[c] + i * e2r[c]) * inv_sqrt2;
      basis.eps2[c] = (e1r[c] - i * e2r[c]) * inv_sqrt2;
    }
  }
  return basis;
}

// sum_g |eps_g^+ . d|^2 = |d|^2 - |k_hat . d|^2  (photon polarization sum).
inline double polarization_sum(const CVec3& d, const Vec3& k_hat) {
  if (std::abs(k_hat.norm() - 1.0) > 1e-9)
    throw NonUnitVector("polarization_sum: |k_hat| = " + std::to_string(k_hat.norm()));
  return d.norm2() - std::norm(cdot(k_hat, d));
}

// (1/4pi) Int dOmega |eps.d|^2 = |d|^2 / 3, closed form.
inline double angle_average_dipole(const CVec3& d) { return d.norm2() / 3.0; }

// Quadrature route for the same average. Averaging over the relative
// orientation of eps and d is realized as the polarization-mean
// (1/2) sum_g |eps_g . d|^2 integrated over photon directions; a single fixed
// transverse basis vector would not sample orientations isotropically.
inline double angle_average_dipole_quadrature(const CVec3& d,
                                              BasisKind kind = BasisKind::Cartesian,
                                              const SphereQuadrature& quad = default_sphere_quadrature()) {
  const double pi = std::numbers::pi;
  double integral = quad.integrate([&](const Vec3& n) {
    PolarizationBasis b = polarization_basis(n, kind);
    return 0.5 * (std::norm(hdot(b.eps1, d)) + std::norm(hdot(b.eps2, d)));
  });
  return integral / (4.0 * pi);
}

// Direct reading of the orientation average: (1/4pi) Int dOmega |n . d|^2
// over real unit vectors n, equal to |d|^2 / 3.
inline double orientation_average_quadrature(const CVec3& d,
                                             const SphereQuadrature& quad = default_sphere_quadrature()) {
  const double pi = std::numbers::pi;
  double integral = quad.integrate([&](const Vec3& n) { return std::norm(cdot(n, d)); });
  return integral / (4.0 * pi);
}

} // namespace photokin
