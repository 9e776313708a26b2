#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "photokin/linalg.hpp"

namespace photokin {

struct QuadNode {
  double x;
  double w;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
inline std::vector<QuadNode> gauss_legendre(int n) {
  std::vector<QuadNode> nodes(n);
  const double pi = std::numbers::pi;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    nodes[i] = {-x, w};
    nodes[n - 1 - i] = {x, w};
  }
  return nodes;
}

inline std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
  auto nodes = gauss_legendre(n);
  for (auto& nd : nodes) {
    nd.x = 0.5 * (b - a) * nd.x + 0.5 * (a + b);
    nd.w *= 0.5 * (b - a);
  }
  return nodes;
}

// Product rule on the unit sphere: Gauss-Legendre in cos(theta) x uniform
// trapezoid in phi. Exact for the low-degree trigonometric integrands of the
// polarization algebra. Weights sum to 4*pi.
struct SphereQuadrature {
  std::vector<Vec3> directions;
  std::vector<double> weights;

  explicit SphereQuadrature(int n_theta = 16, int n_phi = 32) {
    const double pi = std::numbers::pi;
    auto ct = gauss_legendre(n_theta);
    directions.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    weights.reserve(directions.capacity());
    for (int i = 0; i < n_theta; ++i) {
      double cos_t = ct[i].x;
      double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
      for (int j = 0; j < n_phi; ++j) {
        double phi = 2.0 * pi * j / n_phi;
        directions.push_back({sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t});
        weights.push_back(ct[i].w * 2.0 * pi / n_phi);
      }
    }
  }

  // Integral of f(n_hat) over the full solid angle.
  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < directions.size(); ++i) acc += weights[i] * f(directions[i]);
    return acc;
  }
};

inline const SphereQuadrature& default_sphere_quadrature() {
  static const SphereQuadrature q(16, 32);
  return q;
}

} // namespace photokin
