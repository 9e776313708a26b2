#pragma once

#include <cmath>
#include <numbers>

#include "photokin/errors.hpp"

namespace photokin {

enum class LineshapeKind { Delta, Lorentz };

// Normalized line profile substituting the energy-conserving delta function.
// Lorentz: Delta_Gamma(x) = (1/pi) Gamma / (x^2 + Gamma^2), full width 2*Gamma,
// with x and Gamma angular frequencies in 1/fs so the value carries fs.
// The Delta kind is symbolic: it may only be consumed by integral transforms
// (reported as integrated line strengths); pointwise evaluation is an error.
struct Lineshape {
  LineshapeKind kind = LineshapeKind::Delta;
  double gamma = 0.0; // 1/fs, required iff Lorentz

  static Lineshape delta() { return {LineshapeKind::Delta, 0.0}; }
  static Lineshape lorentz(double gamma) {
    if (!(gamma > 0.0)) throw Error("Lineshape: Lorentz width must be positive");
    return {LineshapeKind::Lorentz, gamma};
  }
};

inline double lineshape_eval(const Lineshape& shape, double x) {
  if (shape.kind == LineshapeKind::Delta)
    throw DeltaEvaluatedPointwise("Delta lineshape has no pointwise value; integrate against it instead");
  const double g = shape.gamma;
  return g / (std::numbers::pi * (x * x + g * g));
}

inline double lorentz_profile(double x, double gamma) {
  return lineshape_eval(Lineshape::lorentz(gamma), x);
}

} // namespace photokin
