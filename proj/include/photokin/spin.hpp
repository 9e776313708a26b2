#pragma once

#include <span>
#include <vector>

#include "photokin/errors.hpp"

namespace photokin {

enum class SpinMode {
  SpinPreserving, // 2 channels (s = up, down): rate = (1/2) sum_s r(s,s)
  General         // 4 channels (s_f x s_i):    rate = (1/2) sum_{s_f,s_i} r(s_f,s_i)
};

// Average over initial spin projection, sum over final spin projection.
// Minimal coupling preserves spin, so the spin-preserving form with two equal
// channels reproduces the single-channel rate.
inline double spin_average(std::span<const double> rates, SpinMode mode) {
  const std::size_t expected = (mode == SpinMode::SpinPreserving) ? 2 : 4;
  if (rates.size() != expected)
    throw ChannelCountMismatch("expected " + std::to_string(expected) + " channels, got " +
                               std::to_string(rates.size()));
  double sum = 0.0;
  for (double r : rates) sum += r;
  return 0.5 * sum;
}

inline double spin_average(const std::vector<double>& rates, SpinMode mode) {
  return spin_average(std::span<const double>(rates.data(), rates.size()), mode);
}

} // namespace photokin
