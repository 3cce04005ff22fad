#pragma once

#include <cmath>

namespace ikg {

inline constexpr double sqrt2 = 1.4142135623730951;
inline constexpr double inv_sqrt_2pi = 0.3989422804014327;

// Standard normal density.
inline double norm_pdf(double z) {
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

// Standard normal CDF via erfc, accurate in both tails.
inline double norm_cdf(double z) {
  return 0.5 * std::erfc(-z / sqrt2);
}

// f(z) = z Phi(z) + phi(z), the expected positive part E[(z + Z)^+] for
// standard normal Z.  Shows up in both knowledge-gradient and
// expected-improvement closed forms.
inline double norm_expected_positive_part(double z) {
  return z * norm_cdf(z) + norm_pdf(z);
}

}  // namespace ikg
