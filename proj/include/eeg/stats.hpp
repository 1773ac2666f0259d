#pragma once

#include <cstddef>
#include <span>

namespace eeg {

double normal_cdf(double x) noexcept;

/// sup_x |F_n(x) - Phi(x)|, with ties handled exactly.
double ks_normal(std::span<const double> samples);

/// sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;
  double m4 = 0.0;        // fourth central moment
};

Moments moments(std::span<const double> samples);

/// Standard error of the unbiased sample variance,
/// sqrt((m4 - s^4 (n-3)/(n-1)) / n).
double variance_std_error(const Moments& m);

/// sqrt(p (1 - p) / n).
double binomial_std_error(double p, std::size_t n);

}  // namespace eeg
