#include "eeg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "eeg/errors.hpp"

namespace eeg {

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_normal(std::span<const double> samples) {
  if (samples.empty()) throw InputError("ks_normal: no samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  std::size_t k = 0;
  while (k < x.size()) {
    std::size_t end = k;
    while (end < x.size() && x[end] == x[k]) ++end;
    const double phi = normal_cdf(x[k]);
    d = std::max({d, phi - static_cast<double>(k) / n, static_cast<double>(end) / n - phi});
    k = end;
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InputError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() || j < y.size()) {
    const double v = (j >= y.size() || (i < x.size() && x[i] <= y[j])) ? x[i] : y[j];
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

Moments moments(std::span<const double> samples) {
  Moments m;
  m.n = samples.size();
  if (m.n == 0) return m;
  double sum = 0.0;
  for (double v : samples) sum += v;
  m.mean = sum / static_cast<double>(m.n);
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : samples) {
    const double d = v - m.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(m.n);
  m2 /= n;
  m3 /= n;
  m.m4 = m4 / n;
  m.variance = m.n > 1 ? m2 * n / (n - 1.0) : 0.0;
  m.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  return m;
}

double variance_std_error(const Moments& m) {
  if (m.n < 2) return 0.0;
  const double n = static_cast<double>(m.n);
  const double s4 = m.variance * m.variance;
  return std::sqrt(std::max(0.0, m.m4 - s4 * (n - 3.0) / (n - 1.0)) / n);
}

double binomial_std_error(double p, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace eeg
