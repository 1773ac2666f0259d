#include "eeg/urns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "eeg/errors.hpp"
#include "eeg/parallel.hpp"
#include "eeg/quadrature.hpp"

namespace eeg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kInOrderTag = 0x75726e732d6f7264ULL;

void check_block(std::span<const double> block, double tail_mass) {
  if (!(tail_mass > 0.0) || !std::isfinite(tail_mass)) {
    throw InputError("respect factor: tail mass must be positive and finite");
  }
  for (double l : block) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw InputError("respect factor: block intensities must be non-negative and finite");
    }
  }
}

bool has_zero(std::span<const double> block) {
  return std::any_of(block.begin(), block.end(), [](double l) { return l == 0.0; });
}

struct SubsetSum {
  double value;
  double rounding;  // bound on accumulated rounding error
};

SubsetSum subset_expansion(std::span<const double> block, double tail) {
  const std::size_t k = block.size();
  if (k == 1) return {block[0] / (tail + block[0]), 0.0};
  const std::size_t n = std::size_t{1} << k;
  std::vector<double> sums(n, 0.0);
  double value = 0.0;
  double magnitude = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    if (s > 0) {
      const std::size_t low = s & (~s + 1);
      sums[s] = sums[s ^ low] + block[static_cast<std::size_t>(std::countr_zero(low))];
    }
    const double term = tail / (tail + sums[s]);
    value += (std::popcount(s) % 2 == 0) ? term : -term;
    magnitude += term;
  }
  return {value, magnitude * static_cast<double>(k + 2) * std::numeric_limits<double>::epsilon()};
}

double y_over_expm1(double y) {
  if (y < 1e-8) return 1.0 - 0.5 * y;
  if (y > 745.0) return 0.0;
  return y / std::expm1(y);
}

// Log of the integrand after t = e^x.
double log_integrand(std::span<const double> block, double tail, double x) {
  const double t = std::exp(x);
  double g = std::log(tail) + x - tail * t;
  for (double l : block) {
    const double y = l * t;
    g += y > 40.0 ? -std::exp(-y) : std::log(-std::expm1(-y));
  }
  return g;
}

double log_integrand_slope(std::span<const double> block, double tail, double x) {
  const double t = std::exp(x);
  double d = 1.0 - tail * t;
  for (double l : block) d += y_over_expm1(l * t);
  return d;
}

double log_quadrature(std::span<const double> block, double tail) {
  // The log integrand is concave in x, so its slope has a single root.
  double lmax = *std::max_element(block.begin(), block.end());
  double lo = std::min(std::log(1e-3 / lmax), std::log(0.5 / tail));
  while (log_integrand_slope(block, tail, lo) <= 0.0) lo -= 8.0;
  double hi = std::log(2.0 * (static_cast<double>(block.size()) + 2.0) / tail);
  while (log_integrand_slope(block, tail, hi) >= 0.0) hi += 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_integrand_slope(block, tail, mid) > 0.0 ? lo : hi) = mid;
  }
  const double x_star = 0.5 * (lo + hi);
  const double g_star = log_integrand(block, tail, x_star);

  constexpr double kDrop = 50.0;
  double left = x_star - 1.0;
  for (double step = 1.0; log_integrand(block, tail, left) > g_star - kDrop; step *= 2.0) left -= step;
  double right = x_star + 1.0;
  for (double step = 1.0; log_integrand(block, tail, right) > g_star - kDrop; step *= 2.0) right += step;

  const auto f = [&](double x) { return std::exp(log_integrand(block, tail, x) - g_star); };
  const QuadratureResult q = integrate_gk15(f, left, right, 0.0, 1e-14, 20000);
  return g_star + std::log(q.value);
}

}  // namespace

void UrnScheme::validate() const {
  double sum = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw InputError("urn scheme: weights must be non-negative and finite");
    }
    sum += l;
  }
  if (mode == UrnMode::Discrete && std::abs(sum - 1.0) > 1e-12) {
    throw InputError("urn scheme: discrete probabilities must sum to 1");
  }
}

UrnScheme UrnScheme::from_marginals(const MeasureSpec& spec) {
  const auto& M = spec.marginals().M;
  UrnScheme s;
  s.mode = UrnMode::Continuous;
  s.lambdas.assign(M.begin() + (M.empty() ? 0 : 1), M.end());
  return s;
}

UrnTrajectory run_urn(const UrnScheme& scheme, double horizon, Stream& rng) {
  scheme.validate();
  if (!(horizon >= 0.0)) throw InputError("run_urn: horizon must be non-negative");
  UrnTrajectory traj;
  traj.mode = scheme.mode;
  traj.horizon = horizon;
  if (scheme.mode == UrnMode::Continuous) {
    for (std::size_t i = 0; i < scheme.lambdas.size(); ++i) {
      if (scheme.lambdas[i] == 0.0) continue;
      const double tau = rng.exponential(scheme.lambdas[i]);
      if (tau <= horizon) traj.fills.push_back({i + 1, tau});
    }
    std::sort(traj.fills.begin(), traj.fills.end(),
              [](const UrnFill& a, const UrnFill& b) { return a.time < b.time; });
    return traj;
  }
  const AliasTable table(scheme.lambdas);
  std::vector<char> filled(scheme.lambdas.size(), 0);
  const auto balls = static_cast<std::uint64_t>(horizon);
  for (std::uint64_t n = 1; n <= balls; ++n) {
    const std::size_t i = table.sample(rng);
    if (!filled[i]) {
      filled[i] = 1;
      traj.fills.push_back({i + 1, static_cast<double>(n)});
    }
  }
  return traj;
}

std::size_t occupied_at(const UrnTrajectory& traj, double t) {
  const auto it = std::upper_bound(traj.fills.begin(), traj.fills.end(), t,
                                   [](double v, const UrnFill& f) { return v < f.time; });
  return static_cast<std::size_t>(it - traj.fills.begin());
}

std::string_view method_name(FactorMethod m) noexcept {
  return m == FactorMethod::SubsetExpansion ? "subset-expansion" : "quadrature";
}

double respect_factor_subsets(std::span<const double> block, double tail_mass) {
  check_block(block, tail_mass);
  if (block.empty()) return 1.0;
  if (block.size() > 30) throw InputError("respect factor: subset expansion limited to 30 urns");
  return subset_expansion(block, tail_mass).value;
}

double respect_factor_quadrature(std::span<const double> block, double tail_mass) {
  check_block(block, tail_mass);
  if (block.empty()) return 1.0;
  if (has_zero(block)) return 0.0;
  return std::exp(log_quadrature(block, tail_mass));
}

RespectFactor respect_factor_detail(std::span<const double> block, double tail_mass) {
  check_block(block, tail_mass);
  RespectFactor out;
  if (block.empty()) return out;
  if (has_zero(block)) {
    out.value = 0.0;
    out.log_value = -kInf;
    return out;
  }
  if (block.size() <= 20) {
    const SubsetSum s = subset_expansion(block, tail_mass);
    if (s.value > 1e6 * s.rounding) {
      out.value = s.value;
      out.log_value = std::log(s.value);
      return out;
    }
  }
  out.method = FactorMethod::Quadrature;
  out.log_value = log_quadrature(block, tail_mass);
  out.value = std::exp(out.log_value);
  return out;
}

double respect_factor(std::span<const double> block, double tail_mass) {
  return respect_factor_detail(block, tail_mass).value;
}

std::string_view verdict_name(ProductVerdict v) noexcept {
  switch (v) {
    case ProductVerdict::PositiveAnalytic: return "positive-analytic";
    case ProductVerdict::ZeroAnalytic: return "zero-analytic";
    case ProductVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

UrnSequence UrnSequence::geometric(double r) {
  if (!(r > 0.0 && r < 1.0)) throw InputError("geometric urn sequence: need 0 < r < 1");
  UrnSequence s;
  s.kind_ = Kind::Geometric;
  s.r_ = r;
  return s;
}

UrnSequence UrnSequence::double_exponential() {
  UrnSequence s;
  s.kind_ = Kind::DoubleExponential;
  return s;
}

UrnSequence UrnSequence::explicit_list(std::vector<double> lambdas) {
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw InputError("urn sequence: intensities must be non-negative and finite");
    }
  }
  UrnSequence s;
  s.kind_ = Kind::Explicit;
  s.list_tail_.assign(lambdas.size() + 1, 0.0);
  for (std::size_t n = lambdas.size(); n-- > 0;) s.list_tail_[n] = s.list_tail_[n + 1] + lambdas[n];
  s.list_ = std::move(lambdas);
  return s;
}

std::string_view UrnSequence::label() const noexcept {
  switch (kind_) {
    case Kind::Geometric: return "geometric";
    case Kind::DoubleExponential: return "double_exponential";
    case Kind::Explicit: return "explicit";
  }
  return "explicit";
}

std::size_t UrnSequence::length() const noexcept {
  return kind_ == Kind::Explicit ? list_.size() : std::numeric_limits<std::size_t>::max();
}

double UrnSequence::log_lambda(std::size_t i) const {
  if (i == 0) throw InputError("urn sequence: indices are 1-based");
  switch (kind_) {
    case Kind::Geometric: return static_cast<double>(i) * std::log(r_);
    case Kind::DoubleExponential: return -std::pow(3.0, static_cast<double>(i));
    case Kind::Explicit: return i <= list_.size() ? std::log(list_[i - 1]) : -kInf;
  }
  return -kInf;
}

double UrnSequence::log_tail_after(std::size_t n) const {
  switch (kind_) {
    case Kind::Geometric:
      return static_cast<double>(n + 1) * std::log(r_) - std::log1p(-r_);
    case Kind::DoubleExponential: {
      const double lead = std::pow(3.0, static_cast<double>(n + 1));
      double rest = 0.0;
      for (std::size_t m = n + 2;; ++m) {
        const double gap = std::pow(3.0, static_cast<double>(m)) - lead;
        if (gap > 750.0) break;
        rest += std::exp(-gap);
      }
      return -lead + std::log1p(rest);
    }
    case Kind::Explicit:
      return n < list_.size() && list_tail_[n] > 0.0 ? std::log(list_tail_[n]) : -kInf;
  }
  return -kInf;
}

RespectReport urns_in_order(const UrnSequence& seq, std::size_t blocks) {
  RespectReport rep;
  const std::size_t n_blocks = std::min(blocks, seq.length());
  rep.factors.reserve(n_blocks);
  for (std::size_t n = 1; n <= n_blocks; ++n) {
    double factor = 0.0;
    switch (seq.kind()) {
      case UrnSequence::Kind::Geometric:
        // lambda_n / sum_{m >= n} r^m = 1 - r for every n.
        factor = 1.0 - seq.ratio();
        break;
      default: {
        const double ll = seq.log_lambda(n);
        if (ll == -kInf) throw InputError("urns_in_order: intensities must be positive");
        factor = 1.0 / (1.0 + std::exp(seq.log_tail_after(n) - ll));
        break;
      }
    }
    rep.factors.push_back(factor);
    rep.methods.push_back(FactorMethod::SubsetExpansion);
    rep.partial_product *= factor;
    rep.log_partial_product += std::log(factor);
    rep.partial_products.push_back(rep.partial_product);
  }
  rep.blocks_used = n_blocks;
  switch (seq.kind()) {
    case UrnSequence::Kind::Geometric:
      rep.verdict = ProductVerdict::ZeroAnalytic;
      rep.verdict_basis = "every factor equals 1 - r < 1";
      break;
    case UrnSequence::Kind::DoubleExponential:
      rep.verdict = ProductVerdict::PositiveAnalytic;
      rep.verdict_basis = "1 - factor_n <= 2 exp(-2*3^n), a summable tail";
      break;
    case UrnSequence::Kind::Explicit:
      rep.verdict = ProductVerdict::Inconclusive;
      rep.verdict_basis = "finite list: no tail argument";
      break;
  }
  return rep;
}

RespectReport urns_in_order(std::span<const double> lambdas, std::size_t blocks) {
  return urns_in_order(UrnSequence::explicit_list({lambdas.begin(), lambdas.end()}), blocks);
}

InOrderEstimate simulate_urns_in_order(const UrnSequence& seq, std::size_t k,
                                       std::size_t replicas, std::uint64_t seed,
                                       unsigned threads) {
  if (k == 0 || k > seq.length()) throw InputError("simulate_urns_in_order: bad k");
  if (replicas == 0) throw InputError("simulate_urns_in_order: need at least one replica");
  std::vector<double> log_lambda(k);
  for (std::size_t i = 1; i <= k; ++i) log_lambda[i - 1] = seq.log_lambda(i);
  const double log_tail = seq.log_tail_after(k);

  std::vector<char> hit(replicas, 0);
  parallel_replicas(replicas, threads, [&](std::size_t r) {
    Stream rng(stream_seed(seed, kInOrderTag, r));
    // Log first-fill times; the urns beyond k act as one Exp(tail) clock.
    double prev = -kInf;
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      const double lt = std::log(rng.exponential()) - log_lambda[i];
      if (!(lt > prev)) ok = false;
      prev = lt;
    }
    const double lt_tail = log_tail == -kInf ? kInf : std::log(rng.exponential()) - log_tail;
    hit[r] = ok && prev < lt_tail;
  });

  InOrderEstimate out;
  out.k = k;
  out.replicas = replicas;
  std::size_t count = 0;
  for (char h : hit) count += h != 0;
  out.frequency = static_cast<double>(count) / static_cast<double>(replicas);
  out.std_error = std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(replicas));
  out.target = urns_in_order(seq, k).partial_product;
  return out;
}

RespectReport essential_completeness_product(const MeasureSpec& spec, std::size_t blocks) {
  const VertexId W = spec.n_max();
  // block_total[n] = sum_{i<n} mu_{in}
  std::vector<double> block_total(static_cast<std::size_t>(W) + 2, 0.0);
  for (VertexId n = 2; n <= W; ++n) {
    for (const Neighbor& nb : spec.neighbors(n)) {
      if (nb.vertex < n) block_total[n] += nb.mass;
    }
  }
  std::vector<double> tail(static_cast<std::size_t>(W) + 2, 0.0);
  tail[W] = spec.discarded_mass_bound();
  for (VertexId n = W; n-- > 1;) tail[n] = tail[n + 1] + block_total[n + 1];

  RespectReport rep;
  std::vector<double> block;
  for (VertexId n = 2; n <= W && rep.blocks_used < blocks; ++n) {
    if (!(tail[n] > 0.0)) break;
    block.assign(n - 1, 0.0);
    for (const Neighbor& nb : spec.neighbors(n)) {
      if (nb.vertex < n) block[nb.vertex - 1] = nb.mass;
    }
    const RespectFactor f = respect_factor_detail(block, tail[n]);
    rep.factors.push_back(f.value);
    rep.methods.push_back(f.method);
    rep.partial_product *= f.value;
    rep.log_partial_product += f.log_value;
    rep.partial_products.push_back(rep.partial_product);
    ++rep.blocks_used;
  }

  const bool zero_factor =
      std::any_of(rep.factors.begin(), rep.factors.end(), [](double f) { return f == 0.0; });
  if (zero_factor) {
    rep.verdict = ProductVerdict::ZeroAnalytic;
    rep.verdict_basis = "a block has a zero-mass edge, so its factor is 0";
    return rep;
  }
  switch (spec.family()) {
    case Family::FactorialMax:
      rep.verdict = ProductVerdict::PositiveAnalytic;
      rep.verdict_basis =
          "1 - factor_n <= (n-1) tail_n / mu_{1n} = O(n^-2), a summable tail";
      break;
    case Family::DoubleExp:
      rep.verdict = ProductVerdict::PositiveAnalytic;
      rep.verdict_basis = "1 - factor_n <= (n-1) tail_n / mu_{1n}, doubly exponentially small";
      break;
    case Family::PowerLawProduct:
      rep.verdict = ProductVerdict::ZeroAnalytic;
      rep.verdict_basis =
          "factor_n <= mu_{n-1,n} / (mu_{n-1,n} + mu_{1,n+1}) = 1 / (1 + (n-1)^g n^g (n+1)^-g) -> 0";
      break;
    default:
      rep.verdict = ProductVerdict::Inconclusive;
      rep.verdict_basis = "no tail bound for this family";
      break;
  }
  return rep;
}

}  // namespace eeg
