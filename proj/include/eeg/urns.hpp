#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eeg/measure.hpp"
#include "eeg/rng.hpp"

namespace eeg {

enum class UrnMode { Discrete, Continuous };

/// Urn i (1-based) has weight lambdas[i-1]: a probability p_i in discrete
/// mode, an intensity lambda_i in continuous mode.
struct UrnScheme {
  std::vector<double> lambdas;
  UrnMode mode = UrnMode::Continuous;

  /// Throws InputError on negative or non-finite weights, or discrete
  /// weights not summing to 1 within 1e-12.
  void validate() const;

  /// Continuous scheme with lambda_i = M_i.
  static UrnScheme from_marginals(const MeasureSpec& spec);
};

struct UrnFill {
  std::size_t urn = 0;  // 1-based
  double time = 0.0;    // step index in discrete mode
};

/// First-fill events in time order.
struct UrnTrajectory {
  std::vector<UrnFill> fills;
  UrnMode mode = UrnMode::Continuous;
  double horizon = 0.0;
};

/// Discrete: `horizon` balls. Continuous: first arrivals in [0, horizon].
UrnTrajectory run_urn(const UrnScheme& scheme, double horizon, Stream& rng);

/// |U_t|: urns filled by time t.
std::size_t occupied_at(const UrnTrajectory& traj, double t);

enum class FactorMethod { SubsetExpansion, Quadrature };
std::string_view method_name(FactorMethod m) noexcept;

struct RespectFactor {
  double value = 1.0;
  double log_value = 0.0;
  FactorMethod method = FactorMethod::SubsetExpansion;
};

/// P(every urn of the block fills before an independent Exp(tail_mass)
/// clock rings) = int_0^inf prod_i (1 - e^{-lambda_i t}) L e^{-L t} dt.
/// Subset expansion for blocks of at most 20 urns, unless its rounding
/// error would swamp the value; quadrature in log t otherwise.
RespectFactor respect_factor_detail(std::span<const double> block, double tail_mass);
double respect_factor(std::span<const double> block, double tail_mass);

/// The two evaluation routes, exposed for cross-checking.
double respect_factor_subsets(std::span<const double> block, double tail_mass);
double respect_factor_quadrature(std::span<const double> block, double tail_mass);

enum class ProductVerdict { PositiveAnalytic, ZeroAnalytic, Inconclusive };
std::string_view verdict_name(ProductVerdict v) noexcept;

struct RespectReport {
  std::vector<double> factors;
  std::vector<FactorMethod> methods;
  std::vector<double> partial_products;  // after each block
  double partial_product = 1.0;
  double log_partial_product = 0.0;
  std::size_t blocks_used = 0;
  ProductVerdict verdict = ProductVerdict::Inconclusive;
  std::string verdict_basis;
};

/// Urn intensity sequences with their tails handled in log space.
class UrnSequence {
 public:
  enum class Kind { Geometric, DoubleExponential, Explicit };

  /// lambda_i = r^i, 0 < r < 1.
  static UrnSequence geometric(double r);
  /// lambda_i = exp(-3^i).
  static UrnSequence double_exponential();
  /// Finite list; lambda_i = list[i-1], zero beyond.
  static UrnSequence explicit_list(std::vector<double> lambdas);

  Kind kind() const noexcept { return kind_; }
  double ratio() const noexcept { return r_; }  // geometric only
  std::string_view label() const noexcept;
  double log_lambda(std::size_t i) const;
  /// log sum_{m > n} lambda_m; -inf when the tail is empty.
  double log_tail_after(std::size_t n) const;
  /// Number of positive terms, or SIZE_MAX for infinite sequences.
  std::size_t length() const noexcept;

 private:
  Kind kind_ = Kind::Explicit;
  double r_ = 0.0;
  std::vector<double> list_;
  std::vector<double> list_tail_;  // list_tail_[n] = sum_{m > n} list[m-1]
};

/// Partial product of lambda_n / sum_{m >= n} lambda_m over n = 1..blocks:
/// the probability that the first `blocks` urns to fill are 1, 2, ... in
/// that order.
RespectReport urns_in_order(const UrnSequence& seq, std::size_t blocks);
RespectReport urns_in_order(std::span<const double> lambdas, std::size_t blocks);

/// Monte Carlo counterpart: fraction of replicas whose first k filled urns
/// are 1..k in order. Per-replica seeds come from stream_seed(seed, tag, r).
struct InOrderEstimate {
  std::size_t k = 0;
  double frequency = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  std::size_t replicas = 0;
};
InOrderEstimate simulate_urns_in_order(const UrnSequence& seq, std::size_t k,
                                       std::size_t replicas, std::uint64_t seed,
                                       unsigned threads = 1);

/// Blocks C_n = {e : max(e) = n} for n = 2, 3, ...: factor n uses the masses
/// mu_{in}, i < n, against the tail mass sum_{max(e) > n} mu_e, itself the
/// window sum plus the family's bound on mass beyond the window. Stops at
/// the last block with positive tail mass.
RespectReport essential_completeness_product(const MeasureSpec& spec, std::size_t blocks);

}  // namespace eeg
