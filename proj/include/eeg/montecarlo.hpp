#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eeg/edge.hpp"
#include "eeg/measure.hpp"
#include "eeg/stats.hpp"

namespace eeg {

// Replica r of an experiment draws from Stream(stream_seed(seed, tag, r)),
// where each experiment below has its own fixed tag. Per-replica results are
// reduced in replica order, so reports do not depend on the thread count.

enum class EventKind { IeOccurs, IeAndIf, ConnectedAt, EssentiallyCompleteAt };
std::string_view event_name(EventKind k) noexcept;

struct EventDescriptor {
  EventKind kind = EventKind::IeOccurs;
  Edge e;
  Edge f;
};

struct EstimateReport {
  std::string event;
  double horizon = 0.0;
  double estimate = 0.0;
  std::size_t hits = 0;
  std::size_t replicas = 0;
  double std_error = 0.0;        // sqrt(estimate (1 - estimate) / replicas)
  std::optional<double> target;
  std::optional<double> z_score;  // (estimate - target) / sqrt(target (1 - target) / replicas)
  bool flagged = false;           // 3 <= |z| < 4
};

/// Closed-form probability of the event by time horizon_t, where one exists:
/// I_e for any horizon, I_e and I_f for an infinite horizon.
std::optional<double> event_target(const MeasureSpec& spec, const EventDescriptor& ev,
                                   double horizon_t);

/// Frequency of the event by time horizon_t (may be +inf for the I-events).
EstimateReport estimate_event(const MeasureSpec& spec, const EventDescriptor& ev,
                              double horizon_t, std::size_t replicas, std::uint64_t seed,
                              unsigned threads = 1);

struct CurvePoint {
  double t = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

/// P(connected at t) along the grid, one path per replica shared by all t.
std::vector<CurvePoint> connected_frequency_curve(const MeasureSpec& spec,
                                                  std::span<const double> t_grid,
                                                  std::size_t replicas, std::uint64_t seed,
                                                  unsigned threads = 1);

struct IEventGrowth {
  std::vector<CurvePoint> mean;  // mean cumulative I-event count
  double tail_relative_increase = 0.0;
  bool plateaued = false;
};

/// Declared plateaued when the mean rises by less than 1% (relative) over
/// the last quarter of the grid. A finite-horizon proxy only.
bool detect_plateau(std::span<const double> means, double* relative_increase = nullptr);

IEventGrowth i_event_growth(const MeasureSpec& spec, std::span<const double> t_grid,
                            std::size_t replicas, std::uint64_t seed, unsigned threads = 1);

enum class CltScale { UrnVariance, ExactVariance, Auto };

struct CltReport {
  double t = 0.0;
  std::size_t replicas = 0;
  Moments standardized;
  double ks_statistic = 0.0;
  double norm_mean = 0.0;  // E|V_t|
  double norm_sd = 0.0;
  std::string normalization;  // "urn_variance" or "exact_variance"
  double urn_variance = 0.0;
  double exact_variance = 0.0;
  bool low_variance_warning = false;  // urn_variance < 1
  std::vector<double> samples;        // standardized, replica order
};

/// Auto uses the exact Var|V_t| for isolated-edge and first-rank measures,
/// where |V_t| is itself a sum of independent terms, and the urn variance
/// otherwise.
CltReport clt_diagnostic(const MeasureSpec& spec, double t, std::size_t replicas,
                         std::uint64_t seed, unsigned threads = 1,
                         CltScale scale = CltScale::Auto);

/// One path per replica shared across the grid.
std::vector<CltReport> clt_sweep(const MeasureSpec& spec, std::span<const double> t_grid,
                                 std::size_t replicas, std::uint64_t seed, unsigned threads = 1,
                                 CltScale scale = CltScale::Auto);

/// True when each KS statistic exceeds its predecessor by at most `tol`.
bool ks_non_increasing(std::span<const CltReport> sweep, double tol);

/// |V_t| from the vertex process and |U_t| from independent urns with
/// rates M_i, per grid time (outer index) and replica (inner index).
struct CountSamples {
  std::vector<double> t;
  std::vector<std::vector<double>> vertices;
  std::vector<std::vector<double>> urns;
};
CountSamples sample_counts(const MeasureSpec& spec, std::span<const double> t_grid,
                           std::size_t replicas, std::uint64_t seed, unsigned threads = 1);

/// Occupancy counts of single vertices and vertex pairs at time t.
/// Needs n_max <= 64.
struct PairOccupancy {
  double t = 0.0;
  std::size_t replicas = 0;
  VertexId window = 0;
  std::vector<std::uint64_t> single;  // [v]
  std::vector<std::uint64_t> joint;   // [i * (window + 1) + j]

  std::uint64_t both(VertexId i, VertexId j) const { return joint[i * (window + 1) + j]; }
};
PairOccupancy pair_occupancy(const MeasureSpec& spec, double t, std::size_t replicas,
                             std::uint64_t seed, unsigned threads = 1);

struct DepoissonizationReport {
  std::uint64_t n = 0;
  std::size_t replicas = 0;
  std::size_t cells = 0;           // ordered n-tuples of support edges
  double l1 = 0.0;                 // discrete vs arrival-stopped, empirical
  double l1_discrete_exact = 0.0;  // discrete empirical vs the product law
  double l1_stopped_exact = 0.0;   // arrival-stopped empirical vs the product law
};

/// Needs at most 10 support edges and n <= 3.
DepoissonizationReport depoissonization_agreement(const MeasureSpec& spec, std::uint64_t n,
                                                  std::size_t replicas, std::uint64_t seed,
                                                  unsigned threads = 1);

/// One standardized sample per line.
void write_samples(std::ostream& os, std::span<const double> samples);

}  // namespace eeg
