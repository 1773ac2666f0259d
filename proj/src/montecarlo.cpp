#include "eeg/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "eeg/analytic.hpp"
#include "eeg/errors.hpp"
#include "eeg/graph_state.hpp"
#include "eeg/parallel.hpp"
#include "eeg/process.hpp"
#include "eeg/report.hpp"
#include "eeg/rng.hpp"
#include "eeg/urns.hpp"

namespace eeg {

namespace {

constexpr std::uint64_t kTagEvent = 0x6576656e74ULL;
constexpr std::uint64_t kTagCurve = 0x6375727665ULL;
constexpr std::uint64_t kTagGrowth = 0x67726f777468ULL;
constexpr std::uint64_t kTagClt = 0x636c74ULL;
constexpr std::uint64_t kTagCounts = 0x636f756e7473ULL;
constexpr std::uint64_t kTagPairs = 0x7061697273ULL;
constexpr std::uint64_t kTagDiscrete = 0x6469736372ULL;
constexpr std::uint64_t kTagStopped = 0x73746f70ULL;

// Continuous path on [0, t_max]. Vertex sets, connectivity and I-events
// depend only on first arrivals, so the cheaper of the two stream modes is
// used; the choice depends on (spec, t_max) only.
Trajectory graph_path(const MeasureSpec& spec, double t_max, Stream& rng) {
  if (!std::isfinite(t_max)) return run_continuous(spec, t_max, rng, StreamMode::FirstArrival);
  const bool superpose =
      spec.total_mass() * t_max < static_cast<double>(spec.support().size());
  return run_continuous(spec, t_max, rng,
                        superpose ? StreamMode::FullPoisson : StreamMode::FirstArrival);
}

void require_replicas(std::size_t replicas) {
  if (replicas == 0) throw InputError("need at least one replica");
}

void require_grid(std::span<const double> t_grid) {
  if (t_grid.empty()) throw InputError("time grid is empty");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || !std::isfinite(t_grid[k])) {
      throw InputError("time grid entries must be positive and finite");
    }
    if (k > 0 && !(t_grid[k] > t_grid[k - 1])) {
      throw InputError("time grid must be strictly increasing");
    }
  }
}

bool occurred_as_new_component(const Trajectory& traj, const Edge& e) {
  for (const auto& ev : traj.events) {
    if (ev.edge == e) return ev.new_component;
  }
  return false;
}

CurvePoint summarize(double t, std::span<const double> values) {
  const Moments m = moments(values);
  return {t, m.mean, std::sqrt(m.variance / static_cast<double>(std::max<std::size_t>(m.n, 1)))};
}

}  // namespace

std::string_view event_name(EventKind k) noexcept {
  switch (k) {
    case EventKind::IeOccurs: return "I_e";
    case EventKind::IeAndIf: return "I_e_and_I_f";
    case EventKind::ConnectedAt: return "connected";
    case EventKind::EssentiallyCompleteAt: return "essentially_complete";
  }
  return "I_e";
}

std::optional<double> event_target(const MeasureSpec& spec, const EventDescriptor& ev,
                                   double horizon_t) {
  try {
    switch (ev.kind) {
      case EventKind::IeOccurs: {
        const double p = prob_new_component(spec, ev.e);
        if (!std::isfinite(horizon_t)) return p;
        // tau_e <= T and e arrives before every edge meeting it.
        return p * -std::expm1(-spec.edge_mass(ev.e) * horizon_t);
      }
      case EventKind::IeAndIf:
        if (!std::isfinite(horizon_t)) return prob_joint_new_components(spec, ev.e, ev.f);
        return std::nullopt;
      default:
        return std::nullopt;
    }
  } catch (const UndefinedProbability&) {
    return std::nullopt;
  }
}

EstimateReport estimate_event(const MeasureSpec& spec, const EventDescriptor& ev,
                              double horizon_t, std::size_t replicas, std::uint64_t seed,
                              unsigned threads) {
  require_replicas(replicas);
  if (!(horizon_t > 0.0)) throw InputError("estimate_event: horizon must be positive");
  if (!std::isfinite(horizon_t) &&
      (ev.kind == EventKind::ConnectedAt || ev.kind == EventKind::EssentiallyCompleteAt)) {
    throw InputError("estimate_event: graph events need a finite horizon");
  }
  std::vector<char> hit(replicas, 0);
  parallel_replicas(replicas, threads, [&](std::size_t r) {
    Stream rng(stream_seed(seed, kTagEvent, r));
    const Trajectory traj = graph_path(spec, horizon_t, rng);
    switch (ev.kind) {
      case EventKind::IeOccurs:
        hit[r] = occurred_as_new_component(traj, ev.e);
        break;
      case EventKind::IeAndIf:
        hit[r] = occurred_as_new_component(traj, ev.e) && occurred_as_new_component(traj, ev.f);
        break;
      case EventKind::ConnectedAt:
      case EventKind::EssentiallyCompleteAt: {
        GraphState g;
        for (const auto& a : traj.events) g.apply(a.edge);
        hit[r] = ev.kind == EventKind::ConnectedAt ? g.is_connected()
                                                   : g.essential_completeness().essentially_complete;
        break;
      }
    }
  });

  EstimateReport rep;
  rep.event = std::string(event_name(ev.kind));
  rep.horizon = horizon_t;
  rep.replicas = replicas;
  for (char h : hit) rep.hits += h != 0;
  rep.estimate = static_cast<double>(rep.hits) / static_cast<double>(replicas);
  rep.std_error = binomial_std_error(rep.estimate, replicas);
  rep.target = event_target(spec, ev, horizon_t);
  if (rep.target) {
    const double sigma = binomial_std_error(*rep.target, replicas);
    const double diff = rep.estimate - *rep.target;
    if (sigma > 0.0) rep.z_score = diff / sigma;
    else rep.z_score = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    const double az = std::abs(*rep.z_score);
    rep.flagged = az >= 3.0 && az < 4.0;
  }
  return rep;
}

std::vector<CurvePoint> connected_frequency_curve(const MeasureSpec& spec,
                                                  std::span<const double> t_grid,
                                                  std::size_t replicas, std::uint64_t seed,
                                                  unsigned threads) {
  require_replicas(replicas);
  require_grid(t_grid);
  const std::size_t K = t_grid.size();
  std::vector<char> connected(replicas * K, 0);
  parallel_replicas(replicas, threads, [&](std::size_t r) {
    Stream rng(stream_seed(seed, kTagCurve, r));
    const Trajectory traj = graph_path(spec, t_grid.back(), rng);
    GraphState g;
    std::size_t e = 0;
    for (std::size_t k = 0; k < K; ++k) {
      while (e < traj.events.size() && traj.events[e].time <= t_grid[k]) g.apply(traj.events[e++].edge);
      connected[r * K + k] = g.is_connected();
    }
  });
  std::vector<CurvePoint> out;
  for (std::size_t k = 0; k < K; ++k) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < replicas; ++r) hits += connected[r * K + k] != 0;
    const double p = static_cast<double>(hits) / static_cast<double>(replicas);
    out.push_back({t_grid[k], p, binomial_std_error(p, replicas)});
  }
  return out;
}

bool detect_plateau(std::span<const double> means, double* relative_increase) {
  double rel = 0.0;
  bool plateau = false;
  if (means.size() >= 2) {
    const std::size_t q = (3 * (means.size() - 1)) / 4;
    const double base = means[q];
    const double rise = means.back() - base;
    if (base > 0.0) rel = rise / base;
    else rel = rise > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    plateau = rel < 0.01;
  }
  if (relative_increase) *relative_increase = rel;
  return plateau;
}

IEventGrowth i_event_growth(const MeasureSpec& spec, std::span<const double> t_grid,
                            std::size_t replicas, std::uint64_t seed, unsigned threads) {
  require_replicas(replicas);
  require_grid(t_grid);
  const std::size_t K = t_grid.size();
  std::vector<double> counts(replicas * K, 0.0);
  parallel_replicas(replicas, threads, [&](std::size_t r) {
    Stream rng(stream_seed(seed, kTagGrowth, r));
    const Trajectory traj = graph_path(spec, t_grid.back(), rng);
    std::size_t e = 0;
    double c = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      for (; e < traj.events.size() && traj.events[e].time <= t_grid[k]; ++e) {
        c += traj.events[e].new_component ? 1.0 : 0.0;
      }
      counts[r * K + k] = c;
    }
  });
  IEventGrowth out;
  std::vector<double> column(replicas);
  std::vector<double> means;
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t r = 0; r < replicas; ++r) column[r] = counts[r * K + k];
    out.mean.push_back(summarize(t_grid[k], column));
    means.push_back(out.mean.back().value);
  }
  out.plateaued = detect_plateau(means, &out.tail_relative_increase);
  return out;
}

std::vector<CltReport> clt_sweep(const MeasureSpec& spec, std::span<const double> t_grid,
                                 std::size_t replicas, std::uint64_t seed, unsigned threads,
                                 CltScale scale) {
  require_replicas(replicas);
  require_grid(t_grid);
  const std::size_t K = t_grid.size();
  std::vector<double> counts(replicas * K, 0.0);
  parallel_replicas(replicas, threads, [&](std::size_t r) {
    Stream rng(stream_seed(seed, kTagClt, r));
    const Trajectory traj = graph_path(spec, t_grid.back(), rng);
    std::size_t e = 0;
    double v = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      for (; e < traj.events.size() && traj.events[e].time <= t_grid[k]; ++e) {
        v += traj.events[e].new_vertices;
      }
      counts[r * K + k] = v;
    }
  });

  const bool exact = scale == CltScale::ExactVariance ||
                     (scale == CltScale::Auto && (spec.family() == Family::IsolatedEdges ||
                                                  spec.family() == Family::FirstRank));
  std::vector<CltReport> out;
  for (std::size_t k = 0; k < K; ++k) {
    const double t = t_grid[k];
    CltReport rep;
    rep.t = t;
    rep.replicas = replicas;
    rep.norm_mean = expected_vertices(spec, t);
    rep.urn_variance = urn_variance(spec, t);
    rep.exact_variance = variance_sandwich(spec, t).exact;
    rep.normalization = exact ? "exact_variance" : "urn_variance";
    rep.norm_sd = std::sqrt(exact ? rep.exact_variance : rep.urn_variance);
    rep.low_variance_warning = rep.urn_variance < 1.0;
    rep.samples.resize(replicas);
    for (std::size_t r = 0; r < replicas; ++r) {
      rep.samples[r] = rep.norm_sd > 0.0 ? (counts[r * K + k] - rep.norm_mean) / rep.norm_sd : 0.0;
    }
    rep.standardized = moments(rep.samples);
    rep.ks_statistic = ks_normal(rep.samples);
    out.push_back(std::move(rep));
  }
  return out;
}

CltReport clt_diagnostic(const MeasureSpec& spec, double t, std::size_t replicas,
                         std::uint64_t seed, unsigned threads, CltScale scale) {
  const double grid[] = {t};
  return std::move(clt_sweep(spec, grid, replicas, seed, threads, scale).front());
}

bool ks_non_increasing(std::span<const CltReport> sweep, double tol) {
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    if (sweep[k].ks_statistic > sweep[k - 1].ks_statistic + tol) return false;
  }
  return true;
}

CountSamples sample_counts(const MeasureSpec& spec, std::span<const double> t_grid,
                           std::size_t replicas, std::uint64_t seed, unsigned threads) {
  require_replicas(replicas);
  require_grid(t_grid);
  const std::size_t K = t_grid.size();
  CountSamples out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.vertices.assign(K, std::vector<double>(replicas, 0.0));
  out.urns.assign(K, std::vector<double>(replicas, 0.0));
  const UrnScheme scheme = UrnScheme::from_marginals(spec);
  parallel_replicas(replicas, threads, [&](std::size_t r) {
    Stream rng(stream_seed(seed, kTagCounts, r));
    const Trajectory traj = graph_path(spec, t_grid.back(), rng);
    const UrnTrajectory urns = run_urn(scheme, t_grid.back(), rng);
    std::size_t e = 0;
    double v = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      for (; e < traj.events.size() && traj.events[e].time <= t_grid[k]; ++e) {
        v += traj.events[e].new_vertices;
      }
      out.vertices[k][r] = v;
      out.urns[k][r] = static_cast<double>(occupied_at(urns, t_grid[k]));
    }
  });
  return out;
}

PairOccupancy pair_occupancy(const MeasureSpec& spec, double t, std::size_t replicas,
                             std::uint64_t seed, unsigned threads) {
  require_replicas(replicas);
  const VertexId W = spec.n_max();
  if (W > 63) throw InputError("pair_occupancy: window must be at most 63");
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("pair_occupancy: bad time");
  std::vector<std::uint64_t> masks(replicas, 0);
  parallel_replicas(replicas, threads, [&](std::size_t r) {
    Stream rng(stream_seed(seed, kTagPairs, r));
    const Trajectory traj = graph_path(spec, t, rng);
    std::uint64_t m = 0;
    for (const auto& ev : traj.events) m |= (std::uint64_t{1} << ev.edge.i()) | (std::uint64_t{1} << ev.edge.j());
    masks[r] = m;
  });
  PairOccupancy out;
  out.t = t;
  out.replicas = replicas;
  out.window = W;
  out.single.assign(W + 1, 0);
  out.joint.assign(static_cast<std::size_t>(W + 1) * (W + 1), 0);
  for (std::uint64_t m : masks) {
    for (VertexId i = 1; i <= W; ++i) {
      if (!((m >> i) & 1)) continue;
      ++out.single[i];
      for (VertexId j = i + 1; j <= W; ++j) {
        if ((m >> j) & 1) {
          ++out.joint[i * (W + 1) + j];
          ++out.joint[j * (W + 1) + i];
        }
      }
    }
  }
  return out;
}

DepoissonizationReport depoissonization_agreement(const MeasureSpec& spec, std::uint64_t n,
                                                  std::size_t replicas, std::uint64_t seed,
                                                  unsigned threads) {
  require_replicas(replicas);
  const std::size_t E = spec.support().size();
  if (E > 10 || n == 0 || n > 3) {
    throw InputError("depoissonization_agreement: needs <= 10 support edges and 1 <= n <= 3");
  }
  std::size_t cells = 1;
  for (std::uint64_t k = 0; k < n; ++k) cells *= E;

  const auto encode = [&](const Trajectory& traj) {
    std::size_t code = 0;
    for (std::uint64_t k = n; k-- > 0;) code = code * E + spec.index_of(traj.events[k].edge);
    return code;
  };
  std::vector<std::uint32_t> disc(replicas, 0);
  std::vector<std::uint32_t> stop(replicas, 0);
  parallel_replicas(replicas, threads, [&](std::size_t r) {
    Stream rd(stream_seed(seed, kTagDiscrete, r));
    disc[r] = static_cast<std::uint32_t>(encode(run_discrete(spec, n, rd)));
    Stream rs(stream_seed(seed, kTagStopped, r));
    stop[r] = static_cast<std::uint32_t>(encode(depoissonize(spec, n, rs)));
  });

  std::vector<double> hd(cells, 0.0);
  std::vector<double> hs(cells, 0.0);
  for (std::size_t r = 0; r < replicas; ++r) {
    hd[disc[r]] += 1.0;
    hs[stop[r]] += 1.0;
  }
  const auto masses = spec.support_masses();
  const double total = spec.total_mass();
  DepoissonizationReport rep;
  rep.n = n;
  rep.replicas = replicas;
  rep.cells = cells;
  const double inv = 1.0 / static_cast<double>(replicas);
  for (std::size_t c = 0; c < cells; ++c) {
    double exact = 1.0;
    for (std::size_t code = c, k = 0; k < n; ++k, code /= E) exact *= masses[code % E] / total;
    rep.l1 += std::abs(hd[c] - hs[c]) * inv;
    rep.l1_discrete_exact += std::abs(hd[c] * inv - exact);
    rep.l1_stopped_exact += std::abs(hs[c] * inv - exact);
  }
  return rep;
}

void write_samples(std::ostream& os, std::span<const double> samples) {
  for (double x : samples) os << format_real(x) << '\n';
}

}  // namespace eeg
