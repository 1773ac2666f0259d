#include "eeg/process.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <queue>

#include "eeg/errors.hpp"
#include "eeg/report.hpp"

namespace eeg {

namespace {

class SeenVertices {
 public:
  explicit SeenVertices(VertexId n_max) : seen_(static_cast<std::size_t>(n_max) + 1, 0) {}

  int admit(const Edge& e) {
    const int fresh = static_cast<int>(seen_[e.i()] == 0) + static_cast<int>(seen_[e.j()] == 0);
    seen_[e.i()] = seen_[e.j()] = 1;
    return fresh;
  }

 private:
  std::vector<char> seen_;
};

void push_event(Trajectory& traj, SeenVertices& seen, double time, const Edge& e) {
  ArrivalEvent ev;
  ev.index = traj.events.size() + 1;
  ev.time = time;
  ev.edge = e;
  ev.new_vertices = seen.admit(e);
  ev.new_component = ev.new_vertices == 2;
  traj.events.push_back(ev);
}

}  // namespace

Trajectory run_discrete(const MeasureSpec& spec, std::uint64_t n_steps, Stream& rng) {
  if (!(spec.total_mass() > 0.0)) throw ConfigError("run_discrete: zero-mass measure");
  Trajectory traj;
  traj.horizon = {HorizonKind::Steps, static_cast<double>(n_steps)};
  traj.seed = rng.seed();
  traj.events.reserve(n_steps);
  SeenVertices seen(spec.n_max());
  for (std::uint64_t n = 1; n <= n_steps; ++n) {
    push_event(traj, seen, static_cast<double>(n), spec.sample_edge(rng));
  }
  return traj;
}

Trajectory run_continuous(const MeasureSpec& spec, double horizon_t, Stream& rng,
                          StreamMode mode) {
  if (!(horizon_t > 0.0)) throw InputError("run_continuous: horizon must be positive");
  Trajectory traj;
  traj.horizon = {HorizonKind::Time, horizon_t};
  traj.mode = mode;
  traj.seed = rng.seed();
  SeenVertices seen(spec.n_max());

  if (mode == StreamMode::FirstArrival) {
    const auto support = spec.support();
    const auto masses = spec.support_masses();
    std::vector<std::pair<double, std::size_t>> arrivals;
    for (std::size_t k = 0; k < support.size(); ++k) {
      const double tau = rng.exponential(masses[k]);
      if (tau <= horizon_t) arrivals.emplace_back(tau, k);
    }
    std::sort(arrivals.begin(), arrivals.end());
    traj.events.reserve(arrivals.size());
    for (const auto& [tau, k] : arrivals) push_event(traj, seen, tau, support[k]);
    return traj;
  }

  if (!std::isfinite(horizon_t)) {
    throw InputError("run_continuous: full Poisson streams need a finite horizon");
  }
  // Superposition of the per-edge streams: total rate, then the mark.
  const double rate = spec.total_mass();
  double t = rng.exponential(rate);
  while (t <= horizon_t) {
    push_event(traj, seen, t, spec.sample_edge(rng));
    t += rng.exponential(rate);
  }
  return traj;
}

Trajectory depoissonize(const MeasureSpec& spec, std::uint64_t n, Stream& rng) {
  Trajectory traj;
  traj.horizon = {HorizonKind::Arrivals, static_cast<double>(n)};
  traj.mode = StreamMode::FullPoisson;
  traj.seed = rng.seed();
  if (n == 0) return traj;
  traj.events.reserve(n);
  SeenVertices seen(spec.n_max());

  const auto support = spec.support();
  const auto masses = spec.support_masses();
  using Next = std::pair<double, std::size_t>;
  std::vector<Next> init;
  init.reserve(support.size());
  for (std::size_t k = 0; k < support.size(); ++k) init.emplace_back(rng.exponential(masses[k]), k);
  std::priority_queue<Next, std::vector<Next>, std::greater<>> next(std::greater<>{}, std::move(init));
  while (traj.events.size() < n) {
    const auto [t, k] = next.top();
    next.pop();
    push_event(traj, seen, t, support[k]);
    next.emplace(t + rng.exponential(masses[k]), k);
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "index,time,i,j,new_vertices,new_component\n";
  for (const auto& ev : traj.events) {
    os << ev.index << ',' << format_real(ev.time) << ',' << ev.edge.i() << ',' << ev.edge.j()
       << ',' << ev.new_vertices << ',' << (ev.new_component ? 1 : 0) << '\n';
  }
}

}  // namespace eeg
