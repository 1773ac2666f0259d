#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "eeg/edge.hpp"
#include "eeg/measure.hpp"
#include "eeg/rng.hpp"

namespace eeg {

/// One edge arrival. `time` equals `index` for discrete-time runs.
struct ArrivalEvent {
  std::uint64_t index = 0;
  double time = 0.0;
  Edge edge;
  int new_vertices = 0;        // 0, 1 or 2
  bool new_component = false;  // exactly when new_vertices == 2
};

enum class HorizonKind { Steps, Time, Arrivals };

struct Horizon {
  HorizonKind kind = HorizonKind::Steps;
  double value = 0.0;  // step / arrival count, or time T (may be +inf)
};

/// How continuous-time runs generate arrivals.
///   FirstArrival: one Exp(mu_e) time per support edge; each edge at most once.
///   FullPoisson:  every arrival of every per-edge Poisson stream, parallel
///                 edges re-emitted with new_vertices = 0.
enum class StreamMode { FirstArrival, FullPoisson };

struct Trajectory {
  std::vector<ArrivalEvent> events;
  Horizon horizon;
  StreamMode mode = StreamMode::FirstArrival;
  std::uint64_t seed = 0;
};

/// n_steps i.i.d. draws from the (normalized) truncated measure.
Trajectory run_discrete(const MeasureSpec& spec, std::uint64_t n_steps, Stream& rng);

/// Arrivals in [0, horizon_t]. FirstArrival accepts horizon_t = +inf (all
/// support edges arrive); FullPoisson needs a finite horizon.
Trajectory run_continuous(const MeasureSpec& spec, double horizon_t, Stream& rng,
                          StreamMode mode = StreamMode::FirstArrival);

/// First n arrivals of the per-edge Poisson streams; the edge-order law
/// matches run_discrete(spec, n).
Trajectory depoissonize(const MeasureSpec& spec, std::uint64_t n, Stream& rng);

/// Columns: index,time,i,j,new_vertices,new_component
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace eeg
