#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "eeg/disjoint_sets.hpp"
#include "eeg/edge.hpp"
#include "eeg/process.hpp"

namespace eeg {

struct ApplyResult {
  int new_vertices = 0;
  bool new_component = false;
};

struct Connectivity {
  bool connected = false;
  bool empty = true;  // no edge applied yet; connected is false then
};

struct EssentialCompleteness {
  bool essentially_complete = false;
  // Vertex set is {1..m} and the whole graph is complete (no distinct extra
  // vertex). Such graphs also meet the definition with n = m - 1.
  bool exact_prefix = false;
  VertexId n = 0;  // the n of V = {1..n, n+1} when essentially complete
};

/// Evolving simple graph under edge arrivals. Parallel edges are identified;
/// their multiplicities are kept only when requested.
class GraphState {
 public:
  explicit GraphState(bool track_multiplicities = false)
      : track_multiplicities_(track_multiplicities) {}

  ApplyResult apply(const Edge& e);

  Connectivity connectivity() const noexcept {
    return {vertex_count_ > 0 && components_ == 1, vertex_count_ == 0};
  }
  bool is_connected() const noexcept { return connectivity().connected; }
  EssentialCompleteness essential_completeness() const;

  bool has_vertex(VertexId v) const noexcept { return v < seen_.size() && seen_[v] != 0; }
  bool has_edge(const Edge& e) const { return edges_.contains(e.key()); }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t components() const noexcept { return components_; }
  std::uint64_t i_event_count() const noexcept { return i_events_; }
  std::uint64_t multiplicity(const Edge& e) const;
  VertexId max_vertex() const noexcept { return max_vertex_; }

  std::vector<VertexId> vertices() const;

 private:
  void ensure(VertexId v);

  bool track_multiplicities_;
  std::vector<char> seen_;
  DisjointSets dsu_;
  std::unordered_set<std::uint64_t> edges_;
  std::unordered_map<std::uint64_t, std::uint64_t> multiplicity_;
  std::vector<std::size_t> edges_by_max_;  // simple edges keyed by max endpoint
  std::size_t vertex_count_ = 0;
  std::size_t components_ = 0;
  std::uint64_t i_events_ = 0;
  VertexId max_vertex_ = 0;
};

struct Snapshot {
  std::uint64_t index = 0;
  double time = 0.0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t components = 0;
  std::uint64_t i_events = 0;
};

/// Per-event (|V|, |E|, components, I-event count) after each arrival.
std::vector<Snapshot> replay(const Trajectory& traj);

/// Columns: index,time,vertices,edges,components,i_events
void write_snapshots_csv(std::ostream& os, const std::vector<Snapshot>& snaps);

}  // namespace eeg
