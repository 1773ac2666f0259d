#include "eeg/graph_state.hpp"

#include <ostream>

#include "eeg/report.hpp"

namespace eeg {

void GraphState::ensure(VertexId v) {
  if (v >= seen_.size()) {
    const std::size_t n = std::max<std::size_t>(static_cast<std::size_t>(v) + 1, 2 * seen_.size());
    seen_.resize(n, 0);
    edges_by_max_.resize(n, 0);
    dsu_.grow(n);
  }
}

ApplyResult GraphState::apply(const Edge& e) {
  ensure(e.j());
  ApplyResult r;
  for (VertexId v : {e.i(), e.j()}) {
    if (!seen_[v]) {
      seen_[v] = 1;
      ++vertex_count_;
      ++components_;
      ++r.new_vertices;
      if (v > max_vertex_) max_vertex_ = v;
    }
  }
  if (dsu_.unite(e.i(), e.j())) --components_;
  r.new_component = r.new_vertices == 2;
  if (r.new_component) ++i_events_;
  if (edges_.insert(e.key()).second) ++edges_by_max_[e.j()];
  if (track_multiplicities_) ++multiplicity_[e.key()];
  return r;
}

std::uint64_t GraphState::multiplicity(const Edge& e) const {
  if (!track_multiplicities_) return has_edge(e) ? 1 : 0;
  const auto it = multiplicity_.find(e.key());
  return it == multiplicity_.end() ? 0 : it->second;
}

EssentialCompleteness GraphState::essential_completeness() const {
  EssentialCompleteness out;
  if (!is_connected()) return out;
  const std::size_t m = max_vertex_;
  if (vertex_count_ != m) return out;  // vertex set is not {1..m}
  // Induced subgraph on {1..m-1}: every simple edge with max endpoint < m.
  std::size_t inner = 0;
  for (std::size_t k = 2; k < m; ++k) inner += edges_by_max_[k];
  const std::size_t need = (m - 1) * (m - 2) / 2;
  if (inner != need) return out;
  out.essentially_complete = true;
  out.n = static_cast<VertexId>(m - 1);
  out.exact_prefix = edges_by_max_[m] == m - 1;
  return out;
}

std::vector<VertexId> GraphState::vertices() const {
  std::vector<VertexId> out;
  out.reserve(vertex_count_);
  for (std::size_t v = 0; v < seen_.size(); ++v) {
    if (seen_[v]) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

std::vector<Snapshot> replay(const Trajectory& traj) {
  std::vector<Snapshot> out;
  out.reserve(traj.events.size());
  GraphState g;
  for (const auto& ev : traj.events) {
    g.apply(ev.edge);
    out.push_back({ev.index, ev.time, g.vertex_count(), g.edge_count(), g.components(),
                   g.i_event_count()});
  }
  return out;
}

void write_snapshots_csv(std::ostream& os, const std::vector<Snapshot>& snaps) {
  os << "index,time,vertices,edges,components,i_events\n";
  for (const auto& s : snaps) {
    os << s.index << ',' << format_real(s.time) << ',' << s.vertices << ',' << s.edges << ','
       << s.components << ',' << s.i_events << '\n';
  }
}

}  // namespace eeg
