#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "eeg/measure.hpp"

namespace eeg::testing {

// Random explicit spec with `edges` distinct edges on {1..vertices}, masses
// uniform on (0.05, 1], normalized.
inline MeasureSpec random_spec(std::mt19937_64& gen, std::size_t edges, VertexId vertices) {
  std::uniform_int_distribution<VertexId> pick(1, vertices);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::set<Edge> chosen;
  const std::size_t cap = static_cast<std::size_t>(vertices) * (vertices - 1) / 2;
  edges = std::min(edges, cap);
  while (chosen.size() < edges) {
    const VertexId a = pick(gen);
    const VertexId b = pick(gen);
    if (a != b) chosen.insert(Edge(a, b));
  }
  std::vector<WeightedEdge> list;
  for (const Edge& e : chosen) list.push_back({e, weight(gen)});
  return MeasureSpec::explicit_edges(std::move(list)).normalized();
}

inline MeasureSpec triangle() {
  return MeasureSpec::explicit_edges({{Edge(1, 2), 1.0}, {Edge(1, 3), 1.0}, {Edge(2, 3), 1.0}})
      .normalized();
}

inline MeasureSpec path4() {
  return MeasureSpec::explicit_edges({{Edge(1, 2), 1.0}, {Edge(2, 3), 1.0}, {Edge(3, 4), 1.0}})
      .normalized();
}

}  // namespace eeg::testing
