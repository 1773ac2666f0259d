#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>

namespace eeg {

using VertexId = std::uint32_t;

/// Unordered pair of distinct positive vertex ids, stored with i < j.
class Edge {
 public:
  Edge() = default;

  /// Canonicalizes {a, b}; throws InputError for a == b or a non-positive id.
  Edge(long long a, long long b);

  VertexId i() const noexcept { return i_; }
  VertexId j() const noexcept { return j_; }

  bool contains(VertexId v) const noexcept { return v == i_ || v == j_; }

  /// The endpoint that is not `v`. `v` must be an endpoint.
  VertexId other(VertexId v) const noexcept { return v == i_ ? j_ : i_; }

  std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(i_) << 32) | j_;
  }

  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;

 private:
  VertexId i_ = 0;
  VertexId j_ = 0;
};

/// |e ∩ f| in {0, 1, 2}.
int shared_vertices(const Edge& e, const Edge& f) noexcept;

std::ostream& operator<<(std::ostream& os, const Edge& e);

}  // namespace eeg

template <>
struct std::hash<eeg::Edge> {
  std::size_t operator()(const eeg::Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}(e.key());
  }
};
