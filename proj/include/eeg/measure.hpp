#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eeg/edge.hpp"
#include "eeg/rng.hpp"

namespace eeg {

enum class Family {
  PowerLawProduct,  // mu_ij ∝ (ij)^-gamma
  FirstRank,        // mu_ij = sigma_i sigma_j, i != j
  FactorialMax,     // mu_ij ∝ (max(i,j)!)^-4
  DoubleExp,        // mu_ij ∝ exp(-3^i) exp(-3^j)
  IsolatedEdges,    // pairwise vertex-disjoint edges {2k-1, 2k}
  Explicit,         // listed (edge, mass) pairs
};

std::string_view family_name(Family f) noexcept;

struct WeightedEdge {
  Edge edge;
  double mass = 0.0;
};

struct Neighbor {
  VertexId vertex = 0;
  double mass = 0.0;
};

/// Vertex marginals M_i = sum_j mu_ij, indexed by vertex id (slot 0 unused).
struct Marginals {
  std::vector<double> M;
  double total = 0.0;

  double operator[](VertexId v) const noexcept {
    return v < M.size() ? M[v] : 0.0;
  }
};

/// Walker/Vose alias table over a finite list of non-negative weights.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::span<const double> weights);

  std::size_t sample(Stream& rng) const;
  std::size_t size() const noexcept { return accept_.size(); }
  bool empty() const noexcept { return accept_.empty(); }

 private:
  std::vector<double> accept_;
  std::vector<std::uint32_t> alias_;
};

/// Finitely truncated edge measure on the vertex window {1..n_max}.
///
/// Immutable after construction; copies share storage and may be read from
/// any number of threads. The support holds only positive-mass edges, sorted
/// by (i, j).
class MeasureSpec {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static MeasureSpec power_law_product(double gamma, VertexId n_max);
  static MeasureSpec first_rank(std::vector<double> sigma);
  /// sigma_i = i^-power on {1..n_max}.
  static MeasureSpec first_rank_power(double power, VertexId n_max);
  static MeasureSpec factorial_max(VertexId n_max);
  static MeasureSpec double_exp(VertexId n_max);
  /// Edge k (1-based) is {2k-1, 2k} with mass weights[k-1].
  static MeasureSpec isolated_edges(std::vector<double> weights);
  static MeasureSpec explicit_edges(std::vector<WeightedEdge> edges);

  /// Rescaled copy with unit total mass. Returns *this if already normalized.
  MeasureSpec normalized() const;

  Family family() const noexcept;
  std::string_view family_label() const noexcept { return family_name(family()); }
  double gamma() const noexcept;
  VertexId n_max() const noexcept;
  bool is_normalized() const noexcept;
  double total_mass() const noexcept;

  /// Upper bound on the mass this family places outside the window, on the
  /// same scale as the stored masses. Zero for finitely listed families.
  double discarded_mass_bound() const noexcept;

  std::span<const Edge> support() const noexcept;
  std::span<const double> support_masses() const noexcept;
  std::span<const Neighbor> neighbors(VertexId v) const noexcept;
  std::size_t index_of(const Edge& e) const noexcept;

  /// mu_e; zero off the truncated support.
  double mass(const Edge& e) const noexcept;
  const Marginals& marginals() const noexcept;
  double marginal(VertexId v) const noexcept { return marginals()[v]; }
  /// M_e = M_i + M_j - mu_ij.
  double edge_mass(const Edge& e) const noexcept;

  /// Draws a support edge with probability mu_e / total_mass.
  Edge sample_edge(Stream& rng) const;
  std::size_t sample_index(Stream& rng) const;

  /// The list parameter the measure was built from (sigma for FirstRank,
  /// per-pair weights for IsolatedEdges); empty otherwise.
  std::span<const double> list_parameter() const noexcept;

 private:
  struct Data;
  explicit MeasureSpec(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static MeasureSpec build(Family family, double gamma,
                           std::vector<WeightedEdge> edges, VertexId n_max,
                           double discarded, std::vector<double> list_param,
                           bool normalized);

  std::shared_ptr<const Data> data_;
};

enum class SupportConnectivity { ConnectedOnTruncation, Disconnected };

struct SupportVerdict {
  SupportConnectivity verdict = SupportConnectivity::Disconnected;
  VertexId window = 0;       // the truncation the verdict is relative to
  std::size_t components = 0;

  bool connected() const noexcept {
    return verdict == SupportConnectivity::ConnectedOnTruncation;
  }
};

SupportVerdict support_connected(const MeasureSpec& spec);

}  // namespace eeg
