#include "eeg/measure.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>

#include "eeg/disjoint_sets.hpp"
#include "eeg/errors.hpp"

namespace eeg {

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::PowerLawProduct: return "power_law_product";
    case Family::FirstRank: return "first_rank";
    case Family::FactorialMax: return "factorial_max";
    case Family::DoubleExp: return "double_exp";
    case Family::IsolatedEdges: return "isolated_edges";
    case Family::Explicit: return "explicit";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// AliasTable

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw ConfigError("alias table: empty weight list");
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("alias table: too many outcomes");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InputError("alias table: weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw ConfigError("alias table: zero total mass");

  accept_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t k = 0; k < n; ++k) {
    scaled[k] = weights[k] * static_cast<double>(n) / total;
    (scaled[k] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(k));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::uint32_t k : large) {
    accept_[k] = 1.0;
    alias_[k] = k;
  }
  for (std::uint32_t k : small) {
    accept_[k] = 1.0;
    alias_[k] = k;
  }
}

std::size_t AliasTable::sample(Stream& rng) const {
  const double x = rng.uniform() * static_cast<double>(accept_.size());
  std::size_t k = static_cast<std::size_t>(x);
  if (k >= accept_.size()) k = accept_.size() - 1;
  const double frac = x - static_cast<double>(k);
  return frac < accept_[k] ? k : alias_[k];
}

// ---------------------------------------------------------------------------
// MeasureSpec

struct MeasureSpec::Data {
  Family family = Family::Explicit;
  double gamma = 0.0;
  VertexId n_max = 0;
  bool normalized = false;
  double total = 0.0;
  double discarded = 0.0;
  std::vector<Edge> edges;
  std::vector<double> masses;
  std::vector<std::size_t> nbr_offset;
  std::vector<Neighbor> nbrs;
  Marginals marginals;
  AliasTable alias;
  std::vector<double> list_param;
};

namespace {

void require_normal_mass(double m, std::string_view family, VertexId n_max) {
  if (!(m >= DBL_MIN)) {
    std::ostringstream os;
    os << family << ": n_max=" << n_max
       << " puts edge masses below double precision range";
    throw ConfigError(os.str());
  }
}

}  // namespace

MeasureSpec MeasureSpec::build(Family family, double gamma,
                               std::vector<WeightedEdge> listed, VertexId n_max,
                               double discarded, std::vector<double> list_param,
                               bool normalized) {
  for (const auto& we : listed) {
    if (!std::isfinite(we.mass) || we.mass < 0.0) {
      std::ostringstream os;
      os << "edge " << we.edge << ": mass must be finite and non-negative";
      throw InputError(os.str());
    }
  }
  std::sort(listed.begin(), listed.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.edge < b.edge; });
  for (std::size_t k = 1; k < listed.size(); ++k) {
    if (listed[k].edge == listed[k - 1].edge) {
      std::ostringstream os;
      os << "edge " << listed[k].edge << " listed more than once";
      throw InputError(os.str());
    }
  }

  auto d = std::make_shared<Data>();
  d->family = family;
  d->gamma = gamma;
  d->discarded = discarded;
  d->list_param = std::move(list_param);
  VertexId top = n_max;
  for (const auto& we : listed) {
    top = std::max(top, we.edge.j());
    if (we.mass > 0.0) {
      d->edges.push_back(we.edge);
      d->masses.push_back(we.mass);
    }
  }
  d->n_max = top;
  if (d->edges.empty()) throw ConfigError("measure has zero total mass");

  double total = 0.0;
  for (double m : d->masses) total += m;
  d->total = total;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw ConfigError("measure total mass must be finite and positive");
  }

  const std::size_t nv = static_cast<std::size_t>(top) + 1;
  d->marginals.M.assign(nv, 0.0);
  std::vector<std::size_t> degree(nv, 0);
  for (std::size_t k = 0; k < d->edges.size(); ++k) {
    const Edge& e = d->edges[k];
    d->marginals.M[e.i()] += d->masses[k];
    d->marginals.M[e.j()] += d->masses[k];
    ++degree[e.i()];
    ++degree[e.j()];
  }
  for (double m : d->marginals.M) d->marginals.total += m;

  d->nbr_offset.assign(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) d->nbr_offset[v + 1] = d->nbr_offset[v] + degree[v];
  d->nbrs.resize(d->nbr_offset[nv]);
  std::vector<std::size_t> cursor(d->nbr_offset.begin(), d->nbr_offset.end() - 1);
  for (std::size_t k = 0; k < d->edges.size(); ++k) {
    const Edge& e = d->edges[k];
    d->nbrs[cursor[e.i()]++] = Neighbor{e.j(), d->masses[k]};
    d->nbrs[cursor[e.j()]++] = Neighbor{e.i(), d->masses[k]};
  }
  // Edges are sorted by (i, j), so every neighbor list comes out ascending.

  d->alias = AliasTable(d->masses);
  d->normalized = normalized;
  if (normalized && std::abs(total - 1.0) > 1e-12) {
    throw InvariantViolation("normalized measure total deviates from 1");
  }
  return MeasureSpec(std::move(d));
}

MeasureSpec MeasureSpec::power_law_product(double gamma, VertexId n_max) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ConfigError("power_law_product: gamma must be a finite real > 1");
  }
  if (n_max < 2) throw ConfigError("power_law_product: n_max must be at least 2");
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n_max) * (n_max - 1) / 2);
  for (VertexId i = 1; i < n_max; ++i) {
    for (VertexId j = i + 1; j <= n_max; ++j) {
      edges.push_back({Edge(i, j), std::pow(static_cast<double>(i) * j, -gamma)});
    }
  }
  require_normal_mass(edges.back().mass, "power_law_product", n_max);
  // sum_{max(i,j) > n} (ij)^-g <= zeta(g) * int_n^inf x^-g dx
  const double tail =
      std::riemann_zeta(gamma) * std::pow(static_cast<double>(n_max), 1.0 - gamma) /
      (gamma - 1.0);
  return build(Family::PowerLawProduct, gamma, std::move(edges), n_max, tail, {}, false);
}

MeasureSpec MeasureSpec::first_rank(std::vector<double> sigma) {
  if (sigma.size() < 2) throw ConfigError("first_rank: sigma needs at least two entries");
  for (double s : sigma) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ConfigError("first_rank: sigma entries must be finite and non-negative");
    }
  }
  const auto n = static_cast<VertexId>(sigma.size());
  std::vector<WeightedEdge> edges;
  for (VertexId i = 1; i < n; ++i) {
    for (VertexId j = i + 1; j <= n; ++j) {
      const double m = sigma[i - 1] * sigma[j - 1];
      if (m > 0.0) edges.push_back({Edge(i, j), m});
    }
  }
  return build(Family::FirstRank, 0.0, std::move(edges), n, 0.0, std::move(sigma), false);
}

MeasureSpec MeasureSpec::first_rank_power(double power, VertexId n_max) {
  if (!std::isfinite(power)) throw ConfigError("first_rank: sigma_power must be finite");
  std::vector<double> sigma(n_max);
  for (VertexId i = 1; i <= n_max; ++i) sigma[i - 1] = std::pow(static_cast<double>(i), -power);
  return first_rank(std::move(sigma));
}

MeasureSpec MeasureSpec::factorial_max(VertexId n_max) {
  if (n_max < 2) throw ConfigError("factorial_max: n_max must be at least 2");
  auto log_mass = [](VertexId m) { return -4.0 * std::lgamma(static_cast<double>(m) + 1.0); };
  std::vector<WeightedEdge> edges;
  for (VertexId i = 1; i < n_max; ++i) {
    for (VertexId j = i + 1; j <= n_max; ++j) edges.push_back({Edge(i, j), std::exp(log_mass(j))});
  }
  require_normal_mass(std::exp(log_mass(n_max)), "factorial_max", n_max);
  // term(m) = (m-1)(m!)^-4 over blocks m > n; consecutive ratio <= 2 (n+2)^-4.
  const double first = static_cast<double>(n_max) * std::exp(log_mass(n_max + 1));
  const double rho = 2.0 * std::pow(static_cast<double>(n_max) + 2.0, -4.0);
  return build(Family::FactorialMax, 0.0, std::move(edges), n_max, first / (1.0 - rho), {}, false);
}

MeasureSpec MeasureSpec::double_exp(VertexId n_max) {
  if (n_max < 2) throw ConfigError("double_exp: n_max must be at least 2");
  auto pow3 = [](VertexId k) { return std::pow(3.0, static_cast<double>(k)); };
  if (n_max > 5) {
    throw ConfigError("double_exp: n_max=" + std::to_string(n_max) +
                      " puts edge masses below double precision range (max 5)");
  }
  std::vector<WeightedEdge> edges;
  double s = 0.0;
  for (VertexId i = 1; i <= n_max; ++i) s += std::exp(-pow3(i));
  for (VertexId i = 1; i < n_max; ++i) {
    for (VertexId j = i + 1; j <= n_max; ++j) {
      edges.push_back({Edge(i, j), std::exp(-(pow3(i) + pow3(j)))});
    }
  }
  require_normal_mass(edges.back().mass, "double_exp", n_max);
  // sum_{j > n} e^{-3^j} sum_{i<j} e^{-3^i} <= S e^{-3^{n+1}} / (1 - e^{-2 3^{n+1}})
  const double next = pow3(n_max + 1);
  const double tail = (s + std::exp(-next)) * std::exp(-next) / (1.0 - std::exp(-2.0 * next));
  return build(Family::DoubleExp, 0.0, std::move(edges), n_max, tail, {}, false);
}

MeasureSpec MeasureSpec::isolated_edges(std::vector<double> weights) {
  if (weights.empty()) throw ConfigError("isolated_edges: weights must be non-empty");
  std::vector<WeightedEdge> edges;
  edges.reserve(weights.size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const auto a = static_cast<long long>(2 * k + 1);
    edges.push_back({Edge(a, a + 1), weights[k]});
  }
  const auto n = static_cast<VertexId>(2 * weights.size());
  return build(Family::IsolatedEdges, 0.0, std::move(edges), n, 0.0, std::move(weights), false);
}

MeasureSpec MeasureSpec::explicit_edges(std::vector<WeightedEdge> edges) {
  if (edges.empty()) throw ConfigError("explicit: edge list must be non-empty");
  return build(Family::Explicit, 0.0, std::move(edges), 0, 0.0, {}, false);
}

MeasureSpec MeasureSpec::normalized() const {
  if (data_->normalized) return *this;
  const double z = data_->total;
  std::vector<WeightedEdge> scaled;
  scaled.reserve(data_->edges.size());
  for (std::size_t k = 0; k < data_->edges.size(); ++k) {
    scaled.push_back({data_->edges[k], data_->masses[k] / z});
  }
  return build(data_->family, data_->gamma, std::move(scaled), data_->n_max,
               data_->discarded / z, data_->list_param, true);
}

Family MeasureSpec::family() const noexcept { return data_->family; }
double MeasureSpec::gamma() const noexcept { return data_->gamma; }
VertexId MeasureSpec::n_max() const noexcept { return data_->n_max; }
bool MeasureSpec::is_normalized() const noexcept { return data_->normalized; }
double MeasureSpec::total_mass() const noexcept { return data_->total; }
double MeasureSpec::discarded_mass_bound() const noexcept { return data_->discarded; }
std::span<const Edge> MeasureSpec::support() const noexcept { return data_->edges; }
std::span<const double> MeasureSpec::support_masses() const noexcept { return data_->masses; }
const Marginals& MeasureSpec::marginals() const noexcept { return data_->marginals; }
std::span<const double> MeasureSpec::list_parameter() const noexcept { return data_->list_param; }

std::span<const Neighbor> MeasureSpec::neighbors(VertexId v) const noexcept {
  if (static_cast<std::size_t>(v) + 1 >= data_->nbr_offset.size()) return {};
  const auto b = data_->nbr_offset[v];
  const auto e = data_->nbr_offset[v + 1];
  return std::span<const Neighbor>(data_->nbrs).subspan(b, e - b);
}

std::size_t MeasureSpec::index_of(const Edge& e) const noexcept {
  const auto it = std::lower_bound(data_->edges.begin(), data_->edges.end(), e);
  if (it == data_->edges.end() || *it != e) return npos;
  return static_cast<std::size_t>(it - data_->edges.begin());
}

double MeasureSpec::mass(const Edge& e) const noexcept {
  const std::size_t k = index_of(e);
  return k == npos ? 0.0 : data_->masses[k];
}

double MeasureSpec::edge_mass(const Edge& e) const noexcept {
  return marginal(e.i()) + marginal(e.j()) - mass(e);
}

std::size_t MeasureSpec::sample_index(Stream& rng) const { return data_->alias.sample(rng); }

Edge MeasureSpec::sample_edge(Stream& rng) const { return data_->edges[sample_index(rng)]; }

SupportVerdict support_connected(const MeasureSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.n_max()) + 1;
  DisjointSets dsu(n);
  std::vector<char> present(n, 0);
  for (const Edge& e : spec.support()) {
    present[e.i()] = present[e.j()] = 1;
    dsu.unite(e.i(), e.j());
  }
  std::size_t roots = 0;
  for (std::uint32_t v = 1; v < n; ++v) {
    if (present[v] && dsu.find(v) == v) ++roots;
  }
  SupportVerdict out;
  out.window = spec.n_max();
  out.components = roots;
  out.verdict = roots == 1 ? SupportConnectivity::ConnectedOnTruncation
                           : SupportConnectivity::Disconnected;
  return out;
}

}  // namespace eeg
