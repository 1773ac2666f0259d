// Acceptance run: one PASS/FAIL line per criterion, exit 1 when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "eeg/analytic.hpp"
#include "eeg/coupling.hpp"
#include "eeg/graph_state.hpp"
#include "eeg/montecarlo.hpp"
#include "eeg/parallel.hpp"
#include "eeg/process.hpp"
#include "eeg/stats.hpp"
#include "eeg/urns.hpp"

using namespace eeg;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSeed = 20240601;

// Pinned tolerances.
constexpr double kSigma3 = 3.0;
constexpr double kRounding = 1e-12;
constexpr double kSigma4 = 4.0;
constexpr double kPlateauHigh = 0.95;
constexpr double kAuditTol = 1e-12;
constexpr double kCouplingKs = 0.05;
constexpr double kCouplingAgree = 0.95;
constexpr double kCltKs = 0.05;
constexpr double kCltNoise = 0.01;
constexpr double kRespectTol = 1e-10;
constexpr double kEcFrequency = 0.80;
constexpr double kEcLastDeficit = 0.01;
constexpr double kDepoissonL1 = 0.02;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

int failures = 0;

void report(int id, const char* name, Outcome& o) {
  std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

MeasureSpec random_spec(std::mt19937_64& gen, std::size_t edges, VertexId vertices) {
  std::uniform_int_distribution<VertexId> pick(1, vertices);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::set<Edge> chosen;
  while (chosen.size() < edges) {
    const VertexId a = pick(gen), b = pick(gen);
    if (a != b) chosen.insert(Edge(a, b));
  }
  std::vector<WeightedEdge> list;
  for (const Edge& e : chosen) list.push_back({e, weight(gen)});
  return MeasureSpec::explicit_edges(std::move(list)).normalized();
}

MeasureSpec listed(std::vector<std::pair<int, int>> edges) {
  std::vector<WeightedEdge> list;
  for (auto [a, b] : edges) list.push_back({Edge(a, b), 1.0});
  return MeasureSpec::explicit_edges(std::move(list)).normalized();
}

void criterion1() {
  Outcome o;
  const MeasureSpec tri = listed({{1, 2}, {1, 3}, {2, 3}});
  const std::size_t n = 100000;
  const EstimateReport r =
      estimate_event(tri, {EventKind::IeOccurs, Edge(1, 2), Edge()}, kInf, n, kSeed);
  const double sigma = binomial_std_error(1.0 / 3, n);
  const double z = (r.estimate - 1.0 / 3) / sigma;
  o.pass = std::abs(z) <= kSigma3;
  o.detail << "estimate " << r.estimate << " target 1/3 z " << z;
  report(1, "I-event probability on the triangle", o);
}

void criterion2() {
  Outcome o;
  const MeasureSpec path = listed({{1, 2}, {2, 3}, {3, 4}});
  const std::size_t n = 100000;
  const double target = prob_joint_new_components(path, Edge(1, 2), Edge(3, 4));
  const EstimateReport r =
      estimate_event(path, {EventKind::IeAndIf, Edge(1, 2), Edge(3, 4)}, kInf, n, kSeed);
  const double z = (r.estimate - 1.0 / 3) / binomial_std_error(1.0 / 3, n);
  const EstimateReport share =
      estimate_event(path, {EventKind::IeAndIf, Edge(1, 2), Edge(2, 3)}, kInf, n, kSeed + 1);
  o.pass = std::abs(target - 1.0 / 3) < 1e-15 && std::abs(z) <= kSigma3 && share.hits == 0;
  o.detail << "closed form " << target << " estimate " << r.estimate << " z " << z
           << ", sharing pair hits " << share.hits;
  report(2, "joint I-event probability on the path", o);
}

void criterion3() {
  Outcome o;
  std::mt19937_64 gen(kSeed);
  std::uniform_int_distribution<std::size_t> size(2, 10);
  std::size_t pairs = 0, violations = 0;
  double lo = kInf, hi = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const MeasureSpec s = random_spec(gen, size(gen), 8);
    const auto edges = s.support();
    for (std::size_t a = 0; a < edges.size(); ++a) {
      for (std::size_t b = a + 1; b < edges.size(); ++b) {
        if (shared_vertices(edges[a], edges[b]) != 0) continue;
        const double r = joint_ratio(s, edges[a], edges[b]).ratio;
        ++pairs;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        if (!(r > 0.5 && r <= 1.0 + kRounding)) ++violations;
      }
    }
  }
  o.pass = pairs > 0 && violations == 0;
  o.detail << pairs << " pairs, ratio range [" << lo << ", " << hi << "], violations "
           << violations;
  report(3, "joint ratio in (1/2, 1]", o);
}

void criterion4() {
  Outcome o;
  std::vector<double> grid;
  for (int k = 1; k <= 50; ++k) grid.push_back(k);
  const std::size_t n = 1000;
  const MeasureSpec high = MeasureSpec::power_law_product(2.5, 200).normalized();
  const IEventGrowth gh = i_event_growth(high, grid, n, kSeed);
  const auto conn = connected_frequency_curve(high, grid, n, kSeed);
  const double conn_end = conn.back().value;

  const MeasureSpec low = MeasureSpec::power_law_product(1.5, 200).normalized();
  const IEventGrowth gl = i_event_growth(low, grid, n, kSeed);
  const MeasureSpec low2 = MeasureSpec::power_law_product(1.5, 400).normalized();
  const IEventGrowth gl2 = i_event_growth(low2, grid, n, kSeed);
  const double last = gl.mean.back().value;
  const double before = gl.mean[gl.mean.size() - 2].value;
  const bool increasing = last > before && !gl.plateaued;
  const bool grows = gl2.mean.back().value > last;

  // Exact expected I-count, sum_e mu_e / M_e (1 - exp(-M_e t)), over the last quarter of the grid.
  auto expected_i = [&](double t) {
    double sum = 0.0;
    for (std::size_t k = 0; k < high.support().size(); ++k) {
      const double me = high.edge_mass(high.support()[k]);
      sum += high.support_masses()[k] / me * -std::expm1(-me * t);
    }
    return sum;
  };
  const double exact_rise = expected_i(50.0) / expected_i(37.0) - 1.0;

  o.pass = gh.plateaued && conn_end > kPlateauHigh && increasing && grows;
  o.detail << "gamma 2.5: tail rise " << gh.tail_relative_increase << " (exact " 
           << exact_rise << ") connected at 50 "
           << conn_end << "; gamma 1.5: tail rise " << gl.tail_relative_increase
           << " mean I-count " << last << " (window 200) vs " << gl2.mean.back().value
           << " (window 400)";
  report(4, "connectedness dichotomy proxy", o);
}

void criterion5() {
  Outcome o;
  std::mt19937_64 gen(kSeed + 5);
  const MeasureSpec single = listed({{1, 2}});
  const MeasureSpec twenty = random_spec(gen, 20, 12);
  const std::size_t n = 100000;
  double worst_mean = 0.0, worst_urn = 0.0;
  bool sandwiched = true;
  for (const MeasureSpec* s : {&single, &twenty}) {
    const std::vector<double> grid{0.5, 2.0, 8.0};
    const CountSamples c = sample_counts(*s, grid, n, kSeed);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const VarianceSandwich sw = variance_sandwich(*s, grid[k]);
      const Moments v = moments(c.vertices[k]);
      const Moments u = moments(c.urns[k]);
      const double mean_sd = std::sqrt(sw.exact / static_cast<double>(n));
      worst_mean = std::max(worst_mean, std::abs(v.mean - expected_vertices(*s, grid[k])) / mean_sd);
      const double urn_z = std::abs(u.variance - sw.lower) / variance_std_error(u);
      worst_urn = std::max(worst_urn, urn_z);
      const double slack = kSigma4 * variance_std_error(v);
      if (v.variance < sw.lower - slack || v.variance > sw.upper + sw.slack + slack) {
        sandwiched = false;
      }
    }
  }
  o.pass = worst_mean <= kSigma4 && worst_urn <= kSigma4 && sandwiched;
  o.detail << "max |z| mean " << worst_mean << ", urn variance " << worst_urn
           << ", vertex variance in sandwich " << (sandwiched ? "yes" : "no");
  report(5, "vertex and urn moment formulas", o);
}

void criterion6() {
  Outcome o;
  std::mt19937_64 gen(kSeed + 6);
  const std::size_t n = 100000;
  double worst_joint = 0.0, worst_zero = 0.0;
  std::size_t pairs = 0, above_bound = 0;
  for (int rep = 0; rep < 3; ++rep) {
    const MeasureSpec s = random_spec(gen, 20, 10);
    for (double t : {0.5, 2.0}) {
      const PairOccupancy occ = pair_occupancy(s, t, n, kSeed + rep);
      for (VertexId i = 1; i <= s.n_max(); ++i) {
        for (VertexId j = i + 1; j <= s.n_max(); ++j) {
          ++pairs;
          const double p = vertex_pair_joint(s, i, j, t);
          const double est = static_cast<double>(occ.both(i, j)) / n;
          worst_joint = std::max(worst_joint, std::abs(est - p) / binomial_std_error(p, n));
          const double pi = static_cast<double>(occ.single[i]) / n;
          const double pj = static_cast<double>(occ.single[j]) / n;
          const double cov = est - pi * pj;
          const double mu = s.mass(Edge(i, j));
          if (mu > 0.0) {
            const double bound = mu / (s.marginal(i) + s.marginal(j) - mu);
            if (!(cov < bound)) ++above_bound;
          } else {
            // The covariance vanishes; compare with its sampling spread.
            const double sd = std::sqrt(pi * (1 - pi) * pj * (1 - pj) / n);
            worst_zero = std::max(worst_zero, sd > 0.0 ? std::abs(cov) / sd : 0.0);
          }
        }
      }
    }
  }
  o.pass = worst_joint <= kSigma4 && above_bound == 0 && worst_zero <= kSigma4;
  o.detail << pairs << " pairs, max |z| joint " << worst_joint << ", covariances above mu/M "
           << above_bound << ", max |z| zero-mass pairs " << worst_zero;
  report(6, "pair covariance identity", o);
}

void criterion7() {
  Outcome o;
  std::mt19937_64 gen(kSeed + 7);
  double worst_audit = 0.0;
  std::size_t states = 0;
  const MeasureSpec specs[] = {random_spec(gen, 10, 7), random_spec(gen, 20, 10),
                               MeasureSpec::power_law_product(2.5, 12).normalized()};
  for (std::size_t si = 0; si < 3; ++si) {
    const MeasureSpec& s = specs[si];
    for (std::size_t r = 0; r < 1000; ++r) {
      Stream rng(stream_seed(kSeed, 0x7a0d17 + si, r));
      CouplingState st(s.n_max());
      const std::size_t steps = r % 40;
      for (std::size_t k = 0; k < steps; ++k) coupling_step(st, s, rng);
      for (VertexId i = 1; i <= s.n_max(); ++i) {
        if (st.in_u(i)) continue;
        worst_audit = std::max(worst_audit, std::abs(coupling_rate_audit(st, s, i) - s.marginal(i)));
      }
      ++states;
    }
  }

  const MeasureSpec s = MeasureSpec::power_law_product(2.5, 12).normalized();
  const std::size_t n = 10000;
  const double t = 10.0;
  const UrnScheme urns = UrnScheme::from_marginals(s);
  std::vector<double> coupled(n), direct(n);
  parallel_replicas(n, 0, [&](std::size_t r) {
    Stream a(stream_seed(kSeed, 0x7a0d20, r));
    coupled[r] = static_cast<double>(run_coupling(s, t, a).u_size());
    Stream b(stream_seed(kSeed, 0x7a0d21, r));
    direct[r] = static_cast<double>(occupied_at(run_urn(urns, t, b), t));
  });
  const double ks = ks_two_sample(coupled, direct);

  const MeasureSpec conn = MeasureSpec::power_law_product(2.5, 6).normalized();
  std::vector<char> agree(n, 0);
  parallel_replicas(n, 0, [&](std::size_t r) {
    Stream a(stream_seed(kSeed, 0x7a0d22, r));
    agree[r] = run_coupling(conn, 50.0, a).v_equals_u();
  });
  const double freq =
      static_cast<double>(std::count(agree.begin(), agree.end(), 1)) / static_cast<double>(n);

  o.pass = worst_audit <= kAuditTol && ks < kCouplingKs && freq > kCouplingAgree;
  o.detail << states << " states, max audit error " << worst_audit << ", KS coupled vs urns "
           << ks << ", V=U frequency at t=50 " << freq;
  report(7, "coupling audit and marginals", o);
}

void criterion8() {
  Outcome o;
  struct Case {
    const char* label;
    MeasureSpec spec;
    std::vector<double> grid;
  };
  const Case cases[] = {
      {"isolated edges", MeasureSpec::isolated_edges(std::vector<double>(400, 1.0)).normalized(),
       {150.0, 210.0, 400.0 * std::log(2.0)}},
      {"first rank", MeasureSpec::first_rank_power(2.0, 500).normalized(), {1600.0, 3200.0, 6400.0}},
      {"power law", MeasureSpec::power_law_product(2.5, 500).normalized(), {2e4, 5e4, 1e5}},
  };
  bool pass = true;
  for (const Case& c : cases) {
    const auto sweep = clt_sweep(c.spec, c.grid, 4000, kSeed, 0);
    o.detail << c.label << " KS";
    bool below = true;
    for (const auto& r : sweep) {
      o.detail << ' ' << r.ks_statistic;
      below = below && r.ks_statistic < kCltKs;
    }
    const bool monotone = ks_non_increasing(sweep, kCltNoise);
    o.detail << (below && monotone ? "; " : " [out of tolerance]; ");
    pass = pass && below && monotone;
  }
  o.pass = pass;
  report(8, "standardized vertex counts are near normal", o);
}

void criterion9() {
  Outcome o;
  std::mt19937_64 gen(kSeed + 9);
  std::uniform_int_distribution<std::size_t> size(1, 8);
  std::uniform_real_distribution<double> log10_rate(-2.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> block(size(gen));
    for (double& l : block) l = std::pow(10.0, log10_rate(gen));
    const double tail = std::pow(10.0, log10_rate(gen));
    worst = std::max(worst, std::abs(respect_factor_subsets(block, tail) -
                                     respect_factor_quadrature(block, tail)));
  }
  std::size_t inexact = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const double l = std::pow(10.0, log10_rate(gen));
    const double tail = std::pow(10.0, log10_rate(gen));
    const std::vector<double> one{l};
    if (respect_factor(one, tail) != l / (tail + l)) ++inexact;
  }
  o.pass = worst <= kRespectTol && inexact == 0;
  o.detail << "max |subsets - quadrature| " << worst << ", single-urn mismatches " << inexact;
  report(9, "respect factor routes", o);
}

void criterion10() {
  Outcome o;
  const RespectReport geo = urns_in_order(UrnSequence::geometric(0.5), 40);
  bool exact = true;
  for (std::size_t n = 0; n < geo.partial_products.size(); ++n) {
    exact = exact && geo.partial_products[n] == std::ldexp(1.0, -static_cast<int>(n + 1));
  }
  const RespectReport dexp = urns_in_order(UrnSequence::double_exponential(), 10);
  const auto& pp = dexp.partial_products;
  const bool stable = pp.back() > 0.0 && pp.back() == pp[pp.size() - 2];
  double worst = 0.0;
  for (std::size_t k = 1; k <= 6; ++k) {
    const InOrderEstimate est =
        simulate_urns_in_order(UrnSequence::geometric(0.5), k, 100000, kSeed, 0);
    worst = std::max(worst, std::abs(est.frequency - est.target) /
                                binomial_std_error(est.target, est.replicas));
  }
  o.pass = exact && stable && worst <= kSigma3;
  o.detail << "geometric 2^-N exact " << (exact ? "yes" : "no") << ", double exponential product "
           << pp.back() << ", max |z| k<=6 " << worst;
  report(10, "urns filled in order", o);
}

void criterion11() {
  Outcome o;
  const MeasureSpec fm = MeasureSpec::factorial_max(8).normalized();
  const RespectReport fp = essential_completeness_product(fm, 20);
  bool stabilizes = fp.partial_product > 0.0 && 1.0 - fp.factors.back() < kEcLastDeficit;
  for (std::size_t k = 1; k < fp.factors.size(); ++k) {
    stabilizes = stabilizes && 1.0 - fp.factors[k] < 1.0 - fp.factors[k - 1];
  }
  const EventDescriptor ec{EventKind::EssentiallyCompleteAt, Edge(), Edge()};
  const EstimateReport fe = estimate_event(fm, ec, 50.0, 1000, kSeed);

  std::vector<double> products, freqs;
  for (VertexId w : {4u, 8u, 16u, 32u}) {
    const MeasureSpec s = MeasureSpec::power_law_product(2.5, w).normalized();
    products.push_back(essential_completeness_product(s, w).partial_product);
    freqs.push_back(estimate_event(s, ec, 50.0, 1000, kSeed).estimate);
  }
  bool decays = true;
  for (std::size_t k = 1; k < products.size(); ++k) {
    decays = decays && products[k] < products[k - 1] && freqs[k] <= freqs[k - 1];
  }
  decays = decays && freqs.back() < freqs.front();

  o.pass = stabilizes && fe.estimate >= kEcFrequency && decays;
  o.detail << "factorial product " << fp.partial_product << " last deficit "
           << 1.0 - fp.factors.back() << " frequency " << fe.estimate
           << "; power law windows 4..32 products";
  for (double p : products) o.detail << ' ' << p;
  o.detail << " frequencies";
  for (double f : freqs) o.detail << ' ' << f;
  report(11, "essential completeness", o);
}

void criterion12() {
  Outcome o;
  std::mt19937_64 gen(kSeed + 12);
  const std::pair<const char*, MeasureSpec> supports[] = {
      {"triangle", listed({{1, 2}, {1, 3}, {2, 3}})},
      {"path", listed({{1, 2}, {2, 3}, {3, 4}})},
      {"K4", listed({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})},
      {"random 10-edge", random_spec(gen, 10, 6)},
  };
  bool pass = true;
  for (const auto& [label, s] : supports) {
    o.detail << label << ":";
    for (std::uint64_t n = 1; n <= 3; ++n) {
      const DepoissonizationReport r = depoissonization_agreement(s, n, 100000, kSeed, 0);
      o.detail << " n=" << n << " L1 " << r.l1 << " (vs exact " << r.l1_stopped_exact << ")";
      pass = pass && r.l1 < kDepoissonL1;
    }
    o.detail << "; ";
  }
  o.pass = pass;
  report(12, "de-Poissonized edge order", o);
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  void (*criteria[])() = {criterion1, criterion2, criterion3,  criterion4,
                          criterion5, criterion6, criterion7,  criterion8,
                          criterion9, criterion10, criterion11, criterion12};
  // Optional arguments select criteria by number.
  std::vector<bool> run(12, argc == 1);
  for (int a = 1; a < argc; ++a) {
    const int id = std::atoi(argv[a]);
    if (id >= 1 && id <= 12) run[id - 1] = true;
  }
  for (int k = 0; k < 12; ++k) {
    if (run[k]) criteria[k]();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d failed, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
