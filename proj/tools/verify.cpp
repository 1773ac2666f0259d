#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "eeg/analytic.hpp"
#include "eeg/coupling.hpp"
#include "eeg/errors.hpp"
#include "eeg/montecarlo.hpp"
#include "eeg/parallel.hpp"
#include "eeg/report.hpp"
#include "eeg/stats.hpp"
#include "eeg/urns.hpp"

namespace eeg::cli {

namespace {

constexpr std::uint64_t kTagVerify = 0x766572696679ULL;

struct Outcome {
  bool pass = false;
  std::string detail;
};

MeasureSpec random_spec(Stream& rng, VertexId window, std::size_t max_edges) {
  std::vector<WeightedEdge> edges;
  const std::size_t want = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_edges));
  for (std::size_t tries = 0; edges.size() < want && tries < 200; ++tries) {
    const auto a = 1 + static_cast<long long>(rng.uniform() * window);
    const auto b = 1 + static_cast<long long>(rng.uniform() * window);
    if (a == b) continue;
    const Edge e(a, b);
    if (std::any_of(edges.begin(), edges.end(), [&](const WeightedEdge& w) { return w.edge == e; })) continue;
    edges.push_back({e, 0.05 + rng.uniform()});
  }
  return MeasureSpec::explicit_edges(std::move(edges)).normalized();
}

MeasureSpec triangle() {
  return MeasureSpec::explicit_edges({{Edge(1, 2), 1.0}, {Edge(1, 3), 1.0}, {Edge(2, 3), 1.0}}).normalized();
}

MeasureSpec path4() {
  return MeasureSpec::explicit_edges({{Edge(1, 2), 1.0}, {Edge(2, 3), 1.0}, {Edge(3, 4), 1.0}}).normalized();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Outcome check_ie(std::size_t reps, std::uint64_t seed, unsigned threads) {
  const auto r = estimate_event(triangle(), {EventKind::IeOccurs, Edge(1, 2), {}},
                                std::numeric_limits<double>::infinity(), reps, seed, threads);
  return {std::abs(*r.z_score) < 4.0, "estimate " + fmt(r.estimate) + " target " + fmt(*r.target) +
                                          " z " + fmt(*r.z_score)};
}

Outcome check_joint(std::size_t reps, std::uint64_t seed, unsigned threads) {
  const double inf = std::numeric_limits<double>::infinity();
  const auto r = estimate_event(path4(), {EventKind::IeAndIf, Edge(1, 2), Edge(3, 4)}, inf, reps, seed, threads);
  const auto s = estimate_event(path4(), {EventKind::IeAndIf, Edge(1, 2), Edge(2, 3)}, inf, reps, seed, threads);
  return {std::abs(*r.z_score) < 4.0 && s.hits == 0,
          "disjoint " + fmt(r.estimate) + " target " + fmt(*r.target) + ", sharing hits " +
              std::to_string(s.hits)};
}

Outcome check_half_bound(std::uint64_t seed) {
  Stream rng(stream_seed(seed, kTagVerify, 1));
  std::size_t pairs = 0;
  std::size_t bad = 0;
  double lo = 1.0;
  for (int k = 0; k < 300; ++k) {
    const MeasureSpec spec = random_spec(rng, 8, 10);
    const auto sup = spec.support();
    for (std::size_t a = 0; a < sup.size(); ++a) {
      for (std::size_t b = a + 1; b < sup.size(); ++b) {
        if (shared_vertices(sup[a], sup[b]) != 0) continue;
        const JointRatio jr = joint_ratio(spec, sup[a], sup[b]);
        ++pairs;
        lo = std::min(lo, jr.ratio);
        if (!(jr.ratio > 0.5 && jr.ratio <= 1.0 + 1e-12) ||
            std::abs(jr.ratio - jr.closed_form) > 1e-12 * jr.closed_form) {
          ++bad;
        }
      }
    }
  }
  return {bad == 0, std::to_string(pairs) + " pairs, min ratio " + fmt(lo)};
}

Outcome check_sandwich(std::uint64_t seed) {
  Stream rng(stream_seed(seed, kTagVerify, 2));
  std::size_t bad = 0;
  for (int k = 0; k < 100; ++k) {
    const MeasureSpec spec = random_spec(rng, 10, 20);
    for (double t : {0.5, 2.0, 10.0}) bad += !variance_sandwich(spec, t).ordered;
  }
  return {bad == 0, std::to_string(bad) + " unordered of 300"};
}

Outcome check_exp_bounds(std::uint64_t seed) {
  Stream rng(stream_seed(seed, kTagVerify, 3));
  std::vector<double> grid;
  for (int k = 0; k <= 400; ++k) grid.push_back(0.05 * k);
  std::size_t bad = 0;
  for (int k = 0; k < 100; ++k) {
    const double a = 0.01 + 5.0 * rng.uniform();
    const double b = 0.01 + 5.0 * rng.uniform();
    bad += !check_exp_bound(a, b, grid).holds;
    std::vector<double> xs(5);
    std::vector<double> ys(5);
    for (auto& x : xs) x = rng.uniform();
    for (auto& y : ys) y = rng.uniform();
    bad += !check_ratio_of_sums(xs, ys).holds;
  }
  return {bad == 0, std::to_string(bad) + " violations of 200"};
}

Outcome check_respect(std::uint64_t seed) {
  Stream rng(stream_seed(seed, kTagVerify, 4));
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> block(1 + static_cast<std::size_t>(rng.uniform() * 8));
    for (auto& l : block) l = 0.05 + 3.0 * rng.uniform();
    const double tail = 0.05 + 3.0 * rng.uniform();
    worst = std::max(worst, std::abs(respect_factor_subsets(block, tail) -
                                     respect_factor_quadrature(block, tail)));
  }
  const double one[] = {0.7};
  const bool closed = respect_factor(one, 1.3) == 0.7 / (1.3 + 0.7);
  return {worst <= 1e-10 && closed, "max |subsets - quadrature| " + fmt(worst)};
}

Outcome check_in_order(std::size_t reps, std::uint64_t seed, unsigned threads) {
  const RespectReport geo = urns_in_order(UrnSequence::geometric(0.5), 30);
  const RespectReport dex = urns_in_order(UrnSequence::double_exponential(), 30);
  bool ok = geo.partial_product == std::ldexp(1.0, -30) && geo.verdict == ProductVerdict::ZeroAnalytic &&
            dex.partial_product > 0.0 && dex.verdict == ProductVerdict::PositiveAnalytic;
  double worst = 0.0;
  for (std::size_t k = 1; k <= 6; ++k) {
    const InOrderEstimate e = simulate_urns_in_order(UrnSequence::geometric(0.5), k, reps, seed, threads);
    const double se = binomial_std_error(e.target, reps);
    worst = std::max(worst, std::abs(e.frequency - e.target) / se);
  }
  ok = ok && worst < 4.0;
  return {ok, "geometric product " + fmt(geo.partial_product) + ", max |z| " + fmt(worst)};
}

Outcome check_coupling(std::size_t reps, std::uint64_t seed, unsigned threads) {
  double worst = 0.0;
  std::size_t undominated = 0;
  const MeasureSpec specs[] = {triangle(), path4(),
                               MeasureSpec::power_law_product(2.5, 8).normalized()};
  for (std::size_t s = 0; s < 3; ++s) {
    for (std::size_t k = 0; k < 200; ++k) {
      Stream rng(stream_seed(seed, kTagVerify + 10 + s, k));
      const CouplingState st = run_coupling(specs[s], 4.0 * rng.uniform(), rng);
      for (VertexId i = 1; i <= specs[s].n_max(); ++i) {
        if (!st.in_u(i)) worst = std::max(worst, std::abs(coupling_rate_audit(st, specs[s], i) - specs[s].marginal(i)));
      }
      undominated += !coupling_domination(st, specs[s]).holds;
    }
  }
  const MeasureSpec& spec = specs[2];
  const std::size_t n = std::min<std::size_t>(reps, 4000);
  const double t = 2.0;
  std::vector<double> coupled(n);
  std::vector<double> direct(n);
  const UrnScheme scheme = UrnScheme::from_marginals(spec);
  parallel_replicas(n, threads, [&](std::size_t r) {
    Stream a(stream_seed(seed, kTagVerify + 20, r));
    coupled[r] = static_cast<double>(run_coupling(spec, t, a).u_size());
    Stream b(stream_seed(seed, kTagVerify + 21, r));
    direct[r] = static_cast<double>(occupied_at(run_urn(scheme, t, b), t));
  });
  const double ks = ks_two_sample(coupled, direct);
  return {worst <= 1e-12 && undominated == 0 && ks < 0.05,
          "audit max error " + fmt(worst) + ", KS coupled vs urns " + fmt(ks)};
}

Outcome check_moments(std::size_t reps, std::uint64_t seed, unsigned threads) {
  Stream rng(stream_seed(seed, kTagVerify, 5));
  const MeasureSpec spec = random_spec(rng, 12, 10);
  const double grid[] = {0.5, 2.0, 8.0};
  const CountSamples cs = sample_counts(spec, grid, reps, seed, threads);
  double worst = 0.0;
  bool ok = true;
  for (std::size_t k = 0; k < 3; ++k) {
    const Moments v = moments(cs.vertices[k]);
    const Moments u = moments(cs.urns[k]);
    const double mean = expected_vertices(spec, grid[k]);
    const VarianceSandwich sw = variance_sandwich(spec, grid[k]);
    const double zm = std::abs(v.mean - mean) / std::sqrt(sw.exact / static_cast<double>(reps));
    const double zu = std::abs(u.variance - sw.lower) / variance_std_error(u);
    const double sev = variance_std_error(v);
    ok = ok && zm < 4.0 && zu < 4.0 && v.variance >= sw.lower - 4.0 * sev &&
         v.variance <= sw.upper + 4.0 * sev;
    worst = std::max({worst, zm, zu});
  }
  return {ok, "max |z| " + fmt(worst)};
}

Outcome check_curve(std::size_t reps, std::uint64_t seed, unsigned threads) {
  const MeasureSpec spec = MeasureSpec::explicit_edges({{Edge(1, 2), 1.0}});
  const double grid[] = {0.25, 0.5, 1.0, 2.0};
  const auto curve = connected_frequency_curve(spec, grid, reps, seed, threads);
  double worst = 0.0;
  for (const auto& p : curve) {
    const double target = -std::expm1(-p.t);
    worst = std::max(worst, std::abs(p.value - target) / binomial_std_error(target, reps));
  }
  return {worst < 4.0, "max |z| " + fmt(worst)};
}

Outcome check_depoissonization(std::uint64_t seed, unsigned threads) {
  const auto r = depoissonization_agreement(triangle(), 1, 100000, seed, threads);
  return {r.l1 < 0.02, "L1 " + fmt(r.l1)};
}

Outcome check_determinism(std::uint64_t seed) {
  const auto a = estimate_event(triangle(), {EventKind::IeOccurs, Edge(1, 3), {}}, 1.0, 2000, seed, 1);
  const auto b = estimate_event(triangle(), {EventKind::IeOccurs, Edge(1, 3), {}}, 1.0, 2000, seed, 3);
  return {a.hits == b.hits, "hits " + std::to_string(a.hits) + " vs " + std::to_string(b.hits)};
}

}  // namespace

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const std::string& suite = cfg.suite;
  if (suite != "all" && suite != "analytic" && suite != "urns" && suite != "montecarlo") {
    throw ConfigError("field 'suite': expected all, analytic, urns or montecarlo");
  }
  const std::size_t reps = cfg.replicas ? cfg.replicas : 20000;
  const std::uint64_t seed = cfg.seed;
  const unsigned th = cfg.threads;

  struct Check {
    const char* suite;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Check> checks = {
      {"analytic", "new-component probability", [&] { return check_ie(reps, seed, th); }},
      {"analytic", "joint new-component probability", [&] { return check_joint(reps, seed, th); }},
      {"analytic", "joint ratio in (1/2, 1]", [&] { return check_half_bound(seed); }},
      {"analytic", "variance sandwich ordering", [&] { return check_sandwich(seed); }},
      {"analytic", "exponential and ratio-of-sums bounds", [&] { return check_exp_bounds(seed); }},
      {"urns", "respect factor routes agree", [&] { return check_respect(seed); }},
      {"urns", "urns filled in order", [&] { return check_in_order(reps, seed, th); }},
      {"urns", "coupling audit and urn marginal", [&] { return check_coupling(reps, seed, th); }},
      {"montecarlo", "vertex and urn moments", [&] { return check_moments(reps, seed, th); }},
      {"montecarlo", "connected frequency of a single edge", [&] { return check_curve(reps, seed, th); }},
      {"montecarlo", "de-Poissonized edge order", [&] { return check_depoissonization(seed, th); }},
      {"montecarlo", "thread-count invariance", [&] { return check_determinism(seed); }},
  };

  ReportHeader h;
  h.command = "verify";
  h.seed = seed;
  h.settings = {{"suite", suite}, {"replicas", std::to_string(reps)}, {"threads", std::to_string(th)}};
  h.config_hash = config_hash("verify|" + suite + "|" + std::to_string(reps) + "|" + std::to_string(seed));
  write_header(out, h);

  std::size_t failed = 0;
  std::size_t ran = 0;
  for (const auto& c : checks) {
    if (suite != "all" && suite != c.suite) continue;
    const Outcome o = c.run();
    ++ran;
    failed += !o.pass;
    out << (o.pass ? "PASS " : "FAIL ") << c.suite << ": " << c.name << " (" << o.detail << ")\n";
  }
  out << "summary: " << ran - failed << "/" << ran << " passed\n";
  return failed == 0 ? kExitOk : kExitToleranceFailure;
}

}  // namespace eeg::cli
