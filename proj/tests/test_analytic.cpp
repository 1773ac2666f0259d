#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "eeg/analytic.hpp"
#include "eeg/errors.hpp"

using namespace eeg;

namespace {

// Exact law of the first-arrival order: the race of independent exponentials
// gives order pi probability prod_k mu_{pi_k} / (mass of edges not yet seen).
// Returns P(I_e) for every support edge and P(I_e and I_f) for every pair.
struct OrderOracle {
  std::vector<double> single;
  std::vector<std::vector<double>> joint;
};

OrderOracle enumerate_orders(const MeasureSpec& s) {
  const auto edges = s.support();
  const auto mu = s.support_masses();
  const std::size_t n = edges.size();
  OrderOracle out{std::vector<double>(n, 0.0), std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    double p = 1.0;
    double left = s.total_mass();
    for (std::size_t k = 0; k < n; ++k) {
      p *= mu[perm[k]] / left;
      left -= mu[perm[k]];
    }
    std::set<VertexId> seen;
    std::vector<char> fresh(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const Edge& e = edges[perm[k]];
      fresh[perm[k]] = !seen.count(e.i()) && !seen.count(e.j());
      seen.insert(e.i());
      seen.insert(e.j());
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (!fresh[a]) continue;
      out.single[a] += p;
      for (std::size_t b = 0; b < n; ++b) {
        if (fresh[b]) out.joint[a][b] += p;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Exact moments of |V_t| and pair probabilities: each support edge has
// arrived by t independently with probability 1 - exp(-mu t).
struct VertexOracle {
  double mean = 0.0;
  double variance = 0.0;
  std::vector<std::vector<double>> both;  // P(i and j in V_t)
};

VertexOracle enumerate_subsets(const MeasureSpec& s, double t) {
  const auto edges = s.support();
  const auto mu = s.support_masses();
  const std::size_t n = edges.size();
  const VertexId nv = s.n_max();
  VertexOracle out;
  out.both.assign(nv + 1, std::vector<double>(nv + 1, 0.0));
  double m2 = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double p = 1.0;
    std::vector<char> in(nv + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const double q = 1.0 - std::exp(-mu[k] * t);
      if (mask >> k & 1) {
        p *= q;
        in[edges[k].i()] = in[edges[k].j()] = 1;
      } else {
        p *= 1.0 - q;
      }
    }
    const double count = std::accumulate(in.begin(), in.end(), 0.0);
    out.mean += p * count;
    m2 += p * count * count;
    for (VertexId i = 1; i <= nv; ++i) {
      for (VertexId j = 1; j <= nv; ++j) {
        if (in[i] && in[j]) out.both[i][j] += p;
      }
    }
  }
  out.variance = m2 - out.mean * out.mean;
  return out;
}

double four_term_joint(const JointProbTerms& j) {
  const double b = j.b_ef;
  return j.c_e * j.c_f *
         (1.0 - b / (j.a_e + b) - b / (j.a_f + b) + b / (j.a_e + j.a_f + b));
}

}  // namespace

TEST_CASE("new-component probabilities match the exact order law") {
  std::mt19937_64 gen(2024);
  for (int rep = 0; rep < 25; ++rep) {
    const MeasureSpec s = testing::random_spec(gen, 3 + rep % 4, 6);
    const OrderOracle oracle = enumerate_orders(s);
    const auto edges = s.support();
    for (std::size_t a = 0; a < edges.size(); ++a) {
      CHECK(prob_new_component(s, edges[a]) == doctest::Approx(oracle.single[a]).epsilon(1e-12));
      for (std::size_t b = 0; b < edges.size(); ++b) {
        if (a == b) continue;
        if (shared_vertices(edges[a], edges[b]) == 0) {
          CHECK(prob_joint_new_components(s, edges[a], edges[b]) ==
                doctest::Approx(oracle.joint[a][b]).epsilon(1e-12));
        } else {
          CHECK(oracle.joint[a][b] == 0.0);
        }
      }
    }
  }
}

TEST_CASE("triangle and path hand values") {
  const MeasureSpec tri = testing::triangle();
  CHECK(prob_new_component(tri, Edge(1, 2)) == doctest::Approx(1.0 / 3));
  const MeasureSpec path = testing::path4();
  CHECK(prob_joint_new_components(path, Edge(1, 2), Edge(3, 4)) == doctest::Approx(1.0 / 3));
  CHECK(prob_new_component(path, Edge(1, 2)) == doctest::Approx(0.5));
  CHECK(prob_new_component(path, Edge(1, 3)) == 0.0);
  CHECK_THROWS_AS(prob_new_component(path, Edge(5, 6)), UndefinedProbability);
  CHECK_THROWS_AS(joint_terms(path, Edge(1, 2), Edge(2, 3)), InputError);
}

TEST_CASE("factored joint probability equals the four-term expansion") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 200; ++rep) {
    const MeasureSpec s = testing::random_spec(gen, 10, 8);
    const auto edges = s.support();
    for (std::size_t a = 0; a < edges.size(); ++a) {
      for (std::size_t b = a + 1; b < edges.size(); ++b) {
        if (shared_vertices(edges[a], edges[b]) != 0) continue;
        const JointProbTerms j = joint_terms(s, edges[a], edges[b]);
        CHECK(j.a_e + j.b_ef == doctest::Approx(s.edge_mass(edges[a])).epsilon(1e-12));
        CHECK(j.a_f + j.b_ef == doctest::Approx(s.edge_mass(edges[b])).epsilon(1e-12));
        CHECK(prob_joint_new_components(s, edges[a], edges[b]) ==
              doctest::Approx(four_term_joint(j)).epsilon(1e-10));
        const JointRatio r = joint_ratio(s, edges[a], edges[b]);
        CHECK(r.ratio == doctest::Approx(r.closed_form).epsilon(1e-12));
        CHECK(r.ratio > 0.5);
        CHECK(r.ratio <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("vertex moments match subset enumeration") {
  std::mt19937_64 gen(99);
  for (int rep = 0; rep < 10; ++rep) {
    const MeasureSpec s = testing::random_spec(gen, 8, 7);
    for (double t : {0.5, 2.0, 9.0}) {
      const VertexOracle oracle = enumerate_subsets(s, t);
      CHECK(expected_vertices(s, t) == doctest::Approx(oracle.mean).epsilon(1e-12));
      const VarianceSandwich v = variance_sandwich(s, t);
      CHECK(v.exact == doctest::Approx(oracle.variance).epsilon(1e-10));
      CHECK(v.ordered);
      CHECK(v.lower == doctest::Approx(urn_variance(s, t)));
      const VertexId nv = s.n_max();
      for (VertexId i = 1; i <= nv; ++i) {
        for (VertexId j = i + 1; j <= nv; ++j) {
          CHECK(vertex_pair_joint(s, i, j, t) == doctest::Approx(oracle.both[i][j]).epsilon(1e-12));
          const double cov = oracle.both[i][j] - oracle.both[i][i] * oracle.both[j][j];
          CHECK(vertex_pair_covariance(s, i, j, t) == doctest::Approx(cov).scale(1.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("variance sandwich holds across families") {
  const MeasureSpec specs[] = {
      MeasureSpec::power_law_product(2.5, 60).normalized(),
      MeasureSpec::first_rank_power(2.0, 60).normalized(),
      MeasureSpec::isolated_edges(std::vector<double>(30, 1.0)).normalized(),
      MeasureSpec::factorial_max(6).normalized(),
  };
  for (const auto& s : specs) {
    for (double t : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
      const VarianceSandwich v = variance_sandwich(s, t);
      CHECK(v.lower <= v.exact + 1e-12);
      CHECK(v.exact <= v.upper + v.slack);
      CHECK(v.ordered);
    }
  }
}

TEST_CASE("series verdicts come from the family, not the numeric sum") {
  auto plp = [](double g) { return MeasureSpec::power_law_product(g, 100).normalized(); };
  CHECK(connectedness_series(plp(2.5)).verdict == SeriesVerdict::ConvergesAnalytic);
  CHECK(connectedness_series(plp(1.5)).verdict == SeriesVerdict::DivergesAnalytic);
  CHECK(connectedness_series(plp(2.0)).verdict == SeriesVerdict::DivergesAnalytic);
  CHECK(connectedness_series(testing::triangle()).verdict == SeriesVerdict::ConvergesAnalytic);
  CHECK(connectedness_series(MeasureSpec::factorial_max(8)).verdict ==
        SeriesVerdict::ConvergesAnalytic);
  const SeriesReport small = connectedness_series(plp(2.5), 10);
  const SeriesReport big = connectedness_series(plp(2.5), 100);
  CHECK(small.terms_used == 45);
  CHECK(small.partial_sum < big.partial_sum);
  CHECK(verdict_name(SeriesVerdict::ConvergesAnalytic) == "converges-analytic");
}

TEST_CASE("exponential bound and ratio-of-sums checks") {
  std::vector<double> grid;
  for (int k = 1; k <= 4000; ++k) grid.push_back(k * 0.005);
  const ExpBoundCheck c = check_exp_bound(0.7, 1.3, grid);
  CHECK(c.holds);
  CHECK(c.maximum <= c.bound);
  CHECK(c.grid_max <= c.maximum + 1e-12);
  CHECK(c.grid_max == doctest::Approx(c.maximum).epsilon(1e-4));
  CHECK(c.maximizer == doctest::Approx(std::log(2.0 / 0.7) / 1.3));

  const std::vector<double> a{1.0, 2.0, 0.0, 3.0};
  const std::vector<double> b{2.0, 1.0, 0.0, 3.0};
  const RatioOfSumsCheck r = check_ratio_of_sums(a, b);
  CHECK(r.holds);
  CHECK(r.ratio == doctest::Approx(1.0));
  CHECK(r.inf_ratio == doctest::Approx(0.5));
  CHECK(r.sup_ratio == doctest::Approx(2.0));
  CHECK_THROWS(check_ratio_of_sums(a, std::vector<double>{1.0}));
  CHECK_THROWS(check_ratio_of_sums(std::vector<double>{-1.0}, std::vector<double>{1.0}));
}
