#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "eeg/analytic.hpp"
#include "eeg/errors.hpp"
#include "eeg/montecarlo.hpp"

using namespace eeg;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("event estimates sit near their targets") {
  const MeasureSpec tri = testing::triangle();
  const EventDescriptor ie{EventKind::IeOccurs, Edge(1, 2), Edge()};
  const EstimateReport r = estimate_event(tri, ie, kInf, 20000, 1);
  REQUIRE(r.target.has_value());
  CHECK(*r.target == doctest::Approx(1.0 / 3));
  CHECK(std::abs(*r.z_score) < 4.0);
  CHECK(r.hits == static_cast<std::size_t>(std::lround(r.estimate * 20000)));

  // Finite horizon: mu_e / M_e times P(the first arrival meeting e is by T).
  const EstimateReport f = estimate_event(tri, ie, 1.0, 20000, 2);
  CHECK(*f.target == doctest::Approx((1 - std::exp(-1.0)) / 3));
  CHECK(std::abs(*f.z_score) < 4.0);

  const MeasureSpec path = testing::path4();
  const EventDescriptor both{EventKind::IeAndIf, Edge(1, 2), Edge(3, 4)};
  const EstimateReport j = estimate_event(path, both, kInf, 20000, 3);
  CHECK(*j.target == doctest::Approx(1.0 / 3));
  CHECK(std::abs(*j.z_score) < 4.0);

  const EventDescriptor share{EventKind::IeAndIf, Edge(1, 2), Edge(2, 3)};
  CHECK(estimate_event(path, share, kInf, 5000, 4).hits == 0);
}

TEST_CASE("results do not depend on the worker count") {
  const MeasureSpec s = MeasureSpec::power_law_product(2.5, 20).normalized();
  const EventDescriptor ev{EventKind::ConnectedAt, Edge(), Edge()};
  const EstimateReport a = estimate_event(s, ev, 10.0, 3000, 9, 1);
  const EstimateReport b = estimate_event(s, ev, 10.0, 3000, 9, 3);
  CHECK(a.hits == b.hits);
  const std::vector<double> grid{1.0, 5.0};
  const auto ca = clt_sweep(s, grid, 500, 9, 1);
  const auto cb = clt_sweep(s, grid, 500, 9, 4);
  CHECK(ca[1].samples == cb[1].samples);
}

TEST_CASE("single edge connection curve is 1 - exp(-t)") {
  const MeasureSpec s = MeasureSpec::explicit_edges({{Edge(1, 2), 1.0}});
  const std::vector<double> grid{0.25, 1.0, 3.0};
  const auto curve = connected_frequency_curve(s, grid, 20000, 5);
  REQUIRE(curve.size() == 3);
  for (const auto& p : curve) {
    const double target = 1.0 - std::exp(-p.t);
    CHECK(std::abs(p.value - target) < 4.0 * std::sqrt(target * (1 - target) / 20000));
  }
}

TEST_CASE("plateau detection") {
  const std::vector<double> flat{1.0, 1.5, 1.8, 1.9, 1.95, 1.951, 1.952, 1.953};
  double rise = 0.0;
  CHECK(detect_plateau(flat, &rise));
  CHECK(rise < 0.01);
  const std::vector<double> growing{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK_FALSE(detect_plateau(growing));
}

TEST_CASE("sample counts track both processes") {
  const MeasureSpec s = MeasureSpec::power_law_product(2.5, 15).normalized();
  const std::vector<double> grid{0.5, 2.0, 8.0};
  const CountSamples c = sample_counts(s, grid, 20000, 6);
  REQUIRE(c.vertices.size() == 3);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Moments v = moments(c.vertices[k]);
    const double mean = expected_vertices(s, grid[k]);
    const double exact = variance_sandwich(s, grid[k]).exact;
    CHECK(std::abs(v.mean - mean) < 4.0 * std::sqrt(exact / 20000));
    const Moments u = moments(c.urns[k]);
    CHECK(std::abs(u.mean - mean) < 4.0 * std::sqrt(urn_variance(s, grid[k]) / 20000));
    CHECK(std::abs(u.variance - urn_variance(s, grid[k])) < 4.0 * variance_std_error(u));
    CHECK(std::abs(v.variance - exact) < 4.0 * variance_std_error(v));
  }
}

TEST_CASE("pair occupancy agrees with the closed form") {
  const MeasureSpec s = testing::path4();
  const double t = 1.5;
  const PairOccupancy occ = pair_occupancy(s, t, 20000, 7);
  for (VertexId i = 1; i <= 4; ++i) {
    for (VertexId j = i + 1; j <= 4; ++j) {
      const double p = vertex_pair_joint(s, i, j, t);
      const double est = static_cast<double>(occ.both(i, j)) / 20000;
      CHECK(std::abs(est - p) < 4.0 * std::sqrt(p * (1 - p) / 20000));
    }
  }
}

TEST_CASE("de-Poissonized edge order matches the discrete law") {
  const DepoissonizationReport r = depoissonization_agreement(testing::triangle(), 1, 50000, 8);
  CHECK(r.cells == 3);
  CHECK(r.l1 < 0.03);
  CHECK(r.l1_discrete_exact < 0.02);
  CHECK(r.l1_stopped_exact < 0.02);
  CHECK_THROWS(depoissonization_agreement(testing::triangle(), 4, 10, 8));
}

TEST_CASE("clt report fields") {
  const MeasureSpec s = MeasureSpec::isolated_edges(std::vector<double>(100, 1.0)).normalized();
  const CltReport r = clt_diagnostic(s, 100.0, 2000, 10);
  CHECK(r.normalization == "exact_variance");
  CHECK(r.samples.size() == 2000);
  CHECK(r.standardized.mean == doctest::Approx(0.0).epsilon(0.1).scale(1.0));
  CHECK(r.ks_statistic < 0.1);
  const CltReport u = clt_diagnostic(s, 100.0, 2000, 10, 1, CltScale::UrnVariance);
  CHECK(u.normalization == "urn_variance");
  std::ostringstream os;
  write_samples(os, r.samples);
  const std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 2000);
}
