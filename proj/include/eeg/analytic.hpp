#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "eeg/edge.hpp"
#include "eeg/measure.hpp"

namespace eeg {

/// Masses around a disjoint pair (e, f):
///   b_ef  mass of edges meeting both e and f
///   r_e   mass of edges meeting e in one vertex, excluding those above
///   a_e = r_e + mu_e,  c_e = mu_e / a_e   (likewise for f)
struct JointProbTerms {
  double mu_e = 0.0;
  double mu_f = 0.0;
  double b_ef = 0.0;
  double r_e = 0.0;
  double r_f = 0.0;
  double a_e = 0.0;
  double a_f = 0.0;
  double c_e = 0.0;
  double c_f = 0.0;
};

/// Requires e and f disjoint; throws InputError otherwise.
JointProbTerms joint_terms(const MeasureSpec& spec, const Edge& e, const Edge& f);

/// P(the arrival of e brings two new vertices) = mu_e / M_e.
/// Throws UndefinedProbability when M_e = 0.
double prob_new_component(const MeasureSpec& spec, const Edge& e);

/// P(both e and f bring two new vertices when they arrive).
double prob_joint_new_components(const MeasureSpec& spec, const Edge& e, const Edge& f);

struct JointRatio {
  double ratio = 0.0;        // P(I_e) P(I_f) / P(I_e and I_f)
  double closed_form = 0.0;  // (a_e + a_f + b) / (a_e + a_f + 2b)
};

/// Requires disjoint e, f with positive masses.
JointRatio joint_ratio(const MeasureSpec& spec, const Edge& e, const Edge& f);

enum class SeriesVerdict { ConvergesAnalytic, DivergesAnalytic, Inconclusive };
std::string_view verdict_name(SeriesVerdict v) noexcept;

struct SeriesReport {
  double partial_sum = 0.0;
  std::size_t terms_used = 0;
  VertexId window = 0;
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
  std::string verdict_basis;
};

/// Partial sum of mu_e / M_e over support edges with max(e) <= window
/// (marginals over the full spec window). The verdict never comes from the
/// numeric sum.
SeriesReport connectedness_series(const MeasureSpec& spec, VertexId window);
SeriesReport connectedness_series(const MeasureSpec& spec);

/// E|V_t| = sum_i (1 - exp(-M_i t)).
double expected_vertices(const MeasureSpec& spec, double t);

/// Var|U_t| = sum_i exp(-M_i t)(1 - exp(-M_i t)) for urns with rates M_i.
double urn_variance(const MeasureSpec& spec, double t);

/// P(i in V_t and j in V_t) = 1 - e^{-M_i t} - e^{-M_j t} + e^{-M_ij t}.
double vertex_pair_joint(const MeasureSpec& spec, VertexId i, VertexId j, double t);

/// Cov(1{i in V_t}, 1{j in V_t}) = exp(-M_ij t)(1 - exp(-mu_ij t)).
double vertex_pair_covariance(const MeasureSpec& spec, VertexId i, VertexId j, double t);

struct VarianceSandwich {
  double lower = 0.0;  // Var|U_t|
  double exact = 0.0;  // Var|V_t|
  double upper = 0.0;  // Var|U_t| + sum_e mu_e / M_e
  double slack = 0.0;  // truncation slack allowed on the upper side
  bool ordered = false;
};

/// Double sum over ordered pairs i != j within {1..window}.
VarianceSandwich variance_sandwich(const MeasureSpec& spec, double t, VertexId window);
VarianceSandwich variance_sandwich(const MeasureSpec& spec, double t);

struct ExpBoundCheck {
  double grid_max = 0.0;       // max of e^{-ax}(1 - e^{-bx}) over the grid
  double grid_argmax = 0.0;
  double maximizer = 0.0;      // (1/b) ln((a+b)/a)
  double maximum = 0.0;        // (a/(a+b))^{a/b} b/(a+b)
  double bound = 0.0;          // b / a
  bool holds = false;
};

ExpBoundCheck check_exp_bound(double a, double b, std::span<const double> x_grid);

struct RatioOfSumsCheck {
  double inf_ratio = 0.0;  // r/0 := +inf for r > 0; pairs with both zero skipped
  double ratio = 0.0;
  double sup_ratio = 0.0;
  bool holds = false;
};

RatioOfSumsCheck check_ratio_of_sums(std::span<const double> a, std::span<const double> b);

}  // namespace eeg
