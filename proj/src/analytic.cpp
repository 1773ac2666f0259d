#include "eeg/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eeg/errors.hpp"

namespace eeg {

namespace {

// Mass of edges at `v` other than `skip`, excluding neighbors in `exclude`.
double mass_at_excluding(const MeasureSpec& spec, VertexId v, const Edge& skip,
                         const Edge& exclude) {
  double s = 0.0;
  for (const Neighbor& nb : spec.neighbors(v)) {
    if (skip.contains(nb.vertex) || exclude.contains(nb.vertex)) continue;
    s += nb.mass;
  }
  return s;
}

void require_time(double t) {
  if (!(t >= 0.0)) throw InputError("time must be non-negative");
}

}  // namespace

JointProbTerms joint_terms(const MeasureSpec& spec, const Edge& e, const Edge& f) {
  if (shared_vertices(e, f) != 0) {
    std::ostringstream os;
    os << "joint_terms: edges " << e << " and " << f << " are not disjoint";
    throw InputError(os.str());
  }
  JointProbTerms t;
  t.mu_e = spec.mass(e);
  t.mu_f = spec.mass(f);
  for (VertexId x : {e.i(), e.j()}) {
    for (VertexId y : {f.i(), f.j()}) t.b_ef += spec.mass(Edge(x, y));
  }
  t.r_e = mass_at_excluding(spec, e.i(), e, f) + mass_at_excluding(spec, e.j(), e, f);
  t.r_f = mass_at_excluding(spec, f.i(), f, e) + mass_at_excluding(spec, f.j(), f, e);
  t.a_e = t.r_e + t.mu_e;
  t.a_f = t.r_f + t.mu_f;
  t.c_e = t.a_e > 0.0 ? t.mu_e / t.a_e : 0.0;
  t.c_f = t.a_f > 0.0 ? t.mu_f / t.a_f : 0.0;
  return t;
}

double prob_new_component(const MeasureSpec& spec, const Edge& e) {
  const double m_e = spec.edge_mass(e);
  if (!(m_e > 0.0)) {
    std::ostringstream os;
    os << "P(I_e) undefined for " << e << ": no mass on the edge or its neighbors";
    throw UndefinedProbability(os.str());
  }
  return spec.mass(e) / m_e;
}

double prob_joint_new_components(const MeasureSpec& spec, const Edge& e, const Edge& f) {
  switch (shared_vertices(e, f)) {
    case 2: return prob_new_component(spec, e);
    case 1: return 0.0;
    default: break;
  }
  const JointProbTerms t = joint_terms(spec, e, f);
  if (t.mu_e * t.mu_f == 0.0) return 0.0;
  const double b = t.b_ef;
  // c_e c_f (1 - b/(a_e+b) - b/(a_f+b) + b/(a_e+a_f+b)), with the bracket
  // collected over a common denominator to avoid cancellation:
  //   a_e a_f (a_e + a_f + 2b) / ((a_e+b)(a_f+b)(a_e+a_f+b)).
  const double bracket = t.a_e * t.a_f * (t.a_e + t.a_f + 2.0 * b) /
                         ((t.a_e + b) * (t.a_f + b) * (t.a_e + t.a_f + b));
  return t.c_e * t.c_f * bracket;
}

JointRatio joint_ratio(const MeasureSpec& spec, const Edge& e, const Edge& f) {
  if (shared_vertices(e, f) != 0) throw InputError("joint_ratio: edges must be disjoint");
  const double joint = prob_joint_new_components(spec, e, f);
  if (!(joint > 0.0)) throw UndefinedProbability("joint_ratio: P(I_e and I_f) is zero");
  const JointProbTerms t = joint_terms(spec, e, f);
  JointRatio r;
  r.ratio = prob_new_component(spec, e) * prob_new_component(spec, f) / joint;
  r.closed_form = (t.a_e + t.a_f + t.b_ef) / (t.a_e + t.a_f + 2.0 * t.b_ef);
  return r;
}

std::string_view verdict_name(SeriesVerdict v) noexcept {
  switch (v) {
    case SeriesVerdict::ConvergesAnalytic: return "converges-analytic";
    case SeriesVerdict::DivergesAnalytic: return "diverges-analytic";
    case SeriesVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SeriesReport connectedness_series(const MeasureSpec& spec, VertexId window) {
  SeriesReport rep;
  rep.window = std::min(window, spec.n_max());
  const auto support = spec.support();
  const auto masses = spec.support_masses();
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (support[k].j() > rep.window) continue;
    rep.partial_sum += masses[k] / spec.edge_mass(support[k]);
    ++rep.terms_used;
  }
  switch (spec.family()) {
    case Family::PowerLawProduct:
      if (spec.gamma() > 2.0) {
        rep.verdict = SeriesVerdict::ConvergesAnalytic;
        rep.verdict_basis = "gamma > 2 threshold for (ij)^-gamma";
      } else {
        rep.verdict = SeriesVerdict::DivergesAnalytic;
        rep.verdict_basis = "gamma <= 2 threshold for (ij)^-gamma";
      }
      break;
    case Family::Explicit:
    case Family::IsolatedEdges:
    case Family::FirstRank:
      rep.verdict = SeriesVerdict::ConvergesAnalytic;
      rep.verdict_basis = "finite support";
      break;
    case Family::FactorialMax:
      rep.verdict = SeriesVerdict::ConvergesAnalytic;
      rep.verdict_basis =
          "comparison: the n-1 terms with max(e)=n are each <= mu_{1,n}/mu_{1,n-1} = n^-4";
      break;
    case Family::DoubleExp:
      rep.verdict = SeriesVerdict::ConvergesAnalytic;
      rep.verdict_basis =
          "comparison: terms with max(e)=n are each <= exp(-2*3^(n-1)), summable";
      break;
  }
  return rep;
}

SeriesReport connectedness_series(const MeasureSpec& spec) {
  return connectedness_series(spec, spec.n_max());
}

double expected_vertices(const MeasureSpec& spec, double t) {
  require_time(t);
  double s = 0.0;
  for (double m : spec.marginals().M) s += -std::expm1(-m * t);
  return s;
}

double urn_variance(const MeasureSpec& spec, double t) {
  require_time(t);
  double s = 0.0;
  for (double m : spec.marginals().M) {
    const double q = std::exp(-m * t);
    s += q * -std::expm1(-m * t);
  }
  return s;
}

double vertex_pair_joint(const MeasureSpec& spec, VertexId i, VertexId j, double t) {
  require_time(t);
  const Edge e(i, j);
  const double mi = spec.marginal(i);
  const double mj = spec.marginal(j);
  return 1.0 - std::exp(-mi * t) - std::exp(-mj * t) + std::exp(-spec.edge_mass(e) * t);
}

double vertex_pair_covariance(const MeasureSpec& spec, VertexId i, VertexId j, double t) {
  require_time(t);
  const Edge e(i, j);
  return std::exp(-spec.edge_mass(e) * t) * -std::expm1(-spec.mass(e) * t);
}

VarianceSandwich variance_sandwich(const MeasureSpec& spec, double t, VertexId window) {
  require_time(t);
  window = std::min(window, spec.n_max());
  VarianceSandwich out;
  const auto& M = spec.marginals().M;
  for (VertexId v = 1; v <= window && v < M.size(); ++v) {
    const double q = std::exp(-M[v] * t);
    out.lower += q * -std::expm1(-M[v] * t);
  }
  double cov = 0.0;
  double series = 0.0;
  const auto support = spec.support();
  const auto masses = spec.support_masses();
  for (std::size_t k = 0; k < support.size(); ++k) {
    const Edge& e = support[k];
    if (e.j() > window) continue;
    const double m_e = spec.edge_mass(e);
    // Ordered pairs (i, j) and (j, i) each contribute once.
    cov += 2.0 * std::exp(-m_e * t) * -std::expm1(-masses[k] * t);
    series += masses[k] / m_e;
  }
  out.exact = out.lower + cov;
  out.upper = out.lower + series;
  out.slack = 1e-12 * (1.0 + out.upper);
  out.ordered = out.lower <= out.exact && out.exact <= out.upper + out.slack;
  return out;
}

VarianceSandwich variance_sandwich(const MeasureSpec& spec, double t) {
  return variance_sandwich(spec, t, spec.n_max());
}

ExpBoundCheck check_exp_bound(double a, double b, std::span<const double> x_grid) {
  if (!(a > 0.0) || !(b > 0.0)) throw InputError("check_exp_bound: a and b must be positive");
  ExpBoundCheck out;
  out.bound = b / a;
  out.grid_max = -std::numeric_limits<double>::infinity();
  for (double x : x_grid) {
    const double v = std::exp(-a * x) * -std::expm1(-b * x);
    if (v > out.grid_max) {
      out.grid_max = v;
      out.grid_argmax = x;
    }
  }
  out.maximizer = std::log1p(b / a) / b;
  out.maximum = std::pow(a / (a + b), a / b) * b / (a + b);
  out.holds = out.maximum <= out.bound && (x_grid.empty() || out.grid_max <= out.bound);
  return out;
}

RatioOfSumsCheck check_ratio_of_sums(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("check_ratio_of_sums: lists differ in length");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  RatioOfSumsCheck out;
  out.inf_ratio = kInf;
  out.sup_ratio = -kInf;
  double sa = 0.0;
  double sb = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] >= 0.0) || !(b[k] >= 0.0)) {
      throw InputError("check_ratio_of_sums: entries must be non-negative");
    }
    sa += a[k];
    sb += b[k];
    if (a[k] == 0.0 && b[k] == 0.0) continue;
    any = true;
    const double r = b[k] > 0.0 ? a[k] / b[k] : kInf;
    out.inf_ratio = std::min(out.inf_ratio, r);
    out.sup_ratio = std::max(out.sup_ratio, r);
  }
  if (!any) throw InputError("check_ratio_of_sums: both lists identically zero");
  out.ratio = sb > 0.0 ? sa / sb : kInf;
  out.holds = out.inf_ratio <= out.ratio && out.ratio <= out.sup_ratio;
  return out;
}

}  // namespace eeg
