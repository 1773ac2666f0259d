#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eeg/analytic.hpp"
#include "eeg/coupling.hpp"
#include "eeg/errors.hpp"
#include "eeg/graph_state.hpp"
#include "eeg/measure_config.hpp"
#include "eeg/montecarlo.hpp"
#include "eeg/parallel.hpp"
#include "eeg/process.hpp"
#include "eeg/report.hpp"
#include "eeg/urns.hpp"

namespace eeg::cli {

namespace {

constexpr std::uint64_t kTagSimulate = 0x73696dULL;
constexpr std::uint64_t kTagCouple = 0x636f75706c65ULL;
constexpr std::uint64_t kTagAudit = 0x6175646974ULL;

ConfigError field_error(std::string_view field, std::string_view what) {
  return ConfigError("field '" + std::string(field) + "': " + std::string(what));
}

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : "none"; }

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + format_real(xs[k]);
  return s.empty() ? "none" : s;
}

std::string csv_cell(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

MeasureSpec load_spec(const RunConfig& cfg) {
  if (cfg.measure.empty()) throw field_error("measure", "required");
  try {
    return load_measure(cfg.measure);
  } catch (const ConfigError& e) {
    throw field_error("measure", e.what());
  } catch (const InputError& e) {
    throw field_error("measure", e.what());
  }
}

Edge parse_edge(const std::string& text, std::string_view field) {
  long long a = 0;
  long long b = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> a >> comma >> b) || comma != ',' || !(in >> std::ws).eof()) {
    throw field_error(field, "expected \"i,j\"");
  }
  try {
    return Edge(a, b);
  } catch (const InputError& e) {
    throw field_error(field, e.what());
  }
}

/// Every setting of the run, defaults included.
std::vector<std::pair<std::string, std::string>> settings(const RunConfig& cfg,
                                                          std::size_t replicas) {
  return {
      {"measure", cfg.measure},
      {"replicas", std::to_string(replicas)},
      {"horizon_t", opt_real(cfg.horizon_t)},
      {"horizon_n", cfg.horizon_n ? std::to_string(*cfg.horizon_n) : "none"},
      {"format", cfg.format == Format::Csv ? "csv" : "text"},
      {"threads", std::to_string(cfg.threads)},
      {"out", cfg.out.empty() ? "stdout" : cfg.out},
      {"mode", cfg.mode},
      {"edge", cfg.edge.empty() ? "none" : cfg.edge},
      {"edge2", cfg.edge2.empty() ? "none" : cfg.edge2},
      {"t_grid", join(cfg.t_grid)},
      {"scale", cfg.scale},
      {"samples_out", cfg.samples_out.empty() ? "none" : cfg.samples_out},
      {"sequence", cfg.sequence},
      {"ratio", format_real(cfg.ratio)},
      {"lambdas", join(cfg.lambdas)},
      {"block", join(cfg.block)},
      {"tail", opt_real(cfg.tail)},
      {"blocks", std::to_string(cfg.blocks)},
      {"k_max", std::to_string(cfg.k_max)},
      {"audit_states", std::to_string(cfg.audit_states)},
      {"suite", cfg.suite},
  };
}

ReportHeader make_header(const RunConfig& cfg, const std::optional<MeasureSpec>& spec,
                         std::uint64_t window, std::size_t replicas) {
  ReportHeader h;
  h.command = cfg.command;
  h.seed = cfg.seed;
  h.window = window;
  h.settings = settings(cfg, replicas);
  std::string canon = cfg.command;
  if (spec) {
    const std::string m = measure_to_json(*spec).dump();
    h.settings.insert(h.settings.begin() + 1, {"measure_resolved", m});
    canon += "|" + m;
  }
  for (const auto& [k, v] : h.settings) canon += "|" + k + "=" + v;
  canon += "|seed=" + std::to_string(cfg.seed);
  h.config_hash = config_hash(canon);
  return h;
}

void emit(const TextReport& rep, Format format, std::ostream& os) {
  if (format == Format::Text) {
    rep.write(os);
    return;
  }
  os << "key,value\n";
  for (const auto& [k, v] : rep.fields()) os << csv_cell(k) << ',' << csv_cell(v) << '\n';
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw field_error("out", "cannot open '" + path + "'");
    os_ = &file_;
  }
  std::ostream& get() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const MeasureSpec spec = load_spec(cfg);
  if (cfg.horizon_t.has_value() == cfg.horizon_n.has_value()) {
    throw field_error("horizon", "give exactly one of --horizon-t, --horizon-n");
  }
  StreamMode mode = StreamMode::FirstArrival;
  if (cfg.mode == "full") mode = StreamMode::FullPoisson;
  else if (cfg.mode != "first") throw field_error("mode", "expected first or full");
  if (cfg.horizon_t && !(*cfg.horizon_t > 0.0)) throw field_error("horizon-t", "must be positive");
  if (cfg.horizon_t && mode == StreamMode::FullPoisson && !std::isfinite(*cfg.horizon_t)) {
    throw field_error("horizon-t", "full mode needs a finite horizon");
  }

  Stream rng(stream_seed(cfg.seed, kTagSimulate, 0));
  const Trajectory traj = cfg.horizon_n ? run_discrete(spec, *cfg.horizon_n, rng)
                                        : run_continuous(spec, *cfg.horizon_t, rng, mode);
  Sink sink(cfg.out, out);
  write_header(sink.get(), make_header(cfg, spec, spec.n_max(), 1));
  if (cfg.format == Format::Csv) {
    write_trajectory_csv(sink.get(), traj);
    return kExitOk;
  }
  GraphState g;
  for (const auto& ev : traj.events) g.apply(ev.edge);
  const EssentialCompleteness ec = g.essential_completeness();
  TextReport rep;
  rep.add("events", static_cast<std::uint64_t>(traj.events.size()))
      .add("vertices", static_cast<std::uint64_t>(g.vertex_count()))
      .add("edges", static_cast<std::uint64_t>(g.edge_count()))
      .add("components", static_cast<std::uint64_t>(g.components()))
      .add("i_events", g.i_event_count())
      .add("connected", g.is_connected())
      .add("essentially_complete", ec.essentially_complete)
      .add("proxy", "finite-horizon state; tail properties are not observable");
  emit(rep, cfg.format, sink.get());
  return kExitOk;
}

int cmd_analytic(const RunConfig& cfg, std::ostream& out) {
  const MeasureSpec spec = load_spec(cfg);
  if (cfg.edge.empty()) throw field_error("edge", "required");
  const Edge e = parse_edge(cfg.edge, "edge");
  TextReport rep;
  rep.add("edge", cfg.edge).add("mu_e", spec.mass(e)).add("M_e", spec.edge_mass(e));
  try {
    rep.add("P_I_e", prob_new_component(spec, e));
  } catch (const UndefinedProbability&) {
    rep.add("P_I_e", "undefined");
  }
  if (!cfg.edge2.empty()) {
    const Edge f = parse_edge(cfg.edge2, "edge2");
    rep.add("edge2", cfg.edge2).add("shared_vertices", static_cast<std::uint64_t>(shared_vertices(e, f)));
    try {
      rep.add("P_I_e_and_I_f", prob_joint_new_components(spec, e, f));
    } catch (const UndefinedProbability&) {
      rep.add("P_I_e_and_I_f", "undefined");
    }
    if (shared_vertices(e, f) == 0) {
      const JointProbTerms t = joint_terms(spec, e, f);
      rep.add("b_ef", t.b_ef).add("a_e", t.a_e).add("a_f", t.a_f);
      try {
        const JointRatio r = joint_ratio(spec, e, f);
        rep.add("joint_ratio", r.ratio).add("joint_ratio_closed_form", r.closed_form);
      } catch (const UndefinedProbability&) {
        rep.add("joint_ratio", "undefined");
      }
    }
  }
  if (cfg.horizon_t) {
    const double t = *cfg.horizon_t;
    if (!(t >= 0.0) || !std::isfinite(t)) throw field_error("horizon-t", "must be finite and >= 0");
    const VarianceSandwich v = variance_sandwich(spec, t);
    rep.add("t", t)
        .add("expected_vertices", expected_vertices(spec, t))
        .add("urn_variance", v.lower)
        .add("vertex_variance", v.exact)
        .add("variance_upper", v.upper)
        .add("sandwich_ordered", v.ordered);
  }
  Sink sink(cfg.out, out);
  write_header(sink.get(), make_header(cfg, spec, spec.n_max(), 0));
  emit(rep, cfg.format, sink.get());
  return kExitOk;
}

int cmd_series(const RunConfig& cfg, std::ostream& out) {
  const MeasureSpec spec = load_spec(cfg);
  const VertexId window = cfg.window ? *cfg.window : spec.n_max();
  if (window < 2) throw field_error("window", "must be at least 2");
  const SeriesReport s = connectedness_series(spec, window);
  const SupportVerdict sv = support_connected(spec);
  TextReport rep;
  rep.add("family", std::string(spec.family_label()))
      .add("window", static_cast<std::uint64_t>(s.window))
      .add("terms_used", static_cast<std::uint64_t>(s.terms_used))
      .add("partial_sum", s.partial_sum)
      .add("verdict", std::string(verdict_name(s.verdict)))
      .add("verdict_basis", s.verdict_basis)
      .add("support", sv.connected() ? "connected-on-truncation" : "disconnected")
      .add("support_window", static_cast<std::uint64_t>(sv.window))
      .add("support_components", static_cast<std::uint64_t>(sv.components));
  Sink sink(cfg.out, out);
  write_header(sink.get(), make_header(cfg, spec, s.window, 0));
  emit(rep, cfg.format, sink.get());
  return kExitOk;
}

int cmd_clt(const RunConfig& cfg, std::ostream& out) {
  const MeasureSpec spec = load_spec(cfg);
  std::vector<double> grid = cfg.t_grid;
  if (grid.empty()) {
    if (!cfg.horizon_t) throw field_error("horizon-t", "required (or --t-grid)");
    grid.push_back(*cfg.horizon_t);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0) || !std::isfinite(grid[k]) || (k > 0 && !(grid[k] > grid[k - 1]))) {
      throw field_error("t-grid", "entries must be positive, finite and increasing");
    }
  }
  CltScale scale = CltScale::Auto;
  if (cfg.scale == "urn") scale = CltScale::UrnVariance;
  else if (cfg.scale == "exact") scale = CltScale::ExactVariance;
  else if (cfg.scale != "auto") throw field_error("scale", "expected auto, urn or exact");
  const std::size_t replicas = cfg.replicas ? cfg.replicas : 4000;

  const auto sweep = clt_sweep(spec, grid, replicas, cfg.seed, cfg.threads, scale);
  Sink sink(cfg.out, out);
  std::ostream& os = sink.get();
  write_header(os, make_header(cfg, spec, spec.n_max(), replicas));
  if (cfg.format == Format::Csv) {
    os << "t,replicas,mean,variance,skewness,ks_statistic,norm_mean,norm_sd,normalization,"
          "urn_variance,exact_variance,low_variance_warning\n";
    for (const auto& r : sweep) {
      os << format_real(r.t) << ',' << r.replicas << ',' << format_real(r.standardized.mean) << ','
         << format_real(r.standardized.variance) << ',' << format_real(r.standardized.skewness)
         << ',' << format_real(r.ks_statistic) << ',' << format_real(r.norm_mean) << ','
         << format_real(r.norm_sd) << ',' << r.normalization << ',' << format_real(r.urn_variance)
         << ',' << format_real(r.exact_variance) << ',' << (r.low_variance_warning ? 1 : 0) << '\n';
    }
  } else {
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      const auto& r = sweep[k];
      if (k) os << '\n';
      TextReport rep;
      rep.add("t", r.t)
          .add("replicas", static_cast<std::uint64_t>(r.replicas))
          .add("standardized_mean", r.standardized.mean)
          .add("standardized_variance", r.standardized.variance)
          .add("standardized_skewness", r.standardized.skewness)
          .add("ks_statistic", r.ks_statistic)
          .add("norm_mean", r.norm_mean)
          .add("norm_sd", r.norm_sd)
          .add("normalization", r.normalization)
          .add("urn_variance", r.urn_variance)
          .add("exact_variance", r.exact_variance)
          .add("low_variance_warning", r.low_variance_warning);
      rep.write(os);
    }
  }
  if (!cfg.samples_out.empty()) {
    std::ofstream s(cfg.samples_out);
    if (!s) throw field_error("samples-out", "cannot open '" + cfg.samples_out + "'");
    for (const auto& r : sweep) {
      s << "# t: " << format_real(r.t) << '\n';
      write_samples(s, r.samples);
    }
  }
  return kExitOk;
}

int cmd_urns(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.out, out);
  std::ostream& os = sink.get();
  if (!cfg.block.empty()) {
    if (!cfg.tail) throw field_error("tail", "required with --block");
    RespectFactor f;
    try {
      f = respect_factor_detail(cfg.block, *cfg.tail);
    } catch (const InputError& e) {
      throw field_error("block", e.what());
    }
    TextReport rep;
    rep.add("factor", f.value).add("method", std::string(method_name(f.method)));
    rep.add("quadrature", respect_factor_quadrature(cfg.block, *cfg.tail));
    if (cfg.block.size() <= 20) rep.add("subset_expansion", respect_factor_subsets(cfg.block, *cfg.tail));
    write_header(os, make_header(cfg, std::nullopt, cfg.block.size(), 0));
    emit(rep, cfg.format, os);
    return kExitOk;
  }

  UrnSequence seq = UrnSequence::double_exponential();
  try {
    if (cfg.sequence == "geometric") seq = UrnSequence::geometric(cfg.ratio);
    else if (cfg.sequence == "list") seq = UrnSequence::explicit_list(cfg.lambdas);
    else if (cfg.sequence != "double_exp") {
      throw field_error("sequence", "expected geometric, double_exp or list");
    }
  } catch (const InputError& e) {
    throw field_error(cfg.sequence == "list" ? "lambdas" : "ratio", e.what());
  }
  const std::size_t blocks = cfg.blocks ? cfg.blocks : 20;
  RespectReport rep;
  try {
    rep = urns_in_order(seq, blocks);
  } catch (const InputError& e) {
    throw field_error("lambdas", e.what());
  }
  write_header(os, make_header(cfg, std::nullopt, rep.blocks_used, cfg.replicas));
  if (cfg.format == Format::Csv) {
    os << "block,factor,partial_product\n";
    for (std::size_t k = 0; k < rep.factors.size(); ++k) {
      os << k + 1 << ',' << format_real(rep.factors[k]) << ',' << format_real(rep.partial_products[k]) << '\n';
    }
  } else {
    TextReport t;
    t.add("sequence", std::string(seq.label()))
        .add("blocks_used", static_cast<std::uint64_t>(rep.blocks_used))
        .add("partial_product", rep.partial_product)
        .add("log_partial_product", rep.log_partial_product)
        .add("verdict", std::string(verdict_name(rep.verdict)))
        .add("verdict_basis", rep.verdict_basis);
    t.write(os);
  }
  if (cfg.replicas > 0) {
    const std::size_t kmax = std::min({cfg.k_max, rep.blocks_used, seq.length()});
    if (cfg.format == Format::Csv) os << "k,frequency,std_error,target\n";
    for (std::size_t k = 1; k <= kmax; ++k) {
      const InOrderEstimate e = simulate_urns_in_order(seq, k, cfg.replicas, cfg.seed, cfg.threads);
      if (cfg.format == Format::Csv) {
        os << k << ',' << format_real(e.frequency) << ',' << format_real(e.std_error) << ','
           << format_real(e.target) << '\n';
      } else {
        os << "in_order_k" << k << ": frequency " << format_real(e.frequency) << " se "
           << format_real(e.std_error) << " target " << format_real(e.target) << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_complete(const RunConfig& cfg, std::ostream& out) {
  const MeasureSpec spec = load_spec(cfg);
  const std::size_t blocks = cfg.blocks ? cfg.blocks : spec.n_max();
  const RespectReport rep = essential_completeness_product(spec, blocks);
  std::optional<EstimateReport> freq;
  const std::size_t replicas = cfg.horizon_t ? (cfg.replicas ? cfg.replicas : 1000) : 0;
  if (cfg.horizon_t) {
    if (!(*cfg.horizon_t > 0.0) || !std::isfinite(*cfg.horizon_t)) {
      throw field_error("horizon-t", "must be positive and finite");
    }
    freq = estimate_event(spec, {EventKind::EssentiallyCompleteAt, {}, {}}, *cfg.horizon_t,
                          replicas, cfg.seed, cfg.threads);
  }
  Sink sink(cfg.out, out);
  std::ostream& os = sink.get();
  write_header(os, make_header(cfg, spec, spec.n_max(), replicas));
  if (cfg.format == Format::Csv) {
    os << "block,factor,partial_product,method\n";
    for (std::size_t k = 0; k < rep.factors.size(); ++k) {
      os << k + 2 << ',' << format_real(rep.factors[k]) << ',' << format_real(rep.partial_products[k])
         << ',' << method_name(rep.methods[k]) << '\n';
    }
    return kExitOk;
  }
  TextReport t;
  t.add("family", std::string(spec.family_label()))
      .add("blocks_used", static_cast<std::uint64_t>(rep.blocks_used))
      .add("partial_product", rep.partial_product)
      .add("log_partial_product", rep.log_partial_product)
      .add("verdict", std::string(verdict_name(rep.verdict)))
      .add("verdict_basis", rep.verdict_basis);
  if (freq) {
    t.add("essentially_complete_frequency", freq->estimate)
        .add("std_error", freq->std_error)
        .add("proxy", "state at the horizon; eventual behavior is not observable");
  }
  t.write(os);
  return kExitOk;
}

int cmd_couple(const RunConfig& cfg, std::ostream& out) {
  const MeasureSpec spec = load_spec(cfg).normalized();
  if (!cfg.horizon_t) throw field_error("horizon-t", "required");
  const double T = *cfg.horizon_t;
  if (!(T >= 0.0) || !std::isfinite(T)) throw field_error("horizon-t", "must be finite and >= 0");
  const std::size_t replicas = cfg.replicas ? cfg.replicas : 1;
  Sink sink(cfg.out, out);
  std::ostream& os = sink.get();
  write_header(os, make_header(cfg, spec, spec.n_max(), replicas));

  TextReport rep;
  if (replicas == 1) {
    Stream rng(stream_seed(cfg.seed, kTagCouple, 0));
    const CouplingState s = run_coupling(spec, T, rng, true);
    if (cfg.format == Format::Csv && cfg.audit_states == 0) {
      write_coupling_trace_csv(os, s);
      return kExitOk;
    }
    rep.add("epochs", s.step())
        .add("clock", s.clock())
        .add("V_size", static_cast<std::uint64_t>(s.v_size()))
        .add("U_size", static_cast<std::uint64_t>(s.u_size()))
        .add("V_eq_U", s.v_equals_u());
  } else {
    std::vector<char> eq(replicas, 0);
    std::vector<double> vs(replicas, 0.0);
    std::vector<double> us(replicas, 0.0);
    parallel_replicas(replicas, cfg.threads, [&](std::size_t r) {
      Stream rng(stream_seed(cfg.seed, kTagCouple, r));
      const CouplingState s = run_coupling(spec, T, rng);
      eq[r] = s.v_equals_u();
      vs[r] = static_cast<double>(s.v_size());
      us[r] = static_cast<double>(s.u_size());
    });
    std::size_t hits = 0;
    for (char c : eq) hits += c != 0;
    const double p = static_cast<double>(hits) / static_cast<double>(replicas);
    rep.add("V_eq_U_frequency", p)
        .add("std_error", binomial_std_error(p, replicas))
        .add("mean_V_size", moments(vs).mean)
        .add("mean_U_size", moments(us).mean)
        .add("expected_size", expected_vertices(spec, T));
  }
  if (cfg.audit_states > 0) {
    double worst = 0.0;
    std::size_t dominated = 0;
    for (std::size_t k = 0; k < cfg.audit_states; ++k) {
      Stream rng(stream_seed(cfg.seed, kTagAudit, k));
      const CouplingState s = run_coupling(spec, rng.uniform() * T, rng);
      for (VertexId i = 1; i <= spec.n_max(); ++i) {
        if (s.in_u(i)) continue;
        worst = std::max(worst, std::abs(coupling_rate_audit(s, spec, i) - spec.marginal(i)));
      }
      dominated += coupling_domination(s, spec).holds;
    }
    rep.add("audit_states", static_cast<std::uint64_t>(cfg.audit_states))
        .add("audit_max_abs_error", worst)
        .add("domination_holds", static_cast<std::uint64_t>(dominated));
  }
  emit(rep, cfg.format, os);
  return kExitOk;
}

}  // namespace

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    if (cfg.command == "analytic") return cmd_analytic(cfg, out);
    if (cfg.command == "series") return cmd_series(cfg, out);
    if (cfg.command == "clt") return cmd_clt(cfg, out);
    if (cfg.command == "urns") return cmd_urns(cfg, out);
    if (cfg.command == "complete") return cmd_complete(cfg, out);
    if (cfg.command == "couple") return cmd_couple(cfg, out);
    if (cfg.command == "verify") {
      Sink sink(cfg.out, out);
      return run_verify(cfg, sink.get());
    }
    err << "error: field 'command': unknown command '" << cfg.command << "'\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format = "text";
  CLI::App app{"Simulation and analysis of edge-exchangeable random graphs", "eeg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  const auto common = [&](CLI::App* sub, bool needs_measure) {
    auto* m = sub->add_option("--measure", cfg.measure, "Measure config: JSON file or inline JSON");
    if (needs_measure) m->required();
    sub->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
    sub->add_option("--replicas", cfg.replicas, "Replica count (0: command default)");
    sub->add_option("--horizon-t", cfg.horizon_t, "Time horizon T");
    sub->add_option("--horizon-n", cfg.horizon_n, "Number of discrete steps");
    sub->add_option("--window", cfg.window, "Vertex window");
    sub->add_option("--out", cfg.out, "Output path (default: standard output)");
    sub->add_option("--format", format, "csv or text")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads (0: all cores)")->capture_default_str();
  };

  auto* simulate = app.add_subcommand("simulate", "One trajectory of the edge process");
  common(simulate, true);
  simulate->add_option("--mode", cfg.mode, "first (first arrivals) or full (all Poisson arrivals)");

  auto* analytic = app.add_subcommand("analytic", "Closed-form probabilities and moments");
  common(analytic, true);
  analytic->add_option("--edge", cfg.edge, "Edge e as i,j")->required();
  analytic->add_option("--edge2", cfg.edge2, "Second edge f as k,l");

  auto* series = app.add_subcommand("series", "Connectedness series and verdict");
  common(series, true);

  auto* clt = app.add_subcommand("clt", "Standardized vertex counts against the normal law");
  common(clt, true);
  clt->add_option("--t-grid", cfg.t_grid, "Increasing times, comma separated")->delimiter(',');
  clt->add_option("--scale", cfg.scale, "auto, urn or exact");
  clt->add_option("--samples-out", cfg.samples_out, "Dump standardized samples here");

  auto* urns = app.add_subcommand("urns", "Urns filled in order; respect factors");
  common(urns, false);
  urns->add_option("--sequence", cfg.sequence, "geometric, double_exp or list");
  urns->add_option("--ratio", cfg.ratio, "Geometric ratio r");
  urns->add_option("--lambdas", cfg.lambdas, "Intensities for --sequence list")->delimiter(',');
  urns->add_option("--block", cfg.block, "Block intensities for one respect factor")->delimiter(',');
  urns->add_option("--tail", cfg.tail, "Tail mass for --block");
  urns->add_option("--blocks", cfg.blocks, "Number of factors");
  urns->add_option("--k-max", cfg.k_max, "Largest k for the Monte Carlo in-order check");

  auto* complete = app.add_subcommand("complete", "Essential-completeness product");
  common(complete, true);
  complete->add_option("--blocks", cfg.blocks, "Number of blocks");

  auto* couple = app.add_subcommand("couple", "The exp(3) coupling of vertices and urns");
  common(couple, true);
  couple->add_option("--audit-states", cfg.audit_states, "Random reachable states to audit");

  auto* verify = app.add_subcommand("verify", "Analytic-versus-empirical checks");
  common(verify, false);
  verify->add_option("--suite", cfg.suite, "all, analytic, urns or montecarlo");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  if (format == "csv") cfg.format = Format::Csv;
  else if (format == "text") cfg.format = Format::Text;
  else {
    err << "error: field 'format': expected csv or text\n";
    return kExitConfigError;
  }
  for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return dispatch(cfg, out, err);
}

}  // namespace eeg::cli
