#include "eeg/measure_config.hpp"

#include <fstream>
#include <sstream>

#include "eeg/errors.hpp"

namespace eeg {

namespace {

using nlohmann::json;

const json& field(const json& cfg, const char* name) {
  if (!cfg.contains(name)) throw ConfigError(std::string("measure config: missing field '") + name + "'");
  return cfg.at(name);
}

double real_field(const json& cfg, const char* name) {
  const json& v = field(cfg, name);
  if (!v.is_number()) throw ConfigError(std::string("measure config: field '") + name + "' must be a number");
  return v.get<double>();
}

VertexId window_field(const json& cfg, const char* name) {
  const json& v = field(cfg, name);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 1'000'000) {
    throw ConfigError(std::string("measure config: field '") + name +
                      "' must be an integer in [1, 1000000]");
  }
  return static_cast<VertexId>(v.get<long long>());
}

std::vector<double> real_list(const json& cfg, const char* name) {
  const json& v = field(cfg, name);
  if (!v.is_array()) throw ConfigError(std::string("measure config: field '") + name + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw ConfigError(std::string("measure config: field '") + name + "' must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

MeasureSpec build_family(const json& cfg) {
  const json& fam = field(cfg, "family");
  if (!fam.is_string()) throw ConfigError("measure config: field 'family' must be a string");
  const std::string name = fam.get<std::string>();
  if (name == "power_law_product") {
    return MeasureSpec::power_law_product(real_field(cfg, "gamma"), window_field(cfg, "n_max"));
  }
  if (name == "first_rank") {
    if (cfg.contains("sigma")) return MeasureSpec::first_rank(real_list(cfg, "sigma"));
    if (cfg.contains("sigma_power")) {
      return MeasureSpec::first_rank_power(real_field(cfg, "sigma_power"),
                                           window_field(cfg, "n_max"));
    }
    throw ConfigError("measure config: field 'sigma' (or 'sigma_power' with 'n_max') required");
  }
  if (name == "factorial_max") return MeasureSpec::factorial_max(window_field(cfg, "n_max"));
  if (name == "double_exp") return MeasureSpec::double_exp(window_field(cfg, "n_max"));
  if (name == "isolated_edges") {
    if (cfg.contains("weights")) return MeasureSpec::isolated_edges(real_list(cfg, "weights"));
    if (cfg.contains("count")) {
      const json& c = cfg.at("count");
      if (!c.is_number_integer() || c.get<long long>() < 1 || c.get<long long>() > 500'000) {
        throw ConfigError("measure config: field 'count' must be a positive integer");
      }
      return MeasureSpec::isolated_edges(std::vector<double>(c.get<std::size_t>(), 1.0));
    }
    throw ConfigError("measure config: field 'weights' (or 'count') required");
  }
  if (name == "explicit") {
    const json& edges = field(cfg, "edges");
    if (!edges.is_array()) throw ConfigError("measure config: field 'edges' must be an array");
    std::vector<WeightedEdge> list;
    for (const auto& row : edges) {
      if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer() ||
          !row[1].is_number_integer() || !row[2].is_number()) {
        throw ConfigError("measure config: field 'edges' entries must be [i, j, mass]");
      }
      try {
        list.push_back({Edge(row[0].get<long long>(), row[1].get<long long>()),
                        row[2].get<double>()});
      } catch (const InputError& err) {
        throw ConfigError(std::string("measure config: field 'edges': ") + err.what());
      }
    }
    try {
      return MeasureSpec::explicit_edges(std::move(list));
    } catch (const InputError& err) {
      throw ConfigError(std::string("measure config: field 'edges': ") + err.what());
    }
  }
  throw ConfigError("measure config: field 'family' has unknown value '" + name + "'");
}

}  // namespace

MeasureSpec measure_from_json(const json& cfg) {
  if (!cfg.is_object()) throw ConfigError("measure config must be a JSON object");
  MeasureSpec spec = build_family(cfg);
  if (cfg.contains("normalize")) {
    if (!cfg.at("normalize").is_boolean()) {
      throw ConfigError("measure config: field 'normalize' must be a boolean");
    }
    if (cfg.at("normalize").get<bool>()) spec = spec.normalized();
  }
  return spec;
}

json measure_to_json(const MeasureSpec& spec) {
  json out;
  out["family"] = std::string(spec.family_label());
  switch (spec.family()) {
    case Family::PowerLawProduct:
      out["gamma"] = spec.gamma();
      out["n_max"] = spec.n_max();
      break;
    case Family::FirstRank:
      out["sigma"] = std::vector<double>(spec.list_parameter().begin(), spec.list_parameter().end());
      break;
    case Family::FactorialMax:
    case Family::DoubleExp:
      out["n_max"] = spec.n_max();
      break;
    case Family::IsolatedEdges:
      out["weights"] = std::vector<double>(spec.list_parameter().begin(), spec.list_parameter().end());
      break;
    case Family::Explicit: {
      json edges = json::array();
      const auto support = spec.support();
      const auto masses = spec.support_masses();
      for (std::size_t k = 0; k < support.size(); ++k) {
        edges.push_back({support[k].i(), support[k].j(), masses[k]});
      }
      out["edges"] = std::move(edges);
      break;
    }
  }
  out["normalize"] = spec.is_normalized();
  return out;
}

MeasureSpec load_measure(const std::string& path_or_inline) {
  std::string text;
  if (!path_or_inline.empty() && path_or_inline.front() == '{') {
    text = path_or_inline;
  } else {
    std::ifstream in(path_or_inline);
    if (!in) throw ConfigError("measure config: cannot open '" + path_or_inline + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("measure config: parse error: ") + err.what());
  }
  return measure_from_json(cfg);
}

}  // namespace eeg
