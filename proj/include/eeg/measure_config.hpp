#pragma once

#include <string>

#include "json.hpp"

#include "eeg/measure.hpp"

namespace eeg {

/// Parses a measure config object:
///   {"family": "power_law_product", "gamma": 2.5, "n_max": 200, "normalize": true}
/// Other families: "first_rank" ("sigma": [...] or "sigma_power" + "n_max"),
/// "factorial_max" ("n_max"), "double_exp" ("n_max"), "isolated_edges"
/// ("weights": [...]), "explicit" ("edges": [[i, j, mass], ...]).
/// Throws ConfigError naming the offending field.
MeasureSpec measure_from_json(const nlohmann::json& config);

/// Inverse of measure_from_json up to list-parameter canonicalization.
nlohmann::json measure_to_json(const MeasureSpec& spec);

/// Reads a config file, or parses the argument directly when it starts
/// with '{'.
MeasureSpec load_measure(const std::string& path_or_inline);

}  // namespace eeg
