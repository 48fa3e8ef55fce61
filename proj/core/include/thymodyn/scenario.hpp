#pragma once

#include <map>
#include <string>

#include "thymodyn/abs.hpp"
#include "thymodyn/model.hpp"
#include "thymodyn/sd.hpp"

namespace thymodyn {

/// Which death rate seeds the proliferation-rate formula
/// c = rate * (1 + 300/np_bar) in the scenarios that enable proliferation.
/// The published table is ambiguous between the two; naive_death (mu_n) is
/// the default and the only one that reproduces the known precision ranking.
enum class CFormulaRate { naive_death, prolif_death };

const char* to_string(CFormulaRate r);

/// A scenario: preset id (1-3, or 0 for "custom"), explicit parameter
/// overrides, and the engine configurations.
///
/// Presets:
///   1  no peripheral proliferation:
///      c=0, lambda_n=0.22, lambda_mn=0.05, np_bar=387, s_bar=0.48, b=3.4,
///      mu_np=0.13
///   2  no homeostatic reduction of thymic export or naive death rate:
///      s_bar=0, b=0, lambda_n=2.1, lambda_mn=0, np_bar=713
///   3  homeostatic alteration of the naive death rate only:
///      s_bar=0, lambda_n=0.003, lambda_mn=0, np_bar=392, b=4.2
/// Scenarios 2 and 3 fill c from equilibrium_proliferation_rate unless an
/// explicit "c" override is present.
struct ScenarioSpec {
  int id = 0;  // 0 = custom
  std::map<std::string, double> overrides;
  CFormulaRate c_formula_rate = CFormulaRate::naive_death;
  SdConfig sd;
  AbsConfig abs;
  std::string actives_path;  // empty = all-zero actives table

  static ScenarioSpec preset(int id);

  /// Preset base + overrides, with c derived where applicable.
  /// Throws ConfigError on unknown override keys or invariant violations.
  ModelParams resolve_params() const;

  std::string scenario_label() const;  // "1".."3" or "custom"

  bool operator==(const ScenarioSpec& other) const;
};

/// Parses a JSON config file. Unknown keys anywhere are rejected; messages
/// carry the JSON path or parser line/column. See parse_scenario_json.
ScenarioSpec parse_config(const std::string& path);

/// Same, from a JSON string. Schema:
/// {
///   "scenario": 1|2|3|"custom",
///   "overrides": {"b": 0.0, ...},          // ModelParams fields, optional
///   "c_formula_rate": "naive_death"|"prolif_death",  // optional
///   "sd":  {"dt","horizon","record_every","initial":{"n","np","m"}},
///   "abs": {"dt","horizon","record_every","seed","scale","initial_naive",
///           "replicates"},
///   "actives": "table.csv"                 // optional
/// }
ScenarioSpec parse_scenario_json(const std::string& text);

/// Serialization; parse_scenario_json(scenario_to_json(s)) == s.
std::string scenario_to_json(const ScenarioSpec& spec);

}  // namespace thymodyn
