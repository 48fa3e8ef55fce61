#include "thymodyn/scenario.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace thymodyn {

using nlohmann::json;

namespace {

struct ParamField {
  const char* name;
  double ModelParams::*member;
};

constexpr std::array<ParamField, 12> kParamFields{{
    {"s0", &ModelParams::s0},
    {"lambda_t", &ModelParams::lambda_t},
    {"lambda_n", &ModelParams::lambda_n},
    {"mu_n", &ModelParams::mu_n},
    {"mu_np", &ModelParams::mu_np},
    {"c", &ModelParams::c},
    {"lambda_mn", &ModelParams::lambda_mn},
    {"mu_m", &ModelParams::mu_m},
    {"lambda_a", &ModelParams::lambda_a},
    {"np_bar", &ModelParams::np_bar},
    {"s_bar", &ModelParams::s_bar},
    {"b", &ModelParams::b},
}};

double ModelParams::*find_param(const std::string& name) {
  for (const ParamField& field : kParamFields)
    if (name == field.name) return field.member;
  return nullptr;
}

void reject_unknown_keys(const json& object, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* name : allowed)
      if (key == name) { known = true; break; }
    if (!known)
      throw ConfigError(std::string("unknown key \"") + key + "\" in " + where);
  }
}

double number_at(const json& object, const char* where, const char* key, double fallback) {
  if (!object.contains(key)) return fallback;
  const json& v = object.at(key);
  if (!v.is_number())
    throw ConfigError(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

}  // namespace

const char* to_string(CFormulaRate r) {
  return r == CFormulaRate::naive_death ? "naive_death" : "prolif_death";
}

ScenarioSpec ScenarioSpec::preset(int id) {
  if (id < 1 || id > 3) throw ConfigError("unknown scenario " + std::to_string(id));
  ScenarioSpec spec;
  spec.id = id;
  return spec;
}

ModelParams ScenarioSpec::resolve_params() const {
  ModelParams p;
  switch (id) {
    case 0:
      break;
    case 1:
      p.c = 0.0;
      p.lambda_n = 0.22;
      p.lambda_mn = 0.05;
      p.np_bar = 387.0;
      p.s_bar = 0.48;
      p.b = 3.4;
      p.mu_np = 0.13;
      break;
    case 2:
      p.s_bar = 0.0;
      p.b = 0.0;
      p.lambda_n = 2.1;
      p.lambda_mn = 0.0;
      p.np_bar = 713.0;
      p.mu_np = 0.13;
      break;
    case 3:
      p.s_bar = 0.0;
      p.lambda_n = 0.003;
      p.lambda_mn = 0.0;
      p.np_bar = 392.0;
      p.b = 4.2;
      p.mu_np = 0.13;
      break;
    default:
      throw ConfigError("unknown scenario " + std::to_string(id));
  }

  for (const auto& [name, value] : overrides) {
    double ModelParams::*member = find_param(name);
    if (!member) throw ConfigError("unknown parameter override \"" + name + "\"");
    p.*member = value;
  }

  // Proliferation scenarios derive c from the configured seed rate and the
  // effective np_bar unless c was set explicitly.
  if ((id == 2 || id == 3) && !overrides.count("c")) {
    const double rate = c_formula_rate == CFormulaRate::naive_death ? p.mu_n : p.mu_np;
    p.c = equilibrium_proliferation_rate(rate, p.np_bar);
  }

  p.validate();
  return p;
}

std::string ScenarioSpec::scenario_label() const {
  return id == 0 ? "custom" : std::to_string(id);
}

bool ScenarioSpec::operator==(const ScenarioSpec& other) const {
  return id == other.id && overrides == other.overrides &&
         c_formula_rate == other.c_formula_rate &&
         sd.dt == other.sd.dt && sd.horizon == other.sd.horizon &&
         sd.record_every == other.sd.record_every &&
         sd.initial.t == other.sd.initial.t && sd.initial.n == other.sd.initial.n &&
         sd.initial.np == other.sd.initial.np && sd.initial.m == other.sd.initial.m &&
         abs.dt == other.abs.dt && abs.horizon == other.abs.horizon &&
         abs.record_every == other.abs.record_every && abs.seed == other.abs.seed &&
         abs.scale == other.abs.scale && abs.initial_naive == other.abs.initial_naive &&
         abs.replicates == other.abs.replicates && actives_path == other.actives_path;
}

ScenarioSpec parse_scenario_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown_keys(root, "config",
                      {"scenario", "overrides", "c_formula_rate", "sd", "abs", "actives"});

  ScenarioSpec spec;

  if (!root.contains("scenario")) throw ConfigError("config is missing \"scenario\"");
  const json& sc = root.at("scenario");
  if (sc.is_number_integer()) {
    const int id = sc.get<int>();
    if (id < 1 || id > 3) throw ConfigError("unknown scenario " + std::to_string(id));
    spec.id = id;
  } else if (sc.is_string() && sc.get<std::string>() == "custom") {
    spec.id = 0;
  } else {
    throw ConfigError("\"scenario\" must be 1, 2, 3 or \"custom\"");
  }

  if (root.contains("overrides")) {
    const json& ov = root.at("overrides");
    if (!ov.is_object()) throw ConfigError("\"overrides\" must be an object");
    for (const auto& [key, value] : ov.items()) {
      if (!find_param(key))
        throw ConfigError("unknown key \"" + key + "\" in overrides");
      if (!value.is_number())
        throw ConfigError("overrides." + key + " must be a number");
      spec.overrides[key] = value.get<double>();
    }
  }

  if (root.contains("c_formula_rate")) {
    const std::string v = root.at("c_formula_rate").is_string()
                              ? root.at("c_formula_rate").get<std::string>()
                              : std::string();
    if (v == "naive_death") spec.c_formula_rate = CFormulaRate::naive_death;
    else if (v == "prolif_death") spec.c_formula_rate = CFormulaRate::prolif_death;
    else throw ConfigError("\"c_formula_rate\" must be \"naive_death\" or \"prolif_death\"");
  }

  if (root.contains("sd")) {
    const json& sd = root.at("sd");
    if (!sd.is_object()) throw ConfigError("\"sd\" must be an object");
    reject_unknown_keys(sd, "sd", {"dt", "horizon", "record_every", "initial"});
    spec.sd.dt = number_at(sd, "sd", "dt", spec.sd.dt);
    spec.sd.horizon = number_at(sd, "sd", "horizon", spec.sd.horizon);
    spec.sd.record_every = number_at(sd, "sd", "record_every", spec.sd.record_every);
    if (sd.contains("initial")) {
      const json& init = sd.at("initial");
      if (!init.is_object()) throw ConfigError("sd.initial must be an object");
      reject_unknown_keys(init, "sd.initial", {"n", "np", "m"});
      spec.sd.initial.n = number_at(init, "sd.initial", "n", spec.sd.initial.n);
      spec.sd.initial.np = number_at(init, "sd.initial", "np", spec.sd.initial.np);
      spec.sd.initial.m = number_at(init, "sd.initial", "m", spec.sd.initial.m);
    }
  }

  if (root.contains("abs")) {
    const json& ab = root.at("abs");
    if (!ab.is_object()) throw ConfigError("\"abs\" must be an object");
    reject_unknown_keys(ab, "abs", {"dt", "horizon", "record_every", "seed", "scale",
                                    "initial_naive", "replicates"});
    spec.abs.dt = number_at(ab, "abs", "dt", spec.abs.dt);
    spec.abs.horizon = number_at(ab, "abs", "horizon", spec.abs.horizon);
    spec.abs.record_every = number_at(ab, "abs", "record_every", spec.abs.record_every);
    if (ab.contains("seed")) {
      if (!ab.at("seed").is_number_unsigned() && !ab.at("seed").is_number_integer())
        throw ConfigError("abs.seed must be a non-negative integer");
      spec.abs.seed = ab.at("seed").get<std::uint64_t>();
    }
    spec.abs.scale = number_at(ab, "abs", "scale", spec.abs.scale);
    if (ab.contains("initial_naive")) {
      if (!ab.at("initial_naive").is_number_integer())
        throw ConfigError("abs.initial_naive must be an integer");
      spec.abs.initial_naive = ab.at("initial_naive").get<std::int64_t>();
    }
    if (ab.contains("replicates")) {
      if (!ab.at("replicates").is_number_integer())
        throw ConfigError("abs.replicates must be an integer");
      spec.abs.replicates = ab.at("replicates").get<int>();
    }
  }

  if (root.contains("actives")) {
    if (!root.at("actives").is_string())
      throw ConfigError("\"actives\" must be a file path string");
    spec.actives_path = root.at("actives").get<std::string>();
  }

  // Fail fast on anything inconsistent, not at run time.
  const ModelParams params = spec.resolve_params();
  spec.sd.validate();
  spec.abs.validate(params);
  return spec;
}

ScenarioSpec parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_json(buffer.str());
}

std::string scenario_to_json(const ScenarioSpec& spec) {
  json root;
  if (spec.id == 0) root["scenario"] = "custom";
  else root["scenario"] = spec.id;
  root["overrides"] = json::object();
  for (const auto& [key, value] : spec.overrides) root["overrides"][key] = value;
  root["c_formula_rate"] = to_string(spec.c_formula_rate);
  root["sd"] = {
      {"dt", spec.sd.dt},
      {"horizon", spec.sd.horizon},
      {"record_every", spec.sd.record_every},
      {"initial", {{"n", spec.sd.initial.n}, {"np", spec.sd.initial.np}, {"m", spec.sd.initial.m}}},
  };
  root["abs"] = {
      {"dt", spec.abs.dt},
      {"horizon", spec.abs.horizon},
      {"record_every", spec.abs.record_every},
      {"seed", spec.abs.seed},
      {"scale", spec.abs.scale},
      {"initial_naive", spec.abs.initial_naive},
      {"replicates", spec.abs.replicates},
  };
  if (!spec.actives_path.empty()) root["actives"] = spec.actives_path;
  return root.dump(2) + "\n";
}

}  // namespace thymodyn
