#include "thymodyn/model.hpp"

#include <cmath>
#include <utility>

namespace thymodyn {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void ModelParams::validate() const {
  const std::pair<const char*, double> rates[] = {
      {"s0", s0},           {"lambda_t", lambda_t}, {"lambda_n", lambda_n},
      {"mu_n", mu_n},       {"mu_np", mu_np},       {"c", c},
      {"lambda_mn", lambda_mn}, {"mu_m", mu_m},     {"lambda_a", lambda_a},
      {"s_bar", s_bar},     {"b", b},
  };
  for (const auto& [name, value] : rates)
    require(finite_nonneg(value), std::string("ModelParams.") + name + " must be finite and >= 0");
  require(std::isfinite(np_bar) && np_bar > 0.0, "ModelParams.np_bar must be > 0");
}

void StateVector::validate() const {
  require(finite_nonneg(t), "StateVector.t must be finite and >= 0");
  require(finite_nonneg(n), "StateVector.n must be finite and >= 0");
  require(finite_nonneg(np), "StateVector.np must be finite and >= 0");
  require(finite_nonneg(m), "StateVector.m must be finite and >= 0");
}

ActivesTable::ActivesTable(std::vector<Knot> knots) : knots_(std::move(knots)) {
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    require(std::isfinite(knots_[i].age), "ActivesTable age must be finite");
    require(finite_nonneg(knots_[i].cells), "ActivesTable cells must be >= 0");
    if (i > 0)
      require(knots_[i].age > knots_[i - 1].age, "ActivesTable ages must be strictly increasing");
  }
}

double ActivesTable::at(double age) const {
  if (knots_.empty()) return 0.0;
  if (age <= knots_.front().age) return knots_.front().cells;
  if (age >= knots_.back().age) return knots_.back().cells;
  // Knots are few (yearly early-life values); linear scan is fine.
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (age <= knots_[i].age) {
      const auto& a = knots_[i - 1];
      const auto& b = knots_[i];
      const double w = (age - a.age) / (b.age - a.age);
      return a.cells + w * (b.cells - a.cells);
    }
  }
  return knots_.back().cells;
}

double export_modifier(double np, const ModelParams& p) {
  return 1.0 / (1.0 + p.s_bar * np / p.np_bar);
}

double death_modifier(double np, const ModelParams& p) {
  const double x = np / p.np_bar;
  return 1.0 + (p.b * x) / (1.0 + x);
}

double dilution_modifier(double n, double np, const ModelParams& p) {
  return 1.0 / (1.0 + (n + np) / p.np_bar);
}

double thymic_export_rate(double t, double np, const ModelParams& p) {
  return p.s0 * std::exp(-p.lambda_t * t) * export_modifier(np, p);
}

Derivatives derivatives(const StateVector& state, const ModelParams& p,
                        const ActivesTable& actives) {
  Derivatives d;
  d.dn = thymic_export_rate(state.t, state.np, p) -
         (p.lambda_n + p.mu_n * death_modifier(state.np, p)) * state.n;
  d.dnp = p.lambda_n * state.n +
          (p.c * dilution_modifier(state.n, state.np, p) - p.mu_np) * state.np +
          p.lambda_mn * state.m;
  d.dm = p.lambda_a * actives.at(state.t) - p.mu_m * state.m - p.lambda_mn * state.m;
  return d;
}

double equilibrium_proliferation_rate(double death_rate, double np_bar) {
  require(np_bar > 0.0, "np_bar must be > 0");
  return death_rate * (1.0 + kProliferationEquilibriumCells / np_bar);
}

}  // namespace thymodyn
