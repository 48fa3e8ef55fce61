#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace thymodyn {

/// Thrown when a configuration or parameter set violates its invariants.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an engine run fails numerically (diverged integration etc.).
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Total naive pool size (cells/mm^3) at which peripheral proliferation
/// exactly balances the proliferating-pool death rate; the constant in
/// equilibrium_proliferation_rate().
inline constexpr double kProliferationEquilibriumCells = 300.0;

/// Rate and scaling constants of the naive T-cell maintenance model.
///
/// Units: rates in 1/year, populations in cells/mm^3, time in years.
/// Defaults are the published baseline values; scenario presets
/// (scenario.hpp) override the per-scenario ones.
struct ModelParams {
  double s0 = 56615.0;                      ///< thymic output at birth, cells/mm^3/year
  double lambda_t = std::log(2.0) / 15.7;   ///< thymic involution rate (15.7-year half-life)
  double lambda_n = 0.22;                   ///< naive -> naive-proliferating conversion rate
  double mu_n = 4.4;                        ///< thymic-naive baseline death rate
  double mu_np = 0.13;                      ///< proliferation-origin naive death rate
  double c = 0.0;                           ///< peripheral proliferation rate (0 = none)
  double lambda_mn = 0.0;                   ///< memory -> naive-proliferating reversion rate
  double mu_m = 0.05;                       ///< memory death rate
  double lambda_a = 0.0;                    ///< activated -> memory reversion rate
  double np_bar = 300.0;                    ///< equilibrium scaling constant, cells/mm^3
  double s_bar = 0.0;                       ///< thymic-export homeostasis strength (dimensionless)
  double b = 0.0;                           ///< naive death-rate homeostasis strength (dimensionless)

  /// Throws ConfigError unless all rates are finite and >= 0 and np_bar > 0.
  void validate() const;
};

/// The three stocks at one time point. Engines keep n, np, m >= 0
/// (negative integration results are clamped and logged).
struct StateVector {
  double t = 0.0;    ///< age, years
  double n = 0.0;    ///< thymic-origin naive cells, cells/mm^3
  double np = 0.0;   ///< proliferation-origin naive cells, cells/mm^3
  double m = 0.0;    ///< memory cells, cells/mm^3

  void validate() const;
};

/// Piecewise-linear lookup of activated CD4 cells per mm^3 by age.
/// Lookup is total on [0, inf): it clamps to the end values outside the
/// knot range. An empty table is the all-zero default (which, combined
/// with the default lambda_a = 0, leaves the memory stock inert).
class ActivesTable {
 public:
  struct Knot {
    double age;    ///< years
    double cells;  ///< activated CD4 cells/mm^3
  };

  ActivesTable() = default;
  explicit ActivesTable(std::vector<Knot> knots);

  /// Activated cells at `age`, linear between knots, clamped outside.
  double at(double age) const;

  const std::vector<Knot>& knots() const { return knots_; }
  bool empty() const { return knots_.empty(); }

 private:
  std::vector<Knot> knots_;
};

/// Thymic-export homeostasis s(Np) = 1 / (1 + s_bar*np/np_bar).
/// In (0, 1], equal to 1 at np = 0 or s_bar = 0, non-increasing in np.
double export_modifier(double np, const ModelParams& p);

/// Naive death-rate homeostasis g(Np) = 1 + (b*np/np_bar)/(1 + np/np_bar).
/// Non-decreasing from g(0) = 1, bounded above by 1 + b.
double death_modifier(double np, const ModelParams& p);

/// Proliferation dilution h(N,Np) = 1 / (1 + (n+np)/np_bar).
/// In (0, 1], strictly decreasing in n+np.
double dilution_modifier(double n, double np, const ModelParams& p);

/// Cells entering the naive pool from the thymus at age t:
/// s0 * exp(-lambda_t*t) * s(np), cells/mm^3/year.
double thymic_export_rate(double t, double np, const ModelParams& p);

/// Time derivatives of the three stocks, cells/mm^3/year.
struct Derivatives {
  double dn = 0.0;
  double dnp = 0.0;
  double dm = 0.0;
};

/// Right-hand side of the model:
///   dn/dt  = thymic_export_rate(t, np) - [lambda_n + mu_n*g(np)]*n
///   dnp/dt = lambda_n*n + [c*h(n,np) - mu_np]*np + lambda_mn*m
///   dm/dt  = lambda_a*A(t) - mu_m*m - lambda_mn*m
Derivatives derivatives(const StateVector& state, const ModelParams& p,
                        const ActivesTable& actives);

/// Proliferation rate at which a naive pool of kProliferationEquilibriumCells
/// cells is stationary under death rate `death_rate`:
/// death_rate * (1 + 300/np_bar). Used to fill ModelParams::c for the
/// scenarios that enable peripheral proliferation.
double equilibrium_proliferation_rate(double death_rate, double np_bar);

}  // namespace thymodyn
