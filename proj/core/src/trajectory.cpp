#include "thymodyn/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "thymodyn/model.hpp"

namespace thymodyn {

double trec_percentage(double n, double np) {
  const double total = n + np;
  if (total <= 0.0) return 0.0;
  return 100.0 * n / total;
}

namespace {

double interpolate(const Trajectory& traj, double age, double TrajectorySample::*field) {
  const auto& s = traj.samples;
  if (s.empty() || age < s.front().t || age > s.back().t)
    throw EngineError("trajectory does not cover age " + std::to_string(age));
  const auto it = std::lower_bound(
      s.begin(), s.end(), age,
      [](const TrajectorySample& a, double value) { return a.t < value; });
  if (it == s.begin()) return s.front().*field;
  if (it != s.end() && it->t == age) return (*it).*field;  // exact knot hit
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (hi.t == lo.t) return hi.*field;
  const double w = (age - lo.t) / (hi.t - lo.t);
  return lo.*field + w * (hi.*field - lo.*field);
}

}  // namespace

double Trajectory::trec_at(double age) const {
  return interpolate(*this, age, &TrajectorySample::trec_pct);
}

double Trajectory::stock_at(double age, char stock) const {
  switch (stock) {
    case 'n': return interpolate(*this, age, &TrajectorySample::n);
    case 'p': return interpolate(*this, age, &TrajectorySample::np);
    case 'm': return interpolate(*this, age, &TrajectorySample::m);
    default: throw EngineError(std::string("unknown stock '") + stock + "'");
  }
}

double Trajectory::start_time() const {
  if (samples.empty()) throw EngineError("empty trajectory");
  return samples.front().t;
}

double Trajectory::end_time() const {
  if (samples.empty()) throw EngineError("empty trajectory");
  return samples.back().t;
}

}  // namespace thymodyn
