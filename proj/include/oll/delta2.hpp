#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "oll/errors.hpp"
#include "oll/orlicz_function.hpp"

namespace oll {

enum class Delta2Regime { Global = 0, AtInfinity = 1, AtZero = 2 };

inline std::string regime_name(Delta2Regime r) {
  switch (r) {
    case Delta2Regime::Global: return "global";
    case Delta2Regime::AtInfinity: return "at-infinity";
    case Delta2Regime::AtZero: return "at-zero";
  }
  return "?";
}

/// Geometric grid of probe points t = lo, lo*ratio, ... <= hi, clamped to the
/// regime (t >= 1 for at-infinity, t <= 1 for at-zero, both for global).
struct GridSpec {
  double lo = std::ldexp(1.0, -30);
  double hi = std::ldexp(1.0, 30);
  double ratio = 2.0;
};

struct Delta2Witness {
  double t;
  double ratio;  // phi(2t) / phi(t)
};

/// Outcome of a doubling-condition probe. "satisfied-up-to-budget" is
/// explicitly not a proof; "failure-witnessed" carries concrete t with
/// phi(2t) > K phi(t).
struct Delta2Report {
  Delta2Regime regime;
  bool failure_witnessed = false;
  double threshold_k = 0.0;
  double ratio_bound = 0.0;  // max observed ratio phi(2t)/phi(t)
  std::vector<Delta2Witness> witnesses;

  std::string verdict_name() const {
    return failure_witnessed ? "failure-witnessed" : "satisfied-up-to-budget";
  }
};

inline Delta2Report delta2_probe(const OrliczFunction& phi, Delta2Regime regime,
                                 double threshold_k, const GridSpec& grid = {}) {
  if (!(threshold_k > 1.0))
    throw Error(ErrorKind::domain_error, "delta2: threshold K must exceed 1");
  if (!(grid.lo > 0.0) || !(grid.hi >= grid.lo) || !(grid.ratio > 1.0))
    throw Error(ErrorKind::domain_error, "delta2: grid must satisfy 0 < lo <= hi, ratio > 1");

  double lo = grid.lo, hi = grid.hi;
  if (regime == Delta2Regime::AtInfinity) lo = std::max(lo, 1.0);
  if (regime == Delta2Regime::AtZero) hi = std::min(hi, 1.0);

  Delta2Report report;
  report.regime = regime;
  report.threshold_k = threshold_k;
  for (double t = lo; t <= hi * (1.0 + 1e-12); t *= grid.ratio) {
    double a = phi(t);
    if (!(a > 0.0) || !std::isfinite(a)) continue;  // underflow / overflow: no information
    double b = phi(2.0 * t);
    double ratio = b / a;  // +inf when phi(2t) overflows: a genuine witness
    if (std::isnan(ratio)) continue;
    report.ratio_bound = std::max(report.ratio_bound, ratio);
    if (ratio > threshold_k) {
      report.failure_witnessed = true;
      if (report.witnesses.size() < 64) report.witnesses.push_back({t, ratio});
    }
  }
  return report;
}

/// Search for t_1, ..., t_N with phi((1 + 1/n) t_n) > 2^n phi(t_n), scanning
/// a geometric grid outward in the regime direction and taking the first hit
/// past the previous t (and past t_floor, when given). The t_n increase for
/// at-infinity and decrease toward 0 for at-zero.
///
/// The default grid ratio is 1.5 rather than the doubling grid used by the
/// probes: a doubling scan forces t_n ~ 2^n for exponential-type phi, which
/// pushes phi(t_n) past floating range before n = 12.
struct FailureSearchOptions {
  double grid_ratio = 1.5;
  double t_floor = 0.0;  // at-infinity only: skip grid points below this
};

inline std::vector<double> find_delta2_failure_sequence(const OrliczFunction& phi,
                                                        Delta2Regime regime, int count,
                                                        const FailureSearchOptions& opts = {}) {
  if (regime == Delta2Regime::Global)
    throw Error(ErrorKind::domain_error,
                "failure sequence: regime must be at-infinity or at-zero");
  if (count < 0) throw Error(ErrorKind::domain_error, "failure sequence: count must be >= 0");
  if (!(opts.grid_ratio > 1.0))
    throw Error(ErrorKind::domain_error, "failure sequence: grid ratio must exceed 1");

  const bool upward = regime == Delta2Regime::AtInfinity;
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(count));
  double prev = upward ? 0.0 : std::numeric_limits<double>::infinity();
  for (int n = 1; n <= count; ++n) {
    const double factor = 1.0 + 1.0 / n;
    const double pow2n = std::ldexp(1.0, n);
    double t = 1.0;
    bool found = false;
    while (t > 1e-300 && t < 1e300) {
      bool admissible = upward ? (t > prev && t >= opts.t_floor) : (t < prev);
      if (admissible) {
        double a = phi(t);
        double b = phi(factor * t);
        if (a > 0.0 && std::isfinite(a) && std::isfinite(b) && std::isfinite(pow2n * a) &&
            b > pow2n * a) {
          found = true;
          break;
        }
      }
      t = upward ? t * opts.grid_ratio : t / opts.grid_ratio;
    }
    if (!found)
      throw Error(ErrorKind::search_exhausted,
                  "failure sequence: no t_" + std::to_string(n) +
                      " within floating range; phi likely satisfies the " + regime_name(regime) +
                      " doubling condition");
    ts.push_back(t);
    prev = t;
  }
  return ts;
}

}  // namespace oll
