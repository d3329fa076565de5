#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "oll/errors.hpp"

namespace oll {

/// Finite union of disjoint half-open intervals [a, b) inside [0, gamma).
struct IntervalSet {
  std::vector<std::pair<double, double>> intervals;  // sorted, disjoint

  static IntervalSet single(double a, double b) {
    IntervalSet s;
    if (b > a) s.intervals.push_back({a, b});
    return s;
  }

  double measure() const {
    double m = 0.0;
    for (const auto& [a, b] : intervals) m += b - a;
    return m;
  }

  bool empty() const { return intervals.empty(); }

  void normalize() {
    std::sort(intervals.begin(), intervals.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& iv : intervals) {
      if (!(iv.second > iv.first)) continue;
      if (!out.empty() && iv.first <= out.back().second) {
        out.back().second = std::max(out.back().second, iv.second);
      } else {
        out.push_back(iv);
      }
    }
    intervals = std::move(out);
  }

  bool disjoint_from(const IntervalSet& other) const {
    for (const auto& [a, b] : intervals)
      for (const auto& [c, d] : other.intervals)
        if (std::max(a, c) < std::min(b, d)) return false;
    return true;
  }
};

/// An exactly representable element of L^0[0, gamma): finitely many disjoint
/// constant pieces, zero elsewhere. Pieces are kept sorted with zero values
/// dropped and touching equal-value pieces merged. Values of +-inf are
/// representable (sentinels for non-order-continuous elements); modulars and
/// norms reject them.
class StepFunction {
 public:
  struct Piece {
    double a, b, v;
  };

  explicit StepFunction(double gamma) : gamma_(gamma) { check_gamma(); }

  StepFunction(double gamma, std::vector<Piece> pieces) : gamma_(gamma), pieces_(std::move(pieces)) {
    check_gamma();
    canonicalize();
  }

  static StepFunction zero(double gamma) { return StepFunction(gamma); }

  static StepFunction indicator(double gamma, double a, double b, double value = 1.0) {
    return StepFunction(gamma, {{a, b, value}});
  }

  double gamma() const noexcept { return gamma_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  bool is_zero() const noexcept { return pieces_.empty(); }

  double support_measure() const {
    double m = 0.0;
    for (const auto& p : pieces_) m += p.b - p.a;
    return m;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& p : pieces_) m = std::max(m, std::abs(p.v));
    return m;
  }

  bool has_infinite_value() const {
    for (const auto& p : pieces_)
      if (std::isinf(p.v)) return true;
    return false;
  }

  double value_at(double t) const {
    for (const auto& p : pieces_)
      if (p.a <= t && t < p.b) return p.v;
    return 0.0;
  }

  StepFunction abs() const {
    std::vector<Piece> ps = pieces_;
    for (auto& p : ps) p.v = std::abs(p.v);
    return StepFunction(gamma_, std::move(ps));
  }

  StepFunction scaled(double c) const {
    if (c == 0.0) return zero(gamma_);
    std::vector<Piece> ps = pieces_;
    for (auto& p : ps) p.v *= c;
    return StepFunction(gamma_, std::move(ps));
  }

  /// x * chi_A
  StepFunction restricted(const IntervalSet& a_set) const {
    std::vector<Piece> out;
    for (const auto& p : pieces_)
      for (const auto& [c, d] : a_set.intervals) {
        double lo = std::max(p.a, c), hi = std::min(p.b, d);
        if (hi > lo) out.push_back({lo, hi, p.v});
      }
    return StepFunction(gamma_, std::move(out));
  }

  /// x * chi_{I \ E} + value * chi_E  (the witness perturbation shape)
  StepFunction replace_on(const IntervalSet& e_set, double value) const {
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
      // subtract E from this piece
      double cursor = p.a;
      for (const auto& [c, d] : e_set.intervals) {
        double lo = std::max(cursor, c), hi = std::min(p.b, d);
        if (hi <= lo) continue;
        if (lo > cursor) out.push_back({cursor, lo, p.v});
        cursor = hi;
      }
      if (cursor < p.b) out.push_back({cursor, p.b, p.v});
    }
    for (const auto& [c, d] : e_set.intervals)
      if (d > c) out.push_back({c, d, value});
    return StepFunction(gamma_, std::move(out));
  }

  friend StepFunction add(const StepFunction& x, const StepFunction& y) {
    if (x.gamma_ != y.gamma_)
      throw Error(ErrorKind::domain_error, "add: mismatched domain lengths");
    std::vector<double> cuts;
    for (const auto& p : x.pieces_) { cuts.push_back(p.a); cuts.push_back(p.b); }
    for (const auto& p : y.pieces_) { cuts.push_back(p.a); cuts.push_back(p.b); }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Piece> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double v = x.value_at(cuts[i]) + y.value_at(cuts[i]);
      if (v != 0.0) out.push_back({cuts[i], cuts[i + 1], v});
    }
    return StepFunction(x.gamma_, std::move(out));
  }

 private:
  void check_gamma() const {
    if (std::isnan(gamma_) || !(gamma_ > 0.0))
      throw Error(ErrorKind::invariant_violation, "gamma: domain length must be positive");
  }

  void canonicalize() {
    for (auto& p : pieces_) {
      if (std::isnan(p.a) || std::isnan(p.b) || std::isnan(p.v))
        throw Error(ErrorKind::invariant_violation, "pieces: NaN entry");
      if (!(p.a >= 0.0) || !(p.b > p.a) || !std::isfinite(p.a) || !std::isfinite(p.b))
        throw Error(ErrorKind::invariant_violation,
                    "pieces: intervals must satisfy 0 <= a < b < inf");
      if (p.b > gamma_)
        throw Error(ErrorKind::invariant_violation, "pieces: interval exceeds [0, gamma)");
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Piece& l, const Piece& r) { return l.a < r.a; });
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
      if (pieces_[i].b > pieces_[i + 1].a)
        throw Error(ErrorKind::invariant_violation, "pieces: intervals overlap");
    std::vector<Piece> out;
    for (const auto& p : pieces_) {
      if (p.v == 0.0) continue;
      if (!out.empty() && out.back().b == p.a && out.back().v == p.v) {
        out.back().b = p.b;
      } else {
        out.push_back(p);
      }
    }
    pieces_ = std::move(out);
  }

  double gamma_;
  std::vector<Piece> pieces_;
};

/// d_x(lambda) = m{ t : |x(t)| > lambda }, exact.
inline double distribution(const StepFunction& x, double lambda) {
  if (std::isnan(lambda) || lambda < 0.0)
    throw Error(ErrorKind::domain_error, "distribution: lambda must be >= 0");
  double m = 0.0;
  for (const auto& p : x.pieces())
    if (std::abs(p.v) > lambda) m += p.b - p.a;
  return m;
}

/// Decreasing rearrangement: |values| sorted descending and packed onto
/// [0, support measure). Ties keep original piece order (irrelevant to any
/// result; rearrangement is equimeasurability-unique).
inline StepFunction rearrange(const StepFunction& x) {
  std::vector<std::pair<double, double>> items;  // (|v|, length)
  items.reserve(x.pieces().size());
  for (const auto& p : x.pieces()) items.push_back({std::abs(p.v), p.b - p.a});
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  std::vector<StepFunction::Piece> out;
  double cursor = 0.0;
  for (const auto& [v, len] : items) {
    out.push_back({cursor, cursor + len, v});
    cursor += len;
  }
  return StepFunction(x.gamma(), std::move(out));
}

/// Partial integral int_0^t of a step function (used on rearrangements).
inline double partial_integral(const StepFunction& x, double t) {
  double s = 0.0;
  for (const auto& p : x.pieces()) {
    if (p.a >= t) break;
    s += p.v * (std::min(p.b, t) - p.a);
  }
  return s;
}

/// x majorized by y: int_0^t x* <= int_0^t y* for all t. Both cumulatives are
/// piecewise linear, so comparison at the union of breakpoints is exact.
inline bool majorizes(const StepFunction& y, const StepFunction& x) {
  StepFunction xs = rearrange(x), ys = rearrange(y);
  std::vector<double> cuts;
  for (const auto& p : xs.pieces()) { cuts.push_back(p.a); cuts.push_back(p.b); }
  for (const auto& p : ys.pieces()) { cuts.push_back(p.a); cuts.push_back(p.b); }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (double t : cuts)
    if (partial_integral(xs, t) > partial_integral(ys, t)) return false;
  return true;
}

/// Exact int x y over [0, gamma) (piecewise-constant product).
inline double integral_product(const StepFunction& x, const StepFunction& y) {
  double s = 0.0;
  for (const auto& p : x.pieces())
    for (const auto& q : y.pieces()) {
      double lo = std::max(p.a, q.a), hi = std::min(p.b, q.b);
      if (hi > lo) s += p.v * q.v * (hi - lo);
    }
  return s;
}

inline bool is_nonneg_decreasing(const StepFunction& y) {
  const auto& ps = y.pieces();
  if (ps.empty()) return true;
  // canonical pieces carry nonzero values, so any piece after a zero gap
  // (including an initial one) breaks monotonicity
  if (ps.front().a != 0.0) return false;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].v < 0.0) return false;
    if (i > 0 && (ps[i].a != ps[i - 1].b || ps[i].v > ps[i - 1].v)) return false;
  }
  return true;
}

/// int_0^gamma x y for decreasing nonnegative y (Hardy pairing).
inline double hardy_pairing(const StepFunction& x, const StepFunction& y) {
  if (!is_nonneg_decreasing(y))
    throw Error(ErrorKind::domain_error, "hardy_pairing: y must be nonnegative decreasing");
  return integral_product(x, y);
}

/// Both sides of the truncation inequality
///   int_0^gamma (x chi_A)* y  <=  int_0^{m(A)} x* y,
/// evaluated exactly; the caller asserts lhs <= rhs.
inline std::pair<double, double> truncation_inequality(const StepFunction& x,
                                                       const IntervalSet& a_set,
                                                       const StepFunction& y) {
  if (!is_nonneg_decreasing(y))
    throw Error(ErrorKind::domain_error, "truncation_inequality: y must be nonnegative decreasing");
  StepFunction lhs_f = rearrange(x.restricted(a_set));
  double lhs = integral_product(lhs_f, y);
  double mA = a_set.measure();
  StepFunction rhs_f = rearrange(x).restricted(IntervalSet::single(0.0, mA));
  double rhs = integral_product(rhs_f, y);
  return {lhs, rhs};
}

}  // namespace oll
