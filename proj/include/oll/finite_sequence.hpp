#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "oll/errors.hpp"

namespace oll {

/// Disjoint runs of 1-based indices [lo, hi).
struct IndexRuns {
  std::vector<std::pair<double, double>> runs;  // sorted, disjoint

  static IndexRuns single(double lo, double hi) {
    IndexRuns r;
    if (hi > lo) r.runs.push_back({lo, hi});
    return r;
  }

  double count() const {
    double c = 0.0;
    for (const auto& [lo, hi] : runs) c += hi - lo;
    return c;
  }

  bool empty() const { return runs.empty(); }

  bool disjoint_from(const IndexRuns& other) const {
    for (const auto& [a, b] : runs)
      for (const auto& [c, d] : other.runs)
        if (std::max(a, c) < std::min(b, d)) return false;
    return true;
  }
};

/// A finitely supported real sequence on N = {1, 2, ...}, stored as
/// constant-value index runs. Run boundaries are doubles: counts in the
/// constructive witnesses exceed 2^53, where exact integer bookkeeping is
/// below double resolution but all derived quantities (weight sums, norms)
/// remain accurate.
class FiniteSequence {
 public:
  struct Run {
    double lo, hi, v;  // indices [lo, hi), 1-based
  };

  FiniteSequence() = default;

  explicit FiniteSequence(std::vector<Run> runs) : runs_(std::move(runs)) { canonicalize(); }

  static FiniteSequence zero() { return FiniteSequence(); }

  static FiniteSequence from_entries(const std::vector<std::pair<double, double>>& entries) {
    std::vector<Run> runs;
    runs.reserve(entries.size());
    for (const auto& [k, v] : entries) {
      if (!(k >= 1.0) || k != std::floor(k))
        throw Error(ErrorKind::invariant_violation, "entries: indices must be integers >= 1");
      runs.push_back({k, k + 1.0, v});
    }
    return FiniteSequence(std::move(runs));
  }

  static FiniteSequence indicator(const IndexRuns& idx, double value = 1.0) {
    std::vector<Run> runs;
    for (const auto& [lo, hi] : idx.runs) runs.push_back({lo, hi, value});
    return FiniteSequence(std::move(runs));
  }

  const std::vector<Run>& runs() const noexcept { return runs_; }
  bool is_zero() const noexcept { return runs_.empty(); }

  double support_count() const {
    double c = 0.0;
    for (const auto& r : runs_) c += r.hi - r.lo;
    return c;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& r : runs_) m = std::max(m, std::abs(r.v));
    return m;
  }

  bool has_infinite_value() const {
    for (const auto& r : runs_)
      if (std::isinf(r.v)) return true;
    return false;
  }

  double value_at(double k) const {
    for (const auto& r : runs_)
      if (r.lo <= k && k < r.hi) return r.v;
    return 0.0;
  }

  FiniteSequence abs() const {
    auto rs = runs_;
    for (auto& r : rs) r.v = std::abs(r.v);
    return FiniteSequence(std::move(rs));
  }

  FiniteSequence scaled(double c) const {
    if (c == 0.0) return zero();
    auto rs = runs_;
    for (auto& r : rs) r.v *= c;
    return FiniteSequence(std::move(rs));
  }

  FiniteSequence restricted(const IndexRuns& idx) const {
    std::vector<Run> out;
    for (const auto& r : runs_)
      for (const auto& [lo, hi] : idx.runs) {
        double a = std::max(r.lo, lo), b = std::min(r.hi, hi);
        if (b > a) out.push_back({a, b, r.v});
      }
    return FiniteSequence(std::move(out));
  }

  /// x * chi_{N \ E} + value * chi_E
  FiniteSequence replace_on(const IndexRuns& e_set, double value) const {
    std::vector<Run> out;
    for (const auto& r : runs_) {
      double cursor = r.lo;
      for (const auto& [lo, hi] : e_set.runs) {
        double a = std::max(cursor, lo), b = std::min(r.hi, hi);
        if (b <= a) continue;
        if (a > cursor) out.push_back({cursor, a, r.v});
        cursor = b;
      }
      if (cursor < r.hi) out.push_back({cursor, r.hi, r.v});
    }
    for (const auto& [lo, hi] : e_set.runs)
      if (hi > lo) out.push_back({lo, hi, value});
    return FiniteSequence(std::move(out));
  }

  friend FiniteSequence add(const FiniteSequence& x, const FiniteSequence& y) {
    std::vector<double> cuts;
    for (const auto& r : x.runs_) { cuts.push_back(r.lo); cuts.push_back(r.hi); }
    for (const auto& r : y.runs_) { cuts.push_back(r.lo); cuts.push_back(r.hi); }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Run> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      double v = x.value_at(cuts[i]) + y.value_at(cuts[i]);
      if (v != 0.0) out.push_back({cuts[i], cuts[i + 1], v});
    }
    return FiniteSequence(std::move(out));
  }

 private:
  void canonicalize() {
    for (auto& r : runs_) {
      if (std::isnan(r.lo) || std::isnan(r.hi) || std::isnan(r.v))
        throw Error(ErrorKind::invariant_violation, "entries: NaN entry");
      if (!(r.lo >= 1.0) || !(r.hi > r.lo))
        throw Error(ErrorKind::invariant_violation, "entries: runs must satisfy 1 <= lo < hi");
    }
    std::sort(runs_.begin(), runs_.end(), [](const Run& l, const Run& r) { return l.lo < r.lo; });
    for (std::size_t i = 0; i + 1 < runs_.size(); ++i)
      if (runs_[i].hi > runs_[i + 1].lo)
        throw Error(ErrorKind::invariant_violation, "entries: duplicate or overlapping indices");
    std::vector<Run> out;
    for (const auto& r : runs_) {
      if (r.v == 0.0) continue;
      if (!out.empty() && out.back().hi == r.lo && out.back().v == r.v) {
        out.back().hi = r.hi;
      } else {
        out.push_back(r);
      }
    }
    runs_ = std::move(out);
  }

  std::vector<Run> runs_;
};

/// Counting-measure distribution d_x(lambda) = #{ k : |x(k)| > lambda }.
inline double distribution(const FiniteSequence& x, double lambda) {
  if (std::isnan(lambda) || lambda < 0.0)
    throw Error(ErrorKind::domain_error, "distribution: lambda must be >= 0");
  double c = 0.0;
  for (const auto& r : x.runs())
    if (std::abs(r.v) > lambda) c += r.hi - r.lo;
  return c;
}

/// |values| sorted descending and packed onto initial indices.
inline FiniteSequence rearrange(const FiniteSequence& x) {
  std::vector<std::pair<double, double>> items;  // (|v|, count)
  items.reserve(x.runs().size());
  for (const auto& r : x.runs()) items.push_back({std::abs(r.v), r.hi - r.lo});
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  std::vector<FiniteSequence::Run> out;
  double cursor = 1.0;
  for (const auto& [v, n] : items) {
    out.push_back({cursor, cursor + n, v});
    cursor += n;
  }
  return FiniteSequence(std::move(out));
}

/// Sum_{k < t} x(k) treating the run structure as exact (t at run boundaries).
inline double partial_sum(const FiniteSequence& x, double t) {
  double s = 0.0;
  for (const auto& r : x.runs()) {
    if (r.lo >= t) break;
    s += r.v * (std::min(r.hi, t) - r.lo);
  }
  return s;
}

inline bool majorizes(const FiniteSequence& y, const FiniteSequence& x) {
  FiniteSequence xs = rearrange(x), ys = rearrange(y);
  std::vector<double> cuts;
  for (const auto& r : xs.runs()) { cuts.push_back(r.lo); cuts.push_back(r.hi); }
  for (const auto& r : ys.runs()) { cuts.push_back(r.lo); cuts.push_back(r.hi); }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (double t : cuts)
    if (partial_sum(xs, t) > partial_sum(ys, t)) return false;
  return true;
}

/// Exact sum_k x(k) h(k).
inline double dot(const FiniteSequence& x, const FiniteSequence& h) {
  double s = 0.0;
  for (const auto& r : x.runs())
    for (const auto& q : h.runs()) {
      double lo = std::max(r.lo, q.lo), hi = std::min(r.hi, q.hi);
      if (hi > lo) s += r.v * q.v * (hi - lo);
    }
  return s;
}

inline bool is_nonneg_decreasing(const FiniteSequence& y) {
  const auto& rs = y.runs();
  if (rs.empty()) return true;
  if (rs.front().lo != 1.0) return false;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].v < 0.0) return false;
    if (i > 0 && (rs[i].lo != rs[i - 1].hi || rs[i].v > rs[i - 1].v)) return false;
  }
  return true;
}

}  // namespace oll
