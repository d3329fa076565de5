#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "oll/errors.hpp"
#include "oll/step_function.hpp"

namespace oll {

/// Positive decreasing weight on [0, gamma) or on N, with exact cumulative
/// W(t) = int_0^t w (resp. W(n) = sum_{k<=n} w(k)) and its inverse.
///
/// Kinds:
///   constant  w = c
///   power     w(t) = scale (t + eps0)^{-beta}; on N, w(k) = scale (k + eps0)^{-beta}
///   step      decreasing positive step function covering [0, gamma), gamma finite
///   seq       explicit decreasing prefix w(1..K) with constant positive tail
///
/// Sequence-power cumulatives use an exact prefix table up to 2^17 and the
/// Euler-Maclaurin expansion beyond it; the expansion constant is fitted at
/// the crossover, with error far below double resolution. Block sizes in the
/// sequence witness construction exceed 2^53, so index counts are carried as
/// doubles throughout.
class Weight {
 public:
  enum class Kind { Constant, Power, Step, Seq };
  enum class Domain { Interval, Sequence };

  static constexpr double kPrefixLimit = 131072.0;  // 2^17

  static Weight constant(double c, Domain domain,
                         double gamma = std::numeric_limits<double>::infinity()) {
    if (!(c > 0.0) || !std::isfinite(c))
      throw Error(ErrorKind::invariant_violation, "weight.params.c: must be positive and finite");
    Weight w(Kind::Constant, domain, gamma);
    w.scale_ = c;
    return w;
  }

  static Weight power(double beta, double eps0, Domain domain,
                      double gamma = std::numeric_limits<double>::infinity(),
                      double scale = 1.0) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
      throw Error(ErrorKind::invariant_violation, "weight.params.beta: must be >= 0");
    if (!(eps0 >= 0.0) || !std::isfinite(eps0))
      throw Error(ErrorKind::invariant_violation, "weight.params.eps0: must be >= 0");
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw Error(ErrorKind::invariant_violation, "weight.params.scale: must be positive");
    if (domain == Domain::Interval && beta >= 1.0 && eps0 == 0.0)
      throw Error(ErrorKind::invariant_violation,
                  "weight.params: beta >= 1 with eps0 = 0 makes W(t) infinite for finite t");
    Weight w(Kind::Power, domain, gamma);
    w.beta_ = beta;
    w.eps0_ = eps0;
    w.scale_ = scale;
    if (domain == Domain::Sequence) w.build_prefix();
    return w;
  }

  static Weight step(std::vector<StepFunction::Piece> pieces, double gamma) {
    if (!std::isfinite(gamma) || !(gamma > 0.0))
      throw Error(ErrorKind::invariant_violation, "weight.step: gamma must be finite positive");
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& l, const auto& r) { return l.a < r.a; });
    double edge = 0.0, prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& p = pieces[i];
      if (p.a != edge)
        throw Error(ErrorKind::invariant_violation,
                    "weight.params.pieces[" + std::to_string(i) + "]: must cover [0, gamma) contiguously");
      if (!(p.v > 0.0) || !std::isfinite(p.v))
        throw Error(ErrorKind::invariant_violation,
                    "weight.params.pieces[" + std::to_string(i) + "]: values must be positive");
      if (p.v > prev)
        throw Error(ErrorKind::invariant_violation,
                    "weight.params.pieces[" + std::to_string(i) + "]: values must be nonincreasing");
      prev = p.v;
      edge = p.b;
    }
    if (edge != gamma)
      throw Error(ErrorKind::invariant_violation, "weight.params.pieces: must cover [0, gamma)");
    Weight w(Kind::Step, Domain::Interval, gamma);
    w.pieces_ = std::move(pieces);
    return w;
  }

  static Weight seq(std::vector<double> values, double tail) {
    if (values.empty())
      throw Error(ErrorKind::invariant_violation, "weight.params.values: must be nonempty");
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > 0.0) || !std::isfinite(values[i]) || values[i] > prev)
        throw Error(ErrorKind::invariant_violation,
                    "weight.params.values[" + std::to_string(i) + "]: must be positive nonincreasing");
      prev = values[i];
    }
    if (!(tail > 0.0) || tail > values.back())
      throw Error(ErrorKind::invariant_violation,
                  "weight.params.tail: must satisfy 0 < tail <= last value");
    Weight w(Kind::Seq, Domain::Sequence, std::numeric_limits<double>::infinity());
    w.seq_values_ = std::move(values);
    w.seq_tail_ = tail;
    return w;
  }

  Kind kind() const noexcept { return kind_; }
  Domain domain() const noexcept { return domain_; }
  double gamma() const noexcept { return gamma_; }
  double beta() const noexcept { return beta_; }
  double eps0() const noexcept { return eps0_; }
  double scale() const noexcept { return scale_; }
  const std::vector<StepFunction::Piece>& step_pieces() const { return pieces_; }
  const std::vector<double>& seq_values() const { return seq_values_; }
  double seq_tail() const { return seq_tail_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::Constant: return "constant";
      case Kind::Power: return "power";
      case Kind::Step: return "step";
      case Kind::Seq: return "seq";
    }
    return "?";
  }

  /// Pointwise value w(t) (interval) or w(k) (sequence, k >= 1).
  double at(double t) const {
    switch (kind_) {
      case Kind::Constant:
        return scale_;
      case Kind::Power:
        return scale_ * std::pow(t + eps0_, -beta_);
      case Kind::Step:
        for (const auto& p : pieces_)
          if (p.a <= t && t < p.b) return p.v;
        throw Error(ErrorKind::domain_error, "weight: point outside [0, gamma)");
      case Kind::Seq: {
        double k = std::floor(t);
        if (k <= static_cast<double>(seq_values_.size()))
          return seq_values_[static_cast<std::size_t>(k) - 1];
        return seq_tail_;
      }
    }
    return 0.0;
  }

  /// W(t): exact closed form / partial sums; Euler-Maclaurin beyond the
  /// prefix table for sequence power weights. t may be +inf.
  double cumulative(double t) const {
    if (std::isnan(t) || t < 0.0)
      throw Error(ErrorKind::domain_error, "cumulative: argument must be >= 0");
    if (domain_ == Domain::Interval && t > gamma_ * (1.0 + 1e-12))
      throw Error(ErrorKind::domain_error, "cumulative: argument exceeds gamma");
    switch (kind_) {
      case Kind::Constant:
        return scale_ * t;
      case Kind::Power:
        return domain_ == Domain::Interval ? power_interval_cum(t) : power_seq_cum(t);
      case Kind::Step: {
        double s = 0.0;
        for (const auto& p : pieces_) {
          if (p.a >= t) break;
          s += p.v * (std::min(p.b, t) - p.a);
        }
        return s;
      }
      case Kind::Seq: {
        double k = std::min(t, static_cast<double>(seq_values_.size()));
        double s = 0.0;
        for (double i = 1.0; i <= k; ++i) s += seq_values_[static_cast<std::size_t>(i) - 1];
        if (t > k) s += seq_tail_ * (t - k);
        return s;
      }
    }
    return 0.0;
  }

  /// W(b) - W(a), computed without cancellation for b - a << a.
  double cumulative_delta(double a, double b) const {
    if (b < a) throw Error(ErrorKind::domain_error, "cumulative_delta: need a <= b");
    switch (kind_) {
      case Kind::Constant:
        return scale_ * (b - a);
      case Kind::Power: {
        if (domain_ == Domain::Sequence) {
          if (b <= kPrefixLimit || a <= kPrefixLimit) return power_seq_cum(b) - power_seq_cum(a);
          // both in the asymptotic regime: stable antiderivative difference
          double d = power_antideriv_delta(a, b);
          d += 0.5 * (pw(b) - pw(a));
          d += (dpw(b) - dpw(a)) / 12.0;
          return d;
        }
        if (a + eps0_ == 0.0) return power_interval_cum(b);
        return power_antideriv_delta(a, b);
      }
      default:
        return cumulative(b) - cumulative(a);
    }
  }

  /// Total mass W(gamma) (interval) or W(inf) (sequence); may be +inf.
  double total_mass() const {
    if (domain_ == Domain::Interval) {
      if (std::isinf(gamma_)) {
        if (kind_ == Kind::Constant) return std::numeric_limits<double>::infinity();
        // power: finite iff beta > 1
        if (beta_ > 1.0) return scale_ * std::pow(eps0_, 1.0 - beta_) / (beta_ - 1.0);
        return std::numeric_limits<double>::infinity();
      }
      return cumulative(gamma_);
    }
    // sequence
    switch (kind_) {
      case Kind::Constant:
      case Kind::Seq:
        return std::numeric_limits<double>::infinity();
      case Kind::Power:
        return beta_ > 1.0 ? em_const_ : std::numeric_limits<double>::infinity();
      default:
        return std::numeric_limits<double>::infinity();
    }
  }

  bool w_infinite() const { return std::isinf(total_mass()); }

  /// Smallest a with |W(a) - target| within 1e-12 (1 + target); closed forms
  /// where available. Interval domain only.
  double cumulative_inverse(double target) const {
    if (domain_ != Domain::Interval)
      throw Error(ErrorKind::domain_error, "cumulative_inverse: interval weights only");
    if (!(target >= 0.0))
      throw Error(ErrorKind::domain_error, "cumulative_inverse: target must be >= 0");
    if (target == 0.0) return 0.0;
    double total = total_mass();
    if (target > total * (1.0 + 1e-12))
      throw Error(ErrorKind::target_unreachable,
                  "cumulative_inverse: target exceeds total weight mass (W(inf) < target)");
    switch (kind_) {
      case Kind::Constant:
        return std::min(target / scale_, gamma_);
      case Kind::Power: {
        double T = target / scale_;
        double t;
        if (beta_ == 1.0) {
          t = eps0_ * std::expm1(T);
        } else {
          double q = 1.0 - beta_;
          double base = q * T + std::pow(eps0_, q);
          t = std::pow(base, 1.0 / q) - eps0_;
        }
        return std::clamp(t, 0.0, gamma_);
      }
      case Kind::Step: {
        double s = 0.0;
        for (const auto& p : pieces_) {
          double seg = p.v * (p.b - p.a);
          if (s + seg >= target) return p.a + (target - s) / p.v;
          s += seg;
        }
        return gamma_;
      }
      default:
        throw Error(ErrorKind::internal_error, "cumulative_inverse: unhandled kind");
    }
  }

  /// min { m in N : W(m) > target }. Sequence domain only. For results beyond
  /// 2^53 the integer is below double resolution; the returned count m
  /// satisfies W(m) > target with W(m) - target smaller than one ulp of W.
  double min_index_exceeding(double target) const {
    if (domain_ != Domain::Sequence)
      throw Error(ErrorKind::domain_error, "min_index_exceeding: sequence weights only");
    if (!(target >= 0.0))
      throw Error(ErrorKind::domain_error, "min_index_exceeding: target must be >= 0");
    double total = total_mass();
    if (target >= total)
      throw Error(ErrorKind::target_unreachable,
                  "min_index_exceeding: target exceeds total weight mass");
    switch (kind_) {
      case Kind::Constant: {
        double m = std::floor(target / scale_) + 1.0;
        while (scale_ * m <= target) m += 1.0;
        while (m > 1.0 && scale_ * (m - 1.0) > target) m -= 1.0;
        return m;
      }
      case Kind::Seq: {
        double s = 0.0;
        for (std::size_t i = 0; i < seq_values_.size(); ++i) {
          s += seq_values_[i];
          if (s > target) return static_cast<double>(i + 1);
        }
        double k = static_cast<double>(seq_values_.size());
        double m = k + std::floor((target - s) / seq_tail_) + 1.0;
        while (s + seq_tail_ * (m - k) <= target) m += 1.0;
        while (m > k + 1.0 && s + seq_tail_ * (m - 1.0 - k) > target) m -= 1.0;
        return m;
      }
      case Kind::Power: {
        const auto& pref = *prefix_;
        if (pref.back() > target) {
          std::size_t lo = 1, hi = pref.size() - 1;
          while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (pref[mid] > target) hi = mid; else lo = mid + 1;
          }
          return static_cast<double>(lo);
        }
        // asymptotic inversion + Newton
        double m;
        if (beta_ == 1.0) {
          m = eps0_ * std::exp((target - em_const_) / scale_) - eps0_;
        } else {
          double q = 1.0 - beta_;
          double base = q * (target - em_const_) / scale_;
          m = std::pow(base, 1.0 / q) - eps0_;
        }
        m = std::max(m, kPrefixLimit + 1.0);
        for (int it = 0; it < 100; ++it) {
          double g = power_seq_cum(m) - target;
          double stepv = g / pw(m);
          m -= stepv;
          m = std::max(m, kPrefixLimit + 1.0);
          if (std::abs(stepv) <= 1e-16 * m) break;
        }
        if (m < 9.007199254740992e15) {  // 2^53
          double mi = std::max(std::floor(m), kPrefixLimit + 1.0);
          while (power_seq_cum(mi) <= target) mi += 1.0;
          while (mi > kPrefixLimit + 1.0 && power_seq_cum(mi - 1.0) > target) mi -= 1.0;
          return mi;
        }
        while (power_seq_cum(m) <= target)
          m = std::nextafter(m, std::numeric_limits<double>::infinity());
        return m;
      }
      default:
        throw Error(ErrorKind::internal_error, "min_index_exceeding: unhandled kind");
    }
  }

  /// Same weight scaled by a positive factor (used to normalize w(1) <= 1 in
  /// the sequence witness construction).
  Weight rescaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
      throw Error(ErrorKind::domain_error, "rescaled: factor must be positive");
    Weight w = *this;
    switch (kind_) {
      case Kind::Constant:
      case Kind::Power:
        w.scale_ *= factor;
        if (kind_ == Kind::Power && domain_ == Domain::Sequence) w.build_prefix();
        break;
      case Kind::Step:
        for (auto& p : w.pieces_) p.v *= factor;
        break;
      case Kind::Seq:
        for (auto& v : w.seq_values_) v *= factor;
        w.seq_tail_ *= factor;
        break;
    }
    return w;
  }

 private:
  Weight(Kind k, Domain d, double gamma) : kind_(k), domain_(d), gamma_(gamma) {
    if (domain_ == Domain::Sequence) gamma_ = std::numeric_limits<double>::infinity();
    if (std::isnan(gamma_) || !(gamma_ > 0.0))
      throw Error(ErrorKind::invariant_violation, "weight: gamma must be positive");
  }

  double pw(double x) const { return scale_ * std::pow(x + eps0_, -beta_); }
  double dpw(double x) const { return -beta_ * scale_ * std::pow(x + eps0_, -beta_ - 1.0); }

  double power_antideriv(double x) const {
    if (beta_ == 1.0) return scale_ * std::log(x + eps0_);
    double q = 1.0 - beta_;
    return scale_ * std::pow(x + eps0_, q) / q;
  }

  // F(b) - F(a) without cancellation
  double power_antideriv_delta(double a, double b) const {
    double r = (b - a) / (a + eps0_);
    if (beta_ == 1.0) return scale_ * std::log1p(r);
    double q = 1.0 - beta_;
    return scale_ * std::pow(a + eps0_, q) * std::expm1(q * std::log1p(r)) / q;
  }

  double power_interval_cum(double t) const {
    if (std::isinf(t)) return total_mass();
    if (beta_ == 1.0) return scale_ * std::log1p(t / eps0_);
    double q = 1.0 - beta_;
    if (eps0_ == 0.0) return scale_ * std::pow(t, q) / q;
    return power_antideriv_delta(0.0, t);
  }

  void build_prefix() {
    auto pref = std::make_shared<std::vector<double>>();
    std::size_t n0 = static_cast<std::size_t>(kPrefixLimit);
    pref->resize(n0 + 1);
    (*pref)[0] = 0.0;
    double s = 0.0, comp = 0.0;  // Kahan summation
    for (std::size_t k = 1; k <= n0; ++k) {
      double term = pw(static_cast<double>(k)) - comp;
      double tmp = s + term;
      comp = (tmp - s) - term;
      s = tmp;
      (*pref)[k] = s;
    }
    prefix_ = std::move(pref);
    double n0d = kPrefixLimit;
    em_const_ = prefix_->back() - power_antideriv(n0d) - 0.5 * pw(n0d) - dpw(n0d) / 12.0;
  }

  double power_seq_cum(double m) const {
    if (m <= kPrefixLimit) {
      double mi = std::floor(m + 0.5);
      if (std::abs(m - mi) > 1e-6)
        throw Error(ErrorKind::domain_error, "cumulative: fractional index below prefix range");
      return (*prefix_)[static_cast<std::size_t>(mi)];
    }
    if (std::isinf(m)) return total_mass();
    return power_antideriv(m) + 0.5 * pw(m) + dpw(m) / 12.0 + em_const_;
  }

  Kind kind_;
  Domain domain_;
  double gamma_;
  double beta_ = 0.0;
  double eps0_ = 0.0;
  double scale_ = 1.0;
  std::vector<StepFunction::Piece> pieces_;
  std::vector<double> seq_values_;
  double seq_tail_ = 0.0;
  std::shared_ptr<const std::vector<double>> prefix_;
  double em_const_ = 0.0;
};

}  // namespace oll
