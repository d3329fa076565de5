#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oll/errors.hpp"

namespace oll {

/// A convex Orlicz N-function phi with phi(0) = 0, phi > 0 on (0, inf),
/// phi(u)/u -> 0 at 0 and -> inf at infinity.
///
/// Catalog kinds:
///   power              phi(u) = scale * u^p,  p > 1, scale > 0
///   exp-minus-linear   phi(u) = e^u - u - 1          (fails Delta_2^inf)
///   small-exp-extended phi(u) = e^{-1/u} on (0, 1/2], extended for u > 1/2
///                      by the C^1 convex quadratic
///                      e^{-2} (1 + 4(u - 1/2) + 8(u - 1/2)^2)   (fails Delta_2^0)
///   user-table         sorted (u, phi(u)) nodes, linearly interpolated,
///                      convexity-checked at load; last slope extends the tail
///   conjugate-of       numeric Legendre-Fenchel conjugate of another function
///
/// Values are immutable after construction; all operations are pure.
class OrliczFunction {
 public:
  enum class Kind { Power, ExpMinusLinear, SmallExpExtended, UserTable, ConjugateOf };

  static OrliczFunction power(double p, double scale = 1.0) {
    if (!(p > 1.0) || !std::isfinite(p))
      throw Error(ErrorKind::invariant_violation, "phi.params.p: power exponent must be > 1");
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw Error(ErrorKind::invariant_violation, "phi.params.scale: must be positive");
    OrliczFunction f(Kind::Power);
    f.p_ = p;
    f.scale_ = scale;
    f.validate();
    return f;
  }

  static OrliczFunction exp_minus_linear() {
    OrliczFunction f(Kind::ExpMinusLinear);
    f.validate();
    return f;
  }

  static OrliczFunction small_exp_extended() {
    OrliczFunction f(Kind::SmallExpExtended);
    f.validate();
    return f;
  }

  static OrliczFunction user_table(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2)
      throw Error(ErrorKind::invariant_violation, "phi.params.nodes: need at least 2 nodes");
    if (nodes.front().first != 0.0 || nodes.front().second != 0.0)
      throw Error(ErrorKind::invariant_violation, "phi.params.nodes[0]: table must start at (0, 0)");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!std::isfinite(nodes[i].first) || !std::isfinite(nodes[i].second) ||
          nodes[i].first < 0.0 || nodes[i].second < 0.0)
        throw Error(ErrorKind::invariant_violation,
                    "phi.params.nodes[" + std::to_string(i) + "]: entries must be finite and nonnegative");
      if (i > 0 && !(nodes[i].first > nodes[i - 1].first))
        throw Error(ErrorKind::invariant_violation,
                    "phi.params.nodes[" + std::to_string(i) + "]: u values must be strictly increasing");
      if (i > 0 && !(nodes[i].second > nodes[i - 1].second))
        throw Error(ErrorKind::invariant_violation,
                    "phi.params.nodes[" + std::to_string(i) + "]: phi values must be strictly increasing");
    }
    // Convexity: chord slopes must be nondecreasing.
    double prev_slope = -1.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      double slope = (nodes[i].second - nodes[i - 1].second) / (nodes[i].first - nodes[i - 1].first);
      if (slope < prev_slope * (1.0 - 1e-12))
        throw Error(ErrorKind::invariant_violation,
                    "phi.params.nodes[" + std::to_string(i) + "]: convexity violated (decreasing slope)");
      prev_slope = std::max(prev_slope, slope);
    }
    OrliczFunction f(Kind::UserTable);
    f.nodes_ = std::move(nodes);
    f.validate();
    return f;
  }

  /// Numeric conjugate phi_* as a full function object; used to form the
  /// dual-side context (phi_*, w). The conjugate of an N-function is an
  /// N-function, so construction skips the sampled re-validation.
  static OrliczFunction conjugate_of(const OrliczFunction& base) {
    OrliczFunction f(Kind::ConjugateOf);
    f.base_ = std::make_shared<const OrliczFunction>(base);
    return f;
  }

  Kind kind() const noexcept { return kind_; }
  double power_exponent() const noexcept { return p_; }
  double power_scale() const noexcept { return scale_; }
  const std::vector<std::pair<double, double>>& table_nodes() const { return nodes_; }
  const OrliczFunction& conjugate_base() const { return *base_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::Power: return "power";
      case Kind::ExpMinusLinear: return "exp-minus-linear";
      case Kind::SmallExpExtended: return "small-exp-extended";
      case Kind::UserTable: return "user-table";
      case Kind::ConjugateOf: return "conjugate";
    }
    return "?";
  }

  /// phi(u). Exact for catalog kinds. u = +inf yields +inf.
  double operator()(double u) const {
    if (std::isnan(u) || u < 0.0)
      throw Error(ErrorKind::domain_error, "phi: argument must be >= 0");
    switch (kind_) {
      case Kind::Power:
        return u == 0.0 ? 0.0 : scale_ * std::pow(u, p_);
      case Kind::ExpMinusLinear:
        // expm1 keeps precision near 0
        return u == 0.0 ? 0.0 : std::expm1(u) - u;
      case Kind::SmallExpExtended: {
        if (u == 0.0) return 0.0;
        if (u <= 0.5) return std::exp(-1.0 / u);
        double d = u - 0.5;
        return std::exp(-2.0) * (1.0 + 4.0 * d + 8.0 * d * d);
      }
      case Kind::UserTable: {
        if (u >= nodes_.back().first) {
          const auto& a = nodes_[nodes_.size() - 2];
          const auto& b = nodes_.back();
          double slope = (b.second - a.second) / (b.first - a.first);
          return b.second + slope * (u - b.first);
        }
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u,
                                   [](double lhs, const auto& n) { return lhs < n.first; });
        const auto& b = *it;
        const auto& a = *(it - 1);
        double lambda = (u - a.first) / (b.first - a.first);
        return a.second + lambda * (b.second - a.second);
      }
      case Kind::ConjugateOf:
        return base_->conjugate(u);
    }
    return 0.0;
  }

  /// Right derivative phi'(u); finite-difference fallback where no closed
  /// form exists (user-table), step h = 1e-6 * max(u, 1).
  double derivative(double u) const {
    if (std::isnan(u) || u < 0.0)
      throw Error(ErrorKind::domain_error, "phi': argument must be >= 0");
    switch (kind_) {
      case Kind::Power:
        return u == 0.0 ? 0.0 : scale_ * p_ * std::pow(u, p_ - 1.0);
      case Kind::ExpMinusLinear:
        return std::expm1(u);
      case Kind::SmallExpExtended: {
        if (u == 0.0) return 0.0;
        if (u <= 0.5) return std::exp(-1.0 / u) / (u * u);
        return std::exp(-2.0) * (4.0 + 16.0 * (u - 0.5));
      }
      case Kind::UserTable: {
        double h = 1e-6 * std::max(u, 1.0);
        return ((*this)(u + h) - (*this)(u)) / h;
      }
      case Kind::ConjugateOf:
        // (phi_*)' is the generalized inverse of phi': the maximizer u(v).
        return base_->conjugate_argmax(u);
    }
    return 0.0;
  }

  /// Monotone-bisection inverse: u with |phi(u) - y| <= 1e-12 (1 + y).
  /// inverse(0) = 0.
  double inverse(double y) const {
    if (std::isnan(y) || y < 0.0)
      throw Error(ErrorKind::domain_error, "phi^{-1}: argument must be >= 0");
    if (y == 0.0) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while ((*this)(hi) < y) {
      hi *= 2.0;
      if (++guard > 2100)
        throw Error(ErrorKind::domain_error, "phi^{-1}: target not reachable (phi bounded?)");
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if ((*this)(mid) < y) lo = mid; else hi = mid;
      if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
  }

  /// Legendre-Fenchel conjugate phi_*(v) = sup_u { u v - phi(u) }, computed
  /// by solving phi'(u) = v on the monotone derivative and evaluating there.
  /// Returns +inf if the sup diverges within floating range (possible only
  /// for non-N tails, e.g. the linear extension of a user table).
  double conjugate(double v) const {
    if (std::isnan(v) || v < 0.0)
      throw Error(ErrorKind::domain_error, "phi_*: argument must be >= 0");
    if (v == 0.0) return 0.0;
    double u = conjugate_argmax(v);
    if (!std::isfinite(u)) return std::numeric_limits<double>::infinity();
    return std::max(0.0, u * v - (*this)(u));
  }

  /// Maximizer of u v - phi(u): the point where phi' crosses v.
  double conjugate_argmax(double v) const {
    if (v == 0.0) return 0.0;
    double hi = 1.0;
    while (derivative(hi) < v) {
      hi *= 2.0;
      if (hi > 1e306) return std::numeric_limits<double>::infinity();
    }
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (derivative(mid) < v) lo = mid; else hi = mid;
      if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
  }

  /// Known Delta_2 behaviour of the catalog kinds (true = satisfies).
  /// Regime index: 0 global, 1 at-infinity, 2 at-zero. Unknown for
  /// user-table and conjugate kinds.
  std::optional<bool> known_delta2(int regime) const {
    switch (kind_) {
      case Kind::Power:
        return true;
      case Kind::ExpMinusLinear:
        return regime == 2;  // holds near zero, fails at infinity (hence globally)
      case Kind::SmallExpExtended:
        return regime == 1;  // holds at infinity, fails near zero (hence globally)
      default:
        return std::nullopt;
    }
  }

 private:
  explicit OrliczFunction(Kind k) : kind_(k) {}

  // Sampled construction-time checks: convexity and the N-function limits.
  // For user tables the grids are clipped to the covered range (the linear
  // tail cannot witness growth to infinity).
  void validate() const {
    double u_min = std::ldexp(1.0, -40);
    double u_max = std::ldexp(1.0, 40);
    if (kind_ == Kind::UserTable) {
      u_min = std::max(u_min, nodes_[1].first);
      u_max = std::min(u_max, nodes_.back().first);
    }

    if ((*this)(0.0) != 0.0)
      throw Error(ErrorKind::invariant_violation, "phi: phi(0) must be 0");
    // Positivity; phi may underflow to 0 for very small u, but once positive
    // it must stay positive.
    bool seen_positive = false;
    for (double u = u_min; u <= u_max; u *= 4.0) {
      if ((*this)(u) > 0.0) {
        seen_positive = true;
      } else if (seen_positive) {
        throw Error(ErrorKind::invariant_violation, "phi: phi(u) must be positive for u > 0");
      }
    }
    if (!seen_positive)
      throw Error(ErrorKind::invariant_violation, "phi: phi vanishes on the sampled range");

    // Convexity on sampled pairs.
    for (double a = u_min; a <= u_max; a *= 16.0) {
      for (double b = a * 2.0; b <= u_max; b *= 16.0) {
        for (double lambda : {0.25, 0.5, 0.75}) {
          double mid = lambda * a + (1.0 - lambda) * b;
          double lhs = (*this)(mid);
          double rhs = lambda * (*this)(a) + (1.0 - lambda) * (*this)(b);
          if (lhs > rhs + 1e-12 * (1.0 + (*this)(b)))
            throw Error(ErrorKind::invariant_violation, "phi: convexity check failed");
        }
      }
    }

    // N-function limits: phi(u)/u monotone toward 0 on u = 2^{-k} and
    // toward infinity on u = 2^{k}, k <= 40 (within the covered range).
    double prev = (*this)(u_min) / u_min;
    for (double u = u_min * 2.0; u <= std::min(1.0, u_max); u *= 2.0) {
      double ratio = (*this)(u) / u;
      if (ratio < prev * (1.0 - 1e-12))
        throw Error(ErrorKind::invariant_violation, "phi: phi(u)/u must decrease toward 0");
      prev = ratio;
    }
    if (u_max > 1.0) {
      prev = (*this)(std::max(1.0, u_min)) / std::max(1.0, u_min);
      for (double u = std::max(1.0, u_min) * 2.0; u <= u_max; u *= 2.0) {
        double v = (*this)(u);
        if (!std::isfinite(v)) break;  // already past any representable threshold
        double ratio = v / u;
        if (ratio < prev * (1.0 - 1e-12))
          throw Error(ErrorKind::invariant_violation, "phi: phi(u)/u must increase toward infinity");
        prev = ratio;
      }
    }
  }

  Kind kind_;
  double p_ = 0.0;
  double scale_ = 1.0;
  std::vector<std::pair<double, double>> nodes_;
  std::shared_ptr<const OrliczFunction> base_;
};

/// Young's inequality residual phi(u) + phi_*(v) - u v  (>= 0 up to roundoff).
inline double young_gap(const OrliczFunction& phi, double u, double v) {
  if (u < 0.0 || v < 0.0)
    throw Error(ErrorKind::domain_error, "young_gap: arguments must be >= 0");
  return phi(u) + phi.conjugate(v) - u * v;
}

}  // namespace oll
