#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/coefficient.hpp"
#include "opcalc/error.hpp"

namespace opcalc {

inline constexpr int kDefaultTruncation = 64;
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

/// Element of the field of formal Laurent series sum_k a_k p_k.
///
/// Only a window of coefficients is known: indices above `truncation()` are
/// unknown, indices in [valuation, truncation] outside the stored range are
/// zero. The stored leading coefficient is always nonzero; the zero series has
/// valuation kInfiniteValuation and no coefficients.
///
/// `nu()` tags which realization p_{k,nu} the indices refer to. It is carried
/// along and checked for consistency but plays no role in the algebra.
template <Coefficient C>
class FormalSeries {
 public:
  using Traits = CoefficientTraits<C>;

  explicit FormalSeries(int truncation = kDefaultTruncation, double nu = 0.0)
      : truncation_(truncation), nu_(nu) {}

  FormalSeries(int valuation, std::vector<C> coefficients, int truncation, double nu = 0.0,
               double eps = Traits::kDefaultEpsilon)
      : valuation_(valuation), coefficients_(std::move(coefficients)), truncation_(truncation), nu_(nu) {
    normalize(eps);
  }

  static FormalSeries monomial(int index, C coefficient, int truncation = kDefaultTruncation,
                               double nu = 0.0) {
    return FormalSeries(index, {std::move(coefficient)}, truncation, nu);
  }

  int valuation() const { return valuation_; }
  bool is_zero() const { return coefficients_.empty(); }
  int truncation() const { return truncation_; }
  double nu() const { return nu_; }
  const std::vector<C>& coefficients() const { return coefficients_; }

  /// Largest index with a stored (nonzero) coefficient; valuation - 1 when zero.
  int last_index() const {
    return is_zero() ? truncation_ : valuation_ + static_cast<int>(coefficients_.size()) - 1;
  }

  /// a_n; throws kTruncationExceeded for n beyond the known window.
  C coefficient(int n) const {
    if (n > truncation_) {
      throw Error(ErrorCode::kTruncationExceeded,
                  "coefficient " + std::to_string(n) + " lies beyond truncation order " +
                      std::to_string(truncation_));
    }
    if (is_zero() || n < valuation_ || n > last_index()) return from_int<C>(0);
    return coefficients_[static_cast<std::size_t>(n - valuation_)];
  }

  FormalSeries with_truncation(int truncation) const {
    FormalSeries out = *this;
    out.truncation_ = truncation;
    out.normalize(0.0);
    return out;
  }

  FormalSeries with_nu(double nu) const {
    FormalSeries out = *this;
    out.nu_ = nu;
    return out;
  }

 private:
  void normalize(double eps) {
    if (coefficients_.empty()) {
      valuation_ = kInfiniteValuation;
      return;
    }
    std::size_t lead = 0;
    while (lead < coefficients_.size() && Traits::is_zero(coefficients_[lead], eps)) ++lead;
    if (lead == coefficients_.size()) {
      coefficients_.clear();
      valuation_ = kInfiniteValuation;
      return;
    }
    valuation_ += static_cast<int>(lead);
    coefficients_.erase(coefficients_.begin(), coefficients_.begin() + static_cast<std::ptrdiff_t>(lead));
    if (valuation_ > truncation_) {
      coefficients_.clear();
      valuation_ = kInfiniteValuation;
      return;
    }
    auto keep = static_cast<std::size_t>(truncation_ - valuation_ + 1);
    if (coefficients_.size() > keep) coefficients_.resize(keep);
    while (Traits::is_zero(coefficients_.back(), eps)) coefficients_.pop_back();
  }

  int valuation_ = kInfiniteValuation;
  std::vector<C> coefficients_;
  int truncation_;
  double nu_;
};

namespace detail {

template <Coefficient C>
void check_same_nu(const FormalSeries<C>& a, const FormalSeries<C>& b) {
  if (a.nu() != b.nu()) {
    throw Error(ErrorCode::kNuMismatch, "series realized for nu = " + std::to_string(a.nu()) +
                                            " and nu = " + std::to_string(b.nu()) + " cannot be combined");
  }
}

// First index not known to be zero; one past the window for the zero series.
template <Coefficient C>
int effective_valuation(const FormalSeries<C>& a) {
  return a.is_zero() ? a.truncation() + 1 : a.valuation();
}

}  // namespace detail

template <Coefficient C>
int valuation(const FormalSeries<C>& a) {
  return a.valuation();
}

template <Coefficient C>
FormalSeries<C> add(const FormalSeries<C>& a, const FormalSeries<C>& b,
                    double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  detail::check_same_nu(a, b);
  int truncation = std::min(a.truncation(), b.truncation());
  if (a.is_zero()) return b.with_truncation(truncation);
  if (b.is_zero()) return a.with_truncation(truncation);
  int lo = std::min(a.valuation(), b.valuation());
  int hi = std::min(std::max(a.last_index(), b.last_index()), truncation);
  if (hi < lo) return FormalSeries<C>(truncation, a.nu());
  std::vector<C> out(static_cast<std::size_t>(hi - lo + 1), from_int<C>(0));
  for (int n = lo; n <= hi; ++n) {
    out[static_cast<std::size_t>(n - lo)] = a.coefficient(n) + b.coefficient(n);
  }
  return FormalSeries<C>(lo, std::move(out), truncation, a.nu(), eps);
}

template <Coefficient C>
FormalSeries<C> scale(const C& c, const FormalSeries<C>& a,
                      double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  std::vector<C> out;
  out.reserve(a.coefficients().size());
  for (const C& x : a.coefficients()) out.push_back(c * x);
  if (a.is_zero()) return a;
  return FormalSeries<C>(a.valuation(), std::move(out), a.truncation(), a.nu(), eps);
}

template <Coefficient C>
FormalSeries<C> negate(const FormalSeries<C>& a) {
  return scale(from_int<C>(-1), a);
}

template <Coefficient C>
FormalSeries<C> subtract(const FormalSeries<C>& a, const FormalSeries<C>& b,
                         double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  return add(a, negate(b), eps);
}

/// Cauchy product c_n = sum_{v(a) <= k <= n - v(b)} a_k b_{n-k}. The group law
/// p_k * p_n = p_{k+n} is the index arithmetic below.
template <Coefficient C>
FormalSeries<C> mul(const FormalSeries<C>& a, const FormalSeries<C>& b,
                    double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  detail::check_same_nu(a, b);
  int va = detail::effective_valuation(a);
  int vb = detail::effective_valuation(b);
  int truncation = std::min(va + b.truncation(), vb + a.truncation());
  if (a.is_zero() || b.is_zero()) return FormalSeries<C>(truncation, a.nu());
  int lo = va + vb;
  int hi = std::min(a.last_index() + b.last_index(), truncation);
  if (hi < lo) return FormalSeries<C>(truncation, a.nu());
  std::vector<C> out(static_cast<std::size_t>(hi - lo + 1), from_int<C>(0));
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (CoefficientTraits<C>::is_zero(ac[i], 0.0)) continue;
    for (std::size_t j = 0; j < bc.size() && i + j < out.size(); ++j) {
      out[i + j] += ac[i] * bc[j];
    }
  }
  return FormalSeries<C>(lo, std::move(out), truncation, a.nu(), eps);
}

/// Multiplicative inverse by forward substitution through the product rule.
template <Coefficient C>
FormalSeries<C> invert(const FormalSeries<C>& a, double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  if (a.is_zero()) throw Error(ErrorCode::kZeroDivision, "the zero series has no inverse");
  const int v = a.valuation();
  const auto& u = a.coefficients();
  const int terms = a.truncation() - v + 1;
  std::vector<C> b(static_cast<std::size_t>(terms), from_int<C>(0));
  const C inv_lead = from_int<C>(1) / u[0];
  b[0] = inv_lead;
  for (int k = 1; k < terms; ++k) {
    C acc = from_int<C>(0);
    const int upto = std::min<int>(k, static_cast<int>(u.size()) - 1);
    for (int i = 1; i <= upto; ++i) acc += u[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
    b[static_cast<std::size_t>(k)] = -acc * inv_lead;
  }
  return FormalSeries<C>(-v, std::move(b), a.truncation() - 2 * v, a.nu(), eps);
}

/// Multiplication by p_n: n = 1 is the right shift S, n = -1 the left shift.
template <Coefficient C>
FormalSeries<C> shift(const FormalSeries<C>& a, int n) {
  if (a.is_zero()) return FormalSeries<C>(a.truncation() + n, a.nu());
  return FormalSeries<C>(a.valuation() + n, a.coefficients(), a.truncation() + n, a.nu(), 0.0);
}

/// P_n a = a_n p_n.
template <Coefficient C>
FormalSeries<C> project(const FormalSeries<C>& a, int n) {
  C an = a.coefficient(n);
  return FormalSeries<C>(n, {std::move(an)}, a.truncation(), a.nu(), 0.0);
}

/// L a = S^{-1}(I - P_0) a, so L p_k = p_{k-1} for k != 0 and L p_0 = 0.
template <Coefficient C>
FormalSeries<C> modified_left_shift(const FormalSeries<C>& a) {
  if (a.is_zero() || a.truncation() < 0 || a.valuation() > 0 || a.last_index() < 0) return shift(a, -1);
  std::vector<C> coeffs = a.coefficients();
  coeffs[static_cast<std::size_t>(-a.valuation())] = from_int<C>(0);
  FormalSeries<C> without_p0(a.valuation(), std::move(coeffs), a.truncation(), a.nu(), 0.0);
  return shift(without_p0, -1);
}

/// A_0 a = a_0.
template <Coefficient C>
C eval_at_zero_index(const FormalSeries<C>& a) {
  if (a.truncation() < 0) {
    throw Error(ErrorCode::kTruncationExceeded, "a_0 is beyond truncation order " + std::to_string(a.truncation()));
  }
  return a.coefficient(0);
}

/// sum_{k>=0} x^k p_k, which satisfies (L - x I) e = 0.
template <Coefficient C>
FormalSeries<C> geometric(const C& x, int truncation = kDefaultTruncation, double nu = 0.0) {
  if (truncation < 0) return FormalSeries<C>(truncation, nu);
  std::vector<C> coeffs;
  coeffs.reserve(static_cast<std::size_t>(truncation + 1));
  C power = from_int<C>(1);
  for (int k = 0; k <= truncation; ++k) {
    coeffs.push_back(power);
    power = power * x;
  }
  return FormalSeries<C>(0, std::move(coeffs), truncation, nu, 0.0);
}

/// Largest |a_n - b_n| over indices both series know.
template <Coefficient C>
double max_abs_difference(const FormalSeries<C>& a, const FormalSeries<C>& b) {
  int hi = std::min(a.truncation(), b.truncation());
  int lo = std::min(detail::effective_valuation(a), detail::effective_valuation(b));
  double worst = 0.0;
  for (int n = lo; n <= hi; ++n) worst = std::max(worst, magnitude<C>(a.coefficient(n) - b.coefficient(n)));
  return worst;
}

/// Same, but each difference is divided by max(1, |b_n|).
template <Coefficient C>
double max_scaled_difference(const FormalSeries<C>& a, const FormalSeries<C>& b) {
  int hi = std::min(a.truncation(), b.truncation());
  int lo = std::min(detail::effective_valuation(a), detail::effective_valuation(b));
  double worst = 0.0;
  for (int n = lo; n <= hi; ++n) {
    double ref = std::max(1.0, magnitude<C>(b.coefficient(n)));
    worst = std::max(worst, magnitude<C>(a.coefficient(n) - b.coefficient(n)) / ref);
  }
  return worst;
}

template <Coefficient C>
bool equal_on_window(const FormalSeries<C>& a, const FormalSeries<C>& b, double eps = 0.0) {
  return max_abs_difference(a, b) <= eps;
}

template <Coefficient To, Coefficient From>
FormalSeries<To> convert_series(const FormalSeries<From>& a) {
  std::vector<To> coeffs;
  coeffs.reserve(a.coefficients().size());
  for (const auto& c : a.coefficients()) coeffs.push_back(convert_coefficient<To>(c));
  if (a.is_zero()) return FormalSeries<To>(a.truncation(), a.nu());
  return FormalSeries<To>(a.valuation(), std::move(coeffs), a.truncation(), a.nu(), 0.0);
}

template <Coefficient C>
FormalSeries<C> operator+(const FormalSeries<C>& a, const FormalSeries<C>& b) { return add(a, b); }
template <Coefficient C>
FormalSeries<C> operator-(const FormalSeries<C>& a, const FormalSeries<C>& b) { return subtract(a, b); }
template <Coefficient C>
FormalSeries<C> operator*(const FormalSeries<C>& a, const FormalSeries<C>& b) { return mul(a, b); }

}  // namespace opcalc
