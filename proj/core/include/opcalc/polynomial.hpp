#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "opcalc/coefficient.hpp"
#include "opcalc/error.hpp"

namespace opcalc {

/// Polynomial in the transform symbol B, coefficients in ascending powers.
/// The zero polynomial has no coefficients and degree -1.
template <Coefficient C>
class Polynomial {
 public:
  using Traits = CoefficientTraits<C>;

  Polynomial() = default;
  explicit Polynomial(std::vector<C> coefficients, double eps = Traits::kDefaultEpsilon)
      : coefficients_(std::move(coefficients)) {
    trim(eps);
  }

  static Polynomial constant(C c) { return Polynomial(std::vector<C>{std::move(c)}); }

  /// c * B^k.
  static Polynomial monomial(int k, C c = from_int<C>(1)) {
    std::vector<C> coeffs(static_cast<std::size_t>(k + 1), from_int<C>(0));
    coeffs.back() = std::move(c);
    return Polynomial(std::move(coeffs));
  }

  /// B - r.
  static Polynomial linear_factor(const C& r) { return Polynomial({-r, from_int<C>(1)}); }

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  const std::vector<C>& coefficients() const { return coefficients_; }
  C coefficient(int k) const {
    if (k < 0 || k > degree()) return from_int<C>(0);
    return coefficients_[static_cast<std::size_t>(k)];
  }
  const C& leading() const { return coefficients_.back(); }

  /// Horner evaluation.
  C operator()(const C& x) const {
    C acc = from_int<C>(0);
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (degree() < 1) return {};
    std::vector<C> out;
    for (int k = 1; k <= degree(); ++k) out.push_back(coefficients_[static_cast<std::size_t>(k)] * from_int<C>(k));
    return Polynomial(std::move(out));
  }

  /// Coefficients of q(u) = p(r + u).
  Polynomial taylor_shift(const C& r) const {
    std::vector<C> c = coefficients_;
    const int n = degree();
    for (int i = 0; i < n; ++i) {
      for (int k = n - 1; k >= i; --k) c[static_cast<std::size_t>(k)] += r * c[static_cast<std::size_t>(k + 1)];
    }
    return Polynomial(std::move(c), 0.0);
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coefficients_.size() > coefficients_.size()) coefficients_.resize(o.coefficients_.size(), from_int<C>(0));
    for (std::size_t k = 0; k < o.coefficients_.size(); ++k) coefficients_[k] += o.coefficients_[k];
    trim(Traits::kDefaultEpsilon);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += o * from_int<C>(-1); }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> out(a.coefficients_.size() + b.coefficients_.size() - 1, from_int<C>(0));
    for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
      for (std::size_t j = 0; j < b.coefficients_.size(); ++j) out[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const Polynomial& a, const C& s) {
    std::vector<C> out = a.coefficients_;
    for (auto& c : out) c = c * s;
    return Polynomial(std::move(out));
  }

  /// Euclidean division; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorCode::kZeroDivision, "polynomial division by zero");
    if (degree() < divisor.degree()) return {Polynomial{}, *this};
    std::vector<C> rem = coefficients_;
    std::vector<C> quot(static_cast<std::size_t>(degree() - divisor.degree() + 1), from_int<C>(0));
    const C inv_lead = from_int<C>(1) / divisor.leading();
    for (int k = degree() - divisor.degree(); k >= 0; --k) {
      C q = rem[static_cast<std::size_t>(k + divisor.degree())] * inv_lead;
      quot[static_cast<std::size_t>(k)] = q;
      for (int j = 0; j <= divisor.degree(); ++j) {
        rem[static_cast<std::size_t>(k + j)] -= q * divisor.coefficients_[static_cast<std::size_t>(j)];
      }
    }
    rem.resize(static_cast<std::size_t>(std::max(divisor.degree(), 0)));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

 private:
  void trim(double eps) {
    while (!coefficients_.empty() && Traits::is_zero(coefficients_.back(), eps)) coefficients_.pop_back();
  }

  std::vector<C> coefficients_;
};

template <Coefficient C>
Polynomial<C> poly_add(const Polynomial<C>& a, const Polynomial<C>& b) { return a + b; }
template <Coefficient C>
Polynomial<C> poly_mul(const Polynomial<C>& a, const Polynomial<C>& b) { return a * b; }
template <Coefficient C>
C poly_eval(const Polynomial<C>& p, const C& x) { return p(x); }

template <Coefficient C>
Polynomial<C> pow(const Polynomial<C>& p, int exponent) {
  Polynomial<C> out = Polynomial<C>::constant(from_int<C>(1));
  for (int i = 0; i < exponent; ++i) out = out * p;
  return out;
}

template <Coefficient C>
double max_coefficient_difference(const Polynomial<C>& a, const Polynomial<C>& b) {
  double worst = 0.0;
  for (int k = 0; k <= std::max(a.degree(), b.degree()); ++k) {
    worst = std::max(worst, magnitude<C>(a.coefficient(k) - b.coefficient(k)));
  }
  return worst;
}

template <Coefficient To, Coefficient From>
Polynomial<To> convert_polynomial(const Polynomial<From>& p) {
  std::vector<To> out;
  for (const auto& c : p.coefficients()) out.push_back(convert_coefficient<To>(c));
  return Polynomial<To>(std::move(out));
}

/// A root with its multiplicity.
template <Coefficient C>
struct RootFactor {
  C root;
  int multiplicity = 1;
};

/// leading * prod (B - root)^multiplicity.
template <Coefficient C>
struct FactoredPoly {
  C leading = from_int<C>(1);
  std::vector<RootFactor<C>> factors;

  int degree() const {
    int d = 0;
    for (const auto& f : factors) d += f.multiplicity;
    return d;
  }

  Polynomial<C> expand() const {
    Polynomial<C> out = Polynomial<C>::constant(leading);
    for (const auto& f : factors) out = out * pow(Polynomial<C>::linear_factor(f.root), f.multiplicity);
    return out;
  }

  /// Product of every factor except the one at `skip` (leading included).
  Polynomial<C> expand_without(std::size_t skip) const {
    Polynomial<C> out = Polynomial<C>::constant(leading);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i != skip) out = out * pow(Polynomial<C>::linear_factor(factors[i].root), factors[i].multiplicity);
    }
    return out;
  }
};

template <Coefficient To, Coefficient From>
FactoredPoly<To> convert_factored(const FactoredPoly<From>& f) {
  FactoredPoly<To> out;
  out.leading = convert_coefficient<To>(f.leading);
  for (const auto& rf : f.factors) out.factors.push_back({convert_coefficient<To>(rf.root), rf.multiplicity});
  return out;
}

}  // namespace opcalc
