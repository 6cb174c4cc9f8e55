#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "opcalc/polynomial.hpp"
#include "opcalc/roots.hpp"
#include "opcalc/series.hpp"

namespace opcalc {

/// numerator(B) / denominator(B) with the denominator kept in factored form.
template <Coefficient C>
struct RationalOperator {
  Polynomial<C> numerator;
  FactoredPoly<C> denominator;

  static RationalOperator constant(C c) { return {Polynomial<C>::constant(std::move(c)), {}}; }

  /// B^{-k}, the image of the basis element p_k.
  static RationalOperator basis(int k) {
    if (k <= 0) return {Polynomial<C>::monomial(-k), {}};
    return {Polynomial<C>::constant(from_int<C>(1)), {from_int<C>(1), {{from_int<C>(0), k}}}};
  }

  /// c * B^b / (B - r)^m.
  static RationalOperator pole(const C& c, int b_power, const C& root, int multiplicity) {
    return {Polynomial<C>::monomial(b_power, c), {from_int<C>(1), {{root, multiplicity}}}};
  }
};

template <Coefficient C>
RationalOperator<C> forward_basis(int k) {
  return RationalOperator<C>::basis(k);
}

template <Coefficient C>
RationalOperator<C> scale(const C& c, const RationalOperator<C>& r) {
  return {r.numerator * c, r.denominator};
}

/// Sum over the least common multiple of the two factored denominators; roots
/// within eps of each other are treated as the same root.
template <Coefficient C>
RationalOperator<C> add(const RationalOperator<C>& a, const RationalOperator<C>& b,
                        double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  FactoredPoly<C> common;
  common.leading = a.denominator.leading * b.denominator.leading;
  // Extra factors a's numerator needs (those b has beyond a) and vice versa.
  Polynomial<C> extra_a = Polynomial<C>::constant(b.denominator.leading);
  Polynomial<C> extra_b = Polynomial<C>::constant(a.denominator.leading);
  std::vector<bool> used(b.denominator.factors.size(), false);
  for (const auto& fa : a.denominator.factors) {
    int mb = 0;
    for (std::size_t j = 0; j < b.denominator.factors.size(); ++j) {
      if (!used[j] && is_zero<C>(b.denominator.factors[j].root - fa.root, eps)) {
        mb = b.denominator.factors[j].multiplicity;
        used[j] = true;
        break;
      }
    }
    const int m = std::max(fa.multiplicity, mb);
    common.factors.push_back({fa.root, m});
    extra_a = extra_a * pow(Polynomial<C>::linear_factor(fa.root), m - fa.multiplicity);
    extra_b = extra_b * pow(Polynomial<C>::linear_factor(fa.root), m - mb);
  }
  for (std::size_t j = 0; j < b.denominator.factors.size(); ++j) {
    if (used[j]) continue;
    const auto& fb = b.denominator.factors[j];
    common.factors.push_back(fb);
    extra_a = extra_a * pow(Polynomial<C>::linear_factor(fb.root), fb.multiplicity);
  }
  return {a.numerator * extra_a + b.numerator * extra_b, common};
}

/// Cross-multiplied coefficient difference |N_a D_b - N_b D_a|, normalised by
/// the product of the leading denominator coefficients.
template <Coefficient C>
double rational_difference(const RationalOperator<C>& a, const RationalOperator<C>& b) {
  const C norm = a.denominator.leading * b.denominator.leading;
  auto lhs = a.numerator * (b.denominator.expand() * (from_int<C>(1) / norm));
  auto rhs = b.numerator * (a.denominator.expand() * (from_int<C>(1) / norm));
  return max_coefficient_difference(lhs, rhs);
}

/// Numerator difference after bringing both operands over monic versions of
/// a's denominator; meaningful when the denominators share their factors.
template <Coefficient C>
double numerator_difference_over(const RationalOperator<C>& a, const RationalOperator<C>& b) {
  RationalOperator<C> diff = add(a, scale(from_int<C>(-1), b));
  // diff's denominator equals a's when b introduces no new roots.
  auto monic = diff.numerator * (from_int<C>(1) / diff.denominator.leading);
  double worst = 0.0;
  for (const auto& c : monic.coefficients()) worst = std::max(worst, magnitude<C>(c));
  return worst;
}

enum class TermForm {
  kBOverPow,    // coeff * B / (B - root)^multiplicity
  kOneOverPow,  // coeff / (B - root)^multiplicity
  kPolyPart,    // coeff * B^power
};

template <Coefficient C>
struct PartialFractionTerm {
  C root = from_int<C>(0);
  int multiplicity = 1;
  C coeff = from_int<C>(0);
  TermForm form = TermForm::kOneOverPow;
  int power = 0;
};

template <Coefficient C>
RationalOperator<C> term_to_rational(const PartialFractionTerm<C>& t) {
  switch (t.form) {
    case TermForm::kBOverPow:
      return RationalOperator<C>::pole(t.coeff, 1, t.root, t.multiplicity);
    case TermForm::kOneOverPow:
      return RationalOperator<C>::pole(t.coeff, 0, t.root, t.multiplicity);
    case TermForm::kPolyPart:
      return {Polynomial<C>::monomial(t.power, t.coeff), {}};
  }
  return {};
}

template <Coefficient C>
RationalOperator<C> recombine(const std::vector<PartialFractionTerm<C>>& terms,
                              double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  RationalOperator<C> sum = RationalOperator<C>::constant(from_int<C>(0));
  for (const auto& t : terms) sum = add(sum, term_to_rational(t), eps);
  return sum;
}

namespace detail {

// First `count` coefficients of the power series num(u)/den(u), den(0) != 0.
template <Coefficient C>
std::vector<C> series_quotient(const Polynomial<C>& num, const Polynomial<C>& den, int count) {
  std::vector<C> q(static_cast<std::size_t>(count), from_int<C>(0));
  const C inv0 = from_int<C>(1) / den.coefficient(0);
  for (int k = 0; k < count; ++k) {
    C acc = num.coefficient(k);
    for (int i = 1; i <= std::min(k, den.degree()); ++i) acc -= den.coefficient(i) * q[static_cast<std::size_t>(k - i)];
    q[static_cast<std::size_t>(k)] = acc * inv0;
  }
  return q;
}

// c / (B - r)^j expansions: polynomial part first, then each pole by the
// Taylor expansion of num / (den without that pole) around the root.
template <Coefficient C>
std::vector<PartialFractionTerm<C>> raw_decomposition(const Polynomial<C>& numerator, const FactoredPoly<C>& den,
                                                      double eps) {
  std::vector<PartialFractionTerm<C>> terms;
  Polynomial<C> remainder = numerator;
  if (numerator.degree() >= den.degree()) {
    auto [quotient, rem] = numerator.divmod(den.expand());
    for (int k = 0; k <= quotient.degree(); ++k) {
      if (!is_zero<C>(quotient.coefficient(k), eps)) {
        terms.push_back({from_int<C>(0), 1, quotient.coefficient(k), TermForm::kPolyPart, k});
      }
    }
    remainder = rem;
  }
  for (std::size_t i = 0; i < den.factors.size(); ++i) {
    const auto& f = den.factors[i];
    const Polynomial<C> local_num = remainder.taylor_shift(f.root);
    const Polynomial<C> local_den = den.expand_without(i).taylor_shift(f.root);
    const std::vector<C> q = series_quotient(local_num, local_den, f.multiplicity);
    for (int j = f.multiplicity; j >= 1; --j) {
      const C& c = q[static_cast<std::size_t>(f.multiplicity - j)];
      if (!is_zero<C>(c, eps)) terms.push_back({f.root, j, c, TermForm::kOneOverPow, 0});
    }
  }
  return terms;
}

template <Coefficient C>
void accumulate(std::vector<PartialFractionTerm<C>>& terms, const PartialFractionTerm<C>& t, double eps) {
  for (auto& existing : terms) {
    if (existing.form == t.form && existing.multiplicity == t.multiplicity && existing.power == t.power &&
        is_zero<C>(existing.root - t.root, eps)) {
      existing.coeff += t.coeff;
      return;
    }
  }
  terms.push_back(t);
}

}  // namespace detail

/// Terms c/(B - r)^j for every root and 1 <= j <= multiplicity, plus the
/// polynomial part of an improper rational.
template <Coefficient C>
std::vector<PartialFractionTerm<C>> partial_fractions_raw(const RationalOperator<C>& r,
                                                          double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  for (std::size_t i = 0; i < r.denominator.factors.size(); ++i) {
    for (std::size_t j = i + 1; j < r.denominator.factors.size(); ++j) {
      if (is_zero<C>(r.denominator.factors[i].root - r.denominator.factors[j].root, eps)) {
        throw Error(ErrorCode::kUnfactoredDenominator, "denominator lists the same root twice");
      }
    }
  }
  if (is_zero<C>(r.denominator.leading, eps)) throw Error(ErrorCode::kZeroDivision, "zero denominator");
  return detail::raw_decomposition(r.numerator, r.denominator, eps);
}

/// Partial fractions in the shapes the transform table uses: c * B/(B - r)^j
/// for nonzero roots, c/B^j for the root at zero, and c * B^k polynomial terms.
///
/// When the numerator is divisible by B the factor B is pulled out before
/// decomposing. Otherwise 1/(B - r)^j = (B/(B - r)^j - 1/(B - r)^{j-1}) / r is
/// applied until only B-shaped terms and a constant remain.
template <Coefficient C>
std::vector<PartialFractionTerm<C>> partial_fractions(const RationalOperator<C>& r,
                                                      double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  std::vector<PartialFractionTerm<C>> out;
  if (r.numerator.is_zero()) return out;
  if (is_zero<C>(r.numerator.coefficient(0), eps)) {
    std::vector<C> shifted(r.numerator.coefficients().begin() + 1, r.numerator.coefficients().end());
    RationalOperator<C> reduced{Polynomial<C>(std::move(shifted), 0.0), r.denominator};
    for (auto t : partial_fractions_raw(reduced, eps)) {
      if (t.form == TermForm::kPolyPart) {
        t.power += 1;
      } else {
        t.form = TermForm::kBOverPow;
      }
      detail::accumulate(out, t, eps);
    }
    return out;
  }
  for (const auto& t : partial_fractions_raw(r, eps)) {
    if (t.form == TermForm::kPolyPart || is_zero<C>(t.root, eps)) {
      detail::accumulate(out, t, eps);
      continue;
    }
    // c/(B-r)^j = (c/r) B/(B-r)^j - (c/r) 1/(B-r)^{j-1}
    C c = t.coeff;
    const C inv_root = from_int<C>(1) / t.root;
    for (int j = t.multiplicity; j >= 1; --j) {
      c = c * inv_root;
      detail::accumulate(out, {t.root, j, c, TermForm::kBOverPow, 0}, eps);
      c = -c;
    }
    detail::accumulate(out, {from_int<C>(0), 1, c, TermForm::kPolyPart, 0}, eps);
  }
  std::erase_if(out, [eps](const PartialFractionTerm<C>& t) { return is_zero<C>(t.coeff, eps); });
  return out;
}

/// sum_k d_k p_k where r = sum_k d_k B^{-k}, known up to index `truncation`.
/// Each factor contributes 1/(B - rho)^m = sum_j C(j+m-1, m-1) rho^j B^{-j-m}.
template <Coefficient C>
FormalSeries<C> rational_to_series(const RationalOperator<C>& r, int truncation = kDefaultTruncation,
                                   double nu = 0.0, double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  const int num_degree = r.numerator.degree();
  if (num_degree < 0) return FormalSeries<C>(truncation, nu);
  // Window of the factor product in powers of B^{-1}.
  const int top = truncation + num_degree;
  FormalSeries<C> product = FormalSeries<C>::monomial(0, from_int<C>(1) / r.denominator.leading, top, nu);
  for (const auto& f : r.denominator.factors) {
    const int m = f.multiplicity;
    const int len = top - m + 1;
    if (len <= 0) {
      product = FormalSeries<C>(top, nu);
      break;
    }
    std::vector<C> coeffs;
    coeffs.reserve(static_cast<std::size_t>(len));
    C power = from_int<C>(1);
    mpz_class binom = 1;  // C(j+m-1, m-1)
    for (int j = 0; j < len; ++j) {
      if (j > 0) {
        binom = binom * (j + m - 1) / j;
        power = power * f.root;
      }
      C b;
      if constexpr (CoefficientTraits<C>::kExact) {
        b = ExactComplex(mpq_class(binom));
      } else {
        b = C(binom.get_d(), 0.0);
      }
      coeffs.push_back(b * power);
    }
    FormalSeries<C> factor_series(m, std::move(coeffs), top, nu, 0.0);
    product = mul(product, factor_series);
    product = product.with_truncation(top);
  }
  // Multiply by the numerator, sum_i n_i p_{-i}.
  std::vector<C> num_coeffs(r.numerator.coefficients().rbegin(), r.numerator.coefficients().rend());
  FormalSeries<C> numerator_series(-num_degree, std::move(num_coeffs), top, nu, 0.0);
  FormalSeries<C> out = mul(product, numerator_series, eps);
  return out.with_truncation(truncation);
}

template <Coefficient To, Coefficient From>
RationalOperator<To> convert_rational(const RationalOperator<From>& r) {
  return {convert_polynomial<To>(r.numerator), convert_factored<To>(r.denominator)};
}

}  // namespace opcalc
