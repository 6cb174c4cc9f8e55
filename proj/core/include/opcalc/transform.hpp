#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/atom.hpp"
#include "opcalc/bessel.hpp"
#include "opcalc/rational.hpp"

namespace opcalc {

enum class RhsSupport {
  kFinite,  // h has finitely many nonzero coefficients; rational pathway
  kSeries,  // h is known only up to its truncation; field pathway
};

/// sum_j q_j (L_nu)^j y = h with generalized initial conditions a_0..a_{K-1},
/// which are the leading p-basis coefficients of y.
template <Coefficient C>
struct EquationSpec {
  double nu = 0.0;
  std::vector<C> operator_coeffs;  // q_0 .. q_K
  FormalSeries<C> rhs{kDefaultTruncation, 0.0};
  RhsSupport rhs_support = RhsSupport::kFinite;
  std::vector<C> initial_conditions;  // a_0 .. a_{K-1}

  int order() const { return static_cast<int>(operator_coeffs.size()) - 1; }
  bool homogeneous() const { return rhs.is_zero(); }
};

/// Checks the spec invariants, throwing kDegenerateOperator or kInvalidSpec.
template <Coefficient C>
void validate(const EquationSpec<C>& spec, double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  if (spec.operator_coeffs.empty() || is_zero<C>(spec.operator_coeffs.back(), eps)) {
    throw Error(ErrorCode::kDegenerateOperator, "degenerate operator: leading coefficient q_K is zero");
  }
  if (static_cast<int>(spec.initial_conditions.size()) != spec.order()) {
    throw Error(ErrorCode::kInvalidSpec, "expected " + std::to_string(spec.order()) +
                                             " initial conditions, got " +
                                             std::to_string(spec.initial_conditions.size()));
  }
  if (!spec.rhs.is_zero() && spec.rhs.valuation() < 0) {
    throw Error(ErrorCode::kInvalidSpec, "right-hand side must have valuation >= 0");
  }
  if (!std::isfinite(spec.nu)) throw Error(ErrorCode::kInvalidSpec, "nu must be finite");
}

template <Coefficient C>
struct TransformedEquation {
  Polynomial<C> lhs_poly;    // sum_j q_j B^j
  Polynomial<C> correction;  // sum_j q_j sum_{i<j} a_i B^{j-i}
  RationalOperator<C> rhs_transform;
  /// Y = (correction + A[h]) / lhs_poly; empty on the field pathway.
  std::optional<RationalOperator<C>> Y;
  /// Y as a series; set on the field pathway only.
  std::optional<FormalSeries<C>> Y_series;
};

struct TransformOptions {
  int truncation = kDefaultTruncation;
  double eps = -1.0;  // negative selects the coefficient type's default
  bool real_form = false;
  RootOptions roots;

  template <Coefficient C>
  double epsilon() const {
    return eps < 0.0 ? CoefficientTraits<C>::kDefaultEpsilon : eps;
  }
};

/// Forward transform: every (L_nu)^j y becomes B^j Y - sum_{i<j} a_i B^{j-i}
/// and h = sum h_k p_k becomes sum h_k B^{-k}.
template <Coefficient C>
TransformedEquation<C> forward_equation(const EquationSpec<C>& spec, const TransformOptions& options = {}) {
  const double eps = options.epsilon<C>();
  validate(spec, eps);
  TransformedEquation<C> out;
  out.lhs_poly = Polynomial<C>(spec.operator_coeffs, eps);
  const int order = spec.order();
  std::vector<C> corr(static_cast<std::size_t>(order + 1), from_int<C>(0));
  for (int j = 1; j <= order; ++j) {
    for (int i = 0; i < j; ++i) {
      corr[static_cast<std::size_t>(j - i)] +=
          spec.operator_coeffs[static_cast<std::size_t>(j)] * spec.initial_conditions[static_cast<std::size_t>(i)];
    }
  }
  out.correction = Polynomial<C>(std::move(corr), eps);

  if (spec.rhs_support == RhsSupport::kSeries && !spec.rhs.is_zero()) {
    // Field pathway: Y = (correction + h) / lhs computed in the series field.
    const FormalSeries<C>& h = spec.rhs;
    const int window = h.truncation() + order;
    std::vector<C> lhs_rev(spec.operator_coeffs.rbegin(), spec.operator_coeffs.rend());
    FormalSeries<C> lhs_series(-order, std::move(lhs_rev), window, spec.nu, eps);
    std::vector<C> corr_rev(out.correction.coefficients().rbegin(), out.correction.coefficients().rend());
    FormalSeries<C> corr_series = out.correction.is_zero()
                                      ? FormalSeries<C>(window, spec.nu)
                                      : FormalSeries<C>(-out.correction.degree(), std::move(corr_rev), window,
                                                        spec.nu, eps);
    out.rhs_transform = RationalOperator<C>::constant(from_int<C>(0));
    out.Y_series = mul(invert(lhs_series, eps), add(corr_series, h.with_nu(spec.nu), eps), eps);
    return out;
  }

  // Rational pathway: A[h] = (sum_k h_k B^{m-k}) / B^m with m the last index of h.
  Polynomial<C> numerator = out.correction;
  FactoredPoly<C> denominator = factor(out.lhs_poly, options.roots);
  if (!spec.rhs.is_zero()) {
    const int m = spec.rhs.last_index();
    std::vector<C> h_poly(static_cast<std::size_t>(m + 1), from_int<C>(0));
    for (int k = spec.rhs.valuation(); k <= m; ++k) h_poly[static_cast<std::size_t>(m - k)] = spec.rhs.coefficient(k);
    Polynomial<C> h_num(std::move(h_poly), eps);
    out.rhs_transform = {h_num, {from_int<C>(1), m > 0 ? std::vector<RootFactor<C>>{{from_int<C>(0), m}}
                                                       : std::vector<RootFactor<C>>{}}};
    if (m > 0) {
      numerator = numerator * Polynomial<C>::monomial(m);
      bool merged = false;
      for (auto& f : denominator.factors) {
        if (is_zero<C>(f.root, eps)) {
          f.multiplicity += m;
          merged = true;
        }
      }
      if (!merged) denominator.factors.push_back({from_int<C>(0), m});
    }
    numerator = numerator + h_num;
  } else {
    out.rhs_transform = RationalOperator<C>::constant(from_int<C>(0));
  }
  out.Y = RationalOperator<C>{numerator, denominator};
  return out;
}

/// Closed-form atoms plus whatever the transform table does not cover.
template <Coefficient C>
struct SolutionExpression {
  std::vector<SolutionAtom<C>> atoms;
  std::optional<FormalSeries<C>> residual;
  /// True when every residual coefficient beyond the stored ones is known zero.
  bool residual_finite = true;
  /// Set when the residual has negative valuation (kNonEvaluableResidual).
  bool non_evaluable_residual = false;
};

namespace detail {

template <Coefficient C>
void add_residual(SolutionExpression<C>& e, const FormalSeries<C>& s, bool finite, double eps) {
  if (!e.residual) {
    e.residual = s;
  } else {
    e.residual = add(*e.residual, s, eps);
  }
  e.residual_finite = e.residual_finite && finite;
}

template <Coefficient C>
bool is_negative_real(const C& r, double eps) {
  const Complex z = CoefficientTraits<C>::to_complex(r);
  return is_zero<C>(CoefficientTraits<C>::imag_part(r), eps) && z.real() < 0.0;
}

template <Coefficient C>
bool is_pure_imaginary(const C& r, double eps) {
  return is_zero<C>(CoefficientTraits<C>::real_part(r), eps) && !is_zero<C>(r, eps);
}

}  // namespace detail

/// Inverse transform via the table: c B/(B - r) -> (c / r^{nu/2}) I_nu(sqrt(r) t),
/// with J, Ber/Bei and (nu = 0) t-weighted rewrites. Poles at zero, polynomial
/// parts and repeated poles for nu != 0 go to the residual series.
template <Coefficient C>
SolutionExpression<C> inverse_transform(const RationalOperator<C>& Y, double nu, const TransformOptions& options = {}) {
  const double eps = options.epsilon<C>();
  // The residual of a repeated pole for nu != 0 is expanded up to this index;
  // leave headroom so later shifts keep the requested window.
  const int window = options.truncation;
  SolutionExpression<C> out;
  std::vector<PartialFractionTerm<C>> terms = partial_fractions(Y, eps);

  std::vector<bool> consumed(terms.size(), false);
  if (options.real_form) {
    // Conjugate pure-imaginary simple poles with conjugate coefficients -> Ber/Bei.
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& a = terms[i];
      if (consumed[i] || a.form != TermForm::kBOverPow || a.multiplicity != 1) continue;
      if (!detail::is_pure_imaginary(a.root, eps)) continue;
      const C omega = -CoefficientTraits<C>::i() * a.root;
      if (CoefficientTraits<C>::to_complex(omega).real() <= 0.0) continue;
      for (std::size_t j = 0; j < terms.size(); ++j) {
        const auto& b = terms[j];
        if (j == i || consumed[j] || b.form != TermForm::kBOverPow || b.multiplicity != 1) continue;
        if (!is_zero<C>(b.root - CoefficientTraits<C>::conj(a.root), eps)) continue;
        if (!is_zero<C>(b.coeff - CoefficientTraits<C>::conj(a.coeff), eps)) continue;
        // c B/(B - i w) + conj(c) B/(B + i w) = 2 Re c B^2/(B^2+w^2) - 2 Im c wB/(B^2+w^2)
        const C two = from_int<C>(2);
        out.atoms.push_back({AtomKind::kBer, omega, 0, two * CoefficientTraits<C>::real_part(a.coeff), nu});
        out.atoms.push_back({AtomKind::kBei, omega, 0, -two * CoefficientTraits<C>::imag_part(a.coeff), nu});
        consumed[i] = consumed[j] = true;
        break;
      }
    }
  }

  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (consumed[i]) continue;
    const auto& t = terms[i];
    if (t.form == TermForm::kPolyPart) {
      // c B^k -> c p_{-k}
      detail::add_residual(out, FormalSeries<C>::monomial(-t.power, t.coeff, window, nu), true, eps);
      continue;
    }
    if (is_zero<C>(t.root, eps)) {
      // c B/B^j -> c p_{j-1};  c/B^j -> c p_j
      const int index = t.form == TermForm::kBOverPow ? t.multiplicity - 1 : t.multiplicity;
      detail::add_residual(out, FormalSeries<C>::monomial(index, t.coeff, window, nu), true, eps);
      continue;
    }
    if (t.form == TermForm::kOneOverPow) {
      detail::add_residual(out, rational_to_series(term_to_rational(t), window, nu, eps), false, eps);
      continue;
    }
    const bool as_j = options.real_form && detail::is_negative_real(t.root, eps);
    const C lambda = as_j ? -t.root : t.root;
    if (t.multiplicity == 1) {
      out.atoms.push_back({as_j ? AtomKind::kJ : AtomKind::kI, lambda, 0, t.coeff / half_nu_power(lambda, nu), nu});
    } else if (nu == 0.0) {
      out.atoms.push_back({as_j ? AtomKind::kTWeightedJ : AtomKind::kTWeightedI, lambda, t.multiplicity - 1, t.coeff,
                           nu});
    } else {
      detail::add_residual(out, rational_to_series(term_to_rational(t), window, nu, eps), false, eps);
    }
  }
  if (out.residual && !out.residual->is_zero() && out.residual->valuation() < 0) {
    out.non_evaluable_residual = true;
  }
  if (out.residual && out.residual->is_zero() && out.residual_finite) out.residual.reset();
  return out;
}

/// Table image of a single atom.
template <Coefficient C>
RationalOperator<C> atom_transform(const SolutionAtom<C>& atom) {
  const C one = from_int<C>(1);
  switch (atom.kind) {
    case AtomKind::kI:
      return RationalOperator<C>::pole(atom.coeff * half_nu_power(atom.parameter, atom.nu), 1, atom.parameter, 1);
    case AtomKind::kJ:
      return RationalOperator<C>::pole(atom.coeff * half_nu_power(atom.parameter, atom.nu), 1, -atom.parameter, 1);
    case AtomKind::kBer:
    case AtomKind::kBei: {
      const C iw = CoefficientTraits<C>::i() * atom.parameter;
      FactoredPoly<C> den{one, {{iw, 1}, {-iw, 1}}};
      if (atom.kind == AtomKind::kBer) return {Polynomial<C>::monomial(2, atom.coeff), den};
      return {Polynomial<C>::monomial(1, atom.coeff * atom.parameter), den};
    }
    case AtomKind::kTWeightedI:
      return RationalOperator<C>::pole(atom.coeff, 1, atom.parameter, atom.n + 1);
    case AtomKind::kTWeightedJ:
      return RationalOperator<C>::pole(atom.coeff, 1, -atom.parameter, atom.n + 1);
  }
  return RationalOperator<C>::constant(from_int<C>(0));
}

/// Sum of the table images of every atom and of a finite residual.
template <Coefficient C>
RationalOperator<C> forward_expression(const SolutionExpression<C>& e,
                                       double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  RationalOperator<C> sum = RationalOperator<C>::constant(from_int<C>(0));
  for (const auto& atom : e.atoms) sum = add(sum, atom_transform(atom), eps);
  if (e.residual && !e.residual->is_zero()) {
    if (!e.residual_finite) {
      throw Error(ErrorCode::kInfiniteResidual, "residual series has unbounded support and no rational image");
    }
    const auto& r = *e.residual;
    for (int k = r.valuation(); k <= r.last_index(); ++k) {
      const C c = r.coefficient(k);
      if (!is_zero<C>(c, 0.0)) sum = add(sum, scale(c, RationalOperator<C>::basis(k)), eps);
    }
  }
  return sum;
}

/// p-basis expansion of an expression: every atom by its defining series, plus
/// the residual.
template <Coefficient C>
FormalSeries<C> expression_to_series(const SolutionExpression<C>& e, double nu, int truncation,
                                     double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  FormalSeries<C> sum(truncation, nu);
  for (const auto& atom : e.atoms) sum = add(sum, atom_series(atom, truncation), eps);
  if (e.residual) sum = add(sum, e.residual->with_nu(nu), eps);
  return sum.with_truncation(std::min(sum.truncation(), truncation));
}

}  // namespace opcalc
