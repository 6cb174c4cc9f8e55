#pragma once

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "opcalc/transform.hpp"

namespace opcalc {

struct VerifyResult {
  /// max_k |((sum_j q_j L^j) y - h)_k| over 0 <= k <= T - K.
  double residual_norm = 0.0;
  /// Same residual divided by sum_j |q_j| |y_{k+j}| + |h_k| before the max.
  double relative_residual = 0.0;
  std::vector<double> ic_errors;
  int checked_up_to = -1;
};

/// Independent check of a candidate solution series: the operator polynomial
/// is applied through powers of the modified left shift and compared to h.
template <Coefficient C>
VerifyResult verify(const EquationSpec<C>& spec, const FormalSeries<C>& series) {
  if (!series.is_zero() && series.valuation() < 0) {
    throw Error(ErrorCode::kNegativeValuation, "verification needs a series with valuation >= 0");
  }
  const FormalSeries<C> y = series.with_nu(spec.nu);
  const int order = spec.order();
  VerifyResult out;

  FormalSeries<C> applied(y.truncation() - order, spec.nu);
  std::vector<FormalSeries<C>> powers;  // L^j y
  FormalSeries<C> current = y;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) current = apply_Lnu_series(current);
    powers.push_back(current);
    applied = add(applied, scale(spec.operator_coeffs[static_cast<std::size_t>(j)], current), 0.0);
  }
  // A finitely supported h is known to be zero past its stored coefficients.
  const FormalSeries<C> rhs = spec.rhs_support == RhsSupport::kFinite
                                  ? spec.rhs.with_nu(spec.nu).with_truncation(
                                        std::max(spec.rhs.truncation(), applied.truncation()))
                                  : spec.rhs.with_nu(spec.nu);
  const FormalSeries<C> residual = subtract(applied, rhs, 0.0);
  out.checked_up_to = residual.truncation();
  for (int k = 0; k <= residual.truncation(); ++k) {
    const double r = magnitude<C>(residual.coefficient(k));
    double scale_k = magnitude<C>(rhs.coefficient(k));
    for (int j = 0; j <= order; ++j) {
      scale_k += magnitude<C>(spec.operator_coeffs[static_cast<std::size_t>(j)]) *
                 magnitude<C>(powers[static_cast<std::size_t>(j)].coefficient(k));
    }
    out.residual_norm = std::max(out.residual_norm, r);
    if (scale_k > 0.0) out.relative_residual = std::max(out.relative_residual, r / scale_k);
    else if (r > 0.0) out.relative_residual = std::max(out.relative_residual, r);
  }
  for (int i = 0; i < order; ++i) {
    const C have = i <= y.truncation() ? y.coefficient(i) : from_int<C>(0);
    out.ic_errors.push_back(magnitude<C>(have - spec.initial_conditions[static_cast<std::size_t>(i)]));
  }
  return out;
}

template <Coefficient C>
struct SolveReport {
  SolutionExpression<C> solution;
  FormalSeries<C> series;
  TransformedEquation<C> transformed;
  VerifyResult metrics;
  int atom_count = 0;
  bool used_series_fallback = false;
};

/// Forward transform, partial fractions, table inverse, then an independent
/// check of the expanded solution series against the equation.
template <Coefficient C>
SolveReport<C> solve(const EquationSpec<C>& spec, const TransformOptions& options = {}) {
  const double eps = options.epsilon<C>();
  SolveReport<C> report;
  report.transformed = forward_equation(spec, options);
  if (report.transformed.Y) {
    report.solution = inverse_transform(*report.transformed.Y, spec.nu, options);
    report.series = expression_to_series(report.solution, spec.nu, options.truncation, eps);
  } else {
    report.used_series_fallback = true;
    report.solution.residual = report.transformed.Y_series->with_truncation(
        std::min(report.transformed.Y_series->truncation(), options.truncation));
    report.solution.residual_finite = false;
    report.series = *report.solution.residual;
  }
  report.atom_count = static_cast<int>(report.solution.atoms.size());
  if (report.solution.residual && !report.solution.residual->is_zero() &&
      report.solution.residual->valuation() < 0) {
    report.solution.non_evaluable_residual = true;
    // Nothing to verify against the function-level equation; keep the metrics
    // honest rather than silently zero.
    report.metrics.residual_norm = std::numeric_limits<double>::infinity();
    report.metrics.relative_residual = std::numeric_limits<double>::infinity();
    for (int i = 0; i < spec.order(); ++i) report.metrics.ic_errors.push_back(std::numeric_limits<double>::infinity());
    return report;
  }
  report.metrics = verify(spec, report.series);
  return report;
}

template <Coefficient To, Coefficient From>
EquationSpec<To> convert_spec(const EquationSpec<From>& spec) {
  EquationSpec<To> out;
  out.nu = spec.nu;
  for (const auto& q : spec.operator_coeffs) out.operator_coeffs.push_back(convert_coefficient<To>(q));
  out.rhs = convert_series<To>(spec.rhs);
  out.rhs_support = spec.rhs_support;
  for (const auto& a : spec.initial_conditions) out.initial_conditions.push_back(convert_coefficient<To>(a));
  return out;
}

using AnySolveReport = std::variant<SolveReport<ExactComplex>, SolveReport<Complex>>;

/// Solves in exact arithmetic when the operator's roots are Gaussian rationals
/// and nu is an even integer; otherwise repeats the solve in floating point.
inline AnySolveReport solve_with_fallback(const EquationSpec<ExactComplex>& spec, const TransformOptions& options = {}) {
  try {
    return solve(spec, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInexact) throw;
  }
  TransformOptions floating = options;
  floating.eps = options.eps > 0.0 ? options.eps : CoefficientTraits<Complex>::kDefaultEpsilon;
  return solve(convert_spec<Complex>(spec), floating);
}

template <Coefficient C>
struct SpaceBasis {
  std::vector<SolutionAtom<C>> atoms;
  /// Order-reduced display names (nu = 2 only), e.g. J0(x), J1(x)/x.
  std::vector<std::string> reduced;
};

namespace detail {

inline std::string format_parameter(const Complex& z) {
  std::ostringstream os;
  os.precision(17);
  if (z.imag() == 0.0) {
    os << z.real();
  } else {
    os << "(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
  }
  return os.str();
}

}  // namespace detail

/// One atom family per root of the operator polynomial, with the initial
/// conditions left free. For nu = 2, J_2 and I_2 are also rewritten through
/// J_2(x) = -J_0(x) + 2 J_1(x)/x and I_2(x) = I_0(x) - 2 I_1(x)/x.
template <Coefficient C>
SpaceBasis<C> decompose_space(const EquationSpec<C>& spec, const TransformOptions& options = {}) {
  if (!spec.homogeneous()) throw Error(ErrorCode::kNonHomogeneous, "solution space needs a homogeneous equation");
  const double eps = options.epsilon<C>();
  if (spec.operator_coeffs.empty() || is_zero<C>(spec.operator_coeffs.back(), eps)) {
    throw Error(ErrorCode::kDegenerateOperator, "degenerate operator: leading coefficient q_K is zero");
  }
  SpaceBasis<C> out;
  const FactoredPoly<C> roots = factor(Polynomial<C>(spec.operator_coeffs, eps), options.roots);
  for (const auto& f : roots.factors) {
    if (is_zero<C>(f.root, eps)) {
      throw Error(ErrorCode::kNotRepresentable, "a root at B = 0 has no Bessel atom");
    }
    if (f.multiplicity > 1 && spec.nu != 0.0) {
      throw Error(ErrorCode::kNotRepresentable, "repeated roots have table atoms only for nu = 0");
    }
    const bool as_j = options.real_form && detail::is_negative_real(f.root, eps);
    const C lambda = as_j ? -f.root : f.root;
    out.atoms.push_back({as_j ? AtomKind::kJ : AtomKind::kI, lambda, 0, from_int<C>(1), spec.nu});
    for (int n = 1; n < f.multiplicity; ++n) {
      out.atoms.push_back({as_j ? AtomKind::kTWeightedJ : AtomKind::kTWeightedI, lambda, n, from_int<C>(1), spec.nu});
    }
    if (spec.nu == 2.0) {
      const Complex l = CoefficientTraits<C>::to_complex(lambda);
      const std::string x = "sqrt(" + detail::format_parameter(l) + ")*t";
      const std::string family = as_j ? "J" : "I";
      out.reduced.push_back(family + "0(" + x + ")");
      out.reduced.push_back(family + "1(" + x + ")/(" + x + ")");
    }
  }
  return out;
}

}  // namespace opcalc
