#pragma once

#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "opcalc/solver.hpp"

namespace opcalc::json_io {

using nlohmann::json;

json to_json(const Complex& c);
json to_json(const ExactComplex& c);

/// Accepts a number, a "p/q" string, or a pair of either. Exact when strings.
Complex complex_from_json(const json& j);
ExactComplex exact_from_json(const json& j);

enum class CoefficientKind { kNone, kExact, kFloating };

/// Kind of every coefficient in `j` (recursing through arrays); throws
/// kParseError on a mix.
CoefficientKind detect_kind(const json& j, CoefficientKind seen = CoefficientKind::kNone);

template <Coefficient C>
json series_to_json(const FormalSeries<C>& s) {
  json out;
  out["nu"] = s.nu();
  out["truncation"] = s.truncation();
  out["valuation"] = s.is_zero() ? json(nullptr) : json(s.valuation());
  json coeffs = json::array();
  for (const auto& c : s.coefficients()) coeffs.push_back(to_json(c));
  out["coefficients"] = coeffs;
  return out;
}

template <Coefficient C>
C coefficient_from_json(const json& j) {
  if constexpr (CoefficientTraits<C>::kExact) {
    return exact_from_json(j);
  } else {
    return complex_from_json(j);
  }
}

/// `default_truncation` applies when the object has no "truncation" field.
template <Coefficient C>
FormalSeries<C> series_from_json(const json& j, int default_truncation, std::optional<double> nu = std::nullopt) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "series must be a JSON object");
  const double s_nu = j.contains("nu") ? j.at("nu").get<double>() : nu.value_or(0.0);
  if (nu && s_nu != *nu) throw Error(ErrorCode::kNuMismatch, "series nu differs from the problem's nu");
  const int truncation = j.contains("truncation") ? j.at("truncation").get<int>() : default_truncation;
  std::vector<C> coeffs;
  if (j.contains("coefficients")) {
    if (!j.at("coefficients").is_array()) throw Error(ErrorCode::kParseError, "coefficients must be an array");
    for (const auto& c : j.at("coefficients")) coeffs.push_back(coefficient_from_json<C>(c));
  }
  if (coeffs.empty() || !j.contains("valuation") || j.at("valuation").is_null()) {
    return FormalSeries<C>(truncation, s_nu);
  }
  return FormalSeries<C>(j.at("valuation").get<int>(), std::move(coeffs), truncation, s_nu);
}

template <Coefficient C>
json atom_to_json(const SolutionAtom<C>& a) {
  return {{"kind", std::string(atom_kind_name(a.kind))},
          {"parameter", to_json(a.parameter)},
          {"n", a.n},
          {"coeff", to_json(a.coeff)},
          {"nu", a.nu}};
}

template <Coefficient C>
json polynomial_to_json(const Polynomial<C>& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(to_json(c));
  return out;
}

json metrics_to_json(const VerifyResult& m);

/// Whether the metrics pass at `tolerance`: exact problems need a zero
/// residual, floating ones a relative residual within tolerance.
bool metrics_pass(const VerifyResult& m, bool exact, double tolerance);

template <Coefficient C>
json report_to_json(const SolveReport<C>& r, double tolerance) {
  json out;
  out["arithmetic"] = CoefficientTraits<C>::name();
  json atoms = json::array();
  for (const auto& a : r.solution.atoms) atoms.push_back(atom_to_json(a));
  out["atoms"] = atoms;
  out["atom_count"] = r.atom_count;
  out["residual"] = r.solution.residual ? series_to_json(*r.solution.residual) : json(nullptr);
  out["residual_finite"] = r.solution.residual_finite;
  out["non_evaluable_residual"] = r.solution.non_evaluable_residual;
  out["used_series_fallback"] = r.used_series_fallback;
  out["series"] = series_to_json(r.series);
  out["lhs_poly"] = polynomial_to_json(r.transformed.lhs_poly);
  out["correction"] = polynomial_to_json(r.transformed.correction);
  out["metrics"] = metrics_to_json(r.metrics);
  out["tolerance"] = tolerance;
  out["verified"] = metrics_pass(r.metrics, CoefficientTraits<C>::kExact, tolerance);
  return out;
}

using AnySpec = std::variant<EquationSpec<ExactComplex>, EquationSpec<Complex>>;

struct ProblemFile {
  AnySpec spec;
  int truncation = kDefaultTruncation;
  double tolerance = 1e-10;
  bool real_form = false;

  bool exact() const { return std::holds_alternative<EquationSpec<ExactComplex>>(spec); }
};

/// Schema-checks and converts a problem document. `truncation_override`
/// replaces the file's truncation when set.
ProblemFile parse_problem(const json& j, std::optional<int> truncation_override = std::nullopt);

/// Transform-table rows with nu substituted.
json table_rows(double nu);

}  // namespace opcalc::json_io
