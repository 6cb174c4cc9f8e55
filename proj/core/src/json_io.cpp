#include "opcalc/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace opcalc::json_io {
namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

// Reads one real part: a JSON number or a "p/q" string.
double real_part_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return ExactComplex::parse(j.get<std::string>()).real().get_d();
  throw Error(ErrorCode::kParseError, "coefficient part must be a number or a \"p/q\" string, got " + j.dump());
}

mpq_class real_part_exact(const json& j) {
  if (j.is_string()) return ExactComplex::parse(j.get<std::string>()).real();
  if (j.is_number()) return ExactComplex::from_complex({j.get<double>(), 0.0}).real();
  throw Error(ErrorCode::kParseError, "coefficient part must be a number or a \"p/q\" string, got " + j.dump());
}

void check_pair(const json& j) {
  if (j.size() != 2) throw Error(ErrorCode::kParseError, "complex coefficient must be [re, im], got " + j.dump());
}

template <Coefficient C>
std::vector<C> coefficient_list(const json& j, const char* field) {
  if (!j.is_array()) throw Error(ErrorCode::kParseError, std::string("'") + field + "' must be an array");
  std::vector<C> out;
  for (const auto& c : j) out.push_back(coefficient_from_json<C>(c));
  return out;
}

template <Coefficient C>
EquationSpec<C> build_spec(const json& j, int truncation) {
  EquationSpec<C> spec;
  spec.nu = j.at("nu").get<double>();
  spec.operator_coeffs = coefficient_list<C>(j.at("operator"), "operator");
  spec.initial_conditions = coefficient_list<C>(j.at("initial_conditions"), "initial_conditions");
  spec.rhs = FormalSeries<C>(truncation, spec.nu);
  if (j.contains("rhs") && !j.at("rhs").is_null()) spec.rhs = series_from_json<C>(j.at("rhs"), truncation, spec.nu);
  if (j.contains("rhs_support")) {
    const auto support = j.at("rhs_support").get<std::string>();
    if (support == "finite") {
      spec.rhs_support = RhsSupport::kFinite;
    } else if (support == "series") {
      spec.rhs_support = RhsSupport::kSeries;
    } else {
      throw Error(ErrorCode::kParseError, "rhs_support must be \"finite\" or \"series\"");
    }
  }
  return spec;
}

}  // namespace

// Adding 0.0 folds -0.0 into 0.0 so output does not depend on sign of zero.
json to_json(const Complex& c) { return json::array({c.real() + 0.0, c.imag() + 0.0}); }

json to_json(const ExactComplex& c) { return json::array({to_string(c.real()), to_string(c.imag())}); }

Complex complex_from_json(const json& j) {
  if (j.is_array()) {
    check_pair(j);
    return {real_part_double(j[0]), real_part_double(j[1])};
  }
  return {real_part_double(j), 0.0};
}

ExactComplex exact_from_json(const json& j) {
  if (j.is_array()) {
    check_pair(j);
    return {real_part_exact(j[0]), real_part_exact(j[1])};
  }
  return {real_part_exact(j), 0};
}

CoefficientKind detect_kind(const json& j, CoefficientKind seen) {
  auto merge = [&](CoefficientKind k) {
    if (seen != CoefficientKind::kNone && seen != k) {
      throw Error(ErrorCode::kParseError, "mixed exact and floating coefficients");
    }
    seen = k;
  };
  if (j.is_string()) {
    merge(CoefficientKind::kExact);
  } else if (j.is_number()) {
    merge(CoefficientKind::kFloating);
  } else if (j.is_array()) {
    for (const auto& e : j) seen = detect_kind(e, seen);
  } else if (j.is_object()) {
    if (j.contains("coefficients")) seen = detect_kind(j.at("coefficients"), seen);
  } else if (!j.is_null()) {
    throw Error(ErrorCode::kParseError, "unexpected value " + j.dump());
  }
  return seen;
}

json metrics_to_json(const VerifyResult& m) {
  return {{"residual_norm", m.residual_norm},
          {"relative_residual", m.relative_residual},
          {"ic_errors", m.ic_errors},
          {"checked_up_to", m.checked_up_to}};
}

bool metrics_pass(const VerifyResult& m, bool exact, double tolerance) {
  if (exact) {
    if (m.residual_norm != 0.0) return false;
    for (double e : m.ic_errors) {
      if (e != 0.0) return false;
    }
    return true;
  }
  if (!(m.relative_residual <= tolerance)) return false;
  for (double e : m.ic_errors) {
    if (!(e <= tolerance)) return false;
  }
  return true;
}

ProblemFile parse_problem(const json& j, std::optional<int> truncation_override) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "problem file must be a JSON object");
  static const std::set<std::string> known = {"nu",        "operator",  "rhs",       "initial_conditions",
                                              "truncation", "tolerance", "real_form", "rhs_support"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw Error(ErrorCode::kParseError, "schema error: unknown field '" + key + "'");
  }
  for (const char* field : {"nu", "operator", "initial_conditions"}) {
    if (!j.contains(field)) throw Error(ErrorCode::kParseError, std::string("schema error: missing '") + field + "'");
  }
  if (!j.at("nu").is_number()) throw Error(ErrorCode::kParseError, "schema error: 'nu' must be a number");
  if (!j.at("operator").is_array() || j.at("operator").empty()) {
    throw Error(ErrorCode::kParseError, "schema error: 'operator' must be a non-empty array");
  }
  if (!j.at("initial_conditions").is_array()) {
    throw Error(ErrorCode::kParseError, "schema error: 'initial_conditions' must be an array");
  }
  const std::size_t order = j.at("operator").size() - 1;
  if (j.at("initial_conditions").size() != order) {
    throw Error(ErrorCode::kInvalidSpec, "schema error: operator of order " + std::to_string(order) + " needs " +
                                             std::to_string(order) + " initial conditions, got " +
                                             std::to_string(j.at("initial_conditions").size()));
  }

  ProblemFile out;
  if (j.contains("truncation")) {
    if (!j.at("truncation").is_number_integer()) {
      throw Error(ErrorCode::kParseError, "schema error: 'truncation' must be an integer");
    }
    out.truncation = j.at("truncation").get<int>();
  }
  if (truncation_override) out.truncation = *truncation_override;
  if (out.truncation < 1) throw Error(ErrorCode::kParseError, "truncation must be >= 1");
  if (j.contains("real_form")) {
    if (!j.at("real_form").is_boolean()) throw Error(ErrorCode::kParseError, "schema error: 'real_form' must be a bool");
    out.real_form = j.at("real_form").get<bool>();
  }

  CoefficientKind kind = detect_kind(j.at("operator"));
  kind = detect_kind(j.at("initial_conditions"), kind);
  if (j.contains("rhs")) kind = detect_kind(j.at("rhs"), kind);

  if (kind == CoefficientKind::kExact) {
    out.spec = build_spec<ExactComplex>(j, out.truncation);
    out.tolerance = 0.0;
  } else {
    out.spec = build_spec<Complex>(j, out.truncation);
  }
  if (j.contains("tolerance")) {
    if (!j.at("tolerance").is_number() || j.at("tolerance").get<double>() < 0.0) {
      throw Error(ErrorCode::kParseError, "schema error: 'tolerance' must be a non-negative number");
    }
    out.tolerance = j.at("tolerance").get<double>();
  }
  return out;
}

json table_rows(double nu) {
  const std::string n = short_number(nu);
  const double half = nu / 2.0;
  // lambda^{nu/2} with the exponent substituted.
  auto lambda_power = [&](double extra) {
    const double e = half + extra;
    if (e == 0.0) return std::string();
    if (e == 1.0) return std::string("lambda*");
    if (e == std::floor(e)) return "lambda^" + short_number(e) + "*";
    return "lambda^(" + short_number(e) + ")*";
  };
  std::string dependence =
      half == 0.0 ? "lambda^(nu/2) = 1" : half == 1.0 ? "lambda^(nu/2) = lambda" : "lambda^(nu/2) = lambda^(" + short_number(half) + ")";

  json rows = json::array();
  auto row = [&](std::string function, std::string num, std::string den, std::string dep) {
    rows.push_back({{"function", std::move(function)},
                    {"transform_numerator", std::move(num)},
                    {"transform_denominator", std::move(den)},
                    {"nu_dependence", std::move(dep)}});
  };
  row("ber_" + n + "(sqrt(omega) t)", "B^2", "B^2+omega^2", "none");
  row("bei_" + n + "(sqrt(omega) t)", "omega*B", "B^2+omega^2", "none");
  row("(I_" + n + "(sqrt(lambda) t)+J_" + n + "(sqrt(lambda) t))/2", lambda_power(0.0) + "B^2", "B^2-lambda^2",
      dependence);
  row("(I_" + n + "(sqrt(lambda) t)-J_" + n + "(sqrt(lambda) t))/2", lambda_power(1.0) + "B", "B^2-lambda^2",
      dependence);
  row("I_" + n + "(sqrt(lambda) t)", lambda_power(0.0) + "B", "B-lambda", dependence);
  row("J_" + n + "(sqrt(lambda) t)", lambda_power(0.0) + "B", "B+lambda", dependence);
  return rows;
}

}  // namespace opcalc::json_io
