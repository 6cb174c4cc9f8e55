#include <gtest/gtest.h>

#include "opcalc/json_io.hpp"
#include "test_util.hpp"

namespace opcalc {
namespace {

using json_io::json;
using test::q;

TEST(JsonIo, CoefficientForms) {
  EXPECT_EQ(json_io::exact_from_json(json("3/4")), q(3, 4));
  EXPECT_EQ(json_io::exact_from_json(json::array({"1", "-1/2"})), q(1, 1, -1, 2));
  EXPECT_EQ(json_io::complex_from_json(json::array({1.5, -2})), Complex(1.5, -2.0));
  EXPECT_EQ(json_io::complex_from_json(json(3)), Complex(3.0, 0.0));
  EXPECT_THROW(json_io::complex_from_json(json::array({1, 2, 3})), Error);
}

TEST(JsonIo, SeriesRoundTrip) {
  auto s = add(FormalSeries<ExactComplex>::monomial(-1, q(2, 3), 12, 2.0),
               FormalSeries<ExactComplex>::monomial(4, q(0, 1, 5), 12, 2.0));
  json j = json_io::series_to_json(s);
  EXPECT_EQ(j.at("valuation"), -1);
  auto back = json_io::series_from_json<ExactComplex>(j, 64);
  EXPECT_TRUE(equal_on_window(back, s));
  EXPECT_EQ(back.truncation(), 12);
  EXPECT_EQ(back.nu(), 2.0);
}

TEST(JsonIo, ZeroSeriesHasNullValuation) {
  json j = json_io::series_to_json(FormalSeries<Complex>(7));
  EXPECT_TRUE(j.at("valuation").is_null());
  EXPECT_TRUE(json_io::series_from_json<Complex>(j, 64).is_zero());
}

TEST(JsonIo, DetectsMixedKinds) {
  EXPECT_EQ(json_io::detect_kind(json::array({"1", json::array({"1", "2"})})), json_io::CoefficientKind::kExact);
  EXPECT_EQ(json_io::detect_kind(json::array({1, 2})), json_io::CoefficientKind::kFloating);
  EXPECT_THROW(json_io::detect_kind(json::array({"1", 2})), Error);
}

TEST(JsonIo, ParsesProblem) {
  json doc = json::parse(R"({"nu": 0, "operator": ["2", "-3", "1"], "initial_conditions": ["1", "6"],
                             "truncation": 32})");
  auto p = json_io::parse_problem(doc);
  EXPECT_TRUE(p.exact());
  EXPECT_EQ(p.truncation, 32);
  EXPECT_EQ(p.tolerance, 0.0);
  EXPECT_EQ(json_io::parse_problem(doc, 10).truncation, 10);
}

TEST(JsonIo, FloatingProblemWithRhs) {
  json doc = json::parse(R"({"nu": 1, "operator": [[1, 0], [1, 0]], "initial_conditions": [0],
                             "rhs": {"valuation": 0, "coefficients": [[1, 0]]}, "rhs_support": "series",
                             "tolerance": 1e-8, "real_form": true})");
  auto p = json_io::parse_problem(doc);
  ASSERT_FALSE(p.exact());
  const auto& spec = std::get<EquationSpec<Complex>>(p.spec);
  EXPECT_EQ(spec.rhs_support, RhsSupport::kSeries);
  EXPECT_EQ(spec.rhs.nu(), 1.0);
  EXPECT_EQ(p.tolerance, 1e-8);
  EXPECT_TRUE(p.real_form);
}

TEST(JsonIo, SchemaErrors) {
  auto code = [](const char* text) {
    try {
      json_io::parse_problem(json::parse(text));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kZeroDivision;
  };
  EXPECT_EQ(code(R"({"nu": 0, "operator": ["1", "1"], "initial_conditions": []})"), ErrorCode::kInvalidSpec);
  EXPECT_EQ(code(R"({"operator": ["1", "1"], "initial_conditions": ["1"]})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"nu": 0, "operator": [], "initial_conditions": []})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"nu": 0, "operator": ["1", 1], "initial_conditions": ["1"]})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"nu": 0, "operator": ["1"], "initial_conditions": [], "extra": 1})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"nu": 0, "operator": ["1"], "initial_conditions": [], "rhs_support": "x"})"),
            ErrorCode::kParseError);
}

TEST(JsonIo, ReportIsDeterministic) {
  EquationSpec<ExactComplex> s;
  s.operator_coeffs = {q(2), q(-3), q(1)};
  s.initial_conditions = {q(1), q(6)};
  auto first = json_io::report_to_json(solve(s), 0.0).dump();
  auto second = json_io::report_to_json(solve(s), 0.0).dump();
  EXPECT_EQ(first, second);
  EXPECT_NE(first.find("\"verified\":true"), std::string::npos);
}

TEST(JsonIo, TableRows) {
  auto rows = json_io::table_rows(2.0);
  ASSERT_EQ(rows.size(), 6u);
  bool i_row = false, ber_row = false;
  for (const auto& r : rows) {
    if (r.at("function") == "I_2(sqrt(lambda) t)") {
      EXPECT_EQ(r.at("transform_numerator"), "lambda*B");
      EXPECT_EQ(r.at("transform_denominator"), "B-lambda");
      i_row = true;
    }
    if (r.at("function") == "ber_2(sqrt(omega) t)") {
      EXPECT_EQ(r.at("transform_numerator"), "B^2");
      EXPECT_EQ(r.at("transform_denominator"), "B^2+omega^2");
      ber_row = true;
    }
  }
  EXPECT_TRUE(i_row);
  EXPECT_TRUE(ber_row);
  EXPECT_EQ(json_io::table_rows(0.0)[4].at("transform_numerator"), "B");
}

TEST(JsonIo, MetricsPass) {
  VerifyResult m;
  m.relative_residual = 1e-12;
  m.residual_norm = 1e-3;
  m.ic_errors = {0.0};
  EXPECT_TRUE(json_io::metrics_pass(m, false, 1e-10));
  EXPECT_FALSE(json_io::metrics_pass(m, true, 0.0));
}

}  // namespace
}  // namespace opcalc
