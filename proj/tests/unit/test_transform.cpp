#include <gtest/gtest.h>

#include "opcalc/transform.hpp"
#include "test_util.hpp"

namespace opcalc {
namespace {

using E = ExactComplex;
using test::q;

EquationSpec<E> j0_spec() {
  EquationSpec<E> s;
  s.operator_coeffs = {q(1), q(1)};
  s.initial_conditions = {q(1)};
  return s;
}

TEST(ForwardEquation, J0) {
  auto t = forward_equation(j0_spec());
  EXPECT_EQ(t.lhs_poly.coefficients(), (std::vector<E>{q(1), q(1)}));
  EXPECT_EQ(t.correction.coefficients(), (std::vector<E>{q(0), q(1)}));
  ASSERT_TRUE(t.Y.has_value());
  EXPECT_EQ(rational_difference(*t.Y, RationalOperator<E>::pole(q(1), 1, q(-1), 1)), 0.0);
}

TEST(ForwardEquation, ExampleTwoCorrection) {
  EquationSpec<E> s;
  s.operator_coeffs = {q(2), q(-3), q(1)};
  s.initial_conditions = {q(1), q(6)};
  auto t = forward_equation(s);
  EXPECT_EQ(t.correction.coefficients(), (std::vector<E>{q(0), q(3), q(1)}));
}

TEST(ForwardEquation, FiniteRhs) {
  // (L + 1) y = p_1 with a_0 = 0: Y = B^{-1} / (B + 1)
  auto s = j0_spec();
  s.initial_conditions = {q(0)};
  s.rhs = FormalSeries<E>::monomial(1, q(1), 64);
  auto t = forward_equation(s);
  ASSERT_TRUE(t.Y.has_value());
  RationalOperator<E> expected{Polynomial<E>({q(1)}), {q(1), {{q(-1), 1}, {q(0), 1}}}};
  EXPECT_EQ(rational_difference(*t.Y, expected), 0.0);
}

TEST(ForwardEquation, Validation) {
  auto s = j0_spec();
  s.operator_coeffs = {q(1), q(0)};
  try {
    forward_equation(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateOperator);
    EXPECT_NE(std::string(e.what()).find("degenerate operator"), std::string::npos);
  }
  s = j0_spec();
  s.initial_conditions = {};
  try {
    forward_equation(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
  }
}

TEST(InverseTransform, JAtomInRealForm) {
  TransformOptions opts;
  opts.real_form = true;
  auto e = inverse_transform(RationalOperator<E>::pole(q(1), 1, q(-1), 1), 0.0, opts);
  ASSERT_EQ(e.atoms.size(), 1u);
  EXPECT_EQ(e.atoms[0].kind, AtomKind::kJ);
  EXPECT_EQ(e.atoms[0].parameter, q(1));
  EXPECT_EQ(e.atoms[0].coeff, q(1));
  EXPECT_FALSE(e.residual.has_value());
}

TEST(InverseTransform, ComplexIAtomByDefault) {
  auto e = inverse_transform(RationalOperator<E>::pole(q(1), 1, q(-1), 1), 0.0);
  ASSERT_EQ(e.atoms.size(), 1u);
  EXPECT_EQ(e.atoms[0].kind, AtomKind::kI);
  EXPECT_EQ(e.atoms[0].parameter, q(-1));
}

TEST(InverseTransform, HalfNuPowerDividesCoefficient) {
  // lambda B/(B - lambda) is I_2(sqrt(lambda) t)
  auto e = inverse_transform(RationalOperator<E>::pole(q(3), 1, q(3), 1), 2.0);
  ASSERT_EQ(e.atoms.size(), 1u);
  EXPECT_EQ(e.atoms[0].coeff, q(1));
}

TEST(InverseTransform, KelvinPair) {
  TransformOptions opts;
  opts.real_form = true;
  // B^2/(B^2 + 4) + 3 * 2B/(B^2 + 4) = ber(sqrt(2) t) + 3 bei(sqrt(2) t)
  RationalOperator<E> y{Polynomial<E>({q(0), q(6), q(1)}), {q(1), {{q(0, 1, 2), 1}, {q(0, 1, -2), 1}}}};
  auto e = inverse_transform(y, 0.0, opts);
  ASSERT_EQ(e.atoms.size(), 2u);
  for (const auto& a : e.atoms) {
    EXPECT_EQ(a.parameter, q(2));
    EXPECT_EQ(a.coeff, a.kind == AtomKind::kBer ? q(1) : q(3));
  }
  EXPECT_EQ(rational_difference(forward_expression(e), y), 0.0);
}

TEST(InverseTransform, RepeatedRootNuZero) {
  auto e = inverse_transform(RationalOperator<E>::pole(q(1), 1, q(2), 3), 0.0);
  ASSERT_EQ(e.atoms.size(), 1u);
  EXPECT_EQ(e.atoms[0].kind, AtomKind::kTWeightedI);
  EXPECT_EQ(e.atoms[0].n, 2);
}

TEST(InverseTransform, RepeatedRootOtherNuFallsBackToSeries) {
  TransformOptions opts;
  opts.truncation = 20;
  auto y = RationalOperator<E>::pole(q(1), 1, q(2), 2);
  auto e = inverse_transform(y, 2.0, opts);
  EXPECT_TRUE(e.atoms.empty());
  ASSERT_TRUE(e.residual.has_value());
  EXPECT_FALSE(e.residual_finite);
  EXPECT_TRUE(equal_on_window(*e.residual, rational_to_series(y, 20, 2.0)));
  try {
    forward_expression(e);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kInfiniteResidual);
  }
}

TEST(InverseTransform, ZeroRootGoesToResidual) {
  // B/B^2 = B^{-1} -> p_1, plus a simple pole
  RationalOperator<E> y{Polynomial<E>({q(0), q(1)}), {q(1), {{q(0), 2}}}};
  auto e = inverse_transform(y, 0.0);
  EXPECT_TRUE(e.atoms.empty());
  ASSERT_TRUE(e.residual.has_value());
  EXPECT_EQ(e.residual->valuation(), 1);
  EXPECT_TRUE(e.residual_finite);
}

TEST(InverseTransform, SeriesAgreesWithRational) {
  RationalOperator<E> y{Polynomial<E>({q(1), q(2), q(1), q(5)}),
                        {q(2), {{q(1), 1}, {q(-3), 2}, {q(0, 1, 1), 1}}}};
  auto e = inverse_transform(y, 0.0);
  EXPECT_TRUE(equal_on_window(expression_to_series(e, 0.0, 30), rational_to_series(y, 30)));
  EXPECT_EQ(rational_difference(forward_expression(e), y), 0.0);
}

TEST(AtomTransform, TableImages) {
  SolutionAtom<E> i{AtomKind::kI, q(2), 0, q(1), 2.0};
  EXPECT_EQ(rational_difference(atom_transform(i), RationalOperator<E>::pole(q(2), 1, q(2), 1)), 0.0);
  SolutionAtom<E> ber{AtomKind::kBer, q(3), 0, q(1), 0.0};
  RationalOperator<E> expected{Polynomial<E>({q(0), q(0), q(1)}), {q(1), {{q(0, 1, 3), 1}, {q(0, 1, -3), 1}}}};
  EXPECT_EQ(rational_difference(atom_transform(ber), expected), 0.0);
}

TEST(FieldPathway, MatchesRationalPathway) {
  auto s = j0_spec();
  s.initial_conditions = {q(2)};
  s.rhs = add(FormalSeries<E>::monomial(0, q(1), 40), FormalSeries<E>::monomial(2, q(-3), 40));
  auto rational = forward_equation(s);
  s.rhs_support = RhsSupport::kSeries;
  auto field = forward_equation(s);
  ASSERT_TRUE(field.Y_series.has_value());
  ASSERT_TRUE(rational.Y.has_value());
  auto from_rational = rational_to_series(*rational.Y, field.Y_series->truncation());
  EXPECT_TRUE(equal_on_window(*field.Y_series, from_rational));
}

}  // namespace
}  // namespace opcalc
