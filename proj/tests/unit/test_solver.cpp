#include <gtest/gtest.h>

#include "opcalc/solver.hpp"
#include "test_util.hpp"

namespace opcalc {
namespace {

using E = ExactComplex;
using test::q;

template <Coefficient C = E>
EquationSpec<C> make_spec(double nu, std::vector<C> ops, std::vector<C> ics) {
  EquationSpec<C> s;
  s.nu = nu;
  s.operator_coeffs = std::move(ops);
  s.initial_conditions = std::move(ics);
  return s;
}

const SolutionAtom<E>* atom_at(const SolveReport<E>& r, const E& parameter) {
  for (const auto& a : r.solution.atoms) {
    if (a.parameter == parameter) return &a;
  }
  return nullptr;
}

TEST(Solve, J0) {
  TransformOptions opts;
  opts.real_form = true;
  auto r = solve(make_spec(0.0, {q(1), q(1)}, {q(1)}), opts);
  ASSERT_EQ(r.solution.atoms.size(), 1u);
  EXPECT_EQ(r.solution.atoms[0].kind, AtomKind::kJ);
  EXPECT_EQ(r.solution.atoms[0].coeff, q(1));
  EXPECT_TRUE(equal_on_window(r.series, geometric(q(-1), 64)));
  EXPECT_EQ(r.metrics.residual_norm, 0.0);
  EXPECT_EQ(r.metrics.checked_up_to, 63);
}

TEST(Solve, ExampleTwo) {
  auto r = solve(make_spec(0.0, {q(2), q(-3), q(1)}, {q(1), q(6)}));
  ASSERT_EQ(r.atom_count, 2);
  ASSERT_NE(atom_at(r, q(1)), nullptr);
  ASSERT_NE(atom_at(r, q(2)), nullptr);
  EXPECT_EQ(atom_at(r, q(1))->coeff, q(-4));
  EXPECT_EQ(atom_at(r, q(2))->coeff, q(5));
  EXPECT_EQ(r.series.coefficient(0), q(1));
  EXPECT_EQ(r.series.coefficient(1), q(6));
  EXPECT_EQ(r.metrics.residual_norm, 0.0);
  EXPECT_EQ(r.metrics.checked_up_to, 62);
}

TEST(Solve, Plum) {
  TransformOptions opts;
  opts.real_form = true;
  auto r = solve(make_spec(2.0, {q(-9), q(-8), q(1)}, {q(1), q(16)}), opts);
  ASSERT_NE(atom_at(r, q(9)), nullptr);
  ASSERT_NE(atom_at(r, q(1)), nullptr);
  EXPECT_EQ(atom_at(r, q(9))->kind, AtomKind::kI);
  EXPECT_EQ(atom_at(r, q(9))->coeff, q(17, 90));
  EXPECT_EQ(atom_at(r, q(1))->kind, AtomKind::kJ);
  EXPECT_EQ(atom_at(r, q(1))->coeff, q(-7, 10));
  EXPECT_EQ(r.metrics.residual_norm, 0.0);
}

TEST(Solve, FloatingExampleTwo) {
  auto r = solve(make_spec<Complex>(0.0, {2.0, -3.0, 1.0}, {1.0, 6.0}));
  ASSERT_EQ(r.atom_count, 2);
  for (const auto& a : r.solution.atoms) {
    const double expected = std::abs(a.parameter - 1.0) < 1e-6 ? -4.0 : 5.0;
    EXPECT_NEAR(std::abs(a.coeff - expected), 0.0, 1e-10);
  }
  EXPECT_LE(r.metrics.relative_residual, 1e-12);
}

TEST(Solve, RepeatedRootNuZero) {
  // (L - 2)^2 y = 0
  auto r = solve(make_spec(0.0, {q(4), q(-4), q(1)}, {q(1), q(3)}));
  EXPECT_EQ(r.metrics.residual_norm, 0.0);
  EXPECT_EQ(r.series.coefficient(1), q(3));
  bool weighted = false;
  for (const auto& a : r.solution.atoms) weighted = weighted || a.kind == AtomKind::kTWeightedI;
  EXPECT_TRUE(weighted);
}

TEST(Solve, RepeatedRootOtherNu) {
  auto r = solve(make_spec(2.0, {q(4), q(-4), q(1)}, {q(1), q(3)}));
  EXPECT_EQ(r.metrics.residual_norm, 0.0);
  EXPECT_TRUE(r.solution.residual.has_value());
}

TEST(Solve, FiniteRhs) {
  auto s = make_spec(0.0, {q(2), q(-3), q(1)}, {q(1), q(0)});
  s.rhs = add(FormalSeries<E>::monomial(0, q(1), 64), FormalSeries<E>::monomial(3, q(-2), 64));
  auto r = solve(s);
  EXPECT_EQ(r.metrics.residual_norm, 0.0);
  for (double e : r.metrics.ic_errors) EXPECT_EQ(e, 0.0);
}

TEST(Solve, SeriesRhsUsesFieldPathway) {
  auto s = make_spec(0.0, {q(1), q(1)}, {q(1)});
  s.rhs = geometric(q(1, 2), 40);
  s.rhs_support = RhsSupport::kSeries;
  auto r = solve(s);
  EXPECT_TRUE(r.used_series_fallback);
  EXPECT_EQ(r.metrics.residual_norm, 0.0);
  EXPECT_GE(r.metrics.checked_up_to, 30);
}

TEST(Solve, AtomCountMatchesNonzeroRoots) {
  auto r = solve(make_spec(0.0, {q(-6), q(11), q(-6), q(1)}, {q(1), q(0), q(0)}));
  EXPECT_EQ(r.atom_count, 3);
}

TEST(Solve, Linearity) {
  const std::vector<E> ops = {q(-6), q(11), q(-6), q(1)};
  auto u = solve(make_spec(0.0, ops, {q(1), q(2), q(-1)}));
  auto v = solve(make_spec(0.0, ops, {q(0), q(-5), q(3, 2)}));
  auto uv = solve(make_spec(0.0, ops, {q(1), q(-3), q(1, 2)}));
  EXPECT_TRUE(equal_on_window(uv.series, add(u.series, v.series)));
}

TEST(Verify, Examples) {
  auto spec = make_spec(0.0, {q(1), q(1)}, {q(1)});
  auto ok = verify(spec, geometric(q(-1), 64));
  EXPECT_EQ(ok.residual_norm, 0.0);
  EXPECT_EQ(ok.ic_errors[0], 0.0);
  spec.initial_conditions = {q(2)};
  EXPECT_EQ(verify(spec, geometric(q(-1), 64)).ic_errors[0], 1.0);
}

TEST(Verify, PerturbationIsDetected) {
  auto spec = make_spec<Complex>(0.0, {2.0, -3.0, 1.0}, {1.0, 6.0});
  auto r = solve(spec);
  const double delta = 1e-3;
  auto perturbed = add(r.series, FormalSeries<Complex>::monomial(7, delta, r.series.truncation()));
  EXPECT_GE(verify(spec, perturbed).residual_norm, delta * (1 - 1e-9));
}

TEST(Verify, NegativeValuationThrows) {
  auto spec = make_spec(0.0, {q(1), q(1)}, {q(1)});
  EXPECT_THROW(verify(spec, FormalSeries<E>::monomial(-1, q(1), 10)), Error);
}

TEST(Fallback, OddNuUsesFloatingPoint) {
  auto report = solve_with_fallback(make_spec(1.0, {q(1), q(1)}, {q(1)}));
  ASSERT_TRUE(std::holds_alternative<SolveReport<Complex>>(report));
  EXPECT_LE(std::get<SolveReport<Complex>>(report).metrics.relative_residual, 1e-12);
}

TEST(Fallback, IrrationalRootsUseFloatingPoint) {
  auto report = solve_with_fallback(make_spec(0.0, {q(-2), q(0), q(1)}, {q(1), q(0)}));
  ASSERT_TRUE(std::holds_alternative<SolveReport<Complex>>(report));
}

TEST(Fallback, ExactWhenPossible) {
  auto report = solve_with_fallback(make_spec(2.0, {q(-9), q(-8), q(1)}, {q(1), q(16)}));
  EXPECT_TRUE(std::holds_alternative<SolveReport<E>>(report));
}

TEST(DecomposeSpace, SimpleRoot) {
  auto basis = decompose_space(make_spec(0.0, {q(-3), q(1)}, {q(0)}));
  ASSERT_EQ(basis.atoms.size(), 1u);
  EXPECT_EQ(basis.atoms[0].kind, AtomKind::kI);
  EXPECT_EQ(basis.atoms[0].parameter, q(3));
}

TEST(DecomposeSpace, Plum) {
  TransformOptions opts;
  opts.real_form = true;
  auto basis = decompose_space(make_spec(2.0, {q(-9), q(-8), q(1)}, {q(0), q(0)}), opts);
  ASSERT_EQ(basis.atoms.size(), 2u);
  ASSERT_EQ(basis.reduced.size(), 4u);
  int j = 0, i = 0;
  for (const auto& a : basis.atoms) {
    j += a.kind == AtomKind::kJ ? 1 : 0;
    i += a.kind == AtomKind::kI ? 1 : 0;
  }
  EXPECT_EQ(j, 1);
  EXPECT_EQ(i, 1);
  EXPECT_NE(basis.reduced[0].find("0("), std::string::npos);
}

TEST(DecomposeSpace, DoubleRoot) {
  auto basis = decompose_space(make_spec(0.0, {q(4), q(-4), q(1)}, {q(0), q(0)}));
  ASSERT_EQ(basis.atoms.size(), 2u);
  EXPECT_EQ(basis.atoms[0].kind, AtomKind::kI);
  EXPECT_EQ(basis.atoms[1].kind, AtomKind::kTWeightedI);
  EXPECT_EQ(basis.atoms[1].n, 1);
}

TEST(DecomposeSpace, NonHomogeneousThrows) {
  auto s = make_spec(0.0, {q(-3), q(1)}, {q(0)});
  s.rhs = FormalSeries<E>::monomial(0, q(1), 10);
  try {
    decompose_space(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonHomogeneous);
  }
}

}  // namespace
}  // namespace opcalc
