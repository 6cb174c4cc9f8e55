#pragma once

#include <optional>

#include "opcalc/polynomial.hpp"

namespace opcalc {

struct RootOptions {
  /// Cluster radius for multiple roots and the residual scale for confirmation.
  double root_epsilon = 1e-8;
  int max_iterations = 1000;
};

/// All complex roots with multiplicities, by Aberth iteration.
///
/// Approximations that land close together are merged into one root when the
/// Taylor coefficients of p at their centroid confirm the multiplicity;
/// otherwise they stay simple roots. Throws kDegreeZero for constants and
/// kNonConvergence if the iteration does not settle.
FactoredPoly<Complex> find_roots(const Polynomial<Complex>& p, const RootOptions& options = {});

/// Exact factorization over the Gaussian rationals. Floating roots are turned
/// into small-denominator rationals and confirmed by exact division; returns
/// nullopt when some root is not a Gaussian rational.
std::optional<FactoredPoly<ExactComplex>> find_roots_exact(const Polynomial<ExactComplex>& p,
                                                           const RootOptions& options = {});

/// Instantiation-dispatching factorization. The exact version throws kInexact
/// when the roots are not all Gaussian rationals.
inline FactoredPoly<Complex> factor(const Polynomial<Complex>& p, const RootOptions& options = {}) {
  return find_roots(p, options);
}

inline FactoredPoly<ExactComplex> factor(const Polynomial<ExactComplex>& p, const RootOptions& options = {}) {
  auto exact = find_roots_exact(p, options);
  if (!exact) throw Error(ErrorCode::kInexact, "operator polynomial has roots outside the Gaussian rationals");
  return *exact;
}

/// Closest rational with denominator at most max_denominator.
mpq_class rationalize(double x, long max_denominator = 1000000);

}  // namespace opcalc
