#include "opcalc/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace opcalc {
namespace {

constexpr double kMachineEpsilon = std::numeric_limits<double>::epsilon();

// Running-error bound for Horner evaluation at z.
double horner_bound(const std::vector<double>& abs_coeffs, double r) {
  double acc = 0.0;
  for (auto it = abs_coeffs.rbegin(); it != abs_coeffs.rend(); ++it) acc = acc * r + *it;
  return acc;
}

std::vector<Complex> aberth(const Polynomial<Complex>& p, int max_iterations) {
  const int n = p.degree();
  const auto& a = p.coefficients();
  std::vector<double> abs_coeffs;
  for (const auto& c : a) abs_coeffs.push_back(std::abs(c));
  const Polynomial<Complex> dp = p.derivative();

  const double radius = std::pow(std::abs(a.front() / a.back()), 1.0 / n);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);
  }
  if (n == 1) {
    z[0] = -a[0] / a[1];
    return z;
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      auto si = static_cast<std::size_t>(i);
      if (done[si]) continue;
      const Complex zi = z[si];
      const Complex pz = p(zi);
      if (std::abs(pz) <= 4.0 * n * kMachineEpsilon * horner_bound(abs_coeffs, std::abs(zi))) {
        done[si] = true;
        continue;
      }
      all_done = false;
      const Complex dpz = dp(zi);
      Complex ratio = dpz == Complex(0.0, 0.0) ? Complex(1e-3 * (1.0 + std::abs(zi)), 0.0) : pz / dpz;
      Complex repulsion = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) repulsion += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
      }
      z[si] = zi - ratio / (1.0 - ratio * repulsion);
    }
    if (all_done) return z;
  }
  throw Error(ErrorCode::kNonConvergence,
              "Aberth iteration did not converge in " + std::to_string(max_iterations) + " iterations");
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Checks that the Taylor coefficients of p at c of order < m vanish to the
// precision an m-fold root at distance tol would allow, or to the rounding
// floor of the shift itself.
bool confirms_multiplicity(const Polynomial<Complex>& p, Complex c, int m, double tol) {
  const Polynomial<Complex> shifted = p.taylor_shift(c);
  const double tol_abs = tol * (1.0 + std::abs(c));
  for (int j = 0; j < m; ++j) {
    double scale = 0.0;
    for (int i = j; i <= p.degree(); ++i) {
      scale += std::abs(p.coefficient(i)) * binomial(i, j) * std::pow(std::abs(c), i - j);
    }
    const double bound = std::max(binomial(m, j) * std::pow(tol_abs, m - j), 8.0 * (p.degree() + 1) * kMachineEpsilon);
    if (std::abs(shifted.coefficient(j)) > bound * scale) return false;
  }
  return true;
}

// An m-fold root of p is a simple root of its (m-1)-th derivative; a few
// Newton steps there sharpen a cluster centroid.
Complex polish_multiple_root(const Polynomial<Complex>& p, Complex c, int m) {
  Polynomial<Complex> d = p;
  for (int i = 1; i < m; ++i) d = d.derivative();
  const Polynomial<Complex> dd = d.derivative();
  for (int step = 0; step < 8; ++step) {
    const Complex slope = dd(c);
    if (slope == Complex(0.0, 0.0)) break;
    const Complex delta = d(c) / slope;
    c -= delta;
    if (std::abs(delta) <= kMachineEpsilon * (1.0 + std::abs(c))) break;
  }
  return c;
}

void cluster(const Polynomial<Complex>& p, const std::vector<Complex>& points, std::size_t radius_index,
             const std::vector<double>& radii, double tol, std::vector<RootFactor<Complex>>& out) {
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const double radius = radii[radius_index];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double scale = 1.0 + std::max(std::abs(points[i]), std::abs(points[j]));
      if (std::abs(points[i] - points[j]) <= radius * scale) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<Complex>> groups;
  std::vector<std::size_t> group_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (group_of[r] == n) {
      group_of[r] = groups.size();
      groups.emplace_back();
    }
    groups[group_of[r]].push_back(points[i]);
  }
  for (const auto& g : groups) {
    if (g.size() == 1) {
      out.push_back({g.front(), 1});
      continue;
    }
    Complex centroid = 0.0;
    for (const auto& z : g) centroid += z;
    centroid /= static_cast<double>(g.size());
    const int m = static_cast<int>(g.size());
    const Complex polished = polish_multiple_root(p, centroid, m);
    if (std::abs(polished - centroid) <= radius * (1.0 + std::abs(centroid))) centroid = polished;
    if (confirms_multiplicity(p, centroid, m, tol)) {
      out.push_back({centroid, m});
    } else if (radius_index + 1 < radii.size()) {
      cluster(p, g, radius_index + 1, radii, tol, out);
    } else {
      for (const auto& z : g) out.push_back({z, 1});
    }
  }
}

}  // namespace

FactoredPoly<Complex> find_roots(const Polynomial<Complex>& p, const RootOptions& options) {
  if (p.degree() < 1) throw Error(ErrorCode::kDegreeZero, "root finding needs degree >= 1");
  FactoredPoly<Complex> out;
  out.leading = p.leading();

  // Exact zero roots come straight off the low coefficients.
  int zeros = 0;
  while (p.coefficient(zeros) == Complex(0.0, 0.0)) ++zeros;
  if (zeros > 0) out.factors.push_back({Complex(0.0, 0.0), zeros});
  if (zeros == p.degree()) return out;
  std::vector<Complex> rest(p.coefficients().begin() + zeros, p.coefficients().end());
  const Polynomial<Complex> q(std::move(rest), 0.0);

  const std::vector<Complex> approx = aberth(q, options.max_iterations);
  std::vector<double> radii = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  radii.push_back(std::min(options.root_epsilon, 1e-6));
  cluster(q, approx, 0, radii, options.root_epsilon, out.factors);
  return out;
}

mpq_class rationalize(double x, long max_denominator) {
  const double tolerance = 1e-9 * std::max(1.0, std::abs(x));
  // Continued-fraction convergents h/k.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int step = 0; step < 64; ++step) {
    mpq_class candidate(h, k);
    if (std::abs(candidate.get_d() - x) <= tolerance || frac < 1e-300) break;
    double inv = 1.0 / frac;
    auto a = static_cast<long>(std::floor(inv));
    frac = inv - std::floor(inv);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  mpq_class out(h, k);
  out.canonicalize();
  return out;
}

std::optional<FactoredPoly<ExactComplex>> find_roots_exact(const Polynomial<ExactComplex>& p,
                                                           const RootOptions& options) {
  if (p.degree() < 1) throw Error(ErrorCode::kDegreeZero, "root finding needs degree >= 1");
  FactoredPoly<ExactComplex> out;
  out.leading = p.leading();

  Polynomial<ExactComplex> remaining = p;
  int zeros = 0;
  while (remaining.coefficient(zeros).is_zero()) ++zeros;
  if (zeros > 0) {
    out.factors.push_back({ExactComplex(0), zeros});
    std::vector<ExactComplex> rest(p.coefficients().begin() + zeros, p.coefficients().end());
    remaining = Polynomial<ExactComplex>(std::move(rest));
  }
  if (remaining.degree() == 0) return out;

  const FactoredPoly<Complex> approx = find_roots(convert_polynomial<Complex>(remaining), options);
  for (const auto& f : approx.factors) {
    ExactComplex candidate(rationalize(f.root.real()), rationalize(f.root.imag()));
    bool seen = false;
    for (const auto& existing : out.factors) seen = seen || existing.root == candidate;
    if (seen) continue;
    int multiplicity = 0;
    while (remaining.degree() >= 1) {
      auto [quotient, remainder] = remaining.divmod(Polynomial<ExactComplex>::linear_factor(candidate));
      if (!remainder.is_zero()) break;
      remaining = std::move(quotient);
      ++multiplicity;
    }
    if (multiplicity == 0) return std::nullopt;
    out.factors.push_back({candidate, multiplicity});
  }
  if (remaining.degree() != 0) return std::nullopt;
  return out;
}

}  // namespace opcalc
