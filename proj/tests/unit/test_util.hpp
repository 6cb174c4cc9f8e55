#pragma once

#include <random>
#include <vector>

#include "opcalc/series.hpp"

namespace opcalc::test {

inline ExactComplex q(long num, long den = 1, long im_num = 0, long im_den = 1) {
  return {mpq_class(num, den), mpq_class(im_num, im_den)};
}

template <Coefficient C>
FormalSeries<C> series(int valuation, std::vector<long> coeffs, int truncation, double nu = 0.0) {
  std::vector<C> out;
  for (long c : coeffs) out.push_back(from_int<C>(c));
  return FormalSeries<C>(valuation, std::move(out), truncation, nu);
}

/// Random exact series: small integer/rational coefficients, nonzero lead.
inline FormalSeries<ExactComplex> random_exact(std::mt19937& rng, int min_valuation, int max_valuation, int window) {
  std::uniform_int_distribution<int> val(min_valuation, max_valuation);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  const int v = val(rng);
  std::vector<ExactComplex> coeffs;
  for (int i = 0; i <= window; ++i) {
    long n = num(rng);
    if (i == 0 && n == 0) n = 1;
    coeffs.push_back(q(n, den(rng), num(rng), den(rng)));
  }
  return FormalSeries<ExactComplex>(v, std::move(coeffs), v + window);
}

}  // namespace opcalc::test
