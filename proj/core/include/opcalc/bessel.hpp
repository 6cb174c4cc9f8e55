#pragma once

#include <span>
#include <vector>

#include <gmpxx.h>

#include "opcalc/atom.hpp"
#include "opcalc/series.hpp"

namespace opcalc {

/// p_{k,nu}(t) = (t/2)^{2k+nu} / (Gamma(nu+1+k) k!).
///
/// Negative k is an abstract-only index and raises kDomainError, as do poles
/// of Gamma(nu+1+k) and t < 0. At t = 0 the value is the continuous limit.
double p_eval(int k, double nu, double t);

struct EvalResult {
  Complex value;
  double truncation_bound = 0.0;
};

/// Realizes sum_{k=v}^{T} a_k p_{k,nu}(t) from raw coefficients.
EvalResult eval_coefficients(std::span<const Complex> coefficients, int valuation, int truncation, double nu,
                             double t);

/// Realized value of a truncated series, with an estimate of the dropped tail:
/// |last kept term| * q^{T+1-L} / (1 - q) where L is the last stored index and
/// q = rho_L * g. rho_L = (t/2)^2 / ((L+1)(nu+L+1)) is the basis ratio and
/// g >= 1 the largest coefficient growth ratio seen in the upper half of the
/// window. Infinite when q >= 1.
template <Coefficient C>
EvalResult eval_series(const FormalSeries<C>& a, double nu, double t) {
  if (!a.is_zero() && a.valuation() < 0) {
    throw Error(ErrorCode::kNegativeValuation, "series with negative valuation " + std::to_string(a.valuation()) +
                                                   " has no function realization");
  }
  std::vector<Complex> coeffs;
  coeffs.reserve(a.coefficients().size());
  for (const auto& c : a.coefficients()) coeffs.push_back(CoefficientTraits<C>::to_complex(c));
  return eval_coefficients(coeffs, a.is_zero() ? 0 : a.valuation(), a.truncation(), nu, t);
}

/// Exact-in-C coefficients of an atom in the p_{k,nu} basis up to `truncation`:
///   I:   coeff lambda^{nu/2} lambda^k            J: coeff lambda^{nu/2} (-lambda)^k
///   Ber: coeff Re((i omega)^k)                   Bei: coeff Im((i omega)^k)
///   t-weighted I_n/J_n: coeff (+-lambda)^k ((k+n)!)^2 / (k! (k+n)! n!) at index k+n,
/// the last one read off the defining series of I_n and J_n.
template <Coefficient C>
FormalSeries<C> atom_series(const SolutionAtom<C>& atom, int truncation = kDefaultTruncation) {
  using Traits = CoefficientTraits<C>;
  if ((atom.kind == AtomKind::kTWeightedI || atom.kind == AtomKind::kTWeightedJ) && atom.nu != 0.0) {
    throw Error(ErrorCode::kDomainError, "t-weighted atoms exist only for nu = 0");
  }
  if (truncation < 0) return FormalSeries<C>(truncation, atom.nu);
  std::vector<C> coeffs;
  switch (atom.kind) {
    case AtomKind::kI:
    case AtomKind::kJ: {
      const C step = atom.kind == AtomKind::kI ? atom.parameter : -atom.parameter;
      C term = atom.coeff * half_nu_power(atom.parameter, atom.nu);
      for (int k = 0; k <= truncation; ++k) {
        coeffs.push_back(term);
        term = term * step;
      }
      return FormalSeries<C>(0, std::move(coeffs), truncation, atom.nu);
    }
    case AtomKind::kBer:
    case AtomKind::kBei: {
      const C rotated = Traits::i() * atom.parameter;
      C power = from_int<C>(1);
      for (int k = 0; k <= truncation; ++k) {
        const C part = atom.kind == AtomKind::kBer ? Traits::real_part(power) : Traits::imag_part(power);
        coeffs.push_back(atom.coeff * part);
        power = power * rotated;
      }
      return FormalSeries<C>(0, std::move(coeffs), truncation, atom.nu);
    }
    case AtomKind::kTWeightedI:
    case AtomKind::kTWeightedJ: {
      const int n = atom.n;
      const C step = atom.kind == AtomKind::kTWeightedI ? atom.parameter : -atom.parameter;
      C power = from_int<C>(1);
      mpz_class n_fact;
      mpz_fac_ui(n_fact.get_mpz_t(), static_cast<unsigned long>(n));
      for (int k = 0; k + n <= truncation; ++k) {
        mpz_class k_fact, kn_fact;
        mpz_fac_ui(k_fact.get_mpz_t(), static_cast<unsigned long>(k));
        mpz_fac_ui(kn_fact.get_mpz_t(), static_cast<unsigned long>(k + n));
        mpq_class weight(kn_fact * kn_fact, k_fact * kn_fact * n_fact);
        weight.canonicalize();
        C w;
        if constexpr (Traits::kExact) {
          w = ExactComplex(weight);
        } else {
          w = C(weight.get_d(), 0.0);
        }
        coeffs.push_back(atom.coeff * w * power);
        power = power * step;
      }
      return FormalSeries<C>(n, std::move(coeffs), truncation, atom.nu);
    }
  }
  return FormalSeries<C>(truncation, atom.nu);
}

/// Numeric value of coeff * f(t), summing the defining p_{k,nu} series until
/// the terms stop mattering in double precision.
Complex bessel_atom_eval(const SolutionAtom<Complex>& atom, double t);

template <Coefficient C>
Complex bessel_atom_eval(const SolutionAtom<C>& atom, double t) {
  return bessel_atom_eval(convert_atom<Complex>(atom), t);
}

/// I_nu(sqrt(lambda) t) and J_nu(sqrt(lambda) t), principal branch.
Complex bessel_i(double nu, Complex lambda, double t);
Complex bessel_j(double nu, Complex lambda, double t);

/// L_nu on the abstract series. On realized series this is the action of
/// (1/t) D t D - nu^2/t^2.
template <Coefficient C>
FormalSeries<C> apply_Lnu_series(const FormalSeries<C>& a) {
  return modified_left_shift(a);
}

}  // namespace opcalc
