#pragma once

#include <string_view>

#include "opcalc/coefficient.hpp"

namespace opcalc {

enum class AtomKind {
  kJ,           // J_nu(sqrt(lambda) t)
  kI,           // I_nu(sqrt(lambda) t)
  kBer,         // Ber_nu(sqrt(omega) t)
  kBei,         // Bei_nu(sqrt(omega) t)
  kTWeightedI,  // t^n / (n! 2^n lambda^{n/2}) I_n(sqrt(lambda) t), nu = 0 only
  kTWeightedJ,  // t^n / (n! 2^n lambda^{n/2}) J_n(sqrt(lambda) t), nu = 0 only
};

std::string_view atom_kind_name(AtomKind kind);
AtomKind parse_atom_kind(std::string_view name);

/// coeff * f(t) where f is the named closed-form function. `parameter` is
/// lambda for the J/I families and omega for Ber/Bei.
template <Coefficient C>
struct SolutionAtom {
  AtomKind kind = AtomKind::kI;
  C parameter = from_int<C>(0);
  int n = 0;
  C coeff = from_int<C>(1);
  double nu = 0.0;
};

template <Coefficient To, Coefficient From>
SolutionAtom<To> convert_atom(const SolutionAtom<From>& a) {
  return {a.kind, convert_coefficient<To>(a.parameter), a.n, convert_coefficient<To>(a.coeff), a.nu};
}

}  // namespace opcalc
