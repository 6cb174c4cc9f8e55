#include "opcalc/bessel.hpp"

#include <cmath>
#include <limits>

namespace opcalc {

std::string_view atom_kind_name(AtomKind kind) {
  switch (kind) {
    case AtomKind::kJ: return "J";
    case AtomKind::kI: return "I";
    case AtomKind::kBer: return "ber";
    case AtomKind::kBei: return "bei";
    case AtomKind::kTWeightedI: return "t_weighted_I";
    case AtomKind::kTWeightedJ: return "t_weighted_J";
  }
  return "?";
}

AtomKind parse_atom_kind(std::string_view name) {
  for (AtomKind k : {AtomKind::kJ, AtomKind::kI, AtomKind::kBer, AtomKind::kBei, AtomKind::kTWeightedI,
                     AtomKind::kTWeightedJ}) {
    if (atom_kind_name(k) == name) return k;
  }
  throw Error(ErrorCode::kParseError, "unknown atom kind '" + std::string(name) + "'");
}

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Ratio p_{k+1,nu}(t) / p_{k,nu}(t).
double basis_ratio(int k, double nu, double t) {
  const double half = t / 2.0;
  return half * half / ((k + 1.0) * (nu + k + 1.0));
}

}  // namespace

double p_eval(int k, double nu, double t) {
  if (k < 0) {
    throw Error(ErrorCode::kDomainError,
                "p_{" + std::to_string(k) + ",nu} has no function realization (negative index)");
  }
  if (!std::isfinite(nu)) throw Error(ErrorCode::kDomainError, "nu must be finite");
  if (t < 0.0 || !std::isfinite(t)) throw Error(ErrorCode::kDomainError, "t must be finite and >= 0");
  const double g_arg = nu + 1.0 + k;
  if (is_nonpositive_integer(g_arg)) {
    throw Error(ErrorCode::kDomainError, "Gamma(nu+1+k) has a pole at " + std::to_string(g_arg));
  }
  const double exponent = 2.0 * k + nu;
  if (t == 0.0) {
    if (exponent > 0.0) return 0.0;
    if (exponent == 0.0) return 1.0 / (std::tgamma(g_arg) * std::tgamma(k + 1.0));
    throw Error(ErrorCode::kDomainError, "p_{k,nu} diverges at t = 0 for 2k + nu < 0");
  }
  if (g_arg < 170.0 && k < 170) {
    const double direct = std::pow(t / 2.0, exponent) / (std::tgamma(g_arg) * std::tgamma(k + 1.0));
    if (std::isfinite(direct) && direct != 0.0) return direct;
  }
  const double log_mag = exponent * std::log(t / 2.0) - std::lgamma(g_arg) - std::lgamma(k + 1.0);
  const double sign = std::tgamma(g_arg) < 0.0 ? -1.0 : 1.0;
  return sign * std::exp(log_mag);
}

EvalResult eval_coefficients(std::span<const Complex> coefficients, int valuation, int truncation, double nu,
                             double t) {
  EvalResult out{Complex(0.0, 0.0), 0.0};
  if (coefficients.empty()) return out;
  if (valuation < 0) throw Error(ErrorCode::kNegativeValuation, "negative valuation has no realization");

  double basis = p_eval(valuation, nu, t);
  double last_term = 0.0;
  int last_index = valuation;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const int k = valuation + static_cast<int>(i);
    if (i > 0) basis *= basis_ratio(k - 1, nu, t);
    const Complex term = coefficients[i] * basis;
    out.value += term;
    if (coefficients[i] != Complex(0.0, 0.0)) {
      last_term = std::abs(term);
      last_index = k;
    }
  }

  // Coefficient growth over the upper half of the stored window.
  double growth = 1.0;
  const std::size_t start = coefficients.size() / 2;
  for (std::size_t i = std::max<std::size_t>(start, 1); i < coefficients.size(); ++i) {
    const double cur = std::abs(coefficients[i]);
    const double prev = std::abs(coefficients[i - 1]);
    if (prev > 0.0) growth = std::max(growth, cur / prev);
    if (i >= 2) {
      const double prev2 = std::abs(coefficients[i - 2]);
      if (prev2 > 0.0) growth = std::max(growth, std::sqrt(cur / prev2));
    }
  }
  const double denom = (last_index + 1.0) * (nu + last_index + 1.0);
  if (denom <= 0.0) {
    out.truncation_bound = std::numeric_limits<double>::infinity();
    return out;
  }
  const double q = (t / 2.0) * (t / 2.0) / denom * growth;
  if (q >= 1.0) {
    out.truncation_bound = std::numeric_limits<double>::infinity();
  } else {
    out.truncation_bound = last_term * std::pow(q, truncation + 1 - last_index) / (1.0 - q);
  }
  return out;
}

namespace {

// sum_{k>=0} c_k p_{k,nu}(t) with c_k = first * step^k (or the real/imag part
// of it), summed until the tail is negligible.
enum class Part { kWhole, kReal, kImag };

Complex sum_geometric_series(double nu, double t, Complex step, Part part, int start_index = 0,
                             double (*weight)(int, int) = nullptr, int weight_n = 0) {
  constexpr int kMaxTerms = 5000;
  Complex sum = 0.0;
  Complex power = 1.0;
  double basis = p_eval(start_index, nu, t);
  for (int k = 0; k < kMaxTerms; ++k) {
    const int index = start_index + k;
    if (k > 0) basis *= basis_ratio(index - 1, nu, t);
    Complex c = power;
    if (part == Part::kReal) c = Complex(power.real(), 0.0);
    if (part == Part::kImag) c = Complex(power.imag(), 0.0);
    const double w = weight != nullptr ? weight(k, weight_n) : 1.0;
    sum += c * w * basis;
    const double full = std::abs(power) * w * std::abs(basis);
    const double ratio = basis_ratio(index, nu, t) * std::abs(step);
    if (k > 4 && ratio < 0.5 && full <= 1e-18 * std::max(std::abs(sum), 1e-300)) break;
    if (basis == 0.0 && k > 0) break;
    power *= step;
  }
  return sum;
}

// ((k+n)!)^2 / (k! (k+n)! n!) = (k+n)! / (k! n!).
double t_weight(int k, int n) {
  return std::exp(std::lgamma(k + n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n + 1.0));
}

}  // namespace

Complex bessel_i(double nu, Complex lambda, double t) {
  return half_nu_power(lambda, nu) * sum_geometric_series(nu, t, lambda, Part::kWhole);
}

Complex bessel_j(double nu, Complex lambda, double t) {
  return half_nu_power(lambda, nu) * sum_geometric_series(nu, t, -lambda, Part::kWhole);
}

Complex bessel_atom_eval(const SolutionAtom<Complex>& atom, double t) {
  if (t < 0.0) throw Error(ErrorCode::kDomainError, "atoms are evaluated for t >= 0");
  switch (atom.kind) {
    case AtomKind::kI:
      return atom.coeff * bessel_i(atom.nu, atom.parameter, t);
    case AtomKind::kJ:
      return atom.coeff * bessel_j(atom.nu, atom.parameter, t);
    case AtomKind::kBer:
      return atom.coeff * sum_geometric_series(atom.nu, t, Complex(0.0, 1.0) * atom.parameter, Part::kReal);
    case AtomKind::kBei:
      return atom.coeff * sum_geometric_series(atom.nu, t, Complex(0.0, 1.0) * atom.parameter, Part::kImag);
    case AtomKind::kTWeightedI:
    case AtomKind::kTWeightedJ: {
      if (atom.nu != 0.0) throw Error(ErrorCode::kDomainError, "t-weighted atoms exist only for nu = 0");
      const Complex step = atom.kind == AtomKind::kTWeightedI ? atom.parameter : -atom.parameter;
      return atom.coeff * sum_geometric_series(0.0, t, step, Part::kWhole, atom.n, &t_weight, atom.n);
    }
  }
  throw Error(ErrorCode::kDomainError, "non-evaluable atom");
}

}  // namespace opcalc
