#include "opcalc/coefficient.hpp"

#include <cmath>

#include "opcalc/error.hpp"

namespace opcalc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroDivision: return "zero_division";
    case ErrorCode::kTruncationExceeded: return "truncation_exceeded";
    case ErrorCode::kNuMismatch: return "nu_mismatch";
    case ErrorCode::kDegreeZero: return "degree_zero";
    case ErrorCode::kNonConvergence: return "non_convergence";
    case ErrorCode::kUnfactoredDenominator: return "unfactored_denominator";
    case ErrorCode::kDomainError: return "domain_error";
    case ErrorCode::kNegativeValuation: return "negative_valuation";
    case ErrorCode::kDegenerateOperator: return "degenerate_operator";
    case ErrorCode::kInvalidSpec: return "invalid_spec";
    case ErrorCode::kInfiniteResidual: return "infinite_residual";
    case ErrorCode::kNonHomogeneous: return "non_homogeneous";
    case ErrorCode::kNotRepresentable: return "not_representable";
    case ErrorCode::kInexact: return "inexact";
    case ErrorCode::kParseError: return "parse_error";
  }
  return "unknown";
}

namespace {

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw Error(ErrorCode::kParseError, "malformed rational '" + text + "'");
  }
  if (q.get_den() == 0) {
    throw Error(ErrorCode::kZeroDivision, "zero denominator in '" + text + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace

ExactComplex ExactComplex::parse(const std::string& re, const std::string& im) {
  return {parse_rational(re), parse_rational(im)};
}

ExactComplex ExactComplex::from_complex(const Complex& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::kDomainError, "non-finite value cannot be made exact");
  }
  return {mpq_class(z.real()), mpq_class(z.imag())};
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const ExactComplex& o) {
  if (o.is_zero()) throw Error(ErrorCode::kZeroDivision, "division by exact zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / norm;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string to_string(const mpq_class& q) { return q.get_str(10); }

Complex half_nu_power(const Complex& z, double nu) {
  if (nu == 0.0) return {1.0, 0.0};
  double half = nu / 2.0;
  if (half == std::floor(half) && std::abs(half) < 64) {
    return ipow(z, static_cast<long>(half));
  }
  if (z == Complex(0.0, 0.0)) {
    if (nu > 0) return {0.0, 0.0};
    throw Error(ErrorCode::kZeroDivision, "0^(nu/2) with nu < 0");
  }
  return std::pow(z, half);
}

ExactComplex half_nu_power(const ExactComplex& z, double nu) {
  double half = nu / 2.0;
  if (half != std::floor(half) || std::abs(half) > 1e6) {
    throw Error(ErrorCode::kInexact, "z^(nu/2) is not exact for nu = " + std::to_string(nu));
  }
  return ipow(z, static_cast<long>(half));
}

}  // namespace opcalc
