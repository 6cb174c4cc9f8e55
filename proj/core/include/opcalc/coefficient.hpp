#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <cstdint>
#include <string>

namespace opcalc {

using Complex = std::complex<double>;

/// Complex number with exact rational real and imaginary parts.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long value) : re_(value), im_(0) {}  // NOLINT(implicit)
  ExactComplex(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// Parses "p/q" or "p" (decimal integers) for each part.
  static ExactComplex parse(const std::string& re, const std::string& im = "0");
  /// Exact binary value of the doubles.
  static ExactComplex from_complex(const Complex& z);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
  ExactComplex conj() const { return {re_, -im_}; }

  ExactComplex operator-() const { return {-re_, -im_}; }
  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const ExactComplex& o);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const ExactComplex& b) { return a /= b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::string to_string(const mpq_class& q);

/// Arithmetic the series and polynomial templates need from a scalar type,
/// plus the conversions used at module boundaries.
template <class C>
struct CoefficientTraits;

template <>
struct CoefficientTraits<Complex> {
  static constexpr bool kExact = false;
  static constexpr double kDefaultEpsilon = 1e-12;
  static bool is_zero(const Complex& c, double eps) { return std::abs(c) <= eps; }
  static Complex to_complex(const Complex& c) { return c; }
  static Complex from_int(std::int64_t n) { return Complex(static_cast<double>(n), 0.0); }
  static Complex conj(const Complex& c) { return std::conj(c); }
  static Complex real_part(const Complex& c) { return {c.real(), 0.0}; }
  static Complex imag_part(const Complex& c) { return {c.imag(), 0.0}; }
  static Complex i() { return {0.0, 1.0}; }
  static const char* name() { return "floating"; }
};

template <>
struct CoefficientTraits<ExactComplex> {
  static constexpr bool kExact = true;
  static constexpr double kDefaultEpsilon = 0.0;
  static bool is_zero(const ExactComplex& c, double /*eps*/) { return c.is_zero(); }
  static Complex to_complex(const ExactComplex& c) { return c.to_complex(); }
  static ExactComplex from_int(std::int64_t n) { return ExactComplex(mpq_class(static_cast<long>(n))); }
  static ExactComplex conj(const ExactComplex& c) { return c.conj(); }
  static ExactComplex real_part(const ExactComplex& c) { return {c.real(), 0}; }
  static ExactComplex imag_part(const ExactComplex& c) { return {c.imag(), 0}; }
  static ExactComplex i() { return {0, 1}; }
  static const char* name() { return "exact"; }
};

template <class C>
concept Coefficient = requires(C a, C b) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { a / b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  { CoefficientTraits<C>::kExact } -> std::convertible_to<bool>;
};

template <Coefficient C>
bool is_zero(const C& c, double eps = CoefficientTraits<C>::kDefaultEpsilon) {
  return CoefficientTraits<C>::is_zero(c, eps);
}

template <Coefficient C>
double magnitude(const C& c) {
  return std::abs(CoefficientTraits<C>::to_complex(c));
}

template <Coefficient C>
C from_int(std::int64_t n) {
  return CoefficientTraits<C>::from_int(n);
}

/// Integer power by repeated squaring; negative exponents invert.
template <Coefficient C>
C ipow(C base, long exponent) {
  C result = from_int<C>(1);
  bool invert = exponent < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return invert ? from_int<C>(1) / result : result;
}

/// Principal branch of z^(nu/2). Exact only when nu is an even integer;
/// the exact instantiation throws kInexact otherwise.
Complex half_nu_power(const Complex& z, double nu);
ExactComplex half_nu_power(const ExactComplex& z, double nu);

/// Converts between coefficient instantiations (exact -> floating is lossy).
template <Coefficient To, Coefficient From>
To convert_coefficient(const From& c) {
  if constexpr (std::same_as<To, From>) {
    return c;
  } else if constexpr (std::same_as<To, Complex>) {
    return CoefficientTraits<From>::to_complex(c);
  } else {
    return ExactComplex::from_complex(CoefficientTraits<From>::to_complex(c));
  }
}

}  // namespace opcalc
