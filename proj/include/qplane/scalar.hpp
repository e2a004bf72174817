#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include <gmpxx.h>

#include "qplane/errors.hpp"

namespace qplane {

using Rational = mpq_class;

// "p", "-p" or "p/q" with q > 0 after canonicalization.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw parse_error("empty rational", 0);
  std::size_t pos = 0;
  auto digits = [&](bool allow_sign) {
    std::size_t start = pos;
    if (allow_sign && pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    std::size_t first_digit = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == first_digit) throw parse_error("expected digits in rational", start);
  };
  digits(true);
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    digits(false);
  }
  if (pos != text.size()) throw parse_error("trailing characters in rational", pos);

  std::string body = text[0] == '+' ? text.substr(1) : text;  // set_str rejects '+'
  mpq_class value;
  if (value.set_str(body, 10) != 0) throw parse_error("malformed rational", 0);
  if (value.get_den() == 0) throw domain_error("rational with zero denominator: " + text);
  value.canonicalize();
  return value;
}

inline std::string rational_to_string(const Rational& value) { return value.get_str(); }

// log of a positive rational, robust for values far outside double range.
inline double rational_log(const Rational& value) {
  if (sgn(value) <= 0) throw domain_error("log of nonpositive rational");
  long num_exp = 0, den_exp = 0;
  double num_m = mpz_get_d_2exp(&num_exp, value.get_num().get_mpz_t());
  double den_m = mpz_get_d_2exp(&den_exp, value.get_den().get_mpz_t());
  return std::log(num_m) - std::log(den_m) +
         static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

inline Rational rational_pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (sgn(base) == 0) {
    if (exponent < 0) throw domain_error("zero raised to a negative power");
    return Rational(0);
  }
  unsigned long mag = exponent > 0 ? static_cast<unsigned long>(exponent)
                                   : static_cast<unsigned long>(-exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), mag);
  Rational result = exponent > 0 ? Rational(num, den) : Rational(den, num);
  result.canonicalize();
  return result;
}

// Shortest-round-trip-ish formatting for doubles; stable across runs.
inline std::string double_to_string(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  // Prefer the short form when it round-trips.
  char short_buf[64];
  std::snprintf(short_buf, sizeof short_buf, "%.15g", value);
  if (std::strtod(short_buf, nullptr) == value) return short_buf;
  return buf;
}

// Complex number with exact rational real and imaginary parts.
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}
  explicit GaussianRational(long n) : re_(n), im_(0) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm_sq() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.norm_sq();
    if (sgn(n) == 0) throw domain_error("division by zero");
    Rational re = (re_ * o.re_ + im_ * o.im_) / n;
    im_ = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_, im_;
};

inline GaussianRational gaussian_pow(GaussianRational base, long exponent) {
  if (exponent == 0) return GaussianRational(1);
  if (base.is_zero()) {
    if (exponent < 0) throw domain_error("zero raised to a negative power");
    return GaussianRational(0);
  }
  if (exponent < 0) {
    base = base.conj() / GaussianRational(base.norm_sq());
    exponent = -exponent;
  }
  GaussianRational acc(1);
  while (exponent > 0) {
    if (exponent & 1) acc *= base;
    base *= base;
    exponent >>= 1;
  }
  return acc;
}

// "3", "-1/2", "3+4i", "1/2-1/3i", "i", "-i", "2i"
inline GaussianRational parse_gaussian_rational(const std::string& text) {
  if (text.empty()) throw parse_error("empty scalar", 0);
  std::string s = text;
  if (s == "i") return {Rational(0), Rational(1)};
  if (s == "-i") return {Rational(0), Rational(-1)};
  if (s.back() == 'i') {
    std::string body = s.substr(0, s.size() - 1);
    // Split a trailing signed rational off `body` if there is a leading real part.
    for (std::size_t p = body.size(); p-- > 1;) {
      if ((body[p] == '+' || body[p] == '-') && body[p - 1] != '/') {
        Rational re = parse_rational(body.substr(0, p));
        std::string im_part = body.substr(p);
        if (im_part == "+") return {re, Rational(1)};
        if (im_part == "-") return {re, Rational(-1)};
        return {re, parse_rational(im_part)};
      }
    }
    return {Rational(0), parse_rational(body)};
  }
  return GaussianRational(parse_rational(s));
}

inline std::string gaussian_to_string(const GaussianRational& z) {
  if (z.is_real()) return rational_to_string(z.re());
  if (sgn(z.re()) == 0) return rational_to_string(z.im()) + "i";
  std::string im = rational_to_string(z.im());
  if (!im.empty() && im[0] != '-') im = "+" + im;
  return rational_to_string(z.re()) + im + "i";
}

// Traits connecting a scalar backend to its real type and basic operations.
// The two backends never mix: an Element<GaussianRational> cannot meet an
// Element<std::complex<double>> in any operation, by construction.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<GaussianRational> {
  using real_type = Rational;
  static constexpr bool is_exact = true;

  static GaussianRational zero() { return GaussianRational(0); }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational from_int(long n) { return GaussianRational(n); }
  static GaussianRational from_real(const Rational& r) { return GaussianRational(r); }
  static GaussianRational from_exact(const GaussianRational& z) { return z; }
  static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
  static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
  static GaussianRational pow_int(const GaussianRational& z, long e) { return gaussian_pow(z, e); }
  static std::complex<double> to_complex(const GaussianRational& z) {
    return {z.re().get_d(), z.im().get_d()};
  }
  static std::string to_string(const GaussianRational& z) { return gaussian_to_string(z); }
  static std::string re_string(const GaussianRational& z) { return rational_to_string(z.re()); }
  static std::string im_string(const GaussianRational& z) { return rational_to_string(z.im()); }
};

template <>
struct scalar_traits<std::complex<double>> {
  using real_type = double;
  static constexpr bool is_exact = false;

  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> from_int(long n) { return {static_cast<double>(n), 0.0}; }
  static std::complex<double> from_real(double r) { return {r, 0.0}; }
  static std::complex<double> from_exact(const GaussianRational& z) {
    return {z.re().get_d(), z.im().get_d()};
  }
  static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
  static bool is_zero(const std::complex<double>& z) { return z.real() == 0.0 && z.imag() == 0.0; }
  static std::complex<double> pow_int(const std::complex<double>& z, long e) {
    if (e == 0) return one();
    if (is_zero(z) && e < 0) throw domain_error("zero raised to a negative power");
    return std::pow(z, static_cast<double>(e));
  }
  static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
  static std::string to_string(const std::complex<double>& z) {
    if (z.imag() == 0.0) return double_to_string(z.real());
    std::string im = double_to_string(z.imag());
    if (!im.empty() && im[0] != '-') im = "+" + im;
    return double_to_string(z.real()) + im + "i";
  }
  static std::string re_string(const std::complex<double>& z) { return double_to_string(z.real()); }
  static std::string im_string(const std::complex<double>& z) { return double_to_string(z.imag()); }
};

// Real-number helpers used by weight sequences (exact or floating).
template <class R>
struct real_traits;

template <>
struct real_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational one() { return Rational(1); }
  static Rational from_long(long n) { return Rational(n); }
  static bool is_positive(const Rational& r) { return sgn(r) > 0; }
  static double to_double(const Rational& r) { return r.get_d(); }
  static double log(const Rational& r) { return rational_log(r); }
  static std::string to_string(const Rational& r) { return rational_to_string(r); }
};

template <>
struct real_traits<double> {
  static constexpr bool is_exact = false;
  static double one() { return 1.0; }
  static double from_long(long n) { return static_cast<double>(n); }
  static bool is_positive(double r) { return std::isfinite(r) && r > 0.0; }
  static double to_double(double r) { return r; }
  static double log(double r) {
    if (!(r > 0.0)) throw domain_error("log of nonpositive value");
    return std::log(r);
  }
  static std::string to_string(double r) { return double_to_string(r); }
};

}  // namespace qplane
