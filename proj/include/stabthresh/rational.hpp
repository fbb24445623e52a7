#pragma once

#include <algorithm>
#include <cstddef>
#include <regex>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "stabthresh/error.hpp"

namespace stabthresh {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Exact coordinates in M_Q or N_Q.
struct RationalVector : std::vector<Rational> {
  using std::vector<Rational>::vector;
};

/// n/d in lowest terms. Prefer this over Rational(long, long), which does not
/// normalize negative denominators.
inline Rational ratio(long n, long d) {
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator");
  return Rational(Integer(n), Integer(d));
}

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline Integer floor_of(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer r = n / d;  // truncates toward zero
  if (n < 0 && r * d != n) r -= 1;
  return r;
}

inline Integer ceil_of(const Rational& q) { return -floor_of(-q); }

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw Error(ErrorKind::Parse, "not a rational number: \"" + text + "\"");
  }
  Integer num(match[1].str());
  Integer den(1);
  if (match[2].matched) {
    den = Integer(match[2].str());
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in \"" + text + "\"");
  }
  return Rational(num, den);
}

inline RationalVector zeros(std::size_t n) { return RationalVector(n, Rational(0)); }

inline RationalVector unit_vector(std::size_t n, std::size_t i) {
  auto v = zeros(n);
  v[i] = 1;
  return v;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RationalVector operator+(const RationalVector& a, const RationalVector& b) {
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RationalVector operator-(const RationalVector& a, const RationalVector& b) {
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RationalVector operator*(const Rational& s, const RationalVector& a) {
  RationalVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline bool is_integral(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integral(x); });
}

/// Positive rescaling of a nonzero vector to a primitive integer vector.
inline RationalVector primitive(const RationalVector& v) {
  Integer lcm_den = 1;
  for (const auto& x : v) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(x)));
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, Integer(numerator(x) * (lcm_den / denominator(x))));
  if (g == 0) return v;
  RationalVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * Rational(lcm_den, g);
  return r;
}

/// gcd of the coordinates of an integral vector is 1.
inline bool is_primitive_integral(const RationalVector& v) {
  if (!is_integral(v)) return false;
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, Integer(numerator(x)));
  return g == 1;
}

inline std::vector<std::string> to_strings(const RationalVector& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline std::string to_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

/// A rational threshold that may be +infinity.
class Threshold {
 public:
  Threshold() = default;  // +infinity
  explicit Threshold(Rational value) : finite_(true), value_(std::move(value)) {}

  static Threshold infinity() { return Threshold(); }

  bool is_finite() const { return finite_; }
  const Rational& value() const {
    if (!finite_) throw std::logic_error("Threshold::value on +infinity");
    return value_;
  }

  friend bool operator==(const Threshold& a, const Threshold& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend bool operator<(const Threshold& a, const Threshold& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.value_ < b.value_;
  }
  bool at_least(const Rational& bound) const { return !finite_ || value_ >= bound; }

 private:
  bool finite_ = false;
  Rational value_ = 0;
};

inline std::string to_string(const Threshold& t) {
  return t.is_finite() ? to_string(t.value()) : std::string("inf");
}

}  // namespace stabthresh
