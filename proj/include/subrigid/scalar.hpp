#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <variant>

namespace subrigid {

using Rational = mpq_class;
using BigInt = mpz_class;

enum class Mode { Exact, Float };

const char* to_string(Mode mode);

/// A number that is either an exact reduced rational or a binary double.
/// Arithmetic between the two modes throws; there is no silent promotion.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational q);  // NOLINT: implicit on purpose, exact is the default
  static Scalar exact(long num, unsigned long den = 1);
  static Scalar approx(double x) { return Scalar(x, FloatTag{}); }
  static Scalar zero(Mode mode);
  static Scalar one(Mode mode);
  /// Parses "p/q", an integer, or a finite decimal ("0.3") as an exact value.
  static Scalar parse_exact(const std::string& text);

  Mode mode() const { return std::holds_alternative<Rational>(value_) ? Mode::Exact : Mode::Float; }
  bool is_exact() const { return mode() == Mode::Exact; }
  const Rational& rational() const;
  double to_double() const;
  bool is_zero() const;

  /// "p/q" (or "p" for integers) in exact mode, shortest round-trip decimal otherwise.
  std::string str() const;
  std::string decimal(int digits = 12) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  struct FloatTag {};
  Scalar(double x, FloatTag) : value_(x) {}
  void check_same_mode(const Scalar& o) const;

  std::variant<Rational, double> value_;
};

std::string rational_str(const Rational& q);

}  // namespace subrigid
