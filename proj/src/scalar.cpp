#include "subrigid/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "subrigid/error.hpp"

namespace subrigid {

const char* to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "float"; }

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Scalar::Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }

Scalar Scalar::exact(long num, unsigned long den) {
  if (den == 0) throw InvalidInput("zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::zero(Mode mode) { return mode == Mode::Exact ? Scalar(Rational(0)) : approx(0.0); }
Scalar Scalar::one(Mode mode) { return mode == Mode::Exact ? Scalar(Rational(1)) : approx(1.0); }

Scalar Scalar::parse_exact(const std::string& text) {
  auto bad = [&] { return InvalidInput("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(text.substr(0, slash), 10);
      BigInt den(text.substr(slash + 1), 10);
      if (den == 0) throw bad();
      return Scalar(Rational(num, den));
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Scalar(Rational(BigInt(text, 10)));
    std::string int_part = text.substr(0, dot);
    std::string frac_part = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (negative) int_part.erase(0, 1);
    if (int_part.empty()) int_part = "0";
    if (frac_part.empty()) frac_part = "0";
    for (char c : int_part + frac_part)
      if (c < '0' || c > '9') throw bad();
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
    Rational q(BigInt(int_part + frac_part, 10), den);
    if (negative) q = -q;
    return Scalar(q);
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw Error("float scalar has no exact rational value");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

bool Scalar::is_zero() const {
  if (is_exact()) return std::get<Rational>(value_) == 0;
  return std::get<double>(value_) == 0.0;
}

std::string Scalar::str() const {
  if (is_exact()) return rational_str(std::get<Rational>(value_));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
  return buf;
}

std::string Scalar::decimal(int digits) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, to_double());
  return buf;
}

void Scalar::check_same_mode(const Scalar& o) const {
  if (mode() != o.mode()) throw Error("cannot mix exact and float scalars");
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_mode(o);
  if (is_exact())
    std::get<Rational>(value_) += std::get<Rational>(o.value_);
  else
    std::get<double>(value_) += std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_mode(o);
  if (is_exact())
    std::get<Rational>(value_) -= std::get<Rational>(o.value_);
  else
    std::get<double>(value_) -= std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_mode(o);
  if (is_exact())
    std::get<Rational>(value_) *= std::get<Rational>(o.value_);
  else
    std::get<double>(value_) *= std::get<double>(o.value_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_mode(o);
  if (o.is_zero()) throw Error("division by zero");
  if (is_exact())
    std::get<Rational>(value_) /= std::get<Rational>(o.value_);
  else
    std::get<double>(value_) /= std::get<double>(o.value_);
  return *this;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-std::get<Rational>(value_)));
  return approx(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.check_same_mode(b);
  if (a.is_exact()) return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
  return std::get<double>(a.value_) == std::get<double>(b.value_);
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  a.check_same_mode(b);
  if (a.is_exact()) {
    int c = cmp(std::get<Rational>(a.value_), std::get<Rational>(b.value_));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return std::get<double>(a.value_) <=> std::get<double>(b.value_);
}

}  // namespace subrigid
