#include "torus/rational.hpp"

#include <charconv>
#include <ostream>

namespace torus {

Rational::Rational(Int num, Int den) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = checked::neg(num);
    den = checked::neg(den);
  }
  Int g = gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::frac() const { return Rational(mod_floor(num_, den_), den_); }

Rational Rational::operator-() const {
  Rational r;
  r.num_ = checked::neg(num_);
  r.den_ = den_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  Int g = gcd(a.den_, b.den_);
  Int da = a.den_ / g;
  Int db = b.den_ / g;
  return Rational(checked::mul_add(a.num_, db, b.num_, da), checked::mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  Int g1 = gcd(a.num_, b.den_);
  Int g2 = gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked::mul(a.num_ / g1, b.num_ / g2), checked::mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Int lhs = checked::mul(a.num_, b.den_);
  Int rhs = checked::mul(b.num_, a.den_);
  return lhs <=> rhs;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

Int parse_int(std::string_view s) {
  if (s.empty()) throw Error("empty integer token");
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  Int v = 0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) throw OverflowError("integer out of range: " + std::string(s));
  if (ec != std::errc() || ptr != last) throw Error("malformed integer: " + std::string(s));
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view token) {
  auto slash = token.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(token));
  Int num = parse_int(token.substr(0, slash));
  std::string_view den_part = token.substr(slash + 1);
  if (!den_part.empty() && (den_part[0] == '-' || den_part[0] == '+'))
    throw Error("denominator must be an unsigned integer: " + std::string(token));
  Int den = parse_int(den_part);
  if (den <= 0) throw Error("denominator must be positive: " + std::string(token));
  return Rational(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Int common_denominator(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, x.den());
  return l;
}

}  // namespace torus
