#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace torus {

using Int = std::int64_t;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an intermediate value leaves the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

// a*b + c*d, the shape of every 2x2 row operation.
inline Int mul_add(Int a, Int b, Int c, Int d) { return add(mul(a, b), mul(c, d)); }

}  // namespace checked

/// Floor division; b must be nonzero.
inline Int floor_div(Int a, Int b) {
  if (b == 0) throw Error("division by zero");
  if (b == -1) return checked::neg(a);
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Representative of a modulo |m| in [0, |m|).
inline Int mod_floor(Int a, Int m) {
  if (m == 0) throw Error("modulus zero");
  if (m < 0) m = checked::neg(m);
  Int r = a % m;
  return r < 0 ? r + m : r;
}

/// Representative of a modulo m in (-m/2, m/2].
inline Int balanced_residue(Int a, Int m) {
  Int r = mod_floor(a, m);
  return 2 * r > m ? r - m : r;
}

inline Int gcd(Int a, Int b) {
  a = checked::abs(a);
  b = checked::abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked::abs(checked::mul(a / gcd(a, b), b));
}

struct ExtendedGcd {
  Int g;  // nonnegative
  Int s;
  Int t;  // s*a + t*b == g
};

inline ExtendedGcd extended_gcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = floor_div(old_r, r);
    Int tmp = checked::sub(old_r, checked::mul(q, r));
    old_r = r;
    r = tmp;
    tmp = checked::sub(old_s, checked::mul(q, s));
    old_s = s;
    s = tmp;
    tmp = checked::sub(old_t, checked::mul(q, t));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {checked::neg(old_r), checked::neg(old_s), checked::neg(old_t)};
  return {old_r, old_s, old_t};
}

}  // namespace torus
