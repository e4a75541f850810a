#pragma once
#include <gmpxx.h>

#include <array>
#include <string>

namespace va {

using Rat = mpq_class;

Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);

/// Canonicalized fraction; use instead of the raw two-argument mpq_class
/// constructor whenever numerator and denominator may share a factor.
inline Rat frac(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Element of Q(zeta), zeta a primitive 12th root of unity with minimal
/// polynomial zeta^4 - zeta^2 + 1. Stored reduced on the basis
/// 1, zeta, zeta^2, zeta^3. Contains eta = zeta^4 (primitive cube root),
/// I = zeta^3 and sqrt3 = 2 zeta - zeta^3.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long n) { c_[0] = n; }
  Cyclotomic(const Rat& r) { c_[0] = r; }

  static Cyclotomic zeta_power(long e);
  static Cyclotomic eta() { return zeta_power(4); }
  static Cyclotomic imag_unit() { return zeta_power(3); }
  static Cyclotomic sqrt3();

  bool is_zero() const;
  bool is_rational() const;
  // requires is_rational()
  const Rat& rat() const { return c_[0]; }
  const std::array<Rat, 4>& coeffs() const { return c_; }

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic inverse() const;  // throws DivisionByZero on zero
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
  bool operator==(const Cyclotomic& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  std::array<Rat, 4> c_{};
};

}  // namespace va
