#pragma once
#include <map>
#include <string>

#include "va/polynomial.hpp"

namespace va {

/// Exact rational function num/den over Q(zeta_12) in one formal parameter.
/// Canonical form: gcd(num, den) = 1, den monic, zero is 0/1. The tag names
/// the parameter role ("c", "k", ...); constants carry the empty tag and
/// combine with anything. Mixing two distinct nonempty tags is an error.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long n) : num_(n), den_(1) {}
  Scalar(const Rat& r) : num_(r), den_(1) {}
  Scalar(const Cyclotomic& c) : num_(c), den_(1) {}
  Scalar(Poly num, Poly den, std::string tag);
  static Scalar parameter(const std::string& tag);

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  // requires is_constant()
  Cyclotomic constant_value() const { return num_.constant_value() / den_.constant_value(); }
  bool is_rational_constant() const { return is_constant() && num_.constant_value().is_rational(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const std::string& tag() const { return tag_; }

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);  // throws DivisionByZero
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  bool operator==(const Scalar& o) const;

  Scalar pow(long e) const;
  /// Substitute the parameter by an exact rational value. Throws PoleAtValue
  /// if the denominator vanishes there.
  Scalar eval_at(const Rat& v) const;

  std::string str() const;

 private:
  void normalize();
  static std::string merge_tags(const Scalar& a, const Scalar& b);
  Poly num_, den_;
  std::string tag_;
};

/// Named scalar constants/polynomials available to the parser
/// (fixture-declared, e.g. p0..p7 of a bundled table).
using ScalarSymbols = std::map<std::string, Scalar>;

/// Parse the textual scalar syntax: integers, a/b, zeta, eta, I, sqrt3, the
/// parameter name, + - * / ^ and parentheses. `param` may be empty when no
/// parameter is allowed.
Scalar parse_scalar(const std::string& text, const std::string& param,
                    const ScalarSymbols* symbols = nullptr);

}  // namespace va
