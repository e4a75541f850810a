#pragma once
#include <string>
#include <vector>

#include "va/cyclotomic.hpp"

namespace va {

/// Dense univariate polynomial over Q(zeta_12). Coefficient vector has no
/// trailing zeros; empty vector is the zero polynomial.
class Poly {
 public:
  Poly() = default;
  Poly(Cyclotomic c);
  Poly(const Rat& r) : Poly(Cyclotomic(r)) {}
  Poly(long n) : Poly(Cyclotomic(n)) {}
  static Poly variable();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Cyclotomic constant_value() const;  // requires is_constant
  const Cyclotomic& coeff(int i) const;
  const Cyclotomic& leading() const { return c_.back(); }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Euclidean division; divisor must be nonzero.
  static void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(Poly a, Poly b);  // monic
  Poly scaled(const Cyclotomic& s) const;
  Poly monic() const;

  Cyclotomic eval(const Cyclotomic& x) const;

  std::string str(const std::string& var) const;

 private:
  void trim();
  std::vector<Cyclotomic> c_;
};

}  // namespace va
