#pragma once
#include <optional>
#include <string>
#include <vector>

#include "va/cyclotomic.hpp"

namespace va {

/// Truncated power series in q with exact rational coefficients c0..cN.
class QSeries {
 public:
  explicit QSeries(int truncation) : c_(truncation + 1) {}
  static QSeries one(int truncation);

  int truncation() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& coeff(int i) const { return c_.at(i); }
  Rat& coeff(int i) { return c_.at(i); }

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries scaled(const Rat& s) const;
  QSeries inverse() const;  // requires c0 != 0
  /// f(q^m), truncated at the same order.
  QSeries compose_power(int m) const;
  bool operator==(const QSeries& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  std::vector<Rat> c_;
};

/// Vacuum character of a freely generated algebra with the given generator
/// weights: prod_w prod_{n>=w} (1 - q^n)^{-1}, truncated at N.
QSeries free_character(const std::vector<int>& weights, int truncation);

/// Graded dimension of S3-invariants of a tensor cube with graded dimension
/// f: (f(q)^3 + 3 f(q) f(q^2) + 2 f(q^3)) / 6.
QSeries sym_cube_character(const QSeries& f);

/// Smallest exponent where the two series differ, or nullopt when equal up
/// to the common truncation.
std::optional<int> first_difference(const QSeries& a, const QSeries& b);

}  // namespace va
