#include "va/qseries.hpp"

#include <sstream>

#include "va/errors.hpp"

namespace va {

QSeries QSeries::one(int truncation) {
  QSeries s(truncation);
  s.c_[0] = 1;
  return s;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  int n = std::min(a.truncation(), b.truncation());
  QSeries r(n);
  for (int i = 0; i <= n; ++i) r.c_[i] = a.c_[i] + b.c_[i];
  return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  int n = std::min(a.truncation(), b.truncation());
  QSeries r(n);
  for (int i = 0; i <= n; ++i) r.c_[i] = a.c_[i] - b.c_[i];
  return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  int n = std::min(a.truncation(), b.truncation());
  QSeries r(n);
  for (int i = 0; i <= n; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

QSeries QSeries::scaled(const Rat& s) const {
  QSeries r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

QSeries QSeries::inverse() const {
  if (sgn(c_[0]) == 0) throw DivisionByZero("series inverse needs nonzero constant term");
  QSeries r(truncation());
  r.c_[0] = 1 / c_[0];
  for (int n = 1; n <= truncation(); ++n) {
    Rat acc;
    for (int k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
    r.c_[n] = -acc / c_[0];
  }
  return r;
}

QSeries QSeries::compose_power(int m) const {
  QSeries r(truncation());
  for (int i = 0; i * m <= truncation(); ++i) r.c_[i * m] = c_[i];
  return r;
}

std::string QSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= truncation(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    Rat v = c_[i];
    if (first) {
      if (sgn(v) < 0) {
        os << "-";
        v = -v;
      }
      first = false;
    } else {
      os << (sgn(v) < 0 ? " - " : " + ");
      if (sgn(v) < 0) v = -v;
    }
    if (i == 0)
      os << rat_to_string(v);
    else {
      if (v != 1) os << rat_to_string(v) << "*";
      os << "q";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

QSeries free_character(const std::vector<int>& weights, int truncation) {
  QSeries r = QSeries::one(truncation);
  for (int w : weights) {
    if (w < 1) throw FixtureError("free_character weights must be >= 1");
    for (int n = w; n <= truncation; ++n) {
      // multiply by 1/(1-q^n) in place
      for (int m = n; m <= truncation; ++m) r.coeff(m) += r.coeff(m - n);
    }
  }
  return r;
}

QSeries sym_cube_character(const QSeries& f) {
  QSeries f2 = f.compose_power(2);
  QSeries f3 = f.compose_power(3);
  QSeries r = f * f * f + (f * f2).scaled(3) + f3.scaled(2);
  return r.scaled(Rat(1, 6));
}

std::optional<int> first_difference(const QSeries& a, const QSeries& b) {
  int n = std::min(a.truncation(), b.truncation());
  for (int i = 0; i <= n; ++i)
    if (a.coeff(i) != b.coeff(i)) return i;
  return std::nullopt;
}

}  // namespace va
