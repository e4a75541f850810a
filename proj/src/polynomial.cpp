#include "va/polynomial.hpp"

#include <sstream>

#include "va/errors.hpp"

namespace va {

Poly::Poly(Cyclotomic c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

Poly Poly::variable() {
  Poly p;
  p.c_.resize(2);
  p.c_[1] = Cyclotomic(1);
  return p;
}

Cyclotomic Poly::constant_value() const {
  if (c_.empty()) return Cyclotomic();
  return c_[0];
}

const Cyclotomic& Poly::coeff(int i) const {
  static const Cyclotomic kZero;
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[i];
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i < a.c_.size()) r.c_[i] += a.c_[i];
    if (i < b.c_.size()) r.c_[i] += b.c_[i];
  }
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i < a.c_.size()) r.c_[i] += a.c_[i];
    if (i < b.c_.size()) r.c_[i] -= b.c_[i];
  }
  r.trim();
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly r;
  r.c_.resize(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

void Poly::divrem(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  q = Poly();
  r = a;
  if (a.degree() < b.degree()) return;
  q.c_.resize(a.degree() - b.degree() + 1);
  Cyclotomic inv_lead = b.leading().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int d = r.degree() - b.degree();
    Cyclotomic f = r.leading() * inv_lead;
    q.c_[d] += f;
    for (int i = 0; i <= b.degree(); ++i) r.c_[i + d] -= f * b.c_[i];
    r.trim();
  }
  q.trim();
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divrem(a, b, q, r);
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  if (a.is_zero()) return a;
  return a.monic();
}

Poly Poly::scaled(const Cyclotomic& s) const {
  if (s.is_zero()) return Poly();
  Poly r = *this;
  for (auto& x : r.c_) x = x * s;
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

Cyclotomic Poly::eval(const Cyclotomic& x) const {
  Cyclotomic acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Cyclotomic& c = c_[i];
    if (c.is_zero()) continue;
    std::string cs;
    bool neg = false;
    if (c.is_rational()) {
      Rat v = c.rat();
      neg = sgn(v) < 0;
      if (neg) v = -v;
      cs = rat_to_string(v);
    } else {
      cs = "(" + c.str() + ")";
    }
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (i == 0) {
      os << cs;
    } else {
      if (cs != "1") os << cs << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace va
