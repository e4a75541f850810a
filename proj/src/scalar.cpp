#include "va/scalar.hpp"

#include <cctype>
#include <sstream>

#include "va/errors.hpp"

namespace va {

Scalar::Scalar(Poly num, Poly den, std::string tag)
    : num_(std::move(num)), den_(std::move(den)), tag_(std::move(tag)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  normalize();
}

Scalar Scalar::parameter(const std::string& tag) {
  return Scalar(Poly::variable(), Poly(1), tag);
}

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    tag_.clear();
    return;
  }
  if (den_.degree() > 0 || num_.degree() > 0) {
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      Poly q, r;
      Poly::divrem(num_, g, q, r);
      num_ = q;
      Poly::divrem(den_, g, q, r);
      den_ = q;
    }
  }
  if (!(den_.is_constant() && den_.constant_value() == Cyclotomic(1))) {
    Cyclotomic lead = den_.leading().inverse();
    num_ = num_.scaled(lead);
    den_ = den_.scaled(lead);
  }
  if (num_.is_constant() && den_.is_constant()) tag_.clear();
}

std::string Scalar::merge_tags(const Scalar& a, const Scalar& b) {
  if (a.tag_.empty()) return b.tag_;
  if (b.tag_.empty() || a.tag_ == b.tag_) return a.tag_;
  throw ParseError("parameter mismatch: '" + a.tag_ + "' vs '" + b.tag_ + "'");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Scalar r;
  r.tag_ = Scalar::merge_tags(a, b);
  if (a.den_ == b.den_) {
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
  } else {
    r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
  }
  r.normalize();
  return r;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  Scalar r;
  r.tag_ = Scalar::merge_tags(a, b);
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_ * b.den_;
  r.normalize();
  return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DivisionByZero("scalar division by zero");
  if (a.is_zero()) return Scalar();
  Scalar r;
  r.tag_ = Scalar::merge_tags(a, b);
  r.num_ = a.num_ * b.den_;
  r.den_ = a.den_ * b.num_;
  r.normalize();
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return Scalar(1) / pow(-e);
  Scalar r(1), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::eval_at(const Rat& v) const {
  Cyclotomic x{v};
  Cyclotomic d = den_.eval(x);
  if (d.is_zero()) throw PoleAtValue("denominator vanishes at " + rat_to_string(v));
  return Scalar(num_.eval(x) / d);
}

std::string Scalar::str() const {
  std::string var = tag_.empty() ? "t" : tag_;
  if (den_.is_constant()) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

namespace {

struct ScalarParser {
  const std::string& s;
  size_t pos = 0;
  const std::string& param;
  const ScalarSymbols* symbols;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos) + " in '" + s + "'");
  }

  Scalar parse_expr() {
    Scalar r = parse_term();
    for (;;) {
      skip_ws();
      if (eat('+'))
        r += parse_term();
      else if (eat('-'))
        r -= parse_term();
      else
        return r;
    }
  }

  Scalar parse_term() {
    Scalar r = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*'))
        r *= parse_factor();
      else if (eat('/'))
        r = r / parse_factor();
      else
        return r;
    }
  }

  Scalar parse_factor() {
    Scalar base = parse_base();
    skip_ws();
    if (eat('^')) {
      long e = parse_int();
      return base.pow(e);
    }
    return base;
  }

  long parse_int() {
    skip_ws();
    bool neg = eat('-');
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    long v = std::stol(s.substr(start, pos - start));
    return neg ? -v : v;
  }

  Scalar parse_base() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of scalar");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Scalar r = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '-') {
      ++pos;
      return -parse_factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return Scalar(rat_from_string(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "zeta") return Scalar(Cyclotomic::zeta_power(1));
      if (name == "eta") return Scalar(Cyclotomic::eta());
      if (name == "I") return Scalar(Cyclotomic::imag_unit());
      if (name == "sqrt3") return Scalar(Cyclotomic::sqrt3());
      if (!param.empty() && name == param) return Scalar::parameter(param);
      if (symbols) {
        auto it = symbols->find(name);
        if (it != symbols->end()) return it->second;
      }
      fail("unknown scalar symbol '" + name + "'");
    }
    fail("unexpected character in scalar");
  }
};

}  // namespace

Scalar parse_scalar(const std::string& text, const std::string& param,
                    const ScalarSymbols* symbols) {
  ScalarParser p{text, 0, param, symbols};
  Scalar r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input in scalar");
  return r;
}

}  // namespace va
