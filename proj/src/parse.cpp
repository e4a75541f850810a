#include "va/parse.hpp"

#include <cctype>
#include <sstream>

#include "va/errors.hpp"

namespace va {

namespace {

struct ElementParser {
  const std::string& s;
  size_t pos = 0;
  Engine& eng;
  const StateResolver& states;

  const Algebra& alg() const { return eng.algebra(); }

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
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos) + " in '" + s + "'");
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && s[pos] == '@') ++pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected name");
    return s.substr(start, pos - start);
  }

  long integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  Element resolve_name(const std::string& name, int der) {
    std::string bare = (!name.empty() && name[0] == '@') ? name.substr(1) : name;
    Element base;
    if (auto gi = alg().gen_index(bare); gi && name[0] != '@') {
      base = Element::monomial(Monomial::single(*gi, 0));
    } else {
      std::optional<Element> st;
      if (states) st = states(bare);
      if (!st) st = alg().find_state(bare);
      if (!st) fail("unknown generator or state '" + bare + "'");
      base = *st;
    }
    return der > 0 ? eng.derivative(base, der) : base;
  }

  // factor := ['d^' int '('] name [')']
  Element parse_factor_item() {
    skip_ws();
    if (pos + 1 < s.size() && s[pos] == 'd' && s[pos + 1] == '^') {
      pos += 2;
      long d = integer();
      if (!eat('(')) fail("expected '(' after d^n");
      std::string name = ident();
      if (!eat(')')) fail("expected ')' after derivative factor");
      return resolve_name(name, static_cast<int>(d));
    }
    std::string name = ident();
    return resolve_name(name, 0);
  }

  bool at_mono() {
    skip_ws();
    if (pos >= s.size()) return false;
    if (s[pos] == '@') return true;
    if (!std::isalpha(static_cast<unsigned char>(s[pos])) && s[pos] != '_') return false;
    size_t p = pos;
    while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) ++p;
    std::string name = s.substr(pos, p - pos);
    if (name == "zeta" || name == "eta" || name == "I" || name == "sqrt3") return false;
    if (name == "d" && p < s.size() && s[p] == '^') return true;
    if (name == "one" || name == "NO") return true;
    if (!alg().param().empty() && name == alg().param()) return false;
    if (alg().scalars().count(name)) return false;
    return true;  // generator or state name
  }

  Element parse_mono() {
    skip_ws();
    if (s.compare(pos, 3, "one") == 0 &&
        (pos + 3 >= s.size() || !(std::isalnum(static_cast<unsigned char>(s[pos + 3])) ||
                                  s[pos + 3] == '_'))) {
      pos += 3;
      return Element::vacuum();
    }
    if (s.compare(pos, 3, "NO(") == 0) {
      pos += 2;
      if (!eat('(')) fail("expected '('");
      std::vector<Element> items;
      items.push_back(parse_factor_item());
      while (eat(',')) items.push_back(parse_factor_item());
      if (!eat(')')) fail("expected ')' closing NO(");
      Element acc = Element::vacuum();
      for (auto it = items.rbegin(); it != items.rend(); ++it) acc = eng.nop(*it, acc);
      return acc;
    }
    return parse_factor_item();
  }

  // scalar sub-expression: handled by the scalar parser on a delimited slice
  Scalar parse_scalar_atom() {
    skip_ws();
    size_t start = pos;
    int depth = 0;
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (c == '*' || c == '/' || c == '+' || c == '-') && pos > start) break;
      if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
        size_t q = pos;
        while (q < s.size() && std::isspace(static_cast<unsigned char>(s[q]))) ++q;
        if (q < s.size() && (s[q] == '*' || s[q] == '/' || s[q] == '+' || s[q] == '-' || s[q] == ')' || s[q] == ','))
          break;
      }
      ++pos;
    }
    std::string slice = s.substr(start, pos - start);
    if (slice.empty()) fail("expected scalar");
    return parse_scalar(slice, alg().param(), &alg().scalars());
  }

  Element parse_term() {
    Scalar coef(1);
    std::optional<Element> mono;
    bool expect_atom = true;
    bool dividing = false;
    for (;;) {
      if (expect_atom) {
        if (at_mono()) {
          if (mono) fail("two monomials in one term");
          if (dividing) fail("cannot divide by a monomial");
          mono = parse_mono();
        } else {
          Scalar sc = parse_scalar_atom();
          coef = dividing ? coef / sc : coef * sc;
        }
        expect_atom = false;
        dividing = false;
        continue;
      }
      skip_ws();
      if (eat('*')) {
        expect_atom = true;
      } else if (peek() == '/') {
        ++pos;
        expect_atom = true;
        dividing = true;
      } else {
        break;
      }
    }
    Element base = mono ? *mono : Element::vacuum();
    base *= coef;
    return base;
  }

  Element parse() {
    Element acc;
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    for (;;) {
      Element t = parse_term();
      if (neg) t = -t;
      acc += t;
      skip_ws();
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        break;
    }
    skip_ws();
    if (pos != s.size()) fail("trailing input in element");
    return acc;
  }
};

}  // namespace

Element parse_element(const std::string& text, Engine& eng, const StateResolver& states) {
  ElementParser p{text, 0, eng, states};
  return p.parse();
}

std::string scalar_to_string(const Scalar& s) { return s.str(); }

std::string monomial_to_string(const Monomial& m, const Algebra& alg) {
  if (m.is_vacuum()) return "one";
  std::ostringstream os;
  os << "NO(";
  for (size_t i = 0; i < m.f.size(); ++i) {
    if (i) os << ", ";
    const Factor& f = m.f[i];
    if (f.der > 0) os << "d^" << f.der << "(" << alg.gen(f.gen).name << ")";
    else os << alg.gen(f.gen).name;
  }
  os << ")";
  return os.str();
}

std::string element_to_string(const Element& e, const Algebra& alg) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      first = false;
      if (neg) {
        os << "-";
        cs = cs.substr(1);
      }
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    bool needs_parens = cs.find_first_of("+-*/^ ") != std::string::npos;
    bool is_one = (cs == "1");
    if (m.is_vacuum()) {
      os << (needs_parens ? "(" + cs + ")" : cs);
    } else {
      if (!is_one) os << (needs_parens ? "(" + cs + ")" : cs) << "*";
      os << monomial_to_string(m, alg);
    }
  }
  return os.str();
}

}  // namespace va
