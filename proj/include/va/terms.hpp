#pragma once
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "va/scalar.hpp"

namespace va {

/// One normally ordered factor: the der-th derivative of a generator.
struct Factor {
  int gen = 0;
  int der = 0;
  auto operator<=>(const Factor&) const = default;
};

/// Canonical order of factors inside a word: generator index ascending,
/// then derivative order descending.
inline bool canonical_before(const Factor& a, const Factor& b) {
  if (a.gen != b.gen) return a.gen < b.gen;
  return a.der > b.der;
}

/// Right-nested normally ordered word :f1 (:f2 (... ):):. The empty word is
/// the vacuum. Canonical monomials are sorted under canonical_before.
struct Monomial {
  std::vector<Factor> f;
  bool is_vacuum() const { return f.empty(); }
  int size() const { return static_cast<int>(f.size()); }
  bool is_sorted() const;
  auto operator<=>(const Monomial&) const = default;
  static Monomial vacuum() { return {}; }
  static Monomial single(int gen, int der) { return Monomial{{Factor{gen, der}}}; }
};

/// Finite linear combination of monomials; zero coefficients are absent.
class Element {
 public:
  Element() = default;
  static Element vacuum(Scalar s = Scalar(1));
  static Element monomial(Monomial m, Scalar s = Scalar(1));

  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }
  const std::map<Monomial, Scalar>& terms() const { return t_; }
  Scalar coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const Scalar& s);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  void add_scaled(const Element& o, const Scalar& s);
  Element& operator*=(const Scalar& s);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& s, Element e) { return e *= s; }
  Element operator-() const;
  bool operator==(const Element& o) const { return t_ == o.t_; }

  /// Max factor count over monomials (leading-symbol degree); 0 for vacuum
  /// terms, -1 for the zero element.
  int max_factor_count() const;
  Element factor_count_part(int count) const;

  Element map_scalars(const std::function<Scalar(const Scalar&)>& f) const;

 private:
  std::map<Monomial, Scalar> t_;
};

struct GenInfo {
  std::string name;
  long weight = 0;
};

}  // namespace va
