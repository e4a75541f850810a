#include "va/terms.hpp"

#include <functional>

namespace va {

bool Monomial::is_sorted() const {
  for (size_t i = 1; i < f.size(); ++i)
    if (canonical_before(f[i], f[i - 1])) return false;
  return true;
}

Element Element::vacuum(Scalar s) { return monomial(Monomial::vacuum(), std::move(s)); }

Element Element::monomial(Monomial m, Scalar s) {
  Element e;
  e.add_term(m, s);
  return e;
}

Scalar Element::coeff(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Scalar() : it->second;
}

void Element::add_term(const Monomial& m, const Scalar& s) {
  if (s.is_zero()) return;
  auto [it, inserted] = t_.emplace(m, s);
  if (!inserted) {
    it->second += s;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, s] : o.t_) add_term(m, s);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, s] : o.t_) add_term(m, -s);
  return *this;
}

void Element::add_scaled(const Element& o, const Scalar& s) {
  if (s.is_zero()) return;
  for (const auto& [m, c] : o.t_) add_term(m, c * s);
}

Element& Element::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [m, c] : t_) c *= s;
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

int Element::max_factor_count() const {
  int mx = -1;
  for (const auto& [m, c] : t_) mx = std::max(mx, m.size());
  return mx;
}

Element Element::factor_count_part(int count) const {
  Element r;
  for (const auto& [m, c] : t_)
    if (m.size() == count) r.add_term(m, c);
  return r;
}

Element Element::map_scalars(const std::function<Scalar(const Scalar&)>& f) const {
  Element r;
  for (const auto& [m, c] : t_) r.add_term(m, f(c));
  return r;
}

}  // namespace va
