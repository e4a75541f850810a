#include "va/algebra.hpp"

#include "va/errors.hpp"

namespace va {

int Algebra::add_generator(const std::string& gname, long weight) {
  if (gen_index(gname)) throw FixtureError("duplicate generator name " + gname);
  if (weight < 1) throw FixtureError("generator weight must be positive: " + gname);
  gens_.push_back(GenInfo{gname, weight});
  return static_cast<int>(gens_.size()) - 1;
}

void Algebra::set_poles(int a, int b, std::vector<Element> poles) {
  while (!poles.empty() && poles.back().is_zero()) poles.pop_back();
  table_[{a, b}] = std::move(poles);
}

std::optional<int> Algebra::gen_index(const std::string& gname) const {
  for (size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == gname) return static_cast<int>(i);
  return std::nullopt;
}

long Algebra::monomial_weight(const Monomial& m) const {
  long w = 0;
  for (const auto& f : m.f) w += factor_weight(f);
  return w;
}

const std::vector<Element>* Algebra::find_poles(int a, int b) const {
  auto it = table_.find({a, b});
  return it == table_.end() ? nullptr : &it->second;
}

std::optional<Element> Algebra::find_state(const std::string& sname) const {
  auto it = states_.find(sname);
  if (it == states_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Algebra::meta(const std::string& key) const {
  auto it = meta_.find(key);
  if (it == meta_.end()) return std::nullopt;
  return it->second;
}

const Algebra::DisplayTerms* Algebra::display_meta(const std::string& dname) const {
  auto it = display_meta_.find(dname);
  return it == display_meta_.end() ? nullptr : &it->second;
}

}  // namespace va
