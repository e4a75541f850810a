#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "va/terms.hpp"

namespace va {

/// A finitely generated vertex algebra presented by generators with weights
/// and the table of singular OPE coefficients: poles(g,h)[n] = g_(n) h for
/// n >= 0 (the coefficient of (z-w)^{-n-1}). A pair may be absent when the
/// opposite order is present; the engine derives it by skew-symmetry.
class Algebra {
 public:
  Algebra(std::string name, std::string param) : name_(std::move(name)), param_(std::move(param)) {}

  int add_generator(const std::string& gname, long weight);
  void set_poles(int a, int b, std::vector<Element> poles);
  void add_state(const std::string& sname, Element e) { states_[sname] = std::move(e); }
  void add_scalar(const std::string& sname, Scalar s) { scalars_[sname] = std::move(s); }

  const std::string& name() const { return name_; }
  const std::string& param() const { return param_; }
  int gen_count() const { return static_cast<int>(gens_.size()); }
  const GenInfo& gen(int i) const { return gens_.at(i); }
  std::optional<int> gen_index(const std::string& gname) const;
  long factor_weight(const Factor& f) const { return gens_.at(f.gen).weight + f.der; }
  long monomial_weight(const Monomial& m) const;

  const std::vector<Element>* find_poles(int a, int b) const;
  const std::map<std::pair<int, int>, std::vector<Element>>& table() const { return table_; }

  const std::map<std::string, Element>& states() const { return states_; }
  std::optional<Element> find_state(const std::string& sname) const;
  const ScalarSymbols& scalars() const { return scalars_; }

  void add_meta(const std::string& key, const std::string& value) { meta_[key] = value; }
  std::optional<std::string> meta(const std::string& key) const;

  using DisplayTerms = std::vector<std::pair<std::string, std::string>>;
  void add_display_meta(const std::string& dname, DisplayTerms terms) {
    display_meta_[dname] = std::move(terms);
  }
  const DisplayTerms* display_meta(const std::string& dname) const;

 private:
  std::string name_, param_;
  std::vector<GenInfo> gens_;
  std::map<std::pair<int, int>, std::vector<Element>> table_;
  std::map<std::string, Element> states_;
  ScalarSymbols scalars_;
  std::map<std::string, std::string> meta_;
  std::map<std::string, DisplayTerms> display_meta_;
};

}  // namespace va
