#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>

#include "va/engine.hpp"

namespace va {

/// Exact deterministic Gaussian elimination over the scalar field, keyed by
/// an ordered key type. Pivots are the first nonzero coordinate (in key
/// order) of each reduced column; pivot normalization makes the outputs
/// reproducible.
template <class K>
class SpanSolver {
 public:
  using Vec = std::map<K, Scalar>;

  /// Returns true when the column is independent of those already added.
  bool add_column(Vec v) {
    std::vector<Scalar> comb(ncols_ + 1);
    comb[ncols_] = Scalar(1);
    ++ncols_;
    for (auto& p : pivots_) p.comb.resize(ncols_);
    reduce(v, &comb, nullptr);
    if (v.empty()) return false;
    Scalar lead = v.begin()->second;
    for (auto& [k, s] : v) s = s / lead;
    for (auto& s : comb) s = s / lead;
    pivots_.push_back({v.begin()->first, std::move(v), std::move(comb)});
    return true;
  }

  int rank() const { return static_cast<int>(pivots_.size()); }
  int columns() const { return ncols_; }

  /// Reduce target against the pivots. Outputs the combination of original
  /// columns reproducing target minus the returned remainder.
  Vec solve(Vec target, std::vector<Scalar>& coeffs) const {
    coeffs.assign(ncols_, Scalar());
    reduce(target, nullptr, &coeffs);
    return target;
  }

 private:
  struct Pivot {
    K key;
    Vec col;
    std::vector<Scalar> comb;
  };

  void reduce(Vec& v, std::vector<Scalar>* comb, std::vector<Scalar>* coeffs) const {
    for (const auto& p : pivots_) {
      auto it = v.find(p.key);
      if (it == v.end()) continue;
      Scalar f = it->second;
      for (const auto& [k, s] : p.col) {
        auto jt = v.emplace(k, Scalar()).first;
        jt->second -= f * s;
        if (jt->second.is_zero()) v.erase(jt);
      }
      if (comb)
        for (size_t j = 0; j < p.comb.size(); ++j) (*comb)[j] -= f * p.comb[j];
      if (coeffs)
        for (size_t j = 0; j < p.comb.size(); ++j) (*coeffs)[j] += f * p.comb[j];
    }
  }

  std::vector<Pivot> pivots_;
  int ncols_ = 0;
};

struct ExpressResult {
  bool in_span = false;
  std::vector<Scalar> coeffs;
  Element residual;
};

/// Exact solve of target = sum_j coeffs[j] * columns[j]; on failure the
/// residual is the deterministic irreducible remainder.
ExpressResult express(const std::vector<Element>& columns, const Element& target);

int rank_of(const std::vector<Element>& elems);

struct Atom {
  std::string name;
  Element elem;
  long weight = 0;
  int maxder = 64;
};

struct SpanEntry {
  std::string desc;
  std::vector<std::pair<int, int>> shape;  // (atom index, derivative order)
  Element elem;
};

/// All canonical normally ordered words of derivatives of the atoms at the
/// given weight, deterministically ordered. Words are right-nested in the
/// canonical factor order (atom index ascending, derivative descending).
/// Single-atom entries require derivative order >= min_single_der.
std::vector<SpanEntry> spanning_set(Engine& eng, const std::vector<Atom>& atoms, long weight,
                                    int maxdeg, int min_single_der = 1);

struct Relation {
  Element target;
  std::vector<std::pair<Scalar, SpanEntry>> combination;  // nonzero coefficients only
  Element residual;
};

/// Express target over the spanning set of the given atoms; throws NotInSpan
/// (message carries the residual size) when impossible.
Relation decouple(Engine& eng, const Element& target, const std::vector<Atom>& atoms,
                  int maxdeg, int min_single_der = 1);

/// The ten-term parameterized relation family built from normally ordered
/// products of quadratic and cubic invariants of the degenerate cube; both
/// live over the vinfty3 preset layout (T0, T1, T2).
Element build_R1(Engine& cube, const std::array<Scalar, 5>& a, const std::array<int, 5>& m);
Element build_R2(Engine& cube, const std::array<int, 5>& m);

struct IdealMembership {
  bool member = false;
  Element residual;
  int basis_size = 0;
};

/// Weight-truncated membership in the two-sided ideal generated by the given
/// states: spans all modes of generators applied to the ideal generators,
/// enumerated up to the target weight.
IdealMembership ideal_membership(Engine& eng, const Element& x,
                                 const std::vector<Element>& idealgens, long weight);

/// x minus its vacuum-descendant part under the Virasoro element L, so that
/// L(n) result = 0 for all n >= 1. Throws NotCorrectable when no descendant
/// combination works.
Element primary_correction(Engine& eng, const Element& x, const Element& L);

}  // namespace va
