#pragma once
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "va/algebra.hpp"

namespace va {

struct ModeFailure {
  long mode;
  Element residual;
};

struct SingularReport {
  bool singular = false;
  long weight = 0;
  std::vector<ModeFailure> failures;
};

struct SkewReport {
  bool ok = true;
  std::vector<ModeFailure> failures;  // mode = n with nonzero residual
};

/// Computes n-th products a_(n) b for all integers n by structural recursion
/// from the generator table: left composites via the (:ab:)_(n) expansion,
/// right composites via the noncommutative Wick formula, generator pairs via
/// the table plus derivative shifts and skew-symmetry, and n <= -1 via
/// derivative-prefixed normally ordered products.
///
/// Results are memoized per (monomial, n, monomial); the cache is shared
/// under a read-mostly lock, so one Engine may be used from several threads.
class Engine {
 public:
  explicit Engine(const Algebra& a, bool memoize = true) : alg_(a), memo_(memoize) {}

  const Algebra& algebra() const { return alg_; }

  Element product(const Element& a, long n, const Element& b);
  Element nop(const Element& a, const Element& b) { return product(a, -1, b); }
  Element derivative(const Element& a, long times = 1);

  /// Canonical form of a raw right-nested word of factors (any order).
  Element word(const std::vector<Factor>& factors);
  /// Canonical form of a right-nested word of elements with derivatives:
  /// items (x, d) |-> :d^{d1}x1 (:d^{d2}x2 (...):):.
  Element word_of(const std::vector<std::pair<Element, int>>& items);
  /// Replace each generator by an element (derivative orders distribute).
  Element substitute(const Element& x, const std::vector<Element>& images);

  /// Common weight of all monomials, std::nullopt for mixed, 0 for zero.
  std::optional<long> uniform_weight(const Element& x) const;

  /// Pole list [a_(0)b, a_(1)b, ...] trimmed to the last nonzero entry.
  std::vector<Element> ope_singular(const Element& a, const Element& b);

  /// Virasoro-style mode L(n) = L_(n+1).
  Element mode(const Element& L, long n, const Element& v) { return product(L, n + 1, v); }

  SkewReport skew_check(const Element& a, const Element& b, long nmax);
  /// Residual of the commutator identity
  /// a_(m)(b_(n)v) - b_(n)(a_(m)v) - sum_j C(m,j) (a_(j)b)_(m+n-j) v,  m,n >= 0.
  Element commutator_residual(const Element& a, long m, const Element& b, long n,
                              const Element& v);
  SingularReport is_singular(const Element& v, const Element& L);

  size_t memo_size() const;
  bool memo_enabled() const { return memo_; }

  /// Persist / restore the product memo (used by the CLI --cache option).
  void save_cache(const std::string& path) const;
  size_t load_cache(const std::string& path);

 private:
  Element mono_product(const Monomial& a, long n, const Monomial& b);
  Element mono_product_uncached(const Monomial& a, long n, const Monomial& b);
  Element mono_derivative(const Monomial& m);
  Element mono_nop(const Monomial& a, const Monomial& b);
  Element single_product(const Factor& f, long n, const Monomial& b);
  const std::vector<Element>& gen_poles(int g, int h);
  Element quasi_comm_delta(const Factor& f, const Factor& g);

  const Algebra& alg_;
  bool memo_;

  struct KeyHash {
    size_t operator()(const std::vector<int>& v) const {
      size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  using Memo = std::unordered_map<std::vector<int>, std::shared_ptr<const Element>, KeyHash>;
  Memo prod_memo_;
  std::map<std::pair<int, int>, std::vector<Element>> derived_poles_;
  mutable std::shared_mutex mu_;
};

Rat binom(long n, long k);
Rat factorial(long n);

}  // namespace va
