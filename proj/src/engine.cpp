#include "va/engine.hpp"

#include "va/errors.hpp"

namespace va {

Rat binom(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(z);
}

Rat factorial(long n) {
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(z);
}

namespace {

std::vector<int> make_key(const Monomial& a, long n, const Monomial& b) {
  std::vector<int> key;
  key.reserve(3 + 2 * (a.f.size() + b.f.size()));
  key.push_back(static_cast<int>(n));
  key.push_back(static_cast<int>(a.f.size()));
  for (const auto& f : a.f) {
    key.push_back(f.gen);
    key.push_back(f.der);
  }
  key.push_back(-7);  // separator; derivative entries use n = INT_MIN marker instead
  for (const auto& f : b.f) {
    key.push_back(f.gen);
    key.push_back(f.der);
  }
  return key;
}

constexpr long kDerivMarker = -1000000;

Monomial tail_of(const Monomial& m) {
  Monomial t;
  t.f.assign(m.f.begin() + 1, m.f.end());
  return t;
}

}  // namespace

Element Engine::product(const Element& a, long n, const Element& b) {
  Element out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Element p = mono_product(ma, n, mb);
      out.add_scaled(p, ca * cb);
    }
  }
  return out;
}

Element Engine::derivative(const Element& a, long times) {
  Element cur = a;
  for (long i = 0; i < times; ++i) {
    Element next;
    for (const auto& [m, c] : cur.terms()) next.add_scaled(mono_derivative(m), c);
    cur = std::move(next);
  }
  return cur;
}

Element Engine::mono_derivative(const Monomial& m) {
  if (memo_) {
    auto key = make_key(m, kDerivMarker, Monomial::vacuum());
    {
      std::shared_lock lk(mu_);
      auto it = prod_memo_.find(key);
      if (it != prod_memo_.end()) return *it->second;
    }
    Element r = [&] {
      Element acc;
      for (size_t i = 0; i < m.f.size(); ++i) {
        std::vector<Factor> w = m.f;
        w[i].der += 1;
        acc += word(w);
      }
      return acc;
    }();
    std::unique_lock lk(mu_);
    prod_memo_.emplace(std::move(key), std::make_shared<Element>(r));
    return r;
  }
  Element acc;
  for (size_t i = 0; i < m.f.size(); ++i) {
    std::vector<Factor> w = m.f;
    w[i].der += 1;
    acc += word(w);
  }
  return acc;
}

Element Engine::word(const std::vector<Factor>& factors) {
  if (factors.empty()) return Element::vacuum();
  Monomial sorted{factors};
  if (sorted.is_sorted()) return Element::monomial(sorted);
  Monomial rest;
  rest.f.assign(factors.begin() + 1, factors.end());
  Element tail = word(rest.f);
  Element head = Element::monomial(Monomial::single(factors[0].gen, factors[0].der));
  return product(head, -1, tail);
}

Element Engine::word_of(const std::vector<std::pair<Element, int>>& items) {
  Element acc = Element::vacuum();
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    Element x = it->second > 0 ? derivative(it->first, it->second) : it->first;
    acc = nop(x, acc);
  }
  return acc;
}

Element Engine::substitute(const Element& x, const std::vector<Element>& images) {
  Element out;
  for (const auto& [m, c] : x.terms()) {
    std::vector<std::pair<Element, int>> items;
    items.reserve(m.f.size());
    for (const auto& f : m.f) items.emplace_back(images.at(f.gen), f.der);
    Element w = word_of(items);
    out.add_scaled(w, c);
  }
  return out;
}

std::optional<long> Engine::uniform_weight(const Element& x) const {
  std::optional<long> w;
  for (const auto& [m, c] : x.terms()) {
    long mw = alg_.monomial_weight(m);
    if (!w)
      w = mw;
    else if (*w != mw)
      return std::nullopt;
  }
  return w ? w : std::optional<long>(0);
}

const std::vector<Element>& Engine::gen_poles(int g, int h) {
  if (const auto* p = alg_.find_poles(g, h)) return *p;
  {
    std::shared_lock lk(mu_);
    auto it = derived_poles_.find({g, h});
    if (it != derived_poles_.end()) return it->second;
  }
  const auto* rev = alg_.find_poles(h, g);
  if (!rev)
    throw TableIncomplete("no OPE table entry for (" + alg_.gen(g).name + ", " +
                          alg_.gen(h).name + ") in either order");
  // g_(n) h = sum_j (-1)^{n+j+1} d^j (h_(n+j) g) / j!
  long bound = alg_.gen(g).weight + alg_.gen(h).weight;
  std::vector<Element> poles(static_cast<size_t>(std::max<long>(bound, 0)));
  for (long n = 0; n < bound; ++n) {
    Element acc;
    for (long j = 0; n + j < static_cast<long>(rev->size()); ++j) {
      const Element& p = (*rev)[n + j];
      if (p.is_zero()) continue;
      Rat c = ((n + j + 1) % 2 == 0) ? factorial(j) : -factorial(j);
      acc.add_scaled(derivative(p, j), Scalar(Rat(1) / c));
    }
    poles[n] = std::move(acc);
  }
  while (!poles.empty() && poles.back().is_zero()) poles.pop_back();
  std::unique_lock lk(mu_);
  auto [it, ok] = derived_poles_.emplace(std::make_pair(g, h), std::move(poles));
  return it->second;
}

namespace {
struct DepthGuard {
  static thread_local int depth;
  DepthGuard() {
    if (++depth > 20000) throw std::runtime_error("product recursion depth exceeded");
  }
  ~DepthGuard() { --depth; }
};
thread_local int DepthGuard::depth = 0;
}  // namespace

Element Engine::mono_product(const Monomial& a, long n, const Monomial& b) {
  DepthGuard guard;
  // grading bound: a_(n) b vanishes once the result weight would be negative
  if (n >= 0 && alg_.monomial_weight(a) + alg_.monomial_weight(b) - n - 1 < 0) return Element();
  if (!memo_) return mono_product_uncached(a, n, b);
  auto key = make_key(a, n, b);
  {
    std::shared_lock lk(mu_);
    auto it = prod_memo_.find(key);
    if (it != prod_memo_.end()) return *it->second;
  }
  Element r = mono_product_uncached(a, n, b);
  std::unique_lock lk(mu_);
  prod_memo_.emplace(std::move(key), std::make_shared<Element>(r));
  return r;
}

Element Engine::mono_product_uncached(const Monomial& a, long n, const Monomial& b) {
  // vacuum acts as identity in the -1 product and kills everything else
  if (a.is_vacuum()) return n == -1 ? Element::monomial(b) : Element();
  if (n <= -1) {
    long m = -n - 1;
    if (m == 0) return mono_nop(a, b);
    Element da = derivative(Element::monomial(a), m);
    Element out;
    Scalar inv(Rat(1) / factorial(m));
    for (const auto& [mono, c] : da.terms())
      out.add_scaled(mono_product(mono, -1, b), c * inv);
    return out;
  }
  if (a.size() == 1) return single_product(a.f[0], n, b);

  // left composite :f A: via the (:ab:)_(n) expansion
  const Factor f = a.f[0];
  const Monomial A = tail_of(a);
  const long wA = alg_.monomial_weight(A), wb = alg_.monomial_weight(b);
  const long wf = alg_.factor_weight(f);
  Element out;
  for (long k = 0; n + k <= wA + wb - 1; ++k) {
    Element inner = mono_product(A, n + k, b);
    if (inner.is_zero()) continue;
    Element shifted;
    Scalar inv(Rat(1) / factorial(k));
    Monomial df = Monomial::single(f.gen, f.der + static_cast<int>(k));
    for (const auto& [mono, c] : inner.terms())
      shifted.add_scaled(mono_product(df, -1, mono), c * inv);
    out.add_scaled(shifted, Scalar(1));
  }
  Element Aelem = Element::monomial(A);
  for (long k = 0; k <= wf + wb - 1; ++k) {
    Element fc = mono_product(Monomial::single(f.gen, f.der), k, b);
    if (fc.is_zero()) continue;
    out += product(Aelem, n - k - 1, fc);
  }
  return out;
}

Element Engine::single_product(const Factor& f, long n, const Monomial& b) {
  // strip derivatives on the left: (da)_(n) = -n a_(n-1)
  if (f.der > 0) {
    if (n == 0) return Element();
    Element r = mono_product(Monomial::single(f.gen, f.der - 1), n - 1, b);
    r *= Scalar(Rat(-n));
    return r;
  }
  if (b.is_vacuum()) return Element();
  if (b.size() == 1) {
    const Factor g = b.f[0];
    if (g.der > 0) {
      // a_(n)(db') = d(a_(n) b') + n a_(n-1) b'
      Monomial bp = Monomial::single(g.gen, g.der - 1);
      Element r = derivative(mono_product(Monomial::single(f.gen, 0), n, bp));
      if (n > 0) {
        Element s = mono_product(Monomial::single(f.gen, 0), n - 1, bp);
        r.add_scaled(s, Scalar(Rat(n)));
      }
      return r;
    }
    const auto& poles = gen_poles(f.gen, g.gen);
    if (n >= static_cast<long>(poles.size())) return Element();
    return poles[n];
  }
  // noncommutative Wick formula on :g B:
  const Factor g = b.f[0];
  const Monomial B = tail_of(b);
  Monomial fm = Monomial::single(f.gen, 0);
  Monomial gm = Monomial::single(g.gen, g.der);
  Element out;
  Element head = mono_product(fm, n, gm);
  if (!head.is_zero()) {
    for (const auto& [mono, c] : head.terms()) {
      Element w = mono_product(mono, -1, B);
      out.add_scaled(w, c);
    }
  }
  Element tailprod = mono_product(fm, n, B);
  if (!tailprod.is_zero()) {
    Element gelem = Element::monomial(gm);
    out += product(gelem, -1, tailprod);
  }
  for (long k = 1; k <= n; ++k) {
    Element inner = mono_product(fm, n - k, gm);
    if (inner.is_zero()) continue;
    Scalar c(binom(n, k));
    for (const auto& [mono, cc] : inner.terms())
      out.add_scaled(mono_product(mono, k - 1, B), c * cc);
  }
  return out;
}

Element Engine::quasi_comm_delta(const Factor& f, const Factor& g) {
  // :ab: - :ba: = sum_j (-1)^j/(j+1)! d^{j+1}(a_(j) b)
  Monomial fm = Monomial::single(f.gen, f.der);
  Monomial gm = Monomial::single(g.gen, g.der);
  long bound = alg_.factor_weight(f) + alg_.factor_weight(g);
  Element acc;
  for (long j = 0; j <= bound - 1; ++j) {
    Element p = mono_product(fm, j, gm);
    if (p.is_zero()) continue;
    Rat c = Rat(1) / factorial(j + 1);
    if (j % 2 == 1) c = -c;
    acc.add_scaled(derivative(p, j + 1), Scalar(c));
  }
  return acc;
}

Element Engine::mono_nop(const Monomial& a, const Monomial& b) {
  if (a.is_vacuum()) return Element::monomial(b);
  if (b.is_vacuum()) return Element::monomial(a);
  if (a.size() == 1) {
    const Factor f = a.f[0];
    const Factor g1 = b.f[0];
    if (!canonical_before(g1, f)) {
      // already ordered: prepend
      Monomial m;
      m.f.reserve(b.f.size() + 1);
      m.f.push_back(f);
      m.f.insert(m.f.end(), b.f.begin(), b.f.end());
      return Element::monomial(m);
    }
    // :f(:g R:): = :g(:f R:): + :Delta(f,g) R:
    const Monomial R = tail_of(b);
    Element inner = mono_product(a, -1, R);
    Element out;
    Element gelem = Element::monomial(Monomial::single(g1.gen, g1.der));
    out += product(gelem, -1, inner);
    Element delta = quasi_comm_delta(f, g1);
    if (!delta.is_zero()) {
      Element Relem = Element::monomial(R);
      out += product(delta, -1, Relem);
    }
    return out;
  }
  // :(:f A:) c: via quasi-associativity
  const Factor f = a.f[0];
  const Monomial A = tail_of(a);
  Element out;
  {
    Element inner = mono_product(A, -1, b);
    Monomial fm = Monomial::single(f.gen, f.der);
    for (const auto& [mono, c] : inner.terms()) out.add_scaled(mono_product(fm, -1, mono), c);
  }
  const long wA = alg_.monomial_weight(A), wb = alg_.monomial_weight(b);
  const long wf = alg_.factor_weight(f);
  for (long k = 0; k <= wA + wb - 1; ++k) {
    Element p = mono_product(A, k, b);
    if (p.is_zero()) continue;
    Scalar inv(Rat(1) / factorial(k + 1));
    Monomial df = Monomial::single(f.gen, f.der + static_cast<int>(k) + 1);
    for (const auto& [mono, c] : p.terms())
      out.add_scaled(mono_product(df, -1, mono), c * inv);
  }
  Element Aelem = Element::monomial(A);
  for (long k = 0; k <= wf + wb - 1; ++k) {
    Element p = mono_product(Monomial::single(f.gen, f.der), k, b);
    if (p.is_zero()) continue;
    Element dA = derivative(Aelem, k + 1);
    Scalar inv(Rat(1) / factorial(k + 1));
    Element w = product(dA, -1, p);
    out.add_scaled(w, inv);
  }
  return out;
}

std::vector<Element> Engine::ope_singular(const Element& a, const Element& b) {
  long wa = 0, wb = 0;
  for (const auto& [m, c] : a.terms()) wa = std::max(wa, alg_.monomial_weight(m));
  for (const auto& [m, c] : b.terms()) wb = std::max(wb, alg_.monomial_weight(m));
  std::vector<Element> poles;
  for (long n = 0; n <= wa + wb - 1; ++n) poles.push_back(product(a, n, b));
  while (!poles.empty() && poles.back().is_zero()) poles.pop_back();
  return poles;
}

SkewReport Engine::skew_check(const Element& a, const Element& b, long nmax) {
  SkewReport rep;
  long wa = 0, wb = 0;
  for (const auto& [m, c] : a.terms()) wa = std::max(wa, alg_.monomial_weight(m));
  for (const auto& [m, c] : b.terms()) wb = std::max(wb, alg_.monomial_weight(m));
  for (long n = 0; n <= nmax; ++n) {
    Element residual = product(b, n, a);
    for (long j = 0; n + j <= wa + wb - 1; ++j) {
      Element p = product(a, n + j, b);
      if (p.is_zero()) continue;
      Rat c = Rat(1) / factorial(j);
      if ((n + j + 1) % 2 == 1) c = -c;
      residual.add_scaled(derivative(p, j), Scalar(-c));
    }
    if (!residual.is_zero()) {
      rep.ok = false;
      rep.failures.push_back({n, std::move(residual)});
    }
  }
  return rep;
}

Element Engine::commutator_residual(const Element& a, long m, const Element& b, long n,
                                    const Element& v) {
  Element lhs = product(a, m, product(b, n, v));
  lhs -= product(b, n, product(a, m, v));
  for (long j = 0; j <= m; ++j) {
    Element ab = product(a, j, b);
    if (ab.is_zero()) continue;
    Element t = product(ab, m + n - j, v);
    lhs.add_scaled(t, Scalar(-binom(m, j)));
  }
  return lhs;
}

SingularReport Engine::is_singular(const Element& v, const Element& L) {
  SingularReport rep;
  auto w = uniform_weight(v);
  if (!w || v.is_zero()) return rep;
  rep.weight = *w;
  rep.singular = true;
  for (long n = 1; n <= *w; ++n) {
    Element r = mode(L, n, v);
    if (!r.is_zero()) {
      rep.singular = false;
      rep.failures.push_back({n, std::move(r)});
    }
  }
  Element r0 = mode(L, 0, v);
  r0.add_scaled(v, Scalar(Rat(-*w)));
  if (!r0.is_zero()) {
    rep.singular = false;
    rep.failures.push_back({0, std::move(r0)});
  }
  return rep;
}

size_t Engine::memo_size() const {
  std::shared_lock lk(mu_);
  return prod_memo_.size();
}

}  // namespace va

#include <fstream>
#include <sstream>

#include "va/parse.hpp"

namespace va {

void Engine::save_cache(const std::string& path) const {
  std::ofstream out(path);
  if (!out) return;
  std::shared_lock lk(mu_);
  for (const auto& [key, val] : prod_memo_) {
    out << key.size();
    for (int x : key) out << ' ' << x;
    out << '\t' << element_to_string(*val, alg_) << '\n';
  }
}

size_t Engine::load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) return 0;
  size_t loaded = 0;
  std::string line;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    std::istringstream ks(line.substr(0, tab));
    size_t n = 0;
    if (!(ks >> n)) continue;
    std::vector<int> key(n);
    bool ok = true;
    for (size_t i = 0; i < n; ++i)
      if (!(ks >> key[i])) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Element e = parse_element(line.substr(tab + 1), *this, nullptr);
    std::unique_lock lk(mu_);
    prod_memo_.emplace(std::move(key), std::make_shared<Element>(std::move(e)));
    ++loaded;
  }
  return loaded;
}

}  // namespace va
