#include "va/reduction.hpp"

#include <algorithm>
#include <sstream>

#include "va/errors.hpp"
#include "va/presets.hpp"

namespace va {

ExpressResult express(const std::vector<Element>& columns, const Element& target) {
  SpanSolver<Monomial> solver;
  for (const auto& col : columns) solver.add_column(col.terms());
  ExpressResult res;
  auto rem = solver.solve(target.terms(), res.coeffs);
  for (const auto& [m, s] : rem) res.residual.add_term(m, s);
  res.in_span = res.residual.is_zero();
  return res;
}

int rank_of(const std::vector<Element>& elems) {
  SpanSolver<Monomial> solver;
  for (const auto& e : elems) solver.add_column(e.terms());
  return solver.rank();
}

namespace {

void enumerate_shapes(const std::vector<Atom>& atoms, long remaining, int maxdeg,
                      std::pair<int, int> minkey, std::vector<std::pair<int, int>>& cur,
                      std::vector<std::vector<std::pair<int, int>>>& out) {
  if (remaining == 0 && !cur.empty()) {
    out.push_back(cur);
    if (static_cast<int>(out.size()) > 200000)
      throw std::runtime_error("spanning set too large");
  }
  if (static_cast<int>(cur.size()) >= maxdeg || remaining <= 0) return;
  for (int i = minkey.first; i < static_cast<int>(atoms.size()); ++i) {
    long base = atoms[i].weight;
    int dmax = static_cast<int>(remaining - base);
    if (dmax < 0) continue;
    dmax = std::min(dmax, atoms[i].maxder);
    int dstart = (i == minkey.first) ? std::min(dmax, minkey.second) : dmax;
    // factors within a word are nonincreasing in (index asc, der desc) order
    for (int d = dstart; d >= 0; --d) {
      cur.emplace_back(i, d);
      enumerate_shapes(atoms, remaining - base - d, maxdeg, {i, d}, cur, out);
      cur.pop_back();
    }
  }
}

}  // namespace

std::vector<SpanEntry> spanning_set(Engine& eng, const std::vector<Atom>& atoms, long weight,
                                    int maxdeg, int min_single_der) {
  std::vector<std::vector<std::pair<int, int>>> shapes;
  std::vector<std::pair<int, int>> cur;
  enumerate_shapes(atoms, weight, maxdeg, {0, 1 << 20}, cur, shapes);
  std::vector<SpanEntry> out;
  for (auto& shape : shapes) {
    if (shape.size() == 1 && shape[0].second < min_single_der) continue;
    SpanEntry e;
    e.shape = shape;
    std::ostringstream desc;
    if (shape.size() == 1) {
      const auto& [i, d] = shape[0];
      if (d > 0)
        desc << "d^" << d << "(" << atoms[i].name << ")";
      else
        desc << atoms[i].name;
    } else {
      desc << "NO(";
      for (size_t j = 0; j < shape.size(); ++j) {
        if (j) desc << ", ";
        const auto& [i, d] = shape[j];
        if (d > 0)
          desc << "d^" << d << "(" << atoms[i].name << ")";
        else
          desc << atoms[i].name;
      }
      desc << ")";
    }
    e.desc = desc.str();
    std::vector<std::pair<Element, int>> items;
    for (const auto& [i, d] : shape) items.emplace_back(atoms[i].elem, d);
    e.elem = eng.word_of(items);
    if (e.elem.is_zero()) continue;
    out.push_back(std::move(e));
  }
  return out;
}

Relation decouple(Engine& eng, const Element& target, const std::vector<Atom>& atoms,
                  int maxdeg, int min_single_der) {
  auto w = eng.uniform_weight(target);
  if (!w) throw NotInSpan("decouple target is not homogeneous");
  auto span = spanning_set(eng, atoms, *w, maxdeg, min_single_der);
  std::vector<Element> cols;
  cols.reserve(span.size());
  for (const auto& e : span) cols.push_back(e.elem);
  ExpressResult res = express(cols, target);
  if (!res.in_span)
    throw NotInSpan("target not expressible over spanning set (residual has " +
                    std::to_string(res.residual.term_count()) + " terms)");
  Relation rel;
  rel.target = target;
  rel.residual = res.residual;
  for (size_t i = 0; i < span.size(); ++i)
    if (!res.coeffs[i].is_zero()) rel.combination.emplace_back(res.coeffs[i], span[i]);
  return rel;
}

Element build_R1(Engine& cube, const std::array<Scalar, 5>& a, const std::array<int, 5>& m) {
  auto W = [&](int i, int j) { return gen_W(cube, m[i - 1], m[j - 1]); };
  auto C = [&](int i, int j, int k) { return gen_C(cube, m[i - 1], m[j - 1], m[k - 1]); };
  auto NO = [&](const Element& w, const Element& c) { return cube.nop(w, c); };
  Element r;
  r.add_scaled(NO(W(4, 5), C(1, 2, 3)), a[0] + a[1] + a[2]);
  r.add_scaled(NO(W(3, 5), C(1, 2, 4)), a[0] + a[2] + a[4]);
  r.add_scaled(NO(W(3, 4), C(1, 2, 5)), -(a[0] + a[1] + a[2] + a[3] + a[4]));
  r.add_scaled(NO(W(2, 4), C(1, 3, 5)), a[4]);
  r.add_scaled(NO(W(2, 5), C(1, 3, 4)), -(a[0] + a[3] + a[4]));
  r.add_scaled(NO(W(1, 5), C(2, 3, 4)), -(a[0] + a[1] + a[2]));
  r.add_scaled(NO(W(2, 3), C(1, 4, 5)), a[3]);
  r.add_scaled(NO(W(1, 4), C(2, 3, 5)), a[2]);
  r.add_scaled(NO(W(1, 2), C(3, 4, 5)), a[0]);
  r.add_scaled(NO(W(1, 3), C(2, 4, 5)), a[1]);
  return r;
}

Element build_R2(Engine& cube, const std::array<int, 5>& m) {
  return build_R1(cube, {Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(0)}, m);
}

IdealMembership ideal_membership(Engine& eng, const Element& x,
                                 const std::vector<Element>& idealgens, long weight) {
  const Algebra& alg = eng.algebra();
  // reduced bases per weight, grown to a fixpoint
  std::map<long, SpanSolver<Monomial>> bases;
  std::vector<std::pair<long, Element>> work;

  auto push = [&](const Element& e) {
    if (e.is_zero()) return;
    auto w = eng.uniform_weight(e);
    if (!w || *w < 1 || *w > weight) return;
    if (!bases[*w].add_column(e.terms())) return;
    work.emplace_back(*w, e);
  };

  for (const auto& g : idealgens) push(g);

  while (!work.empty()) {
    auto [wu, u] = std::move(work.back());
    work.pop_back();
    if (wu + 1 <= weight) push(eng.derivative(u));
    for (int g = 0; g < alg.gen_count(); ++g) {
      Element ge = Element::monomial(Monomial::single(g, 0));
      long wg = alg.gen(g).weight;
      // positive and zero modes lower the weight
      for (long n = 0; n <= wg + wu - 2; ++n) {
        long wr = wg + wu - n - 1;
        if (wr < 1 || wr > weight) continue;
        push(eng.product(ge, n, u));
      }
      // normally ordered products with derivatives raise it
      for (long d = 0; wg + d + wu <= weight; ++d) {
        Element dg = d > 0 ? eng.derivative(ge, d) : ge;
        push(eng.nop(dg, u));
      }
    }
  }

  IdealMembership out;
  auto w = eng.uniform_weight(x);
  if (x.is_zero()) {
    out.member = true;
    return out;
  }
  if (!w) return out;
  auto it = bases.find(*w);
  out.basis_size = it == bases.end() ? 0 : it->second.rank();
  if (it == bases.end()) {
    out.residual = x;
    return out;
  }
  std::vector<Scalar> coeffs;
  auto rem = it->second.solve(x.terms(), coeffs);
  for (const auto& [m, s] : rem) out.residual.add_term(m, s);
  out.member = out.residual.is_zero();
  return out;
}

Element primary_correction(Engine& eng, const Element& x, const Element& L) {
  auto wopt = eng.uniform_weight(x);
  if (!wopt) throw NotCorrectable("input is not homogeneous");
  long N = *wopt;
  // vacuum descendants: L(-n1)...L(-nj) 1 over partitions of N into parts >= 2
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
    if (remaining == 0) {
      if (!cur.empty()) parts.push_back(cur);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 2; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(static_cast<int>(N), static_cast<int>(N));

  std::vector<Element> descendants;
  for (const auto& ps : parts) {
    Element e = Element::vacuum();
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) e = eng.mode(L, -*it, e);
    if (!e.is_zero()) descendants.push_back(e);
  }

  using Key = std::pair<long, Monomial>;
  SpanSolver<Key> solver;
  auto stack_modes = [&](const Element& v) {
    std::map<Key, Scalar> out;
    for (long n = 1; n <= N; ++n) {
      Element r = eng.mode(L, n, v);
      for (const auto& [m, s] : r.terms()) out[{n, m}] = s;
    }
    return out;
  };
  for (const auto& d : descendants) solver.add_column(stack_modes(d));
  std::vector<Scalar> coeffs;
  auto rem = solver.solve(stack_modes(x), coeffs);
  if (!rem.empty())
    throw NotCorrectable("no descendant combination cancels all positive modes");
  Element result = x;
  for (size_t i = 0; i < descendants.size(); ++i)
    result.add_scaled(descendants[i], -coeffs[i]);
  return result;
}

}  // namespace va
