#include "va/presets.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "va/errors.hpp"
#include "va/reduction.hpp"

namespace va {

using nlohmann::ordered_json;

std::string fixture_dir() {
  if (const char* env = std::getenv("VA_FIXTURES")) return env;
  return VA_FIXTURE_DIR;
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Element PresetInstance::state(const std::string& name) const {
  if (resolver)
    if (auto e = resolver(name)) return *e;
  if (auto e = alg->find_state(name)) return *e;
  throw UnknownGenerator("no state named '" + name + "' in preset " + alg->name());
}

// ---------------------------------------------------------------------------
// code-built presets

Algebra build_virasoro(std::optional<Rat> cval) {
  Algebra alg("virasoro", cval ? "" : "c");
  int L = alg.add_generator("L", 2);
  Scalar c = cval ? Scalar(*cval) : Scalar::parameter("c");
  Element Le = Element::monomial(Monomial::single(L, 0));
  Element dL = Element::monomial(Monomial::single(L, 1));
  alg.set_poles(L, L, {dL, Scalar(2) * Le, Element(), Element::vacuum(c * Scalar(Rat(1, 2)))});
  alg.add_state("omega", Le);
  // weight-6 vacuum null vector of the (3,4) model, nonzero at any c
  Engine tmp(alg);
  Element v1 = tmp.nop(Le, tmp.nop(Le, Le));
  v1.add_scaled(tmp.nop(dL, dL), Scalar(Rat(93, 64)));
  v1.add_scaled(tmp.nop(tmp.derivative(Le, 2), Le), Scalar(Rat(-33, 16)));
  v1.add_scaled(tmp.derivative(Le, 4), Scalar(Rat(-9, 128)));
  alg.add_state("v1", v1);
  return alg;
}

Algebra build_vinfty_cube() {
  Algebra alg("vinfty3", "");
  int T0 = alg.add_generator("T0", 2);
  int T1 = alg.add_generator("T1", 2);
  int T2 = alg.add_generator("T2", 2);
  Element one = Element::vacuum();
  alg.set_poles(T0, T0, {Element(), Element(), Element(), one});
  alg.set_poles(T1, T2, {Element(), Element(), Element(), one});
  alg.set_poles(T2, T1, {Element(), Element(), Element(), one});
  alg.set_poles(T0, T1, {});
  alg.set_poles(T0, T2, {});
  alg.set_poles(T1, T1, {});
  alg.set_poles(T2, T2, {});
  alg.set_poles(T1, T0, {});
  alg.set_poles(T2, T0, {});
  return alg;
}

Algebra build_ising_cube() {
  Algebra alg("ising3", "");
  int L = alg.add_generator("L", 2);
  int U1 = alg.add_generator("U1", 2);
  int U2 = alg.add_generator("U2", 2);
  Scalar inv_s3 = Scalar(Cyclotomic::sqrt3()) * Scalar(Rat(1, 3));  // 1/sqrt(3)
  Scalar two_s3 = Scalar(2) * inv_s3;                               // 2/sqrt(3)
  Scalar quarter(Rat(1, 4));
  auto gen = [&](int g, int d) { return Element::monomial(Monomial::single(g, d)); };
  // three commuting c=1/2 Virasoro copies in the discrete Fourier basis
  alg.set_poles(L, L, {inv_s3 * gen(L, 1), two_s3 * gen(L, 0), Element(), quarter * Element::vacuum()});
  alg.set_poles(L, U1, {inv_s3 * gen(U1, 1), two_s3 * gen(U1, 0)});
  alg.set_poles(L, U2, {inv_s3 * gen(U2, 1), two_s3 * gen(U2, 0)});
  alg.set_poles(U1, U1, {inv_s3 * gen(U2, 1), two_s3 * gen(U2, 0)});
  alg.set_poles(U2, U2, {inv_s3 * gen(U1, 1), two_s3 * gen(U1, 0)});
  alg.set_poles(U1, U2, {inv_s3 * gen(L, 1), two_s3 * gen(L, 0), Element(), quarter * Element::vacuum()});
  alg.set_poles(U2, U1, {inv_s3 * gen(L, 1), two_s3 * gen(L, 0), Element(), quarter * Element::vacuum()});

  Engine tmp(alg);
  Scalar s3{Cyclotomic::sqrt3()};
  alg.add_state("omega", s3 * gen(L, 0));

  // copy conformal vectors X_i and their weight-6 null vectors
  Scalar e1{Cyclotomic::eta()};
  Scalar e2 = e1 * e1;
  std::array<std::pair<Scalar, Scalar>, 3> twists = {
      std::make_pair(Scalar(1), Scalar(1)), {e2, e1}, {e1, e2}};
  for (int i = 0; i < 3; ++i) {
    Element X = gen(L, 0);
    X.add_scaled(gen(U1, 0), twists[i].first);
    X.add_scaled(gen(U2, 0), twists[i].second);
    X *= inv_s3;
    Element v = tmp.nop(X, tmp.nop(X, X));
    v.add_scaled(tmp.nop(tmp.derivative(X), tmp.derivative(X)), Scalar(Rat(93, 64)));
    v.add_scaled(tmp.nop(tmp.derivative(X, 2), X), Scalar(Rat(-33, 16)));
    v.add_scaled(tmp.derivative(X, 4), Scalar(Rat(-9, 128)));
    alg.add_state("copyL" + std::to_string(i + 1), X);
    alg.add_state("v" + std::to_string(i + 1), v);
  }

  // named states from the fixture file (S, S1, S2, W4.., C6p.., displays)
  std::ifstream in(fixture_dir() + "/states/ising3.json");
  if (!in) throw FixtureError("missing fixture states/ising3.json");
  ordered_json j = ordered_json::parse(in);
  for (const auto& st : j.at("states")) {
    std::string name = st.at("name").get<std::string>();
    Element e = parse_element(st.at("expr").get<std::string>(), tmp, nullptr);
    alg.add_state(name, e);
  }
  if (j.contains("coupling"))
    for (auto& [key, val] : j.at("coupling").items())
      alg.add_meta("coupling_" + key, val.get<std::string>());
  return alg;
}

// ---------------------------------------------------------------------------
// fixture-backed algebras

namespace {

Element parse_spec(const ordered_json& spec, Engine& eng, const std::string& context,
                   Algebra* display_sink = nullptr, const std::string& dname = "") {
  if (spec.is_string()) return parse_element(spec.get<std::string>(), eng, nullptr);
  if (!spec.is_object() || !spec.contains("terms"))
    throw FixtureError("bad element spec in " + context);
  Element acc;
  std::string digest;
  Algebra::DisplayTerms meta;
  for (const auto& t : spec.at("terms")) {
    std::string tag = t.value("tag", "");
    std::string expr = t.at("expr").get<std::string>();
    digest += tag + ":" + expr + ";";
    meta.emplace_back(tag, expr);
    acc += parse_element(expr, eng, nullptr);
  }
  if (spec.contains("checksum")) {
    std::string want = spec.at("checksum").get<std::string>();
    std::string got = fnv1a_hex(digest);
    if (want != got)
      throw FixtureError("checksum mismatch in " + context + ": expected " + want + " got " + got);
  }
  if (display_sink && !dname.empty()) display_sink->add_display_meta(dname, std::move(meta));
  return acc;
}

Algebra load_algebra_fixture(const std::string& file) {
  std::ifstream in(fixture_dir() + "/" + file);
  if (!in) throw FixtureError("missing fixture " + file);
  ordered_json j = ordered_json::parse(in);
  Algebra alg(j.at("name").get<std::string>(), j.value("parameter", ""));
  for (const auto& g : j.at("generators"))
    alg.add_generator(g.at("name").get<std::string>(), g.at("weight").get<long>());
  if (j.contains("scalars"))
    for (const auto& s : j.at("scalars")) {
      std::string name = s.at("name").get<std::string>();
      alg.add_scalar(name, parse_scalar(s.at("expr").get<std::string>(), alg.param(),
                                        &alg.scalars()));
    }
  Engine tmp(alg);
  if (j.contains("displays"))
    for (const auto& d : j.at("displays")) {
      std::string name = d.at("name").get<std::string>();
      Element e = parse_spec(d, tmp, alg.name() + ":" + name, &alg, name);
      alg.add_state(name, e);
    }
  for (const auto& o : j.at("opes")) {
    auto a = alg.gen_index(o.at("a").get<std::string>());
    auto b = alg.gen_index(o.at("b").get<std::string>());
    if (!a || !b) throw FixtureError("unknown generator in opes of " + alg.name());
    std::vector<Element> poles;
    int n = 0;
    for (const auto& p : o.at("poles"))
      poles.push_back(parse_spec(p, tmp, alg.name() + " pole " + std::to_string(n++)));
    alg.set_poles(*a, *b, std::move(poles));
  }
  if (j.contains("states"))
    for (const auto& st : j.at("states")) {
      std::string name = st.at("name").get<std::string>();
      alg.add_state(name, parse_spec(st, tmp, alg.name() + ":" + name, &alg, name));
    }
  if (j.contains("meta"))
    for (auto& [key, val] : j.at("meta").items()) alg.add_meta(key, val.get<std::string>());
  return alg;
}

}  // namespace

Algebra specialize_algebra(const Algebra& a, const Rat& v) {
  if (a.param().empty()) throw FixtureError(a.name() + " has no parameter to specialize");
  Algebra out(a.name(), "");
  for (int i = 0; i < a.gen_count(); ++i) out.add_generator(a.gen(i).name, a.gen(i).weight);
  auto ev = [&](const Scalar& s) { return s.eval_at(v); };
  for (const auto& [key, poles] : a.table()) {
    std::vector<Element> sp;
    sp.reserve(poles.size());
    for (const auto& p : poles) sp.push_back(p.map_scalars(ev));
    out.set_poles(key.first, key.second, std::move(sp));
  }
  for (const auto& [name, st] : a.states()) out.add_state(name, st.map_scalars(ev));
  for (const auto& [name, sc] : a.scalars()) out.add_scalar(name, ev(sc));
  out.add_meta("level", rat_to_string(v));
  return out;
}

Algebra build_g2_subregular(std::optional<Rat> kval) {
  Algebra alg = load_algebra_fixture("algebras/g2_subregular.json");
  if (!kval) return alg;
  return specialize_algebra(alg, *kval);
}

Algebra build_g2_principal(std::optional<Rat> kval) {
  Algebra alg = load_algebra_fixture("algebras/g2_principal.json");
  if (!kval) return alg;
  for (const char* q : {"quad1", "quad2"}) {
    auto it = alg.scalars().find(q);
    if (it != alg.scalars().end() && it->second.eval_at(*kval).is_zero())
      throw ExcludedLevel("level " + rat_to_string(*kval) +
                          " requires an adjusted weight-6 generator");
  }
  return specialize_algebra(alg, *kval);
}

// ---------------------------------------------------------------------------
// generated states on the degenerate cube

Element gen_W(Engine& cube, int m, int n) {
  Element r = cube.word({Factor{1, m}, Factor{2, n}});
  r += cube.word({Factor{1, n}, Factor{2, m}});
  return r;
}

Element gen_C(Engine& cube, int l, int m, int n) {
  Element r = cube.word({Factor{1, l}, Factor{1, m}, Factor{1, n}});
  r += cube.word({Factor{2, l}, Factor{2, m}, Factor{2, n}});
  return r;
}

Element gen_u(Engine& cube, const std::vector<int>& ms) {
  Scalar coef(1);
  for (int m : ms) coef *= Scalar(Rat(1) / factorial(m));
  Scalar inv_s3 = Scalar(Cyclotomic::sqrt3()) * Scalar(Rat(1, 3));
  Scalar e1{Cyclotomic::eta()};
  Scalar e2 = e1 * e1;
  auto gen = [](int g) { return Element::monomial(Monomial::single(g, 0)); };
  std::array<std::pair<Scalar, Scalar>, 3> twists = {
      std::make_pair(Scalar(1), Scalar(1)), {e2, e1}, {e1, e2}};
  Element out;
  for (int i = 0; i < 3; ++i) {
    Element X = gen(0);
    X.add_scaled(gen(1), twists[i].first);
    X.add_scaled(gen(2), twists[i].second);
    X *= inv_s3;
    std::vector<std::pair<Element, int>> items;
    for (int m : ms) items.emplace_back(X, m);
    out += cube.word_of(items);
  }
  out *= coef;
  return out;
}

namespace {

std::optional<std::vector<int>> parse_suffix_ints(const std::string& s, size_t pos,
                                                  size_t expect) {
  std::vector<int> out;
  while (pos < s.size()) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) return std::nullopt;
    out.push_back(std::stoi(s.substr(start, pos - start)));
    if (pos == s.size()) break;
    if (s[pos] != '_') return std::nullopt;
    ++pos;
  }
  if (out.size() != expect) return std::nullopt;
  return out;
}

StateResolver make_cube_resolver(Engine& eng) {
  return [&eng](const std::string& name) -> std::optional<Element> {
    if (name.size() > 1 && name[0] == 'W') {
      if (auto v = parse_suffix_ints(name, 1, 2)) return gen_W(eng, (*v)[0], (*v)[1]);
    }
    if (name.size() > 1 && name[0] == 'C') {
      if (auto v = parse_suffix_ints(name, 1, 3)) return gen_C(eng, (*v)[0], (*v)[1], (*v)[2]);
    }
    if (name.rfind("R2_", 0) == 0) {
      if (auto v = parse_suffix_ints(name, 3, 5))
        return build_R2(eng, {(*v)[0], (*v)[1], (*v)[2], (*v)[3], (*v)[4]});
    }
    if (name.rfind("u_", 0) == 0) {
      size_t pos = 2;
      std::vector<int> ms;
      while (pos < name.size()) {
        size_t start = pos;
        while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) ++pos;
        if (pos == start) return std::nullopt;
        ms.push_back(std::stoi(name.substr(start, pos - start)));
        if (pos < name.size() && name[pos] == '_') ++pos;
      }
      if (!ms.empty()) return gen_u(eng, ms);
    }
    return std::nullopt;
  };
}

void check_pole_weights(const Algebra& alg) {
  Engine eng(alg, false);
  for (const auto& [key, poles] : alg.table()) {
    long wa = alg.gen(key.first).weight, wb = alg.gen(key.second).weight;
    for (size_t n = 0; n < poles.size(); ++n) {
      if (poles[n].is_zero()) continue;
      auto w = eng.uniform_weight(poles[n]);
      if (!w || *w != wa + wb - static_cast<long>(n) - 1)
        throw FixtureError("pole " + std::to_string(n) + " of (" + alg.gen(key.first).name +
                           "," + alg.gen(key.second).name + ") in " + alg.name() +
                           " has wrong weight");
    }
  }
}

void smoke_skew(const Algebra& alg) {
  const Algebra* use = &alg;
  Algebra specialized("", "");
  if (!alg.param().empty()) {
    bool ok = false;
    for (const Rat& cand : {Rat(2), Rat(1, 3), Rat(-1, 5), Rat(5, 7), Rat(3)}) {
      try {
        specialized = specialize_algebra(alg, cand);
        ok = true;
        break;
      } catch (const PoleAtValue&) {
      }
    }
    if (!ok) throw FixtureError("no smoke-test level found for " + alg.name());
    use = &specialized;
  }
  Engine eng(*use);
  for (int a = 0; a < use->gen_count(); ++a)
    for (int b = 0; b < use->gen_count(); ++b) {
      Element ea = Element::monomial(Monomial::single(a, 0));
      Element eb = Element::monomial(Monomial::single(b, 0));
      auto rep = eng.skew_check(ea, eb, use->gen(a).weight + use->gen(b).weight);
      if (!rep.ok)
        throw FixtureError("skew smoke test failed for (" + use->gen(a).name + "," +
                           use->gen(b).name + ") in " + alg.name());
    }
}

}  // namespace

const std::vector<std::string>& PresetCatalog::names() {
  static const std::vector<std::string> kNames = {"virasoro", "vinfty3", "ising3",
                                                  "g2_subregular", "g2_principal"};
  return kNames;
}

PresetInstance PresetCatalog::build(const std::string& name, std::optional<Rat> param,
                                    bool smoke_check) {
  PresetInstance inst;
  if (name == "virasoro") {
    inst.alg = std::make_unique<Algebra>(build_virasoro(param));
  } else if (name == "vinfty3") {
    inst.alg = std::make_unique<Algebra>(build_vinfty_cube());
  } else if (name == "ising3") {
    inst.alg = std::make_unique<Algebra>(build_ising_cube());
  } else if (name == "g2_subregular") {
    inst.alg = std::make_unique<Algebra>(build_g2_subregular(param));
  } else if (name == "g2_principal") {
    inst.alg = std::make_unique<Algebra>(build_g2_principal(param));
  } else {
    throw UnknownPreset("unknown preset '" + name + "'");
  }
  if (smoke_check) {
    check_pole_weights(*inst.alg);
    smoke_skew(*inst.alg);
  }
  inst.eng = std::make_unique<Engine>(*inst.alg);
  if (name == "vinfty3") inst.resolver = make_cube_resolver(*inst.eng);
  return inst;
}

// ---------------------------------------------------------------------------

Display load_display(const std::string& path) {
  std::ifstream in(fixture_dir() + "/" + path);
  if (!in) throw FixtureError("missing display fixture " + path);
  ordered_json j = ordered_json::parse(in);
  Display d;
  d.name = j.at("name").get<std::string>();
  std::string digest;
  for (const auto& t : j.at("terms")) {
    std::string tag = t.value("tag", "");
    std::string expr = t.at("expr").get<std::string>();
    digest += tag + ":" + expr + ";";
    d.terms.emplace_back(tag, expr);
  }
  if (j.contains("checksum")) {
    std::string want = j.at("checksum").get<std::string>();
    std::string got = fnv1a_hex(digest);
    if (want != got)
      throw FixtureError("checksum mismatch in display " + d.name + ": expected " + want +
                         " got " + got);
  }
  return d;
}

Element Display::eval(Engine& eng, const StateResolver& states) const {
  Element acc;
  for (const auto& [tag, expr] : terms) acc += parse_element(expr, eng, states);
  return acc;
}

// ---------------------------------------------------------------------------

CouplingResult match_coupling(PresetInstance& ising) {
  Engine& eng = *ising.eng;
  const Algebra& alg = *ising.alg;
  Element W4 = ising.state("W4");
  Element omega = ising.state("omega");
  Element Le = Element::monomial(Monomial::single(*alg.gen_index("L"), 0));

  CouplingResult res;
  res.w4hat = primary_correction(eng, W4, omega);
  Element P = eng.product(res.w4hat, 3, res.w4hat);
  Element LL = eng.nop(Le, Le);
  Element d2L = eng.derivative(Le, 2);
  ExpressResult ex = express({res.w4hat, LL, d2L}, P);
  if (!ex.in_span) throw NoSolution("self product does not lie in the expected span");
  res.alpha = ex.coeffs[0];
  res.beta = ex.coeffs[1];
  res.gamma = ex.coeffs[2];
  for (const Scalar* s : {&res.alpha, &res.beta, &res.gamma})
    if (!s->is_rational_constant()) throw NoSolution("non-rational product coefficient");

  auto coupling_poly = [&](const std::string& key) {
    auto m = alg.meta("coupling_" + key);
    if (!m) throw NoSolution("preset lacks coupling data '" + key + "'");
    return parse_scalar(*m, "lam", nullptr);
  };
  Scalar tW = coupling_poly("W");    // w1 * lam
  Scalar tLL = coupling_poly("LL");  // p * lam^2 + q
  Scalar tD2 = coupling_poly("d2L");
  auto rat_coeff = [](const Scalar& s, int i) {
    if (!s.den().is_constant()) throw NoSolution("coupling datum is not polynomial");
    Cyclotomic c = s.num().coeff(i) / s.den().constant_value();
    if (!c.is_rational()) throw NoSolution("coupling datum is not rational");
    return c.rat();
  };
  Rat w1 = rat_coeff(tW, 1);
  Rat u = rat_coeff(tD2, 2), v = rat_coeff(tD2, 0);
  Rat alpha = res.alpha.constant_value().rat();
  Rat gamma = res.gamma.constant_value().rat();
  Rat beta = res.beta.constant_value().rat();
  // mu = w1 * lam / alpha;  gamma mu^2 = u lam^2 + v
  Rat denom = gamma * w1 * w1 / (alpha * alpha) - u;
  if (sgn(denom) == 0) throw NoSolution("degenerate coupling system");
  Rat lam2 = v / denom;
  if (sgn(lam2) < 0) throw NoSolution("no real coupling solution");
  mpz_class num_root, den_root;
  if (mpz_perfect_square_p(lam2.get_num().get_mpz_t()) == 0 ||
      mpz_perfect_square_p(lam2.get_den().get_mpz_t()) == 0)
    throw NoSolution("coupling solution is irrational");
  mpz_sqrt(num_root.get_mpz_t(), lam2.get_num().get_mpz_t());
  mpz_sqrt(den_root.get_mpz_t(), lam2.get_den().get_mpz_t());
  res.lambda = Rat(num_root, den_root);
  res.lambda.canonicalize();
  res.mu = w1 * res.lambda / alpha;
  // cross-check the :LL: equation
  Rat p = rat_coeff(tLL, 2), q = rat_coeff(tLL, 0);
  res.ll_consistent = (beta * res.mu * res.mu == p * lam2 + q);
  return res;
}

}  // namespace va
