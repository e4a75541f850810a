#include "va/manifest.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "va/errors.hpp"
#include "va/qseries.hpp"
#include "va/reduction.hpp"

namespace va {

using nlohmann::ordered_json;

namespace {

struct PresetCache {
  std::map<std::pair<std::string, std::string>, std::shared_ptr<PresetInstance>> cache;
  std::mutex mu;

  std::shared_ptr<PresetInstance> get(const std::string& name, const std::string& param) {
    std::unique_lock lk(mu);
    auto key = std::make_pair(name, param);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    lk.unlock();
    std::optional<Rat> p;
    if (!param.empty()) p = rat_from_string(param);
    auto inst = std::make_shared<PresetInstance>(PresetCatalog::build(name, p));
    lk.lock();
    auto [jt, ok] = cache.emplace(key, std::move(inst));
    return jt->second;
  }
};

std::string residual_str(const Element& e, const Algebra& alg) {
  std::string s = element_to_string(e, alg);
  if (s.size() > 400) s = s.substr(0, 400) + " ...";
  return s;
}

struct CheckRunner {
  PresetCache& presets;

  std::shared_ptr<PresetInstance> preset_of(const ordered_json& c) {
    if (!c.contains("preset")) throw ParseError("check lacks a preset");
    return presets.get(c.at("preset").get<std::string>(), c.value("param", ""));
  }

  CheckResult run(const ordered_json& c) {
    CheckResult r;
    r.id = c.at("id").get<std::string>();
    r.kind = c.at("kind").get<std::string>();
    auto t0 = std::chrono::steady_clock::now();
    try {
      dispatch(c, r);
    } catch (const std::exception& e) {
      r.pass = false;
      r.message = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

  void dispatch(const ordered_json& c, CheckResult& r) {
    const std::string& kind = r.kind;
    if (kind == "ope-identity")
      ope_identity(c, r);
    else if (kind == "decouple")
      decouple_check(c, r);
    else if (kind == "singular")
      singular(c, r);
    else if (kind == "skew")
      skew(c, r);
    else if (kind == "commutator")
      commutator(c, r);
    else if (kind == "character")
      character(c, r);
    else if (kind == "ideal")
      ideal(c, r);
    else if (kind == "coupling")
      coupling(c, r);
    else
      throw ParseError("unknown check kind '" + kind + "'");
  }

  void ope_identity(const ordered_json& c, CheckResult& r) {
    auto inst = preset_of(c);
    Element lhs, rhs;
    if (c.contains("a")) {
      Element a = inst->parse(c.at("a").get<std::string>());
      Element b = inst->parse(c.at("b").get<std::string>());
      long n = c.at("n").get<long>();
      lhs = inst->eng->product(a, n, b);
      rhs = inst->parse(c.at("expected").get<std::string>());
    } else {
      lhs = inst->parse(c.at("lhs").get<std::string>());
      if (c.contains("rhs_display")) {
        Display d = load_display(c.at("rhs_display").get<std::string>());
        rhs = d.eval(*inst->eng, inst->resolver);
      } else {
        rhs = inst->parse(c.at("rhs").get<std::string>());
      }
    }
    Element residual = lhs - rhs;
    r.pass = residual.is_zero();
    if (!r.pass) {
      std::ostringstream os;
      os << "residual = " << residual_str(residual, *inst->alg);
      if (c.contains("rhs_display")) {
        // point at transcribed terms whose support overlaps the residual
        Display d = load_display(c.at("rhs_display").get<std::string>());
        os << "; overlapping terms:";
        for (const auto& [tag, expr] : d.terms) {
          Element t = parse_element(expr, *inst->eng, inst->resolver);
          bool overlap = false;
          for (const auto& [m, s] : t.terms())
            if (!residual.coeff(m).is_zero()) {
              overlap = true;
              break;
            }
          if (overlap) os << " " << tag;
        }
      }
      r.message = os.str();
    }
  }

  void decouple_check(const ordered_json& c, CheckResult& r) {
    auto inst = preset_of(c);
    Element target = inst->parse(c.at("target").get<std::string>());
    bool expected = c.value("expected", true);
    if (c.contains("span")) {
      std::vector<Element> cols;
      for (const auto& s : c.at("span")) cols.push_back(inst->parse(s.get<std::string>()));
      ExpressResult res = express(cols, target);
      r.pass = (res.in_span == expected);
      if (!res.in_span) {
        r.message = "residual = " + residual_str(res.residual, *inst->alg);
        return;
      }
      if (c.contains("expected_coeffs")) {
        for (auto& [idx, val] : c.at("expected_coeffs").items()) {
          size_t i = std::stoul(idx);
          Scalar want = parse_scalar(val.get<std::string>(), inst->alg->param(),
                                     &inst->alg->scalars());
          if (!(res.coeffs.at(i) == want)) {
            r.pass = false;
            r.message += "coeff[" + idx + "] = " + res.coeffs.at(i).str() + ", expected " +
                         val.get<std::string>() + "; ";
          }
        }
      }
    } else {
      std::vector<Atom> atoms;
      for (const auto& gname : c.at("gens")) {
        Atom a;
        a.name = gname.get<std::string>();
        a.elem = inst->state(a.name);
        auto w = inst->eng->uniform_weight(a.elem);
        if (!w) throw ParseError("atom is not homogeneous: " + a.name);
        a.weight = *w;
        atoms.push_back(std::move(a));
      }
      int maxdeg = c.value("maxdeg", 6);
      int minsd = c.value("min_single_der", 1);
      try {
        Relation rel = decouple(*inst->eng, target, atoms, maxdeg, minsd);
        r.pass = expected;
        r.message = "expressed with " + std::to_string(rel.combination.size()) + " terms";
      } catch (const NotInSpan& e) {
        r.pass = !expected;
        r.message = e.what();
      }
    }
  }

  void singular(const ordered_json& c, CheckResult& r) {
    auto inst = preset_of(c);
    Element v = inst->parse(c.at("vector").get<std::string>());
    Element L = inst->parse(c.value("virasoro", std::string("@omega")));
    auto rep = inst->eng->is_singular(v, L);
    bool expected = c.value("expected", true);
    r.pass = (rep.singular == expected);
    if (rep.singular && c.contains("expected_weight") &&
        rep.weight != c.at("expected_weight").get<long>())
      r.pass = false;
    if (!rep.singular && !rep.failures.empty()) {
      std::ostringstream os;
      os << "failing modes:";
      for (const auto& f : rep.failures) os << " L(" << f.mode << ")";
      r.message = os.str();
    } else {
      r.message = "weight " + std::to_string(rep.weight);
    }
  }

  void skew(const ordered_json& c, CheckResult& r) {
    auto inst = preset_of(c);
    Element a = inst->parse(c.at("a").get<std::string>());
    Element b = inst->parse(c.at("b").get<std::string>());
    long wa = inst->eng->uniform_weight(a).value_or(0);
    long wb = inst->eng->uniform_weight(b).value_or(0);
    long nmax = c.value("nmax", wa + wb);
    auto rep = inst->eng->skew_check(a, b, nmax);
    r.pass = rep.ok;
    if (!rep.ok) {
      std::ostringstream os;
      os << "nonzero residuals at n =";
      for (const auto& f : rep.failures) os << " " << f.mode;
      os << "; first: " << residual_str(rep.failures.front().residual, *inst->alg);
      r.message = os.str();
    }
  }

  void commutator(const ordered_json& c, CheckResult& r) {
    auto inst = preset_of(c);
    Element a = inst->parse(c.at("a").get<std::string>());
    Element b = inst->parse(c.at("b").get<std::string>());
    Element v = inst->parse(c.at("v").get<std::string>());
    long m = c.at("m").get<long>(), n = c.at("n").get<long>();
    Element res = inst->eng->commutator_residual(a, m, b, n, v);
    r.pass = res.is_zero();
    if (!r.pass) r.message = "residual = " + residual_str(res, *inst->alg);
  }

  void character(const ordered_json& c, CheckResult& r) {
    int N = c.at("truncate").get<int>();
    std::vector<int> base = c.at("base_weights").get<std::vector<int>>();
    std::vector<int> free = c.at("free_weights").get<std::vector<int>>();
    QSeries cube = sym_cube_character(free_character(base, N));
    QSeries prod = free_character(free, N);
    auto diff = first_difference(cube, prod);
    std::ostringstream os;
    r.pass = true;
    if (c.contains("expect_agree_through")) {
      int thr = c.at("expect_agree_through").get<int>();
      if (diff && *diff <= thr) r.pass = false;
    }
    if (c.contains("expect_first_diff")) {
      int want = c.at("expect_first_diff").get<int>();
      if (!diff || *diff != want) r.pass = false;
    }
    if (diff)
      os << "first difference at q^" << *diff;
    else
      os << "equal to truncation";
    r.message = os.str();
  }

  void ideal(const ordered_json& c, CheckResult& r) {
    auto inst = preset_of(c);
    Element x = inst->parse(c.at("x").get<std::string>());
    std::vector<Element> gens;
    for (const auto& g : c.at("idealgens")) gens.push_back(inst->state(g.get<std::string>()));
    long w = c.at("weight").get<long>();
    auto rep = ideal_membership(*inst->eng, x, gens, w);
    bool expected = c.value("expected", true);
    r.pass = (rep.member == expected);
    if (!rep.member) r.message = "residual = " + residual_str(rep.residual, *inst->alg);
  }

  void coupling(const ordered_json& c, CheckResult& r) {
    auto inst = presets.get("ising3", "");
    CouplingResult res = match_coupling(*inst);
    Rat lam = rat_from_string(c.at("expected_lambda").get<std::string>());
    Rat mu = rat_from_string(c.at("expected_mu").get<std::string>());
    r.pass = (res.lambda == lam && res.mu == mu && res.ll_consistent);
    std::ostringstream os;
    os << "lambda = " << rat_to_string(res.lambda) << ", mu = " << rat_to_string(res.mu);
    if (!res.ll_consistent) os << " (LL cross-check failed)";
    r.message = os.str();
  }
};

}  // namespace

ManifestReport run_manifest(const std::string& path, int threads) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest " + path);
  ordered_json j = ordered_json::parse(in);
  const auto& checks = j.at("checks");
  {
    std::map<std::string, int> seen;
    for (const auto& c : checks)
      if (++seen[c.at("id").get<std::string>()] > 1)
        throw ParseError("duplicate check id " + c.at("id").get<std::string>());
  }
  PresetCache cache;
  CheckRunner runner{cache};
  ManifestReport rep;
  rep.results.resize(checks.size());
  if (threads <= 1) {
    for (size_t i = 0; i < checks.size(); ++i) rep.results[i] = runner.run(checks[i]);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= checks.size()) return;
        rep.results[i] = runner.run(checks[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rep;
}

std::string report_to_text(const ManifestReport& rep) {
  std::ostringstream os;
  for (const auto& r : rep.results) {
    os << (r.pass ? "PASS" : "FAIL") << " " << r.id;
    if (!r.message.empty()) os << ": " << r.message;
    char buf[32];
    snprintf(buf, sizeof buf, " [%.2fs]", r.seconds);
    os << buf << "\n";
  }
  os << (rep.all_pass() ? "all checks passed" : "some checks FAILED") << "\n";
  return os.str();
}

std::string report_to_json(const ManifestReport& rep) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rep.results) {
    ordered_json o;
    o["id"] = r.id;
    o["kind"] = r.kind;
    o["pass"] = r.pass;
    o["message"] = r.message;
    o["seconds"] = r.seconds;
    out.push_back(o);
  }
  return out.dump(2);
}

}  // namespace va
