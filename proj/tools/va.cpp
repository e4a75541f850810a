#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "va/errors.hpp"
#include "va/manifest.hpp"
#include "va/qseries.hpp"
#include "va/reduction.hpp"

using namespace va;
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Globals {
  std::string format = "text";
  int threads = 1;
  std::string cache_dir;
};

std::string cache_file(const Globals& g, const Algebra& alg) {
  std::string param = alg.meta("level").value_or("sym");
  return g.cache_dir + "/" + alg.name() + "_" + param + ".memo";
}

PresetInstance load_preset(const Globals& g, const std::string& name, const std::string& param) {
  std::optional<Rat> p;
  if (!param.empty()) p = rat_from_string(param);
  PresetInstance inst = PresetCatalog::build(name, p);
  if (!g.cache_dir.empty()) inst.eng->load_cache(cache_file(g, *inst.alg));
  return inst;
}

void maybe_save_cache(const Globals& g, const PresetInstance& inst) {
  if (g.cache_dir.empty()) return;
  fs::create_directories(g.cache_dir);
  inst.eng->save_cache(cache_file(g, *inst.alg));
}

int cmd_ope(const Globals& g, const std::string& preset, const std::string& param,
            const std::string& a, const std::string& b) {
  PresetInstance inst = load_preset(g, preset, param);
  Element ea = inst.parse(a), eb = inst.parse(b);
  auto poles = inst.eng->ope_singular(ea, eb);
  if (g.format == "json") {
    ordered_json out = ordered_json::array();
    for (size_t n = 0; n < poles.size(); ++n)
      if (!poles[n].is_zero())
        out.push_back({{"pole", n + 1}, {"element", element_to_string(poles[n], *inst.alg)}});
    std::cout << out.dump(2) << "\n";
  } else {
    bool any = false;
    for (size_t n = 0; n < poles.size(); ++n)
      if (!poles[n].is_zero()) {
        std::cout << "pole " << (n + 1) << ": " << element_to_string(poles[n], *inst.alg)
                  << "\n";
        any = true;
      }
    if (!any) std::cout << "regular (no singular part)\n";
  }
  maybe_save_cache(g, inst);
  return 0;
}

int cmd_nprod(const Globals& g, const std::string& preset, const std::string& param, long n,
              const std::string& a, const std::string& b) {
  PresetInstance inst = load_preset(g, preset, param);
  Element r = inst.eng->product(inst.parse(a), n, inst.parse(b));
  if (g.format == "json")
    std::cout << ordered_json{{"element", element_to_string(r, *inst.alg)}}.dump(2) << "\n";
  else
    std::cout << element_to_string(r, *inst.alg) << "\n";
  maybe_save_cache(g, inst);
  return 0;
}

int cmd_reduce(const Globals& g, const std::string& preset, const std::string& param,
               const std::string& target, const std::string& gens, long weight, int maxdeg,
               int minsd) {
  PresetInstance inst = load_preset(g, preset, param);
  Element t = inst.parse(target);
  auto w = inst.eng->uniform_weight(t);
  if (!w || (weight > 0 && *w != weight)) {
    std::cerr << "target weight mismatch\n";
    return 1;
  }
  std::vector<Atom> atoms;
  std::stringstream ss(gens);
  std::string name;
  while (std::getline(ss, name, ',')) {
    Atom a;
    a.name = name;
    a.elem = inst.state(name);
    a.weight = inst.eng->uniform_weight(a.elem).value();
    atoms.push_back(std::move(a));
  }
  try {
    Relation rel = decouple(*inst.eng, t, atoms, maxdeg, minsd);
    ordered_json out;
    out["target"] = target;
    out["terms"] = ordered_json::array();
    for (const auto& [coeff, entry] : rel.combination)
      out["terms"].push_back({{"coeff", coeff.str()}, {"element", entry.desc}});
    out["residual"] = element_to_string(rel.residual, *inst.alg);
    if (g.format == "json") {
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "target = ";
      bool first = true;
      for (const auto& [coeff, entry] : rel.combination) {
        if (!first) std::cout << " + ";
        std::cout << "(" << coeff.str() << ")*" << entry.desc;
        first = false;
      }
      std::cout << "\nresidual = " << element_to_string(rel.residual, *inst.alg) << "\n";
    }
    maybe_save_cache(g, inst);
    return 0;
  } catch (const NotInSpan& e) {
    std::cerr << "NotInSpan: " << e.what() << "\n";
    return 1;
  }
}

int cmd_char(const Globals& g, const std::string& weights, int truncate,
             const std::string& compare) {
  auto parse_list = [](const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
  };
  QSeries a = free_character(parse_list(weights), truncate);
  if (compare.empty()) {
    if (g.format == "json")
      std::cout << ordered_json{{"series", a.str()}}.dump(2) << "\n";
    else
      std::cout << a.str() << "\n";
    return 0;
  }
  QSeries b = QSeries::one(truncate);
  if (compare.rfind("symcube:", 0) == 0)
    b = sym_cube_character(free_character(parse_list(compare.substr(8)), truncate));
  else if (compare.rfind("weights:", 0) == 0)
    b = free_character(parse_list(compare.substr(8)), truncate);
  else
    throw ParseError("bad --compare spec (use symcube:LIST or weights:LIST)");
  auto diff = first_difference(a, b);
  if (g.format == "json") {
    ordered_json out{{"series", a.str()}, {"compare", b.str()}};
    if (diff)
      out["first_difference"] = *diff;
    else
      out["first_difference"] = nullptr;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << a.str() << "\n";
    if (diff)
      std::cout << "first difference at q^" << *diff << "\n";
    else
      std::cout << "equal to truncation order " << truncate << "\n";
  }
  return diff ? 1 : 0;
}

int cmd_singular(const Globals& g, const std::string& preset, const std::string& param,
                 const std::string& vec, const std::string& vir) {
  PresetInstance inst = load_preset(g, preset, param);
  Element v = inst.parse(vec);
  Element L = inst.parse(vir);
  auto rep = inst.eng->is_singular(v, L);
  if (g.format == "json") {
    ordered_json out{{"singular", rep.singular}, {"weight", rep.weight}};
    out["failing_modes"] = ordered_json::array();
    for (const auto& f : rep.failures) out["failing_modes"].push_back(f.mode);
    std::cout << out.dump(2) << "\n";
  } else if (rep.singular) {
    std::cout << "PASS weight " << rep.weight << "\n";
  } else {
    std::cout << "FAIL";
    for (const auto& f : rep.failures) std::cout << " L(" << f.mode << ")";
    std::cout << "\n";
  }
  maybe_save_cache(g, inst);
  return rep.singular ? 0 : 1;
}

int cmd_consistency(const Globals& g, const std::string& preset, const std::string& param,
                    long maxweight) {
  PresetInstance inst = load_preset(g, preset, param);
  const Algebra& alg = *inst.alg;
  bool ok = true;
  std::ostringstream os;
  for (int a = 0; a < alg.gen_count(); ++a)
    for (int b = 0; b < alg.gen_count(); ++b) {
      Element ea = Element::monomial(Monomial::single(a, 0));
      Element eb = Element::monomial(Monomial::single(b, 0));
      auto rep = inst.eng->skew_check(ea, eb, alg.gen(a).weight + alg.gen(b).weight);
      os << "skew " << alg.gen(a).name << "," << alg.gen(b).name << ": "
         << (rep.ok ? "ok" : "FAIL") << "\n";
      ok = ok && rep.ok;
    }
  for (int a = 0; a < alg.gen_count(); ++a)
    for (int b = 0; b < alg.gen_count(); ++b)
      for (int v = 0; v < alg.gen_count(); ++v) {
        Element ea = Element::monomial(Monomial::single(a, 0));
        Element eb = Element::monomial(Monomial::single(b, 0));
        Element ev = Element::monomial(Monomial::single(v, 0));
        bool pairok = true;
        for (long m = 0; m <= maxweight && pairok; ++m)
          for (long n = 0; n <= maxweight && pairok; ++n)
            if (!inst.eng->commutator_residual(ea, m, eb, n, ev).is_zero()) pairok = false;
        os << "commutator " << alg.gen(a).name << "," << alg.gen(b).name << ","
           << alg.gen(v).name << ": " << (pairok ? "ok" : "FAIL") << "\n";
        ok = ok && pairok;
      }
  std::cout << os.str() << (ok ? "consistent" : "INCONSISTENT") << "\n";
  maybe_save_cache(g, inst);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact OPE calculus for vertex operator algebras"};
  app.require_subcommand(1);
  Globals g;
  if (const char* env = std::getenv("VA_CACHE_DIR")) g.cache_dir = env;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", g.threads, "worker threads for manifests");
  app.add_option("--cache", g.cache_dir, "product cache directory");

  std::string preset, param, a, b, vec, vir = "@omega", target, gens, weights, compare, path;
  long n = 0, weight = 0, maxweight = 4;
  int truncate = 12, maxdeg = 6, minsd = 1;

  auto add_preset_opts = [&](CLI::App* cmd) {
    cmd->add_option("--preset", preset, "preset name")->required();
    cmd->add_option("--param", param, "parameter value (exact rational)");
  };

  auto* ope = app.add_subcommand("ope", "print the singular OPE pole list");
  add_preset_opts(ope);
  ope->add_option("--a", a)->required();
  ope->add_option("--b", b)->required();

  auto* nprod = app.add_subcommand("nprod", "print one n-th product");
  add_preset_opts(nprod);
  nprod->add_option("-n", n)->required();
  nprod->add_option("--a", a)->required();
  nprod->add_option("--b", b)->required();

  auto* reduce = app.add_subcommand("reduce", "express a state over lower generators");
  add_preset_opts(reduce);
  reduce->add_option("--target", target)->required();
  reduce->add_option("--gens", gens, "comma-separated atom names")->required();
  reduce->add_option("--weight", weight);
  reduce->add_option("--maxdeg", maxdeg);
  reduce->add_option("--min-single-der", minsd);

  auto* chr = app.add_subcommand("char", "free vacuum characters");
  chr->add_option("--weights", weights)->required();
  chr->add_option("--truncate", truncate);
  chr->add_option("--compare", compare, "symcube:LIST or weights:LIST");

  auto* sing = app.add_subcommand("singular", "test a singular vector");
  add_preset_opts(sing);
  sing->add_option("--vector", vec)->required();
  sing->add_option("--virasoro", vir);

  auto* cons = app.add_subcommand("consistency", "table skew/commutator checks");
  add_preset_opts(cons);
  cons->add_option("--max-weight", maxweight);

  auto* man = app.add_subcommand("manifest", "run a verification manifest");
  man->add_option("path", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ope->parsed()) return cmd_ope(g, preset, param, a, b);
    if (nprod->parsed()) return cmd_nprod(g, preset, param, n, a, b);
    if (reduce->parsed())
      return cmd_reduce(g, preset, param, target, gens, weight, maxdeg, minsd);
    if (chr->parsed()) return cmd_char(g, weights, truncate, compare);
    if (sing->parsed()) return cmd_singular(g, preset, param, vec, vir);
    if (cons->parsed()) return cmd_consistency(g, preset, param, maxweight);
    if (man->parsed()) {
      ManifestReport rep = run_manifest(path, g.threads);
      std::cout << (g.format == "json" ? report_to_json(rep) : report_to_text(rep));
      return rep.all_pass() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
