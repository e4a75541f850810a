#pragma once
#include <memory>
#include <optional>

#include "va/engine.hpp"
#include "va/parse.hpp"

namespace va {

/// Built algebra together with its engine and the name resolver used to look
/// up generated states (W{m}_{n}, C{l}_{m}_{n}, R2_{...} patterns on the
/// degenerate cube, named fixture states elsewhere).
struct PresetInstance {
  std::unique_ptr<Algebra> alg;
  std::unique_ptr<Engine> eng;
  StateResolver resolver;

  Element state(const std::string& name) const;
  Element parse(const std::string& text) const { return parse_element(text, *eng, resolver); }
};

struct PresetCatalog {
  static const std::vector<std::string>& names();
  /// Builds a preset; param specializes the table parameter where one
  /// exists. smoke_check verifies pole weights always and skew-symmetry at
  /// one fixed specialized level.
  static PresetInstance build(const std::string& name, std::optional<Rat> param,
                              bool smoke_check = true);
};

Algebra build_virasoro(std::optional<Rat> cval);
Algebra build_vinfty_cube();
Algebra build_ising_cube();
Algebra build_g2_subregular(std::optional<Rat> kval);
Algebra build_g2_principal(std::optional<Rat> kval);

/// Substitute an exact rational for the algebra parameter everywhere.
Algebra specialize_algebra(const Algebra& a, const Rat& v);

/// Quadratic invariant :(d^m T1)(d^n T2): + :(d^n T1)(d^m T2): of the cube.
Element gen_W(Engine& cube, int m, int n);
/// Cubic invariant :(d^l T1)(d^m T1)(d^n T1): + (T2 copy).
Element gen_C(Engine& cube, int l, int m, int n);
/// sum_i :d^{m1} a_i ... d^{mk} a_i: / prod m_j! over the three free-field
/// copies a_i of the cube.
Element gen_u(Engine& cube, const std::vector<int>& ms);

/// Tagged long-display fixture: an ordered list of (tag, element expression)
/// terms with an integrity checksum.
struct Display {
  std::string name;
  std::vector<std::pair<std::string, std::string>> terms;
  Element eval(Engine& eng, const StateResolver& states) const;
};

Display load_display(const std::string& path);

std::string fixture_dir();
std::string fnv1a_hex(const std::string& data);

struct CouplingResult {
  Rat lambda, mu;
  Element w4hat;                // unit normalization
  Scalar alpha, beta, gamma;    // computed (w4hat)_(3) w4hat coefficients on
                                // w4hat, :LL:, d^2 L
  bool ll_consistent = false;   // quadratic cross-check on the :LL: equation
};

/// Solves the coupling-constant match for the simple c=1/2 cube orbifold
/// against the bundled two-parameter product normal form.
CouplingResult match_coupling(PresetInstance& ising);

}  // namespace va
