#pragma once
#include <functional>
#include <string>

#include "va/engine.hpp"

namespace va {

/// Resolves names inside NO(...) factors that are not generators: named
/// states of the preset (optionally written with a leading '@').
using StateResolver = std::function<std::optional<Element>(const std::string&)>;

/// Parse the element grammar
///   element := term (('+'|'-') term)*
///   term    := atoms joined by '*' or '/', at most one monomial atom
///   mono    := 'one' | 'NO(' factor {',' factor} ')' | factor
///   factor  := ['d^' int '('] name [')']
/// and return the canonical form over the engine's algebra. Scalar atoms use
/// the scalar syntax (with the algebra's parameter and named scalars).
Element parse_element(const std::string& text, Engine& eng,
                      const StateResolver& states = nullptr);

std::string scalar_to_string(const Scalar& s);
std::string monomial_to_string(const Monomial& m, const Algebra& alg);
std::string element_to_string(const Element& e, const Algebra& alg);

}  // namespace va
