#ifndef COCALC_INHABIT_HPP
#define COCALC_INHABIT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cocalc/coterm.hpp"

namespace cocalc {

/// Simple types are the atom/arrow fragment of Sort.
using SimpleType = Sort;

/// Surface syntax: atoms are identifiers, `->` right-associative,
/// parentheses allowed. Throws ParseError.
SimpleType parse_simple_type(std::string_view text);

/// Typing context surface syntax `x:A, y:B` (oldest entry first). Names
/// are surface-only; positions become de Bruijn indices.
std::vector<std::pair<std::string, SimpleType>> parse_typing_context(
    std::string_view text);

/// Spine decomposition A = B1 -> ... -> Bk -> p; returns ({B1..Bk}, p).
/// Recomposition is the identity.
std::pair<std::vector<SimpleType>, std::string> type_spine(const SimpleType& a);

/// Atoms occurring in the given types.
std::vector<std::string> collect_atoms(const std::vector<SimpleType>& gamma,
                                       const SimpleType& a);

/// The typed-forest signature over the given atoms (delegates to the
/// built-in). `probed_sorts` is spot-checked for well-formedness.
SignaturePtr forest_signature(const std::vector<std::string>& atoms,
                              const std::vector<Sort>& probed_sorts = {});

/// The full inhabitation search space for gamma |- ? : a as a lazy
/// coterm of the typed-forest signature, sort <a, t>. gamma is given
/// oldest-first; its entries become the forest context (newest = de
/// Bruijn 0). At arrow types the root is a lam; at atoms it is the sum of
/// one elimination alternative per context entry whose spine targets the
/// atom, oldest entry first.
CoTerm generate_search_forest(const std::vector<SimpleType>& gamma,
                              const SimpleType& a);

/// All inhabitants readable off the forest within `fuel` constructor
/// layers, converted to STLC terms (lam stays lam, an alternative with
/// head x and arguments N1..Nk becomes x N1 ... Nk). Deterministic order
/// (canonical form), every term sort-checks at (gamma, a).
std::vector<FinTerm> enumerate_inhabitants(const std::vector<SimpleType>& gamma,
                                           const SimpleType& a,
                                           std::size_t fuel);

/// Independent brute-force proof search over the typing rules, same fuel
/// accounting, without building the forest.
std::vector<FinTerm> oracle_enumerate(const std::vector<SimpleType>& gamma,
                                      const SimpleType& a, std::size_t fuel);

}  // namespace cocalc

#endif
