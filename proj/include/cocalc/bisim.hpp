#ifndef COCALC_BISIM_HPP
#define COCALC_BISIM_HPP

#include <string>

#include "cocalc/coterm.hpp"

namespace cocalc {

/// Observational equality to depth d: the terms agree on every layer
/// whose constructor depth is below d. Anything at the observation
/// frontier is a wildcard, so d = 0 is true whenever contexts and sorts
/// agree, and the relation is monotone decreasing in d. Signature,
/// context or sort mismatch yields false, never an error.
bool bisim_to_depth(const CoTerm& a, const CoTerm& b, std::size_t depth);

/// A rational coterm with its finite presentation attached.
struct RationalHandle {
  CoTerm term;
  std::shared_ptr<const EquationSystem> system;
  std::string unknown;

  /// Wraps a solve() output; throws Error when t carries no provenance.
  static RationalHandle of(const CoTerm& t);
  /// Solves `es` and wraps the given root.
  static RationalHandle make(const EquationSystem& es,
                             const std::string& unknown);
};

struct RationalBisimStats {
  bool equal;
  std::size_t states_a;    // flat graph size of the left presentation
  std::size_t states_b;    // flat graph size of the right presentation
  std::size_t explored;    // product states visited
};

/// Exact bisimilarity of rational coterms, decided on the finite
/// presentations (product-state exploration with a visited set). Embedded
/// coterms inside the systems must themselves be rational; otherwise an
/// Error is raised. Re-checks both presentations first.
bool bisim_rational(const RationalHandle& a, const RationalHandle& b);
RationalBisimStats bisim_rational_stats(const RationalHandle& a,
                                        const RationalHandle& b);

enum class PrettyStyle { DeBruijn, Named };

/// Deterministic rendering of truncate(t, depth). The de Bruijn style is
/// canonical (injective on truncations): `#i` variables, full constructor
/// names with parameters, `…` cuts. The named style invents fresh names
/// x0, x1, ... outermost-first and sugars the built-in families:
/// `λx. N`, `(f a)`, `+⟨E1, E2⟩`, `x⟨N1, N2⟩`.
std::string pretty(const CoTerm& t, std::size_t depth, PrettyStyle style);

}  // namespace cocalc

#endif
