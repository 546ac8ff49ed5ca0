#ifndef COCALC_SUBST_HPP
#define COCALC_SUBST_HPP

#include <cstdint>
#include <vector>

#include "cocalc/coterm.hpp"

namespace cocalc {

/// A simultaneous substitution: one coterm over `target` per position of
/// `source`. Immutable and cheaply copyable (shared representation; the
/// representation pointer doubles as a memoization key for bind).
class Substitution {
 public:
  /// Validates every assignment against (target, source[i]).
  Substitution(SignaturePtr sig, Context source, Context target,
               std::vector<CoTerm> assign);

  /// The unit: every variable maps to itself.
  static Substitution identity(SignaturePtr sig, const Context& ctx);

  const SignaturePtr& sig() const;
  const Context& source() const;
  const Context& target() const;
  const CoTerm& assign(std::size_t i) const;
  const void* id() const;

 private:
  struct Rep;
  std::shared_ptr<const Rep> rep_;
};

/// Functorial action of a renaming: relabels variables, lazily and
/// productively. Requires t.ctx == rho.source.
CoTerm rename(const ContextMorphism& rho, const CoTerm& t);

/// Weakening: rename along the injection ctx -> prefix ++ ctx.
CoTerm weaken(const std::vector<Sort>& prefix, const CoTerm& t);

/// The strength at binders: fresh variables map to themselves, old
/// assignments are weakened. lift(sigma, []) is sigma itself.
Substitution lift(const Substitution& sigma, const std::vector<Sort>& binders);

/// Monadic substitution, defined corecursively: variables are replaced by
/// their assignments, constructors push the lifted substitution into
/// their arguments. Requires t.ctx == sigma.source.
CoTerm bind(const Substitution& sigma, const CoTerm& t);

/// Independent route to bind for rational t: builds the induced guarded
/// equation system over (system state, lifted substitution) pairs and
/// solves it. Requires rational provenance on t; throws Error when t is
/// not rational or when the induced system would be infinite (a cycle of
/// the system crosses a binder).
CoTerm bind_via_solve(const Substitution& sigma, const CoTerm& t);

/// Kleisli composite: position i maps to bind(outer, inner.assign(i)).
Substitution compose(const Substitution& outer, const Substitution& inner);

/// Precomposition with a renaming: (sigma . rho)(i) = sigma(rho(i)).
Substitution precompose(const Substitution& sigma, const ContextMorphism& rho);

}  // namespace cocalc

#endif
