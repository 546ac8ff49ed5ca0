#ifndef COCALC_RANDOM_HPP
#define COCALC_RANDOM_HPP

#include <cstdint>
#include <random>

#include "cocalc/coterm.hpp"
#include "cocalc/subst.hpp"

namespace cocalc {

/// Shape bounds for randomized terms. The distribution is fixed here so
/// seeded runs reproduce byte-identically across platforms (all draws go
/// through the raw engine, never through distribution adapters).
struct GenOptions {
  std::size_t max_unknowns = 4;
  std::size_t max_rhs_depth = 3;
  std::size_t max_extra_ctx = 2;
  bool allow_embed = true;
  /// When false, references only occur outside binders, so every cycle of
  /// the generated system has binder weight zero and the system stays
  /// usable with bind_via_solve.
  bool refs_under_binders = true;
};

/// Seeded generator of guarded systems, rational coterms, substitutions
/// and finite terms over one signature's probe pools.
class TermGen {
 public:
  TermGen(SignaturePtr sig, std::uint64_t seed);

  std::mt19937_64& rng() { return rng_; }
  std::uint64_t pick(std::uint64_t n);  // uniform-ish in [0, n)

  Sort random_sort();
  /// A context guaranteed to contain `must_have`, newest entries random.
  Context random_context(const Sort& must_have, std::size_t extra);

  /// A guarded system with root unknown "X0" at (ctx, sort). May throw
  /// only on unusable signatures; retries internally otherwise.
  EquationSystem random_system(const Context& ctx, const Sort& sort,
                               const GenOptions& opt);

  /// solve(random_system(...)) at the root.
  CoTerm random_rational(const Context& ctx, const Sort& sort,
                         const GenOptions& opt);

  /// Substitution out of `source` into a related random context.
  Substitution random_substitution(const Context& source,
                                   const GenOptions& opt);

  FinTerm random_finterm(const Context& ctx, const Sort& sort,
                         std::size_t depth);

 private:
  struct RhsState;
  PreTerm random_preterm(RhsState& st, const Context& local, const Sort& sort,
                         std::size_t depth, std::size_t binders, bool guarded);

  std::vector<OpIndex> ops_by_target(const Sort& sort) const;

  SignaturePtr sig_;
  std::mt19937_64 rng_;
};

}  // namespace cocalc

#endif
