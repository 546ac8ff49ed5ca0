#ifndef COCALC_COTERM_HPP
#define COCALC_COTERM_HPP

#include <any>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cocalc/signature.hpp"
#include "cocalc/sort.hpp"

namespace cocalc {

/// A typing context: finite sequence of sorts, position 0 is the most
/// recently bound variable. Extension by a binder list prepends it.
using Context = std::vector<Sort>;

/// binders ++ ctx (first binder becomes position 0).
Context extend(const std::vector<Sort>& binders, const Context& ctx);

/// A sort-preserving renaming between contexts:
/// target[map[i]] == source[i] for every position i.
struct ContextMorphism {
  Context source;
  Context target;
  std::vector<std::size_t> map;

  static ContextMorphism identity(const Context& ctx);
  /// Injection ctx -> prefix ++ ctx, shifting every index by |prefix|.
  static ContextMorphism weakening(const std::vector<Sort>& prefix,
                                   const Context& ctx);

  std::size_t operator()(std::size_t i) const { return map.at(i); }

  /// binders ++ source -> binders ++ target; new positions map to
  /// themselves.
  ContextMorphism lifted(const std::vector<Sort>& binders) const;

  /// outer after this: source -> outer.target. Requires target ==
  /// outer.source.
  ContextMorphism then(const ContextMorphism& outer) const;

  bool operator==(const ContextMorphism& other) const {
    return source == other.source && target == other.target && map == other.map;
  }

  /// Throws SortError unless sort preservation holds at every position.
  void check() const;
};

class CoTerm;

struct VarNode {
  std::size_t index;
};

struct ConNode {
  OpIndex op;
  std::vector<CoTerm> args;
};

/// One observed layer of a coterm.
using Node = std::variant<VarNode, ConNode>;

namespace detail {
struct CoTermImpl;
struct CoTermAccess;
}  // namespace detail

/// A well-scoped, possibly non-wellfounded term: a context, a sort, and a
/// memoized one-step unfolding into a Node. Handles share structure;
/// forcing is thread-safe and happens at most once per node.
class CoTerm {
 public:
  CoTerm() = default;  // empty handle; using it is a programming error

  const SignaturePtr& sig() const;
  const Context& ctx() const;
  const Sort& sort() const;

  /// The one-step destructor. Memoized: repeated calls return the same
  /// Node and run the producing step at most once.
  const Node& out() const;

  /// Node identity (not bisimilarity): true iff both handles share the
  /// underlying memo cell.
  bool same_node(const CoTerm& other) const { return impl_ == other.impl_; }
  const void* id() const { return impl_.get(); }
  explicit operator bool() const { return impl_ != nullptr; }

 private:
  explicit CoTerm(std::shared_ptr<detail::CoTermImpl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<detail::CoTermImpl> impl_;

  friend struct detail::CoTermAccess;
};

/// Variable at position i of ctx. Throws SortError if i is out of range.
CoTerm var(SignaturePtr sig, Context ctx, std::size_t index);

/// Constructor application in host context ctx; children are shared, not
/// copied. Eagerly checks the arity of `op` against the arguments
/// (lengths, sorts, binder-extended contexts) and throws SortError naming
/// the offending position.
CoTerm con(SignaturePtr sig, Context ctx, const OpIndex& op,
           std::vector<CoTerm> args);

/// Free-function destructor, same as t.out().
inline const Node& out(const CoTerm& t) { return t.out(); }

// ---------------------------------------------------------------------
// Anamorphism: corecursion from an opaque seed.

/// A child position in an emitted layer: either an existing coterm or a
/// seed to unfold corecursively, with its declared context and sort.
struct UnfoldSeed {
  std::any state;
  Context ctx;
  Sort sort;
};
using UnfoldChild = std::variant<CoTerm, UnfoldSeed>;

struct UnfoldVar {
  std::size_t index;
};
struct UnfoldCon {
  OpIndex op;
  std::vector<UnfoldChild> children;
};
using UnfoldLayer = std::variant<UnfoldVar, UnfoldCon>;

/// Builds the unique coterm whose unfolding replays `step` from `seed`.
/// `step` must be pure (same state, structurally equal layer). Sorting of
/// emitted layers is checked lazily at force time; violations raise
/// SortError naming the path from the root.
CoTerm unfold_coterm(SignaturePtr sig, Context ctx, Sort sort, std::any seed,
                     std::function<UnfoldLayer(const std::any&)> step);

// ---------------------------------------------------------------------
// Finite prefixes.

/// Finite observation of a coterm: Node layers down to a depth, with cut
/// markers where constructors at the cut depth were not unfolded further.
/// Var leaves are never cut.
struct Truncation {
  struct Cut {};
  struct Var {
    std::size_t index;
  };
  struct Con {
    OpIndex op;
    std::vector<Truncation> children;
  };

  std::variant<Cut, Var, Con> node;

  bool operator==(const Truncation& other) const;
};

/// Forces at most `depth` constructor layers. Constructors at depth
/// `depth` become cuts; variables always stay visible.
Truncation truncate(const CoTerm& t, std::size_t depth);

// ---------------------------------------------------------------------
// Finite (wellfounded) terms.

/// Inductive term over the same signatures; same sorting rules as Node,
/// finite by construction. Structural equality.
class FinTerm {
 public:
  const SignaturePtr& sig() const;
  const Context& ctx() const;
  const Sort& sort() const;

  bool is_var() const;
  std::size_t var_index() const;
  const OpIndex& op() const;
  const std::vector<FinTerm>& args() const;

  /// Number of constructor layers on the deepest branch; 0 for variables.
  std::size_t height() const;

  bool operator==(const FinTerm& other) const;
  bool operator!=(const FinTerm& other) const { return !(*this == other); }

  /// Canonical de Bruijn rendering (used for ordering enumerations).
  std::string str() const;

 public:
  struct Rep;

 private:
  explicit FinTerm(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;

  friend FinTerm fin_var(SignaturePtr, Context, std::size_t);
  friend FinTerm fin_con(SignaturePtr, Context, const OpIndex&,
                         std::vector<FinTerm>);
};

FinTerm fin_var(SignaturePtr sig, Context ctx, std::size_t index);
FinTerm fin_con(SignaturePtr sig, Context ctx, const OpIndex& op,
                std::vector<FinTerm> args);

/// Inductive-to-coinductive embedding: the unfolding of the result
/// replays ft exactly.
CoTerm embed(const FinTerm& ft);

// ---------------------------------------------------------------------
// Guarded equation systems (rational coterms).

struct PreTerm;

struct PVar {
  std::size_t index;
};
struct PCon {
  OpIndex op;
  std::vector<PreTerm> args;
};
/// Reference to an unknown, renamed from its declared context into the
/// local context of the occurrence.
struct PRef {
  std::string unknown;
  ContextMorphism ren;
};
/// An already-known coterm, renamed into the local context.
struct PEmbed {
  CoTerm term;
  ContextMorphism ren;
};

struct PreTerm {
  std::variant<PVar, PCon, PRef, PEmbed> node;
};

struct Unknown {
  std::string name;
  Context ctx;
  Sort sort;
  PreTerm rhs;
};

/// A finite guarded system of equations. Guardedness: every PRef occurs
/// strictly beneath at least one PCon of its right-hand side.
class EquationSystem {
 public:
  EquationSystem(SignaturePtr sig, std::vector<Unknown> unknowns);

  const SignaturePtr& sig() const { return sig_; }
  const std::vector<Unknown>& unknowns() const { return unknowns_; }
  const Unknown& unknown(const std::string& name) const;
  const Unknown* find(const std::string& name) const;

  /// Guardedness and sorting of every right-hand side. Throws
  /// GuardednessError / SortError with the unknown and path.
  void check() const;

 private:
  SignaturePtr sig_;
  std::vector<Unknown> unknowns_;
};

using Solution = std::map<std::string, CoTerm>;

/// Unique (up to bisimilarity) solution of a guarded system. Checks the
/// system eagerly. Solved roots carry provenance retrievable with
/// rational_provenance().
Solution solve(const EquationSystem& es);

/// Interprets a right-hand side against explicit values for the
/// unknowns: PRef/PEmbed become renamings of the given coterms. This is
/// the plug-in side of the solution property.
CoTerm interpret(const EquationSystem& es, const PreTerm& pre,
                 const Context& ctx, const Sort& sort, const Solution& sol);

/// Provenance attached to solve() outputs.
struct SolveOrigin {
  std::shared_ptr<const EquationSystem> system;
  std::string unknown;
};

/// Returns the system/unknown a coterm was solved from, if any.
std::optional<SolveOrigin> rational_provenance(const CoTerm& t);

/// PreTerm copy of a finite term (finite terms are rational).
PreTerm preterm_of(const FinTerm& ft);

}  // namespace cocalc

#endif
