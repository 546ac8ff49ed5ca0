#ifndef COCALC_SIGNATURE_HPP
#define COCALC_SIGNATURE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cocalc/sort.hpp"

namespace cocalc {

/// Constructor index. Indices are family names plus sort/natural
/// parameters, so infinite index sets (e.g. one application operation per
/// pair of sorts) have finite descriptions. Equality is structural.
///
/// Canonical form: name, sort parameters in braces, natural parameters as
/// `_n` suffixes: `lam{0,0}`, `app{0 -> 0,0}`, `sum_2`, `sum{0}_2`,
/// `tup{0 -> 0,0}`. A bare identifier names a parameterless constructor.
struct OpIndex {
  std::string name;
  std::vector<Sort> sort_params;
  std::vector<std::uint64_t> nat_params;

  bool operator==(const OpIndex& other) const;
  bool operator!=(const OpIndex& other) const { return !(*this == other); }
  std::size_t hash() const;
  std::string str() const;
};

struct OpIndexHash {
  std::size_t operator()(const OpIndex& op) const { return op.hash(); }
};

/// One constructor argument: the sorts of the variables it binds
/// (first element of `bound` is the innermost extension, de Bruijn 0)
/// and the sort of the argument itself.
struct BinderArity {
  std::vector<Sort> bound;
  Sort arg_sort;

  bool operator==(const BinderArity& other) const {
    return bound == other.bound && arg_sort == other.arg_sort;
  }
};

struct ConstructorArity {
  std::vector<BinderArity> args;
  Sort target;

  bool operator==(const ConstructorArity& other) const {
    return args == other.args && target == other.target;
  }
  std::string str() const;
};

/// Finite portion of a signature, present for DSL-defined signatures.
/// Declaration order is kept for printing round-trips.
struct FiniteSignature {
  std::vector<std::string> sorts;  // declared sort (enumeration) names
  std::vector<std::pair<std::string, ConstructorArity>> ops;
};

/// A multi-sorted binding signature: decidable sorts plus a total arity
/// assignment on an index universe that may be infinite (intensional).
/// Immutable after construction; safe to share across threads.
class Signature {
 public:
  std::string name;

  /// Arity lookup; nullopt means "not an index of this signature".
  /// Must be pure: equal indices yield equal arities.
  std::function<std::optional<ConstructorArity>(const OpIndex&)> arity;

  /// Sort-formation check for this signature.
  std::function<bool(const Sort&)> valid_sort;

  /// Present iff the signature was declared finitely (DSL).
  std::optional<FiniteSignature> finite;

  /// Finite spot-check set: representative constructors, used as the
  /// default probe and as the draw pool for randomized tests.
  std::vector<OpIndex> probe_ops;

  /// Small sorts of this signature, for randomized generation.
  std::vector<Sort> sample_sorts;
};

using SignaturePtr = std::shared_ptr<const Signature>;

/// Per-index outcome of a probe validation.
struct ValidationEntry {
  OpIndex op;
  std::optional<ConstructorArity> arity;
  std::vector<std::string> failures;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool ok() const;
  std::string str() const;
};

/// Spot-checks a (possibly intensional) signature on a finite probe set:
/// arity lookup succeeds, every involved sort is well-formed. Failures are
/// report data, never exceptions.
ValidationReport validate_signature(const Signature& sig,
                                    const std::vector<OpIndex>& probe);

/// Built-in signatures: "stlc", "untyped-forests", "typed-forests".
/// `atoms` supplies the base-type names for stlc and typed-forests
/// (ignored by untyped-forests). Throws Error on unknown names.
SignaturePtr builtin_signature(const std::string& name,
                               const std::vector<std::string>& atoms = {});

/// Parses the finite signature DSL:
///   sorts { v; t; e; }
///   ops { lam : [v]t -> t; sum0 : -> t; tup1 : v, t -> e; }
/// Arguments are `[s1 s2 ...]s` (binders then sort; bare `s` when no
/// binders), the target sort follows `->`. `#` comments run to end of
/// line. Throws ParseError with position on bad syntax, Error on
/// duplicate names or undeclared sorts.
SignaturePtr parse_signature(std::string_view text);

/// Prints a finite signature in the DSL; parse_signature inverts it.
/// Throws Error when the signature has no finite presentation.
std::string print_signature(const Signature& sig);

/// Resolves a constructor literal against a signature: declared op names
/// first, then family decomposition `name{sorts}_n1_n2`. Throws Error if
/// the result is not an index of the signature.
OpIndex parse_op_index(const Signature& sig, std::string_view text);

}  // namespace cocalc

#endif
