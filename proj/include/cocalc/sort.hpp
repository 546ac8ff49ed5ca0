#ifndef COCALC_SORT_HPP
#define COCALC_SORT_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cocalc {

/// A sort (syntactic category label). Sorts are immutable trees:
/// atoms (identifiers), arrows over sorts (simple types), or pairs
/// (used by the typed-forest signature, whose sorts are type/category
/// pairs). Equality is structural and total.
///
/// Concrete syntax: `->` is right-associative and binds loosest,
/// `*` pairs two components, atoms are `[A-Za-z0-9_]+`.
///   0 -> 0            arrow(atom 0, atom 0)
///   (0 -> 0) * t      pair(arrow(0,0), atom t)
class Sort {
 public:
  enum class Kind { Atom, Arrow, Pair };

  static Sort atom(std::string name);
  static Sort arrow(Sort domain, Sort codomain);
  static Sort pair(Sort first, Sort second);

  Kind kind() const { return rep_->kind; }
  bool is_atom() const { return rep_->kind == Kind::Atom; }
  bool is_arrow() const { return rep_->kind == Kind::Arrow; }
  bool is_pair() const { return rep_->kind == Kind::Pair; }

  /// Atom name; only valid on atoms.
  const std::string& atom_name() const;
  /// Arrow domain / pair first component.
  Sort left() const;
  /// Arrow codomain / pair second component.
  Sort right() const;

  bool operator==(const Sort& other) const;
  bool operator!=(const Sort& other) const { return !(*this == other); }

  std::size_t hash() const { return rep_->hash; }

  /// Canonical printable form; parse(str()) == *this.
  std::string str() const;

  /// Parses the canonical form. Throws ParseError on malformed input.
  static Sort parse(std::string_view text);

 private:
  struct Rep {
    Kind kind;
    std::string name;                  // atoms only
    std::shared_ptr<const Rep> left;   // arrow/pair only
    std::shared_ptr<const Rep> right;  // arrow/pair only
    std::size_t hash;
  };

  explicit Sort(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static bool rep_equal(const Rep& a, const Rep& b);
  void print_to(std::string& out, int parent_level) const;

  std::shared_ptr<const Rep> rep_;

  friend struct SortHash;
};

struct SortHash {
  std::size_t operator()(const Sort& s) const { return s.hash(); }
};

/// Hash of a sort sequence (contexts, binder lists).
std::size_t hash_sorts(const std::vector<Sort>& sorts);

std::string sorts_str(const std::vector<Sort>& sorts);

}  // namespace cocalc

#endif
