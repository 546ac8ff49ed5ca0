#include <algorithm>
#include <unordered_set>

#include "cocalc/error.hpp"
#include "cocalc/signature.hpp"

namespace cocalc {

namespace {

// Simple type over a fixed atom set: atoms and arrows only.
bool simple_type_over(const Sort& s,
                      const std::unordered_set<std::string>& atoms) {
  switch (s.kind()) {
    case Sort::Kind::Atom:
      return atoms.count(s.atom_name()) > 0;
    case Sort::Kind::Arrow:
      return simple_type_over(s.left(), atoms) &&
             simple_type_over(s.right(), atoms);
    case Sort::Kind::Pair:
      return false;
  }
  return false;
}

// Small pool of simple types for probing and random draws.
std::vector<Sort> type_pool(const std::vector<std::string>& atoms) {
  std::vector<Sort> pool;
  for (const auto& a : atoms) pool.push_back(Sort::atom(a));
  std::size_t base = std::min<std::size_t>(pool.size(), 2);
  for (std::size_t i = 0; i < base; i++) {
    Sort a = pool[i];
    pool.push_back(Sort::arrow(a, a));
    pool.push_back(Sort::arrow(Sort::arrow(a, a), a));
    pool.push_back(Sort::arrow(a, Sort::arrow(a, a)));
  }
  return pool;
}

SignaturePtr make_stlc(const std::vector<std::string>& atoms) {
  if (atoms.empty()) throw Error("stlc signature needs at least one atom");
  auto sig = std::make_shared<Signature>();
  sig->name = "stlc";
  auto atom_set = std::make_shared<std::unordered_set<std::string>>(
      atoms.begin(), atoms.end());

  sig->valid_sort = [atom_set](const Sort& s) {
    return simple_type_over(s, *atom_set);
  };
  sig->arity = [atom_set](const OpIndex& op) -> std::optional<ConstructorArity> {
    if (!op.nat_params.empty() || op.sort_params.size() != 2) return std::nullopt;
    const Sort& s = op.sort_params[0];
    const Sort& t = op.sort_params[1];
    if (!simple_type_over(s, *atom_set) || !simple_type_over(t, *atom_set))
      return std::nullopt;
    if (op.name == "app") {
      // ar(inl<s,t>) = <[<[], s=>t>, <[], s>], t>
      return ConstructorArity{{BinderArity{{}, Sort::arrow(s, t)}, BinderArity{{}, s}}, t};
    }
    if (op.name == "lam") {
      // ar(inr<s,t>) = <[<[s], t>], s=>t>
      return ConstructorArity{{BinderArity{{s}, t}}, Sort::arrow(s, t)};
    }
    return std::nullopt;
  };

  sig->sample_sorts = type_pool(atoms);
  Sort a0 = Sort::atom(atoms[0]);
  Sort arr = Sort::arrow(a0, a0);
  sig->probe_ops = {
      OpIndex{"app", {a0, a0}, {}},
      OpIndex{"lam", {a0, a0}, {}},
      OpIndex{"app", {arr, a0}, {}},
      OpIndex{"lam", {arr, a0}, {}},
      OpIndex{"app", {a0, arr}, {}},
      OpIndex{"lam", {a0, arr}, {}},
  };
  return sig;
}

SignaturePtr make_untyped_forests() {
  auto sig = std::make_shared<Signature>();
  sig->name = "untyped-forests";
  Sort v = Sort::atom("v");
  Sort t = Sort::atom("t");
  Sort e = Sort::atom("e");

  sig->valid_sort = [v, t, e](const Sort& s) {
    return s == v || s == t || s == e;
  };
  sig->arity = [v, t, e](const OpIndex& op) -> std::optional<ConstructorArity> {
    if (!op.sort_params.empty()) return std::nullopt;
    if (op.name == "lam" && op.nat_params.empty()) {
      return ConstructorArity{{BinderArity{{v}, t}}, t};
    }
    if (op.name == "sum" && op.nat_params.size() == 1) {
      std::vector<BinderArity> args(op.nat_params[0], BinderArity{{}, e});
      return ConstructorArity{std::move(args), t};
    }
    if (op.name == "tup" && op.nat_params.size() == 1) {
      std::vector<BinderArity> args{BinderArity{{}, v}};
      args.insert(args.end(), op.nat_params[0], BinderArity{{}, t});
      return ConstructorArity{std::move(args), e};
    }
    return std::nullopt;
  };

  sig->sample_sorts = {v, t, e};
  for (std::uint64_t n = 0; n <= 2; n++) {
    sig->probe_ops.push_back(OpIndex{"sum", {}, {n}});
    sig->probe_ops.push_back(OpIndex{"tup", {}, {n}});
  }
  sig->probe_ops.push_back(OpIndex{"lam", {}, {}});
  return sig;
}

SignaturePtr make_typed_forests(const std::vector<std::string>& atoms) {
  if (atoms.empty())
    throw Error("typed-forests signature needs at least one atom");
  auto sig = std::make_shared<Signature>();
  sig->name = "typed-forests";
  auto atom_set = std::make_shared<std::unordered_set<std::string>>(
      atoms.begin(), atoms.end());
  Sort v = Sort::atom("v");
  Sort t = Sort::atom("t");
  Sort e = Sort::atom("e");

  // Sorts are pairs <simple type, category> with category one of v/t/e.
  sig->valid_sort = [atom_set, v, t, e](const Sort& s) {
    if (!s.is_pair()) return false;
    Sort cat = s.right();
    return simple_type_over(s.left(), *atom_set) &&
           (cat == v || cat == t || cat == e);
  };

  auto is_atom_of = [atom_set](const Sort& s) {
    return s.is_atom() && atom_set->count(s.atom_name()) > 0;
  };

  sig->arity = [atom_set, is_atom_of, v, t,
                e](const OpIndex& op) -> std::optional<ConstructorArity> {
    if (op.name == "lam" && op.sort_params.size() == 2 &&
        op.nat_params.empty()) {
      const Sort& s = op.sort_params[0];
      const Sort& u = op.sort_params[1];
      if (!simple_type_over(s, *atom_set) || !simple_type_over(u, *atom_set))
        return std::nullopt;
      return ConstructorArity{
          {BinderArity{{Sort::pair(s, v)}, Sort::pair(u, t)}},
          Sort::pair(Sort::arrow(s, u), t)};
    }
    if (op.name == "sum" && op.sort_params.size() == 1 &&
        op.nat_params.size() == 1) {
      const Sort& p = op.sort_params[0];
      if (!is_atom_of(p)) return std::nullopt;
      std::vector<BinderArity> args(op.nat_params[0],
                                    BinderArity{{}, Sort::pair(p, e)});
      return ConstructorArity{std::move(args), Sort::pair(p, t)};
    }
    if (op.name == "tup" && !op.sort_params.empty() &&
        op.nat_params.empty()) {
      // Index <[B1..Bk], p>: sort parameters are B1..Bk followed by p.
      const Sort& p = op.sort_params.back();
      if (!is_atom_of(p)) return std::nullopt;
      std::vector<Sort> bs(op.sort_params.begin(), op.sort_params.end() - 1);
      for (const Sort& b : bs)
        if (!simple_type_over(b, *atom_set)) return std::nullopt;
      // B = B1 => ... => Bk => p, parenthesized to the right.
      Sort head_type = p;
      for (auto it = bs.rbegin(); it != bs.rend(); ++it)
        head_type = Sort::arrow(*it, head_type);
      std::vector<BinderArity> args{BinderArity{{}, Sort::pair(head_type, v)}};
      for (const Sort& b : bs) args.push_back(BinderArity{{}, Sort::pair(b, t)});
      return ConstructorArity{std::move(args), Sort::pair(p, e)};
    }
    return std::nullopt;
  };

  auto types = type_pool(atoms);
  for (const Sort& ty : types) {
    sig->sample_sorts.push_back(Sort::pair(ty, v));
    sig->sample_sorts.push_back(Sort::pair(ty, t));
  }
  Sort p0 = Sort::atom(atoms[0]);
  sig->probe_ops = {
      OpIndex{"lam", {p0, p0}, {}},
      OpIndex{"lam", {Sort::arrow(p0, p0), p0}, {}},
      OpIndex{"sum", {p0}, {0}},
      OpIndex{"sum", {p0}, {1}},
      OpIndex{"sum", {p0}, {2}},
      OpIndex{"tup", {p0}, {}},
      OpIndex{"tup", {p0, p0}, {}},
      OpIndex{"tup", {Sort::arrow(p0, p0), p0}, {}},
  };
  return sig;
}

}  // namespace

SignaturePtr builtin_signature(const std::string& name,
                               const std::vector<std::string>& atoms) {
  if (name == "stlc") return make_stlc(atoms.empty() ? std::vector<std::string>{"0"} : atoms);
  if (name == "untyped-forests") return make_untyped_forests();
  if (name == "typed-forests")
    return make_typed_forests(atoms.empty() ? std::vector<std::string>{"0"} : atoms);
  throw Error("unknown built-in signature '" + name + "'");
}

}  // namespace cocalc
