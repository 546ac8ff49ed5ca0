#include "cocalc/inhabit.hpp"

#include <algorithm>
#include <set>

#include "cocalc/error.hpp"
#include "lexer.hpp"

namespace cocalc {

namespace {

SimpleType parse_type_tokens(detail::Lexer& lx) {
  SimpleType lhs = [&]() -> SimpleType {
    if (lx.eat_symbol("(")) {
      SimpleType inner = parse_type_tokens(lx);
      lx.expect_symbol(")");
      return inner;
    }
    return Sort::atom(lx.expect_ident("type atom"));
  }();
  if (lx.eat_symbol("->")) return Sort::arrow(lhs, parse_type_tokens(lx));
  return lhs;
}

}  // namespace

SimpleType parse_simple_type(std::string_view text) {
  detail::Lexer lx(text);
  SimpleType t = parse_type_tokens(lx);
  if (!lx.at_end()) lx.fail("expected end of type");
  return t;
}

std::vector<std::pair<std::string, SimpleType>> parse_typing_context(
    std::string_view text) {
  std::vector<std::pair<std::string, SimpleType>> entries;
  detail::Lexer lx(text);
  if (lx.at_end()) return entries;
  for (;;) {
    std::string name = lx.expect_ident("variable name");
    lx.expect_symbol(":");
    entries.emplace_back(name, parse_type_tokens(lx));
    if (!lx.eat_symbol(",")) break;
  }
  if (!lx.at_end()) lx.fail("expected end of context");
  return entries;
}

std::pair<std::vector<SimpleType>, std::string> type_spine(const SimpleType& a) {
  std::vector<SimpleType> args;
  SimpleType cur = a;
  while (cur.is_arrow()) {
    args.push_back(cur.left());
    cur = cur.right();
  }
  if (!cur.is_atom()) throw SortError("not a simple type: " + a.str());
  return {std::move(args), cur.atom_name()};
}

namespace {

void atoms_of(const SimpleType& a, std::set<std::string>& out) {
  if (a.is_atom()) {
    out.insert(a.atom_name());
    return;
  }
  atoms_of(a.left(), out);
  atoms_of(a.right(), out);
}

}  // namespace

std::vector<std::string> collect_atoms(const std::vector<SimpleType>& gamma,
                                       const SimpleType& a) {
  std::set<std::string> set;
  atoms_of(a, set);
  for (const auto& g : gamma) atoms_of(g, set);
  return {set.begin(), set.end()};
}

SignaturePtr forest_signature(const std::vector<std::string>& atoms,
                              const std::vector<Sort>& probed_sorts) {
  SignaturePtr sig = builtin_signature("typed-forests", atoms);
  for (const Sort& s : probed_sorts)
    if (!sig->valid_sort(s))
      throw SortError("probed sort " + s.str() +
                      " is not a typed-forest sort over the given atoms");
  return sig;
}

// ---------------------------------------------------------------------
// Forest generation

namespace {

const Sort kV = Sort::atom("v");
const Sort kT = Sort::atom("t");
const Sort kE = Sort::atom("e");

// Forest context of a typing context (newest first, variables sorted
// <type, v>).
Context forest_ctx(const std::vector<SimpleType>& newest_first) {
  Context out;
  out.reserve(newest_first.size());
  for (const auto& ty : newest_first) out.push_back(Sort::pair(ty, kV));
  return out;
}

// Search states: either "find terms of type a" or "spell out the
// elimination alternative headed by variable idx".
struct TGoal {
  std::vector<SimpleType> ctx;  // newest first
  SimpleType a;
};
struct EGoal {
  std::vector<SimpleType> ctx;
  std::size_t head;
  std::vector<SimpleType> head_args;
  std::string atom;
};
using Goal = std::variant<TGoal, EGoal>;

struct ForestGen {
  SignaturePtr sig;

  UnfoldLayer step(const Goal& goal) const {
    if (auto* t = std::get_if<TGoal>(&goal)) {
      if (t->a.is_arrow()) {
        SimpleType b = t->a.left(), c = t->a.right();
        std::vector<SimpleType> inner = t->ctx;
        inner.insert(inner.begin(), b);
        UnfoldCon layer{OpIndex{"lam", {b, c}, {}}, {}};
        layer.children.push_back(
            UnfoldSeed{Goal{TGoal{std::move(inner), c}},
                       forest_ctx(inner_ctx(t->ctx, b)), Sort::pair(c, kT)});
        return layer;
      }
      const std::string p = t->a.atom_name();
      UnfoldCon layer{OpIndex{"sum", {t->a}, {0}}, {}};
      // Alternatives in context order, oldest entry first.
      for (std::size_t i = t->ctx.size(); i-- > 0;) {
        auto [args, q] = type_spine(t->ctx[i]);
        if (q != p) continue;
        layer.children.push_back(
            UnfoldSeed{Goal{EGoal{t->ctx, i, std::move(args), p}},
                       forest_ctx(t->ctx), Sort::pair(t->a, kE)});
      }
      layer.op.nat_params[0] = layer.children.size();
      return layer;
    }
    const EGoal& e = std::get<EGoal>(goal);
    OpIndex op{"tup", e.head_args, {}};
    op.sort_params.push_back(Sort::atom(e.atom));
    UnfoldCon layer{std::move(op), {}};
    layer.children.push_back(
        UnfoldChild{var(sig, forest_ctx(e.ctx), e.head)});
    for (const SimpleType& b : e.head_args)
      layer.children.push_back(UnfoldSeed{Goal{TGoal{e.ctx, b}},
                                          forest_ctx(e.ctx),
                                          Sort::pair(b, kT)});
    return layer;
  }

  static std::vector<SimpleType> inner_ctx(const std::vector<SimpleType>& ctx,
                                           const SimpleType& b) {
    std::vector<SimpleType> out = ctx;
    out.insert(out.begin(), b);
    return out;
  }
};

}  // namespace

CoTerm generate_search_forest(const std::vector<SimpleType>& gamma,
                              const SimpleType& a) {
  SignaturePtr sig = forest_signature(collect_atoms(gamma, a));
  std::vector<SimpleType> newest_first(gamma.rbegin(), gamma.rend());
  auto gen = std::make_shared<ForestGen>(ForestGen{sig});
  Goal root = TGoal{newest_first, a};
  return unfold_coterm(
      sig, forest_ctx(newest_first), Sort::pair(a, kT), root,
      [gen](const std::any& state) -> UnfoldLayer {
        return gen->step(std::any_cast<const Goal&>(state));
      });
}

// ---------------------------------------------------------------------
// Reading inhabitants off the forest

namespace {

// Runs fn once per combination of indices below the given sizes,
// rightmost index fastest. The empty product has one (empty) combination;
// a zero size has none.
void for_each_combination(const std::vector<std::size_t>& sizes,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  for (std::size_t s : sizes)
    if (s == 0) return;
  std::vector<std::size_t> pick(sizes.size(), 0);
  for (;;) {
    fn(pick);
    std::size_t q = sizes.size();
    while (q > 0 && ++pick[q - 1] == sizes[q - 1]) pick[--q] = 0;
    if (q == 0) return;
  }
}

struct Harvest {
  SignaturePtr stlc;

  // Terms of type a in stlc_ctx (newest first), reading the forest node.
  std::vector<FinTerm> collect_t(const CoTerm& node, std::size_t fuel,
                                 const std::vector<SimpleType>& ctx) const {
    std::vector<FinTerm> out;
    if (fuel == 0) return out;
    const ConNode& c = std::get<ConNode>(node.out());
    if (c.op.name == "lam") {
      const SimpleType& b = c.op.sort_params[0];
      const SimpleType& t = c.op.sort_params[1];
      std::vector<SimpleType> inner = ctx;
      inner.insert(inner.begin(), b);
      for (const FinTerm& body : collect_t(c.args[0], fuel - 1, inner))
        out.push_back(fin_con(stlc, stlc_ctx(ctx),
                              OpIndex{"lam", {b, t}, {}}, {body}));
      return out;
    }
    // sum: each alternative is explored with one layer spent.
    for (const CoTerm& alt : c.args) {
      auto terms = collect_e(alt, fuel - 1, ctx);
      out.insert(out.end(), terms.begin(), terms.end());
    }
    return out;
  }

  std::vector<FinTerm> collect_e(const CoTerm& node, std::size_t fuel,
                                 const std::vector<SimpleType>& ctx) const {
    std::vector<FinTerm> out;
    if (fuel == 0) return out;
    const ConNode& c = std::get<ConNode>(node.out());
    const VarNode& head = std::get<VarNode>(c.args[0].out());
    // Constructor index carries B1..Bk followed by the target atom.
    std::size_t k = c.op.sort_params.size() - 1;
    std::vector<std::vector<FinTerm>> arg_terms;
    std::vector<std::size_t> sizes;
    for (std::size_t q = 0; q < k; q++) {
      arg_terms.push_back(collect_t(c.args[q + 1], fuel - 1, ctx));
      sizes.push_back(arg_terms.back().size());
    }
    for_each_combination(sizes, [&](const std::vector<std::size_t>& pick) {
      out.push_back(applied(ctx, head.index, arg_terms, pick));
    });
    return out;
  }

  // x N1 ... Nk as iterated application.
  FinTerm applied(const std::vector<SimpleType>& ctx, std::size_t head,
                  const std::vector<std::vector<FinTerm>>& arg_terms,
                  const std::vector<std::size_t>& pick) const {
    FinTerm term = fin_var(stlc, stlc_ctx(ctx), head);
    SimpleType ty = ctx[head];
    for (std::size_t q = 0; q < pick.size(); q++) {
      term = fin_con(stlc, stlc_ctx(ctx),
                     OpIndex{"app", {ty.left(), ty.right()}, {}},
                     {term, arg_terms[q][pick[q]]});
      ty = ty.right();
    }
    return term;
  }

  static Context stlc_ctx(const std::vector<SimpleType>& newest_first) {
    return Context(newest_first.begin(), newest_first.end());
  }
};

void sort_canonical(std::vector<FinTerm>& terms) {
  std::sort(terms.begin(), terms.end(), [](const FinTerm& a, const FinTerm& b) {
    std::string sa = a.str(), sb = b.str();
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return sa < sb;
  });
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

}  // namespace

std::vector<FinTerm> enumerate_inhabitants(const std::vector<SimpleType>& gamma,
                                           const SimpleType& a,
                                           std::size_t fuel) {
  CoTerm forest = generate_search_forest(gamma, a);
  SignaturePtr stlc = builtin_signature("stlc", collect_atoms(gamma, a));
  std::vector<SimpleType> newest_first(gamma.rbegin(), gamma.rend());
  Harvest h{stlc};
  std::vector<FinTerm> out = h.collect_t(forest, fuel, newest_first);
  sort_canonical(out);
  return out;
}

// ---------------------------------------------------------------------
// Independent oracle: direct recursive search over the typing rules.

namespace {

struct Oracle {
  SignaturePtr stlc;

  std::vector<FinTerm> search(const std::vector<SimpleType>& ctx,
                              const SimpleType& a, std::size_t fuel) const {
    std::vector<FinTerm> out;
    if (a.is_arrow()) {
      if (fuel == 0) return out;
      std::vector<SimpleType> inner = ctx;
      inner.insert(inner.begin(), a.left());
      for (const FinTerm& body : search(inner, a.right(), fuel - 1))
        out.push_back(fin_con(stlc, Context(ctx.begin(), ctx.end()),
                              OpIndex{"lam", {a.left(), a.right()}, {}},
                              {body}));
      return out;
    }
    // Atom: one sum layer, then one tuple layer per usable variable.
    if (fuel < 2) return out;
    const std::string p = a.atom_name();
    for (std::size_t i = ctx.size(); i-- > 0;) {
      auto [args, q] = type_spine(ctx[i]);
      if (q != p) continue;
      std::vector<std::vector<FinTerm>> choices;
      std::vector<std::size_t> sizes;
      for (const SimpleType& b : args) {
        choices.push_back(search(ctx, b, fuel - 2));
        sizes.push_back(choices.back().size());
      }
      for_each_combination(sizes, [&](const std::vector<std::size_t>& pick) {
        FinTerm term = fin_var(stlc, Context(ctx.begin(), ctx.end()), i);
        SimpleType ty = ctx[i];
        for (std::size_t qq = 0; qq < pick.size(); qq++) {
          term = fin_con(stlc, Context(ctx.begin(), ctx.end()),
                         OpIndex{"app", {ty.left(), ty.right()}, {}},
                         {term, choices[qq][pick[qq]]});
          ty = ty.right();
        }
        out.push_back(std::move(term));
      });
    }
    return out;
  }
};

}  // namespace

std::vector<FinTerm> oracle_enumerate(const std::vector<SimpleType>& gamma,
                                      const SimpleType& a, std::size_t fuel) {
  SignaturePtr stlc = builtin_signature("stlc", collect_atoms(gamma, a));
  std::vector<SimpleType> newest_first(gamma.rbegin(), gamma.rend());
  Oracle o{stlc};
  std::vector<FinTerm> out = o.search(newest_first, a, fuel);
  sort_canonical(out);
  return out;
}

}  // namespace cocalc
