#include "cocalc/random.hpp"

#include <algorithm>

#include "cocalc/error.hpp"

namespace cocalc {

TermGen::TermGen(SignaturePtr sig, std::uint64_t seed)
    : sig_(std::move(sig)), rng_(seed) {
  if (sig_->sample_sorts.empty() || sig_->probe_ops.empty())
    throw Error("signature '" + sig_->name +
                "' has no probe pools for random generation");
}

std::uint64_t TermGen::pick(std::uint64_t n) { return n ? rng_() % n : 0; }

Sort TermGen::random_sort() {
  return sig_->sample_sorts[pick(sig_->sample_sorts.size())];
}

Context TermGen::random_context(const Sort& must_have, std::size_t extra) {
  Context ctx;
  for (std::size_t i = 0; i < extra; i++) ctx.push_back(random_sort());
  ctx.push_back(must_have);
  // The first pool sort keeps leaf positions feasible (a variable sort in
  // the forest signatures, the base atom for stlc).
  ctx.push_back(sig_->sample_sorts[0]);
  if (pick(2)) ctx.push_back(random_sort());
  return ctx;
}

std::vector<OpIndex> TermGen::ops_by_target(const Sort& sort) const {
  std::vector<OpIndex> out;
  for (const OpIndex& op : sig_->probe_ops) {
    auto arity = sig_->arity(op);
    if (arity && arity->target == sort) out.push_back(op);
  }
  return out;
}

struct TermGen::RhsState {
  const GenOptions* opt;
  // Unknowns available for references (name, ctx, sort).
  const std::vector<Unknown>* unknowns;
  bool made_ref = false;
};

// Renaming of `from` into `to` by matching sorts; nullopt when some sort
// of `from` is missing in `to`.
static std::optional<ContextMorphism> random_renaming(TermGen& gen,
                                                      const Context& from,
                                                      const Context& to) {
  ContextMorphism m{from, to, {}};
  m.map.resize(from.size());
  for (std::size_t i = 0; i < from.size(); i++) {
    std::vector<std::size_t> spots;
    for (std::size_t j = 0; j < to.size(); j++)
      if (to[j] == from[i]) spots.push_back(j);
    if (spots.empty()) return std::nullopt;
    m.map[i] = spots[gen.pick(spots.size())];
  }
  return m;
}

PreTerm TermGen::random_preterm(RhsState& st, const Context& local,
                                const Sort& sort, std::size_t depth,
                                std::size_t binders, bool guarded) {
  // Move kinds: 0 = var, 1 = ref, 2 = con, 3 = embed. Weighted so that
  // references and constructors dominate while depth lasts.
  std::vector<std::size_t> var_spots;
  for (std::size_t i = 0; i < local.size(); i++)
    if (local[i] == sort) var_spots.push_back(i);

  bool refs_ok = guarded && (st.opt->refs_under_binders || binders == 0);
  std::vector<std::pair<std::string, ContextMorphism>> ref_choices;
  if (refs_ok) {
    for (const Unknown& u : *st.unknowns) {
      if (u.sort != sort) continue;
      if (auto ren = random_renaming(*this, u.ctx, local))
        ref_choices.emplace_back(u.name, *ren);
    }
  }

  std::vector<OpIndex> cons = depth > 0 ? ops_by_target(sort) : std::vector<OpIndex>{};

  // Nullary constructors still work at depth 0.
  if (depth == 0) {
    for (const OpIndex& op : ops_by_target(sort)) {
      auto arity = sig_->arity(op);
      if (arity->args.empty()) cons.push_back(op);
    }
  }

  std::vector<int> moves;
  for (std::size_t i = 0; i < var_spots.size(); i++) moves.push_back(0);
  // References get extra weight so cycles actually happen.
  for (std::size_t i = 0; i < 3 * ref_choices.size(); i++) moves.push_back(1);
  for (std::size_t i = 0; i < 2 * cons.size(); i++) moves.push_back(2);
  if (st.opt->allow_embed && !var_spots.empty()) moves.push_back(3);

  if (moves.empty()) {
    // Dead end; try one constructor anyway (may recurse below depth 0
    // only through nullary arguments) or give up.
    throw Error("random_preterm: no move at sort " + sort.str());
  }

  switch (moves[pick(moves.size())]) {
    case 0:
      return PreTerm{PVar{var_spots[pick(var_spots.size())]}};
    case 1: {
      auto& [name, ren] = ref_choices[pick(ref_choices.size())];
      st.made_ref = true;
      return PreTerm{PRef{name, ren}};
    }
    case 3: {
      // Embed a small finite term over the local context.
      FinTerm ft = random_finterm(local, sort, depth);
      return PreTerm{PEmbed{embed(ft), ContextMorphism::identity(local)}};
    }
    default: {
      const OpIndex& op = cons[pick(cons.size())];
      auto arity = sig_->arity(op);
      PCon pc{op, {}};
      for (const BinderArity& a : arity->args) {
        Context inner = extend(a.bound, local);
        pc.args.push_back(random_preterm(st, inner, a.arg_sort,
                                         depth == 0 ? 0 : depth - 1,
                                         binders + a.bound.size(), true));
      }
      return PreTerm{std::move(pc)};
    }
  }
}

EquationSystem TermGen::random_system(const Context& ctx, const Sort& sort,
                                      const GenOptions& opt) {
  for (int attempt = 0; attempt < 64; attempt++) {
    std::vector<Unknown> unknowns;
    std::size_t n = 1 + pick(opt.max_unknowns);
    unknowns.push_back(Unknown{"X0", ctx, sort, PreTerm{PVar{0}}});
    for (std::size_t i = 1; i < n; i++) {
      Sort s = random_sort();
      unknowns.push_back(Unknown{"X" + std::to_string(i),
                                 random_context(s, pick(opt.max_extra_ctx + 1)),
                                 s, PreTerm{PVar{0}}});
    }
    try {
      RhsState st{&opt, &unknowns, false};
      for (Unknown& u : unknowns)
        u.rhs = random_preterm(st, u.ctx, u.sort, 1 + pick(opt.max_rhs_depth),
                               0, false);
      EquationSystem es(sig_, std::move(unknowns));
      es.check();
      return es;
    } catch (const Error&) {
      // dead end; redraw
    }
  }
  throw Error("random_system: could not generate a system over signature " +
              sig_->name);
}

CoTerm TermGen::random_rational(const Context& ctx, const Sort& sort,
                                const GenOptions& opt) {
  EquationSystem es = random_system(ctx, sort, opt);
  return solve(es).at("X0");
}

Substitution TermGen::random_substitution(const Context& source,
                                          const GenOptions& opt) {
  // Target shares the source sorts so variables are always available.
  Context target = source;
  for (std::size_t i = 0; i < pick(opt.max_extra_ctx + 1); i++)
    target.insert(target.begin(), random_sort());
  std::vector<CoTerm> assign;
  assign.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); i++) {
    if (pick(2) == 0) {
      // Some variable of the right sort.
      std::vector<std::size_t> spots;
      for (std::size_t j = 0; j < target.size(); j++)
        if (target[j] == source[i]) spots.push_back(j);
      assign.push_back(var(sig_, target, spots[pick(spots.size())]));
    } else {
      GenOptions small = opt;
      small.max_unknowns = 2;
      small.max_rhs_depth = 2;
      assign.push_back(random_rational(target, source[i], small));
    }
  }
  return Substitution(sig_, source, target, std::move(assign));
}

FinTerm TermGen::random_finterm(const Context& ctx, const Sort& sort,
                                std::size_t depth) {
  std::vector<std::size_t> var_spots;
  for (std::size_t i = 0; i < ctx.size(); i++)
    if (ctx[i] == sort) var_spots.push_back(i);
  std::vector<OpIndex> cons = depth > 0 ? ops_by_target(sort) : std::vector<OpIndex>{};

  std::vector<int> moves;
  for (std::size_t i = 0; i < 2 * var_spots.size(); i++) moves.push_back(0);
  for (std::size_t i = 0; i < cons.size(); i++) moves.push_back(1);
  if (moves.empty())
    throw Error("random_finterm: no move at sort " + sort.str());

  if (moves[pick(moves.size())] == 0)
    return fin_var(sig_, ctx, var_spots[pick(var_spots.size())]);

  const OpIndex& op = cons[pick(cons.size())];
  auto arity = sig_->arity(op);
  std::vector<FinTerm> args;
  for (const BinderArity& a : arity->args)
    args.push_back(random_finterm(extend(a.bound, ctx), a.arg_sort, depth - 1));
  return fin_con(sig_, ctx, op, std::move(args));
}

}  // namespace cocalc
