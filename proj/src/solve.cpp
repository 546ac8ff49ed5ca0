#include <mutex>
#include <unordered_map>

#include "cocalc/coterm.hpp"
#include "cocalc/error.hpp"
#include "cocalc/subst.hpp"
#include "coterm_impl.hpp"

namespace cocalc {

using detail::CoTermAccess;

// ---------------------------------------------------------------------
// EquationSystem

EquationSystem::EquationSystem(SignaturePtr sig, std::vector<Unknown> unknowns)
    : sig_(std::move(sig)), unknowns_(std::move(unknowns)) {
  for (std::size_t i = 0; i < unknowns_.size(); i++)
    for (std::size_t j = i + 1; j < unknowns_.size(); j++)
      if (unknowns_[i].name == unknowns_[j].name)
        throw Error("duplicate unknown '" + unknowns_[i].name + "'");
}

const Unknown* EquationSystem::find(const std::string& name) const {
  for (const Unknown& u : unknowns_)
    if (u.name == name) return &u;
  return nullptr;
}

const Unknown& EquationSystem::unknown(const std::string& name) const {
  const Unknown* u = find(name);
  if (!u) throw Error("no unknown named '" + name + "'");
  return *u;
}

namespace {

void check_preterm(const EquationSystem& es, const Unknown& host,
                   const PreTerm& pre, const Context& ctx, const Sort& sort,
                   bool guarded, const std::string& path) {
  auto at = [&](const std::string& msg) {
    return "unknown '" + host.name + "' at " + (path.empty() ? "<rhs>" : path) +
           ": " + msg;
  };
  if (auto* v = std::get_if<PVar>(&pre.node)) {
    if (v->index >= ctx.size())
      throw SortError(at("variable index out of range"));
    if (ctx[v->index] != sort)
      throw SortError(at("variable of sort " + ctx[v->index].str() +
                         " where " + sort.str() + " is required"));
    return;
  }
  if (auto* c = std::get_if<PCon>(&pre.node)) {
    auto arity = es.sig()->arity(c->op);
    if (!arity) throw SortError(at("'" + c->op.str() + "' is not a constructor"));
    if (arity->target != sort)
      throw SortError(at("'" + c->op.str() + "' constructs " +
                         arity->target.str() + " where " + sort.str() +
                         " is required"));
    if (arity->args.size() != c->args.size())
      throw SortError(at("'" + c->op.str() + "' expects " +
                         std::to_string(arity->args.size()) +
                         " arguments, got " + std::to_string(c->args.size())));
    for (std::size_t j = 0; j < c->args.size(); j++)
      check_preterm(es, host, c->args[j], extend(arity->args[j].bound, ctx),
                    arity->args[j].arg_sort, true,
                    path + "/" + std::to_string(j));
    return;
  }
  if (auto* r = std::get_if<PRef>(&pre.node)) {
    if (!guarded)
      throw GuardednessError(at("reference to '" + r->unknown +
                                "' is not guarded by any constructor"));
    const Unknown* u = es.find(r->unknown);
    if (!u) throw SortError(at("reference to undefined unknown '" + r->unknown + "'"));
    r->ren.check();
    if (r->ren.source != u->ctx)
      throw SortError(at("renaming source does not match declared context of '" +
                         r->unknown + "'"));
    if (r->ren.target != ctx)
      throw SortError(at("renaming target does not match local context"));
    if (u->sort != sort)
      throw SortError(at("'" + r->unknown + "' has sort " + u->sort.str() +
                         " where " + sort.str() + " is required"));
    return;
  }
  const PEmbed& e = std::get<PEmbed>(pre.node);
  if (!e.term) throw SortError(at("embedded coterm is empty"));
  if (e.term.sig() != es.sig())
    throw SortError(at("embedded coterm belongs to a different signature"));
  e.ren.check();
  if (e.ren.source != e.term.ctx())
    throw SortError(at("renaming source does not match embedded coterm context"));
  if (e.ren.target != ctx)
    throw SortError(at("renaming target does not match local context"));
  if (e.term.sort() != sort)
    throw SortError(at("embedded coterm has sort " + e.term.sort().str() +
                       " where " + sort.str() + " is required"));
}

}  // namespace

void EquationSystem::check() const {
  for (const Unknown& u : unknowns_)
    check_preterm(*this, u, u.rhs, u.ctx, u.sort, false, "");
}

// ---------------------------------------------------------------------
// solve

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct RefKey {
  std::size_t unknown;
  std::vector<std::size_t> map;
  Context target;

  bool operator==(const RefKey& other) const {
    return unknown == other.unknown && map == other.map &&
           target == other.target;
  }
};

struct RefKeyHash {
  std::size_t operator()(const RefKey& k) const {
    std::size_t h = k.unknown;
    for (auto m : k.map) h = combine(h, m);
    return combine(h, hash_sorts(k.target));
  }
};

// Shared across one solution. References with equal (unknown, renaming)
// share a node, so the forced portion of a rational term stays a finite
// graph. Cache values are weak; back-edges among nodes keep a solved
// island alive as long as any handle into it lives.
struct SolveStore {
  std::shared_ptr<const EquationSystem> es;
  std::mutex mu;
  std::unordered_map<RefKey, std::weak_ptr<detail::CoTermImpl>, RefKeyHash>
      cache;
};

CoTerm solve_ref(const std::shared_ptr<SolveStore>& store, std::size_t u_idx,
                 const ContextMorphism& ren);

// Interprets a right-hand side under ren : (local ctx) -> (output ctx).
CoTerm solve_interpret(const std::shared_ptr<SolveStore>& store,
                       const PreTerm& pre, const ContextMorphism& ren,
                       const Sort& sort) {
  const EquationSystem& es = *store->es;
  if (auto* v = std::get_if<PVar>(&pre.node))
    return var(es.sig(), ren.target, ren(v->index));
  if (auto* c = std::get_if<PCon>(&pre.node)) {
    auto arity = es.sig()->arity(c->op);
    std::vector<CoTerm> args;
    args.reserve(c->args.size());
    for (std::size_t j = 0; j < c->args.size(); j++)
      args.push_back(solve_interpret(store, c->args[j],
                                     ren.lifted(arity->args[j].bound),
                                     arity->args[j].arg_sort));
    return con(es.sig(), ren.target, c->op, std::move(args));
  }
  if (auto* r = std::get_if<PRef>(&pre.node)) {
    std::size_t idx = 0;
    while (es.unknowns()[idx].name != r->unknown) idx++;
    return solve_ref(store, idx, r->ren.then(ren));
  }
  const PEmbed& e = std::get<PEmbed>(pre.node);
  return rename(e.ren.then(ren), e.term);
}

CoTerm solve_ref(const std::shared_ptr<SolveStore>& store, std::size_t u_idx,
                 const ContextMorphism& ren) {
  RefKey key{u_idx, ren.map, ren.target};
  std::lock_guard<std::mutex> lock(store->mu);
  auto it = store->cache.find(key);
  if (it != store->cache.end())
    if (auto impl = it->second.lock()) return CoTermAccess::make(impl);

  const Unknown& u = store->es->unknowns()[u_idx];
  CoTerm node = CoTermAccess::lazy(
      store->es->sig(), ren.target, u.sort, [store, u_idx, ren]() -> Node {
        const Unknown& uu = store->es->unknowns()[u_idx];
        return solve_interpret(store, uu.rhs, ren, uu.sort).out();
      });
  store->cache[key] = CoTermAccess::impl(node);
  return node;
}

}  // namespace

Solution solve(const EquationSystem& es) {
  es.check();
  auto store = std::make_shared<SolveStore>();
  store->es = std::make_shared<EquationSystem>(es);
  Solution sol;
  for (std::size_t i = 0; i < es.unknowns().size(); i++) {
    const Unknown& u = es.unknowns()[i];
    CoTerm root = solve_ref(store, i, ContextMorphism::identity(u.ctx));
    CoTermAccess::impl(root)->origin =
        std::make_shared<SolveOrigin>(SolveOrigin{store->es, u.name});
    sol.emplace(u.name, root);
  }
  return sol;
}

CoTerm interpret(const EquationSystem& es, const PreTerm& pre,
                 const Context& ctx, const Sort& sort, const Solution& sol) {
  if (auto* v = std::get_if<PVar>(&pre.node)) return var(es.sig(), ctx, v->index);
  if (auto* c = std::get_if<PCon>(&pre.node)) {
    auto arity = es.sig()->arity(c->op);
    if (!arity) throw SortError("'" + c->op.str() + "' is not a constructor");
    std::vector<CoTerm> args;
    args.reserve(c->args.size());
    for (std::size_t j = 0; j < c->args.size(); j++)
      args.push_back(interpret(es, c->args[j],
                               extend(arity->args[j].bound, ctx),
                               arity->args[j].arg_sort, sol));
    return con(es.sig(), ctx, c->op, std::move(args));
  }
  if (auto* r = std::get_if<PRef>(&pre.node))
    return rename(r->ren, sol.at(r->unknown));
  const PEmbed& e = std::get<PEmbed>(pre.node);
  return rename(e.ren, e.term);
}

std::optional<SolveOrigin> rational_provenance(const CoTerm& t) {
  const auto& impl = CoTermAccess::impl(t);
  if (!impl || !impl->origin) return std::nullopt;
  return *impl->origin;
}

}  // namespace cocalc
