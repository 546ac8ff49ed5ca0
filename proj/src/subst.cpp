#include "cocalc/subst.hpp"

#include <mutex>
#include <unordered_map>

#include "cocalc/error.hpp"
#include "coterm_impl.hpp"

namespace cocalc {

using detail::CoTermAccess;

struct Substitution::Rep {
  SignaturePtr sig;
  Context source;
  Context target;
  std::vector<CoTerm> assign;
};

Substitution::Substitution(SignaturePtr sig, Context source, Context target,
                           std::vector<CoTerm> assign) {
  if (assign.size() != source.size())
    throw SortError("substitution: " + std::to_string(assign.size()) +
                    " assignments for a context of size " +
                    std::to_string(source.size()));
  for (std::size_t i = 0; i < assign.size(); i++) {
    const CoTerm& t = assign[i];
    if (!t) throw SortError("substitution: assignment " + std::to_string(i) + " is empty");
    if (t.sig() != sig)
      throw SortError("substitution: assignment " + std::to_string(i) +
                      " belongs to a different signature");
    if (t.ctx() != target)
      throw SortError("substitution: assignment " + std::to_string(i) +
                      " lives in the wrong context");
    if (t.sort() != source[i])
      throw SortError("substitution: assignment " + std::to_string(i) +
                      " has sort " + t.sort().str() + ", expected " +
                      source[i].str());
  }
  auto rep = std::make_shared<Rep>();
  rep->sig = std::move(sig);
  rep->source = std::move(source);
  rep->target = std::move(target);
  rep->assign = std::move(assign);
  rep_ = std::move(rep);
}

Substitution Substitution::identity(SignaturePtr sig, const Context& ctx) {
  std::vector<CoTerm> assign;
  assign.reserve(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); i++) assign.push_back(var(sig, ctx, i));
  return Substitution(std::move(sig), ctx, ctx, std::move(assign));
}

const SignaturePtr& Substitution::sig() const { return rep_->sig; }
const Context& Substitution::source() const { return rep_->source; }
const Context& Substitution::target() const { return rep_->target; }
const CoTerm& Substitution::assign(std::size_t i) const {
  return rep_->assign.at(i);
}
const void* Substitution::id() const { return rep_.get(); }

// ---------------------------------------------------------------------
// rename

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct RenKey {
  std::vector<std::size_t> map;
  Context target;
  const void* term;

  bool operator==(const RenKey& other) const {
    return term == other.term && map == other.map && target == other.target;
  }
};

struct RenKeyHash {
  std::size_t operator()(const RenKey& k) const {
    std::size_t h = std::hash<const void*>{}(k.term);
    for (auto m : k.map) h = combine(h, m);
    return combine(h, hash_sorts(k.target));
  }
};

// Per top-level rename call; equal (renaming, node) pairs share a result
// node so renamed rational graphs stay finite.
struct RenameStore {
  std::mutex mu;
  std::unordered_map<RenKey, std::weak_ptr<detail::CoTermImpl>, RenKeyHash>
      cache;
};

CoTerm rename_node(const std::shared_ptr<RenameStore>& store,
                   const ContextMorphism& rho, const CoTerm& t) {
  RenKey key{rho.map, rho.target, t.id()};
  std::lock_guard<std::mutex> lock(store->mu);
  auto it = store->cache.find(key);
  if (it != store->cache.end())
    if (auto impl = it->second.lock()) return CoTermAccess::make(impl);

  CoTerm node = CoTermAccess::lazy(
      t.sig(), rho.target, t.sort(), [store, rho, t]() -> Node {
        const Node& n = t.out();
        if (auto* v = std::get_if<VarNode>(&n)) return Node{VarNode{rho(v->index)}};
        const ConNode& c = std::get<ConNode>(n);
        auto arity = t.sig()->arity(c.op);
        std::vector<CoTerm> args;
        args.reserve(c.args.size());
        for (std::size_t j = 0; j < c.args.size(); j++)
          args.push_back(rename_node(store, rho.lifted(arity->args[j].bound),
                                     c.args[j]));
        return Node{ConNode{c.op, std::move(args)}};
      });
  store->cache[key] = CoTermAccess::impl(node);
  return node;
}

}  // namespace

CoTerm rename(const ContextMorphism& rho, const CoTerm& t) {
  if (!t) throw SortError("rename: empty coterm");
  rho.check();
  if (t.ctx() != rho.source)
    throw SortError("rename: coterm context does not match renaming source");
  return rename_node(std::make_shared<RenameStore>(), rho, t);
}

CoTerm weaken(const std::vector<Sort>& prefix, const CoTerm& t) {
  return rename(ContextMorphism::weakening(prefix, t.ctx()), t);
}

// ---------------------------------------------------------------------
// lift

Substitution lift(const Substitution& sigma, const std::vector<Sort>& binders) {
  if (binders.empty()) return sigma;
  Context source = extend(binders, sigma.source());
  Context target = extend(binders, sigma.target());
  std::vector<CoTerm> assign;
  assign.reserve(source.size());
  for (std::size_t i = 0; i < binders.size(); i++)
    assign.push_back(var(sigma.sig(), target, i));
  for (std::size_t i = 0; i < sigma.source().size(); i++)
    assign.push_back(weaken(binders, sigma.assign(i)));
  return Substitution(sigma.sig(), std::move(source), std::move(target),
                      std::move(assign));
}

// ---------------------------------------------------------------------
// bind

namespace {

struct BindKey {
  const void* subst;
  const void* term;
  bool operator==(const BindKey& other) const {
    return subst == other.subst && term == other.term;
  }
};

struct BindKeyHash {
  std::size_t operator()(const BindKey& k) const {
    return combine(std::hash<const void*>{}(k.subst),
                   std::hash<const void*>{}(k.term));
  }
};

struct BindStore {
  std::mutex mu;
  std::unordered_map<BindKey, std::weak_ptr<detail::CoTermImpl>, BindKeyHash>
      cache;
};

CoTerm bind_node(const std::shared_ptr<BindStore>& store,
                 const Substitution& sigma, const CoTerm& t) {
  BindKey key{sigma.id(), t.id()};
  std::lock_guard<std::mutex> lock(store->mu);
  auto it = store->cache.find(key);
  if (it != store->cache.end())
    if (auto impl = it->second.lock()) return CoTermAccess::make(impl);

  CoTerm node = CoTermAccess::lazy(
      t.sig(), sigma.target(), t.sort(), [store, sigma, t]() -> Node {
        const Node& n = t.out();
        if (auto* v = std::get_if<VarNode>(&n)) return sigma.assign(v->index).out();
        const ConNode& c = std::get<ConNode>(n);
        auto arity = t.sig()->arity(c.op);
        std::vector<CoTerm> args;
        args.reserve(c.args.size());
        for (std::size_t j = 0; j < c.args.size(); j++)
          args.push_back(bind_node(store, lift(sigma, arity->args[j].bound),
                                   c.args[j]));
        return Node{ConNode{c.op, std::move(args)}};
      });
  store->cache[key] = CoTermAccess::impl(node);
  return node;
}

}  // namespace

CoTerm bind(const Substitution& sigma, const CoTerm& t) {
  if (!t) throw SortError("bind: empty coterm");
  if (t.sig() != sigma.sig())
    throw SortError("bind: coterm and substitution signatures differ");
  if (t.ctx() != sigma.source())
    throw SortError("bind: coterm context does not match substitution source");
  return bind_node(std::make_shared<BindStore>(), sigma, t);
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  if (inner.target() != outer.source())
    throw SortError("compose: inner target does not match outer source");
  std::vector<CoTerm> assign;
  assign.reserve(inner.source().size());
  for (std::size_t i = 0; i < inner.source().size(); i++)
    assign.push_back(bind(outer, inner.assign(i)));
  return Substitution(outer.sig(), inner.source(), outer.target(),
                      std::move(assign));
}

Substitution precompose(const Substitution& sigma, const ContextMorphism& rho) {
  if (rho.target != sigma.source())
    throw SortError("precompose: renaming target does not match substitution source");
  std::vector<CoTerm> assign;
  assign.reserve(rho.source.size());
  for (std::size_t i = 0; i < rho.source.size(); i++)
    assign.push_back(sigma.assign(rho(i)));
  return Substitution(sigma.sig(), rho.source, sigma.target(),
                      std::move(assign));
}

}  // namespace cocalc
