#include "cocalc/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "cocalc/error.hpp"

namespace cocalc {

// ---------------------------------------------------------------------
// Depth-bounded bisimilarity

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct PairKey {
  const void* a;
  const void* b;
  bool operator==(const PairKey& other) const {
    return a == other.a && b == other.b;
  }
};
struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const {
    return combine(std::hash<const void*>{}(k.a),
                   std::hash<const void*>{}(k.b));
  }
};

// verified[pair] = depth up to which the pair is known equal; makes deep
// comparisons of shared rational graphs polynomial instead of following
// every path.
using Verified = std::unordered_map<PairKey, std::size_t, PairKeyHash>;

bool bisim_rec(const CoTerm& a, const CoTerm& b, std::size_t depth,
               Verified& verified) {
  if (a.id() == b.id()) return true;
  if (depth == 0) return true;
  PairKey key{a.id(), b.id()};
  auto it = verified.find(key);
  if (it != verified.end() && it->second >= depth) return true;

  const Node& na = a.out();
  const Node& nb = b.out();
  if (na.index() != nb.index()) return false;
  if (auto* va = std::get_if<VarNode>(&na)) {
    if (va->index != std::get<VarNode>(nb).index) return false;
  } else {
    const ConNode& ca = std::get<ConNode>(na);
    const ConNode& cb = std::get<ConNode>(nb);
    if (ca.op != cb.op) return false;
    for (std::size_t j = 0; j < ca.args.size(); j++)
      if (!bisim_rec(ca.args[j], cb.args[j], depth - 1, verified)) return false;
  }
  auto& slot = verified[key];
  slot = std::max(slot, depth);
  return true;
}

}  // namespace

bool bisim_to_depth(const CoTerm& a, const CoTerm& b, std::size_t depth) {
  if (!a || !b) return false;
  if (a.sig() != b.sig() || a.ctx() != b.ctx() || a.sort() != b.sort())
    return false;
  Verified verified;
  return bisim_rec(a, b, depth, verified);
}

// ---------------------------------------------------------------------
// Exact bisimilarity of rational terms

RationalHandle RationalHandle::of(const CoTerm& t) {
  auto origin = rational_provenance(t);
  if (!origin) throw Error("coterm carries no rational provenance");
  return RationalHandle{t, origin->system, origin->unknown};
}

RationalHandle RationalHandle::make(const EquationSystem& es,
                                    const std::string& unknown) {
  Solution sol = solve(es);
  auto it = sol.find(unknown);
  if (it == sol.end()) throw Error("no unknown named '" + unknown + "'");
  return RationalHandle::of(it->second);
}

namespace {

// Flattened presentation: every constructor occurrence of every
// right-hand side is a node; references carry an explicit renaming of the
// node's declared context into the referring position's context.
struct FlatChild {
  enum class Kind { Var, Node } kind;
  std::size_t var = 0;                // Kind::Var
  std::size_t node = 0;               // Kind::Node
  std::vector<std::size_t> ren;       // node ctx -> local ctx
};

struct FlatNode {
  OpIndex op;
  std::vector<std::vector<Sort>> bound;  // binder list per child slot
  std::vector<FlatChild> children;
};

struct FlatGraph {
  std::vector<FlatNode> nodes;
};

struct Flattener {
  FlatGraph graph;
  // Roots of already-imported unknowns, keyed by (system, unknown).
  std::map<std::pair<const EquationSystem*, std::string>, FlatChild> roots;
  std::vector<std::pair<const EquationSystem*, std::string>> embed_chain;

  static FlatChild compose(const FlatChild& c,
                           const std::vector<std::size_t>& after) {
    FlatChild out = c;
    if (out.kind == FlatChild::Kind::Var) {
      out.var = after.at(out.var);
    } else {
      for (auto& m : out.ren) m = after.at(m);
    }
    return out;
  }

  // A right-hand-side head is never a PRef (guardedness), so a root can
  // be registered before its children are filled; mutual guarded
  // references then resolve through the memo.
  FlatChild root_of(const EquationSystem& es, const std::string& unknown) {
    auto key = std::make_pair(&es, unknown);
    auto it = roots.find(key);
    if (it != roots.end()) return it->second;
    const Unknown& u = es.unknown(unknown);
    if (auto* v = std::get_if<PVar>(&u.rhs.node)) {
      FlatChild root{FlatChild::Kind::Var, v->index, 0, {}};
      roots.emplace(key, root);
      return root;
    }
    if (auto* c = std::get_if<PCon>(&u.rhs.node)) {
      std::size_t id = graph.nodes.size();
      graph.nodes.push_back(FlatNode{c->op, {}, {}});
      std::vector<std::size_t> id_ren(u.ctx.size());
      for (std::size_t i = 0; i < u.ctx.size(); i++) id_ren[i] = i;
      FlatChild root{FlatChild::Kind::Node, 0, id, std::move(id_ren)};
      roots.emplace(key, root);
      fill_node(id, es, *c, u.ctx);
      return root;
    }
    const PEmbed& e = std::get<PEmbed>(u.rhs.node);
    for (const auto& p : embed_chain)
      if (p == key) throw Error("bisim_rational: cyclic embedding chain");
    embed_chain.push_back(key);
    FlatChild root = compose(embedded_root(e.term), e.ren.map);
    embed_chain.pop_back();
    roots.emplace(key, root);
    return root;
  }

  FlatChild embedded_root(const CoTerm& t) {
    auto origin = rational_provenance(t);
    if (!origin)
      throw Error(
          "bisim_rational: embedded coterm has no rational provenance; "
          "exact bisimilarity is only decided on finite presentations");
    return root_of(*origin->system, origin->unknown);
  }

  void fill_node(std::size_t id, const EquationSystem& es, const PCon& c,
                 const Context& local) {
    auto arity = es.sig()->arity(c.op);
    std::vector<std::vector<Sort>> bound;
    std::vector<FlatChild> children;
    for (std::size_t j = 0; j < c.args.size(); j++) {
      bound.push_back(arity->args[j].bound);
      children.push_back(
          flatten(es, c.args[j], extend(arity->args[j].bound, local)));
    }
    graph.nodes[id].bound = std::move(bound);
    graph.nodes[id].children = std::move(children);
  }

  FlatChild flatten(const EquationSystem& es, const PreTerm& pre,
                    const Context& local) {
    if (auto* v = std::get_if<PVar>(&pre.node))
      return FlatChild{FlatChild::Kind::Var, v->index, 0, {}};
    if (auto* c = std::get_if<PCon>(&pre.node)) {
      std::size_t id = graph.nodes.size();
      graph.nodes.push_back(FlatNode{c->op, {}, {}});
      fill_node(id, es, *c, local);
      std::vector<std::size_t> id_ren(local.size());
      for (std::size_t i = 0; i < local.size(); i++) id_ren[i] = i;
      return FlatChild{FlatChild::Kind::Node, 0, id, std::move(id_ren)};
    }
    if (auto* r = std::get_if<PRef>(&pre.node))
      return compose(root_of(es, r->unknown), r->ren.map);
    const PEmbed& e = std::get<PEmbed>(pre.node);
    return compose(embedded_root(e.term), e.ren.map);
  }
};

using Rel = std::vector<std::pair<std::size_t, std::size_t>>;  // sorted

Rel lift_rel(const Rel& rel, std::size_t n) {
  Rel out;
  out.reserve(rel.size() + n);
  for (std::size_t k = 0; k < n; k++) out.emplace_back(k, k);
  for (auto [i, j] : rel) out.emplace_back(i + n, j + n);
  return out;
}

bool rel_has(const Rel& rel, std::size_t i, std::size_t j) {
  return std::binary_search(rel.begin(), rel.end(), std::make_pair(i, j));
}

struct ProductChecker {
  const FlatGraph& ga;
  const FlatGraph& gb;
  std::set<std::tuple<std::size_t, std::size_t, Rel>> assumed;

  bool children_match(const FlatChild& ca, const FlatChild& cb,
                      const Rel& rel) {
    if (ca.kind != cb.kind) return false;
    if (ca.kind == FlatChild::Kind::Var) return rel_has(rel, ca.var, cb.var);
    // Compose the pending renamings into a fresh relation between the two
    // node contexts.
    Rel next;
    for (std::size_t i = 0; i < ca.ren.size(); i++)
      for (std::size_t j = 0; j < cb.ren.size(); j++)
        if (rel_has(rel, ca.ren[i], cb.ren[j])) next.emplace_back(i, j);
    return nodes_match(ca.node, cb.node, next);
  }

  bool nodes_match(std::size_t na, std::size_t nb, const Rel& rel) {
    auto state = std::make_tuple(na, nb, rel);
    if (assumed.count(state)) return true;
    const FlatNode& a = ga.nodes[na];
    const FlatNode& b = gb.nodes[nb];
    if (a.op != b.op) return false;
    assumed.insert(state);
    for (std::size_t j = 0; j < a.children.size(); j++) {
      Rel ext = lift_rel(rel, a.bound[j].size());
      if (!children_match(a.children[j], b.children[j], ext)) return false;
    }
    return true;
  }
};

}  // namespace

RationalBisimStats bisim_rational_stats(const RationalHandle& a,
                                        const RationalHandle& b) {
  if (!a.system || !b.system) throw Error("bisim_rational: empty handle");
  // Re-check the presentations; a handle whose provenance no longer
  // solves is an error, not a false.
  a.system->check();
  b.system->check();
  const Unknown& ua = a.system->unknown(a.unknown);
  const Unknown& ub = b.system->unknown(b.unknown);

  RationalBisimStats stats{false, 0, 0, 0};
  if (a.system->sig() != b.system->sig() || ua.ctx != ub.ctx ||
      ua.sort != ub.sort)
    return stats;

  Flattener fa;
  FlatChild ra = fa.root_of(*a.system, a.unknown);
  Flattener fb;
  FlatChild rb = fb.root_of(*b.system, b.unknown);
  stats.states_a = fa.graph.nodes.size();
  stats.states_b = fb.graph.nodes.size();

  Rel initial;
  for (std::size_t i = 0; i < ua.ctx.size(); i++) initial.emplace_back(i, i);

  ProductChecker checker{fa.graph, fb.graph, {}};
  stats.equal = checker.children_match(ra, rb, initial);
  stats.explored = checker.assumed.size();
  return stats;
}

bool bisim_rational(const RationalHandle& a, const RationalHandle& b) {
  return bisim_rational_stats(a, b).equal;
}

}  // namespace cocalc
