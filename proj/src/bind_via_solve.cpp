#include <deque>
#include <map>

#include "cocalc/error.hpp"
#include "cocalc/subst.hpp"

namespace cocalc {

namespace {

// Symbolic form of the substitutions reachable while pushing sigma0
// through a rational term: lift(sigma0, L) . r, with r a renaming of the
// unknown's declared context into L ++ source(sigma0). Finitely many per
// unknown when no cycle of the system crosses a binder.
struct StateKey {
  std::size_t unknown;
  std::vector<Sort> prefix;        // L
  std::vector<std::size_t> ren;    // r : ctx(unknown) -> L ++ source

  bool operator<(const StateKey& other) const {
    if (unknown != other.unknown) return unknown < other.unknown;
    if (ren != other.ren) return ren < other.ren;
    if (prefix.size() != other.prefix.size())
      return prefix.size() < other.prefix.size();
    for (std::size_t i = 0; i < prefix.size(); i++) {
      std::string a = prefix[i].str(), b = other.prefix[i].str();
      if (a != b) return a < b;
    }
    return false;
  }
};

// Edge weights are binder counts; a reachable cycle of positive total
// weight makes the induced system infinite.
struct CycleScan {
  const EquationSystem& es;
  std::vector<int> state;  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::size_t> depth_at;  // binder depth when entered

  explicit CycleScan(const EquationSystem& es)
      : es(es), state(es.unknowns().size(), 0), depth_at(es.unknowns().size(), 0) {}

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < es.unknowns().size(); i++)
      if (es.unknowns()[i].name == name) return i;
    throw Error("no unknown named '" + name + "'");
  }

  void scan_pre(const PreTerm& pre, std::size_t binders) {
    if (auto* c = std::get_if<PCon>(&pre.node)) {
      auto arity = es.sig()->arity(c->op);
      for (std::size_t j = 0; j < c->args.size(); j++)
        scan_pre(c->args[j], binders + arity->args[j].bound.size());
      return;
    }
    if (auto* r = std::get_if<PRef>(&pre.node)) {
      std::size_t v = index_of(r->unknown);
      if (state[v] == 1) {
        // back edge; positive accumulated binder depth along the loop?
        if (binders > 0 || depth_at[v] > 0)
          check_loop(v, binders);
      } else if (state[v] == 0) {
        visit(v, binders);
      }
    }
  }

  // Conservative check: any back edge reached with binders crossed since
  // the target was entered means a binder-crossing cycle.
  std::vector<std::size_t> stack;
  std::vector<std::size_t> stack_depth;

  void check_loop(std::size_t target, std::size_t binders_here) {
    for (std::size_t i = stack.size(); i-- > 0;) {
      if (stack[i] == target) {
        if (binders_here > stack_depth[i])
          throw Error(
              "bind_via_solve: a cycle of the system crosses a binder; the "
              "induced equation system would be infinite");
        return;
      }
    }
  }

  void visit(std::size_t u, std::size_t binders) {
    state[u] = 1;
    depth_at[u] = binders;
    stack.push_back(u);
    stack_depth.push_back(binders);
    scan_pre(es.unknowns()[u].rhs, binders);
    stack.pop_back();
    stack_depth.pop_back();
    state[u] = 2;
  }
};

struct Builder {
  const EquationSystem& es;
  const Substitution& sigma0;
  std::map<StateKey, std::string> names;
  std::deque<StateKey> todo;
  std::vector<Unknown> out;

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < es.unknowns().size(); i++)
      if (es.unknowns()[i].name == name) return i;
    throw Error("no unknown named '" + name + "'");
  }

  std::string intern(const StateKey& key) {
    auto it = names.find(key);
    if (it != names.end()) return it->second;
    std::string name =
        es.unknowns()[key.unknown].name + "#" + std::to_string(names.size());
    names.emplace(key, name);
    todo.push_back(key);
    if (names.size() > 20000)
      throw Error("bind_via_solve: induced system too large");
    return name;
  }

  // lift of r over beta binders: beta ++ ctx(u) -> beta ++ L ++ source.
  static std::size_t lifted_ren(const std::vector<std::size_t>& r,
                                std::size_t beta, std::size_t i) {
    return i < beta ? i : r[i - beta] + beta;
  }

  Context out_ctx(const StateKey& key) const {
    return extend(key.prefix, sigma0.target());
  }

  PreTerm transform(const StateKey& key, const PreTerm& pre,
                    const std::vector<Sort>& beta) {
    const std::size_t nb = beta.size();
    const std::size_t nl = key.prefix.size();
    if (auto* v = std::get_if<PVar>(&pre.node)) {
      if (v->index < nb) return PreTerm{PVar{v->index}};
      std::size_t j = lifted_ren(key.ren, nb, v->index) - 0;
      // j indexes beta ++ L ++ source
      if (j < nb + nl) return PreTerm{PVar{j}};
      const CoTerm& image = sigma0.assign(j - nb - nl);
      std::vector<Sort> shift = extend(beta, key.prefix);
      Context local = extend(shift, sigma0.target());
      (void)local;
      return PreTerm{PEmbed{image, ContextMorphism::weakening(shift, sigma0.target())}};
    }
    if (auto* c = std::get_if<PCon>(&pre.node)) {
      auto arity = es.sig()->arity(c->op);
      PCon pc{c->op, {}};
      pc.args.reserve(c->args.size());
      for (std::size_t j = 0; j < c->args.size(); j++)
        pc.args.push_back(
            transform(key, c->args[j], extend(arity->args[j].bound, beta)));
      return PreTerm{std::move(pc)};
    }
    if (auto* r = std::get_if<PRef>(&pre.node)) {
      StateKey next;
      next.unknown = index_of(r->unknown);
      next.prefix = extend(beta, key.prefix);
      next.ren.resize(r->ren.map.size());
      for (std::size_t i = 0; i < r->ren.map.size(); i++)
        next.ren[i] = lifted_ren(key.ren, nb, r->ren.map[i]);
      std::string name = intern(next);
      Context local = extend(beta, out_ctx(key));
      return PreTerm{PRef{name, ContextMorphism::identity(local)}};
    }
    const PEmbed& e = std::get<PEmbed>(pre.node);
    // Finite substitution tau(i) = sigma_local(e.ren(i)), then recurse.
    Context local = extend(beta, out_ctx(key));
    std::vector<CoTerm> assign;
    assign.reserve(e.ren.map.size());
    for (std::size_t i = 0; i < e.ren.map.size(); i++) {
      std::size_t m = lifted_ren(key.ren, nb, e.ren.map[i]);
      if (m < nb + nl) {
        assign.push_back(var(es.sig(), local, m));
      } else {
        std::vector<Sort> shift = extend(beta, key.prefix);
        assign.push_back(weaken(shift, sigma0.assign(m - nb - nl)));
      }
    }
    Substitution tau(es.sig(), e.term.ctx(), local, std::move(assign));
    CoTerm result = bind_via_solve(tau, e.term);
    return PreTerm{PEmbed{result, ContextMorphism::identity(local)}};
  }
};

}  // namespace

CoTerm bind_via_solve(const Substitution& sigma, const CoTerm& t) {
  if (!t) throw SortError("bind_via_solve: empty coterm");
  if (t.sig() != sigma.sig())
    throw SortError("bind_via_solve: coterm and substitution signatures differ");
  if (t.ctx() != sigma.source())
    throw SortError("bind_via_solve: coterm context does not match substitution source");
  auto origin = rational_provenance(t);
  if (!origin)
    throw Error("bind_via_solve: coterm is not rational (no equation-system provenance)");
  const EquationSystem& es = *origin->system;
  const Unknown& root_u = es.unknown(origin->unknown);
  if (root_u.ctx != t.ctx())
    throw Error("bind_via_solve: provenance context mismatch");

  CycleScan scan(es);
  scan.visit(scan.index_of(origin->unknown), 0);

  Builder b{es, sigma, {}, {}, {}};
  StateKey root;
  root.unknown = b.index_of(origin->unknown);
  root.prefix = {};
  root.ren.resize(root_u.ctx.size());
  for (std::size_t i = 0; i < root.ren.size(); i++) root.ren[i] = i;
  std::string root_name = b.intern(root);

  while (!b.todo.empty()) {
    StateKey key = b.todo.front();
    b.todo.pop_front();
    const Unknown& u = es.unknowns()[key.unknown];
    b.out.push_back(Unknown{b.names.at(key), b.out_ctx(key), u.sort,
                            b.transform(key, u.rhs, {})});
  }

  EquationSystem induced(es.sig(), std::move(b.out));
  Solution sol = solve(induced);
  return sol.at(root_name);
}

}  // namespace cocalc
