#include "cocalc/coterm.hpp"

#include <algorithm>

#include "cocalc/error.hpp"
#include "coterm_impl.hpp"

namespace cocalc {

using detail::CoTermAccess;

Context extend(const std::vector<Sort>& binders, const Context& ctx) {
  Context out = binders;
  out.insert(out.end(), ctx.begin(), ctx.end());
  return out;
}

// ---------------------------------------------------------------------
// ContextMorphism

ContextMorphism ContextMorphism::identity(const Context& ctx) {
  ContextMorphism m{ctx, ctx, {}};
  m.map.resize(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); i++) m.map[i] = i;
  return m;
}

ContextMorphism ContextMorphism::weakening(const std::vector<Sort>& prefix,
                                           const Context& ctx) {
  ContextMorphism m{ctx, extend(prefix, ctx), {}};
  m.map.resize(ctx.size());
  for (std::size_t i = 0; i < ctx.size(); i++) m.map[i] = i + prefix.size();
  return m;
}

ContextMorphism ContextMorphism::lifted(const std::vector<Sort>& binders) const {
  ContextMorphism m{extend(binders, source), extend(binders, target), {}};
  m.map.resize(binders.size() + map.size());
  for (std::size_t i = 0; i < binders.size(); i++) m.map[i] = i;
  for (std::size_t i = 0; i < map.size(); i++)
    m.map[binders.size() + i] = map[i] + binders.size();
  return m;
}

ContextMorphism ContextMorphism::then(const ContextMorphism& outer) const {
  if (target != outer.source)
    throw SortError("renaming composition: context mismatch");
  ContextMorphism m{source, outer.target, {}};
  m.map.resize(map.size());
  for (std::size_t i = 0; i < map.size(); i++) m.map[i] = outer.map[map[i]];
  return m;
}

void ContextMorphism::check() const {
  if (map.size() != source.size())
    throw SortError("renaming: map length != source context length");
  for (std::size_t i = 0; i < map.size(); i++) {
    if (map[i] >= target.size())
      throw SortError("renaming: position " + std::to_string(i) +
                      " maps out of range");
    if (target[map[i]] != source[i])
      throw SortError("renaming not sort-preserving at position " +
                      std::to_string(i) + ": " + source[i].str() + " vs " +
                      target[map[i]].str());
  }
}

// ---------------------------------------------------------------------
// CoTerm handle

const SignaturePtr& CoTerm::sig() const { return impl_->sig; }
const Context& CoTerm::ctx() const { return impl_->ctx; }
const Sort& CoTerm::sort() const { return impl_->sort; }
const Node& CoTerm::out() const { return impl_->force(); }

CoTerm var(SignaturePtr sig, Context ctx, std::size_t index) {
  if (index >= ctx.size())
    throw SortError("variable index " + std::to_string(index) +
                    " out of range for context of size " +
                    std::to_string(ctx.size()));
  Sort sort = ctx[index];
  return CoTermAccess::eager(std::move(sig), std::move(ctx), std::move(sort),
                             Node{VarNode{index}});
}

namespace {

// Shared by con() and fin_con(): checks arity shape against children
// described by (ctx, sort) accessors.
const ConstructorArity& checked_arity(const Signature& sig, const OpIndex& op,
                                      std::size_t nargs,
                                      std::optional<ConstructorArity>& slot) {
  slot = sig.arity(op);
  if (!slot)
    throw SortError("'" + op.str() + "' is not a constructor of signature " +
                    sig.name);
  if (slot->args.size() != nargs)
    throw SortError("'" + op.str() + "' expects " +
                    std::to_string(slot->args.size()) + " arguments, got " +
                    std::to_string(nargs));
  return *slot;
}

}  // namespace

CoTerm con(SignaturePtr sig, Context ctx, const OpIndex& op,
           std::vector<CoTerm> args) {
  std::optional<ConstructorArity> slot;
  const ConstructorArity& arity = checked_arity(*sig, op, args.size(), slot);
  for (std::size_t j = 0; j < args.size(); j++) {
    const CoTerm& a = args[j];
    if (!a) throw SortError("argument " + std::to_string(j) + " is empty");
    if (a.sig() != sig)
      throw SortError("argument " + std::to_string(j) +
                      " belongs to a different signature");
    if (a.sort() != arity.args[j].arg_sort)
      throw SortError("'" + op.str() + "' argument " + std::to_string(j) +
                      ": expected sort " + arity.args[j].arg_sort.str() +
                      ", got " + a.sort().str());
    if (a.ctx() != extend(arity.args[j].bound, ctx))
      throw SortError("'" + op.str() + "' argument " + std::to_string(j) +
                      ": context mismatch");
  }
  Sort target = arity.target;
  return CoTermAccess::eager(std::move(sig), std::move(ctx), std::move(target),
                             Node{ConNode{op, std::move(args)}});
}

// ---------------------------------------------------------------------
// Anamorphism

namespace {

struct UnfoldShared {
  SignaturePtr sig;
  std::function<UnfoldLayer(const std::any&)> step;
};

CoTerm unfold_node(std::shared_ptr<const UnfoldShared> shared, Context ctx,
                   Sort sort, std::any state, std::string path);

Node layer_to_node(const std::shared_ptr<const UnfoldShared>& shared,
                   const Context& ctx, const Sort& sort, UnfoldLayer layer,
                   const std::string& path) {
  auto at = [&](const std::string& msg) {
    return SortError("unfold: " + msg + " (at path " +
                     (path.empty() ? "<root>" : path) + ")");
  };
  if (auto* v = std::get_if<UnfoldVar>(&layer)) {
    if (v->index >= ctx.size()) throw at("variable index out of range");
    if (ctx[v->index] != sort)
      throw at("variable of sort " + ctx[v->index].str() +
               " where sort " + sort.str() + " is required");
    return Node{VarNode{v->index}};
  }
  auto& c = std::get<UnfoldCon>(layer);
  auto arity = shared->sig->arity(c.op);
  if (!arity) throw at("'" + c.op.str() + "' is not a constructor");
  if (arity->target != sort)
    throw at("'" + c.op.str() + "' constructs sort " + arity->target.str() +
             " where sort " + sort.str() + " is required");
  if (arity->args.size() != c.children.size())
    throw at("'" + c.op.str() + "' expects " +
             std::to_string(arity->args.size()) + " arguments, got " +
             std::to_string(c.children.size()));
  std::vector<CoTerm> args;
  args.reserve(c.children.size());
  for (std::size_t j = 0; j < c.children.size(); j++) {
    Context child_ctx = extend(arity->args[j].bound, ctx);
    const Sort& child_sort = arity->args[j].arg_sort;
    std::string child_path = path + "/" + std::to_string(j);
    if (auto* t = std::get_if<CoTerm>(&c.children[j])) {
      if (!*t) throw at("argument " + std::to_string(j) + " is empty");
      if (t->sig() != shared->sig || t->ctx() != child_ctx ||
          t->sort() != child_sort)
        throw at("existing coterm at argument " + std::to_string(j) +
                 " does not fit the arity");
      args.push_back(*t);
    } else {
      auto& seed = std::get<UnfoldSeed>(c.children[j]);
      if (seed.ctx != child_ctx || seed.sort != child_sort)
        throw at("seed at argument " + std::to_string(j) +
                 " declares (ctx, sort) inconsistent with the arity");
      args.push_back(unfold_node(shared, seed.ctx, seed.sort, seed.state,
                                 child_path));
    }
  }
  return Node{ConNode{c.op, std::move(args)}};
}

CoTerm unfold_node(std::shared_ptr<const UnfoldShared> shared, Context ctx,
                   Sort sort, std::any state, std::string path) {
  Context ctx_copy = ctx;
  Sort sort_copy = sort;
  return detail::CoTermAccess::lazy(
      shared->sig, std::move(ctx_copy), std::move(sort_copy),
      [shared, ctx = std::move(ctx), sort = std::move(sort),
       state = std::move(state), path = std::move(path)]() -> Node {
        return layer_to_node(shared, ctx, sort, shared->step(state), path);
      });
}

}  // namespace

CoTerm unfold_coterm(SignaturePtr sig, Context ctx, Sort sort, std::any seed,
                     std::function<UnfoldLayer(const std::any&)> step) {
  auto shared = std::make_shared<UnfoldShared>();
  shared->sig = std::move(sig);
  shared->step = std::move(step);
  return unfold_node(shared, std::move(ctx), std::move(sort), std::move(seed),
                     "");
}

// ---------------------------------------------------------------------
// Truncation

bool Truncation::operator==(const Truncation& other) const {
  if (node.index() != other.node.index()) return false;
  if (std::holds_alternative<Cut>(node)) return true;
  if (auto* v = std::get_if<Var>(&node))
    return v->index == std::get<Var>(other.node).index;
  const Con& a = std::get<Con>(node);
  const Con& b = std::get<Con>(other.node);
  return a.op == b.op && a.children == b.children;
}

Truncation truncate(const CoTerm& t, std::size_t depth) {
  const Node& n = t.out();
  if (auto* v = std::get_if<VarNode>(&n))
    return Truncation{Truncation::Var{v->index}};
  const ConNode& c = std::get<ConNode>(n);
  if (depth == 0) return Truncation{Truncation::Cut{}};
  Truncation::Con out{c.op, {}};
  out.children.reserve(c.args.size());
  for (const CoTerm& a : c.args) out.children.push_back(truncate(a, depth - 1));
  return Truncation{std::move(out)};
}

// ---------------------------------------------------------------------
// Finite terms

struct FinTerm::Rep {
  SignaturePtr sig;
  Context ctx;
  Sort sort;
  std::optional<std::size_t> var;
  std::optional<OpIndex> op;
  std::vector<FinTerm> args;
  std::size_t height = 0;
};

const SignaturePtr& FinTerm::sig() const { return rep_->sig; }
const Context& FinTerm::ctx() const { return rep_->ctx; }
const Sort& FinTerm::sort() const { return rep_->sort; }
bool FinTerm::is_var() const { return rep_->var.has_value(); }
std::size_t FinTerm::var_index() const { return *rep_->var; }
const OpIndex& FinTerm::op() const { return *rep_->op; }
const std::vector<FinTerm>& FinTerm::args() const { return rep_->args; }
std::size_t FinTerm::height() const { return rep_->height; }

bool FinTerm::operator==(const FinTerm& other) const {
  if (rep_ == other.rep_) return true;
  if (rep_->ctx != other.rep_->ctx || rep_->sort != other.rep_->sort)
    return false;
  if (is_var() != other.is_var()) return false;
  if (is_var()) return var_index() == other.var_index();
  return op() == other.op() && args() == other.args();
}

std::string FinTerm::str() const {
  if (is_var()) return "#" + std::to_string(var_index());
  std::string out = op().str();
  out += "(";
  for (std::size_t i = 0; i < args().size(); i++) {
    if (i) out += ", ";
    out += args()[i].str();
  }
  out += ")";
  return out;
}

FinTerm fin_var(SignaturePtr sig, Context ctx, std::size_t index) {
  if (index >= ctx.size())
    throw SortError("variable index " + std::to_string(index) +
                    " out of range for context of size " +
                    std::to_string(ctx.size()));
  Sort sort = ctx[index];
  auto rep = std::make_shared<FinTerm::Rep>(FinTerm::Rep{
      std::move(sig), std::move(ctx), std::move(sort), index, {}, {}, 0});
  return FinTerm(std::move(rep));
}

FinTerm fin_con(SignaturePtr sig, Context ctx, const OpIndex& op,
                std::vector<FinTerm> args) {
  std::optional<ConstructorArity> slot;
  const ConstructorArity& arity = checked_arity(*sig, op, args.size(), slot);
  std::size_t height = 0;
  for (std::size_t j = 0; j < args.size(); j++) {
    const FinTerm& a = args[j];
    if (a.sort() != arity.args[j].arg_sort)
      throw SortError("'" + op.str() + "' argument " + std::to_string(j) +
                      ": expected sort " + arity.args[j].arg_sort.str() +
                      ", got " + a.sort().str());
    if (a.ctx() != extend(arity.args[j].bound, ctx))
      throw SortError("'" + op.str() + "' argument " + std::to_string(j) +
                      ": context mismatch");
    height = std::max(height, a.height());
  }
  auto rep = std::make_shared<FinTerm::Rep>(
      FinTerm::Rep{std::move(sig), std::move(ctx), arity.target, {}, op,
                   std::move(args), height + 1});
  return FinTerm(std::move(rep));
}

namespace {

CoTerm embed_plain(const FinTerm& ft) {
  if (ft.is_var()) return var(ft.sig(), ft.ctx(), ft.var_index());
  std::vector<CoTerm> args;
  args.reserve(ft.args().size());
  for (const FinTerm& a : ft.args()) args.push_back(embed_plain(a));
  return con(ft.sig(), ft.ctx(), ft.op(), std::move(args));
}

}  // namespace

CoTerm embed(const FinTerm& ft) {
  CoTerm t = embed_plain(ft);
  // A finite term is rational; attach its one-unknown presentation so
  // embeds work with bisim_rational and bind_via_solve.
  auto es = std::make_shared<EquationSystem>(
      ft.sig(), std::vector<Unknown>{Unknown{"X", ft.ctx(), ft.sort(),
                                             preterm_of(ft)}});
  CoTermAccess::impl(t)->origin =
      std::make_shared<SolveOrigin>(SolveOrigin{std::move(es), "X"});
  return t;
}

PreTerm preterm_of(const FinTerm& ft) {
  if (ft.is_var()) return PreTerm{PVar{ft.var_index()}};
  PCon pcon{ft.op(), {}};
  pcon.args.reserve(ft.args().size());
  for (const FinTerm& a : ft.args()) pcon.args.push_back(preterm_of(a));
  return PreTerm{std::move(pcon)};
}

}  // namespace cocalc
