#include "cocalc/eqdsl.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "cocalc/error.hpp"
#include "lexer.hpp"

namespace cocalc {

namespace {

using detail::Lexer;
using detail::Token;

Sort parse_sort_tokens(Lexer& lx);

Sort parse_sort_primary(Lexer& lx) {
  if (lx.eat_symbol("(")) {
    Sort s = parse_sort_tokens(lx);
    lx.expect_symbol(")");
    return s;
  }
  return Sort::atom(lx.expect_ident("sort"));
}

Sort parse_sort_pair(Lexer& lx) {
  Sort s = parse_sort_primary(lx);
  if (lx.eat_symbol("*")) return Sort::pair(s, parse_sort_primary(lx));
  return s;
}

Sort parse_sort_tokens(Lexer& lx) {
  Sort s = parse_sort_pair(lx);
  if (lx.eat_symbol("->")) return Sort::arrow(s, parse_sort_tokens(lx));
  return s;
}

// Purely syntactic term tree; elaboration resolves names afterwards.
struct CstTerm;
struct CstArg {
  std::vector<std::string> binders;
  std::vector<CstTerm> term;  // single element; vector for incompleteness
};
struct CstTerm {
  std::string head;
  std::vector<Sort> sort_params;
  std::vector<std::uint64_t> nat_params;
  bool braced = false;  // explicit {..} parameters were given
  std::optional<std::vector<std::pair<std::string, std::string>>> renaming;
  bool called = false;
  std::vector<CstArg> args;
  std::size_t line = 0, column = 0;
};

// Splits trailing _<digits> groups off an identifier.
std::pair<std::string, std::vector<std::uint64_t>> split_nats(std::string base) {
  std::vector<std::uint64_t> nats;
  for (;;) {
    std::size_t us = base.find_last_of('_');
    if (us == std::string::npos || us + 1 >= base.size()) break;
    bool digits = true;
    for (std::size_t i = us + 1; i < base.size(); i++)
      if (!std::isdigit(static_cast<unsigned char>(base[i]))) digits = false;
    if (!digits) break;
    nats.insert(nats.begin(), std::stoull(base.substr(us + 1)));
    base.resize(us);
  }
  return {base, nats};
}

CstTerm parse_cst(Lexer& lx);

CstArg parse_cst_arg(Lexer& lx) {
  CstArg arg;
  if (lx.eat_symbol("[")) {
    while (!lx.eat_symbol("]"))
      arg.binders.push_back(lx.expect_ident("binder name"));
  }
  arg.term.push_back(parse_cst(lx));
  return arg;
}

CstTerm parse_cst(Lexer& lx) {
  if (lx.eat_symbol("(")) {
    CstTerm inner = parse_cst(lx);
    lx.expect_symbol(")");
    return inner;
  }
  CstTerm t;
  t.line = lx.peek().line;
  t.column = lx.peek().column;
  t.head = lx.expect_ident("term");
  if (lx.eat_symbol("{")) {
    t.braced = true;
    if (!lx.at_symbol("}")) {
      t.sort_params.push_back(parse_sort_tokens(lx));
      while (lx.eat_symbol(",")) t.sort_params.push_back(parse_sort_tokens(lx));
    }
    lx.expect_symbol("}");
    // nat suffixes lex as identifiers like "_2"
    while (lx.at_ident() && lx.peek().text[0] == '_') {
      auto [rest, nats] = split_nats(lx.peek().text);
      if (!rest.empty() || nats.empty()) break;
      t.nat_params.insert(t.nat_params.end(), nats.begin(), nats.end());
      lx.next();
    }
  }
  if (lx.eat_symbol("@")) {
    lx.expect_symbol("[");
    std::vector<std::pair<std::string, std::string>> pairs;
    if (!lx.at_symbol("]")) {
      for (;;) {
        std::string from = lx.expect_ident("context entry name");
        lx.expect_symbol(":=");
        std::string to = lx.expect_ident("local name");
        pairs.emplace_back(from, to);
        if (!lx.eat_symbol(",")) break;
      }
    }
    lx.expect_symbol("]");
    t.renaming = std::move(pairs);
  }
  if (lx.eat_symbol("(")) {
    t.called = true;
    if (!lx.at_symbol(")")) {
      for (;;) {
        t.args.push_back(parse_cst_arg(lx));
        if (!lx.eat_symbol(",")) break;
      }
    }
    lx.expect_symbol(")");
  }
  return t;
}

struct UnknownHeader {
  std::string name;
  Context ctx;
  std::vector<std::string> ctx_names;
  Sort sort;
};

struct Elaborator {
  SignaturePtr sig;
  std::vector<UnknownHeader> headers;

  const UnknownHeader* header(const std::string& name) const {
    for (const auto& h : headers)
      if (h.name == name) return &h;
    return nullptr;
  }

  // env: (name, sort) per de Bruijn position, innermost first.
  using Env = std::vector<std::pair<std::string, Sort>>;

  static std::optional<std::size_t> env_lookup(const Env& env,
                                               const std::string& name) {
    for (std::size_t i = 0; i < env.size(); i++)
      if (env[i].first == name) return i;
    return std::nullopt;
  }

  [[noreturn]] static void fail(const CstTerm& t, const std::string& msg) {
    throw ParseError(msg, t.line, t.column);
  }

  ContextMorphism reference_renaming(const CstTerm& t, const UnknownHeader& h,
                                     const Env& env) const {
    Context local;
    for (const auto& [n, s] : env) local.push_back(s);
    ContextMorphism ren{h.ctx, local, {}};
    ren.map.resize(h.ctx.size());
    if (t.renaming) {
      std::vector<bool> seen(h.ctx.size(), false);
      for (const auto& [from, to] : *t.renaming) {
        std::optional<std::size_t> src;
        for (std::size_t i = 0; i < h.ctx_names.size(); i++)
          if (h.ctx_names[i] == from) src = i;
        if (!src) fail(t, "'" + from + "' is not a context entry of " + h.name);
        auto dst = env_lookup(env, to);
        if (!dst) fail(t, "'" + to + "' is not in scope");
        ren.map[*src] = *dst;
        seen[*src] = true;
      }
      for (std::size_t i = 0; i < seen.size(); i++)
        if (!seen[i])
          fail(t, "renaming for " + h.name + " misses context entry '" +
                      h.ctx_names[i] + "'");
    } else {
      for (std::size_t i = 0; i < h.ctx_names.size(); i++) {
        auto dst = env_lookup(env, h.ctx_names[i]);
        if (!dst)
          fail(t, "cannot infer renaming for " + h.name + ": '" +
                      h.ctx_names[i] +
                      "' is not in scope (use " + h.name + "@[...])");
        if (env[*dst].second != h.ctx[i])
          fail(t, "cannot infer renaming for " + h.name + ": '" +
                      h.ctx_names[i] + "' resolves to a different sort (use " +
                      h.name + "@[...])");
        ren.map[i] = *dst;
      }
    }
    return ren;
  }

  OpIndex resolve_op(const CstTerm& t) const {
    OpIndex op;
    if (t.braced) {
      op.name = t.head;
      op.sort_params = t.sort_params;
      op.nat_params = t.nat_params;
    } else {
      // Declared names win over family decomposition.
      if (sig->arity(OpIndex{t.head, {}, {}})) return OpIndex{t.head, {}, {}};
      auto [base, nats] = split_nats(t.head);
      op.name = base;
      op.nat_params = nats;
    }
    if (sig->arity(op)) return op;
    // Infer the family index from the argument count: sum_n takes n
    // arguments, tup_k takes k+1.
    if (op.nat_params.empty()) {
      for (std::uint64_t cand :
           {static_cast<std::uint64_t>(t.args.size()),
            static_cast<std::uint64_t>(t.args.size() ? t.args.size() - 1 : 0)}) {
        OpIndex probe = op;
        probe.nat_params = {cand};
        auto arity = sig->arity(probe);
        if (arity && arity->args.size() == t.args.size()) return probe;
      }
    }
    fail(t, "'" + t.head + "' does not name a constructor of signature " +
                sig->name);
  }

  PreTerm elaborate(const CstTerm& t, const Env& env) const {
    bool plain = !t.braced && !t.called;
    if (plain && !t.renaming) {
      if (auto i = env_lookup(env, t.head)) return PreTerm{PVar{*i}};
    }
    if (const UnknownHeader* h = header(t.head)) {
      if (t.braced || t.called)
        fail(t, "unknown '" + t.head + "' cannot take parameters or arguments");
      return PreTerm{PRef{t.head, reference_renaming(t, *h, env)}};
    }
    if (t.renaming) fail(t, "'" + t.head + "' is not an unknown");
    OpIndex op = resolve_op(t);
    auto arity = sig->arity(op);
    if (arity->args.size() != t.args.size())
      fail(t, "'" + op.str() + "' expects " +
                  std::to_string(arity->args.size()) + " arguments, got " +
                  std::to_string(t.args.size()));
    PCon pc{op, {}};
    for (std::size_t j = 0; j < t.args.size(); j++) {
      const CstArg& arg = t.args[j];
      const auto& bound = arity->args[j].bound;
      if (arg.binders.size() != bound.size())
        fail(arg.term[0], "argument " + std::to_string(j) + " of '" +
                              op.str() + "' binds " +
                              std::to_string(bound.size()) +
                              " variables, " +
                              std::to_string(arg.binders.size()) + " named");
      Env inner;
      for (std::size_t k = 0; k < bound.size(); k++)
        inner.emplace_back(arg.binders[k], bound[k]);
      inner.insert(inner.end(), env.begin(), env.end());
      pc.args.push_back(elaborate(arg.term[0], inner));
    }
    return PreTerm{std::move(pc)};
  }
};

}  // namespace

EquationSystem parse_equations(SignaturePtr sig, std::string_view text) {
  Lexer lx(text);
  Elaborator el{sig, {}};
  std::vector<CstTerm> bodies;

  // First pass: headers and syntactic bodies, so references can be
  // forward as well as backward.
  while (!lx.at_end()) {
    auto kw = lx.peek();
    if (lx.expect_ident("'let'") != "let")
      throw ParseError("expected 'let'", kw.line, kw.column);
    UnknownHeader h{lx.expect_ident("unknown name"), {}, {}, Sort::atom("")};
    lx.expect_symbol(":");
    h.sort = parse_sort_tokens(lx);
    if (lx.eat_symbol("[")) {
      if (!lx.at_symbol("]")) {
        for (;;) {
          h.ctx_names.push_back(lx.expect_ident("context entry name"));
          lx.expect_symbol(":");
          h.ctx.push_back(parse_sort_tokens(lx));
          if (!lx.eat_symbol(",")) break;
        }
      }
      lx.expect_symbol("]");
    }
    lx.expect_symbol("=");
    el.headers.push_back(std::move(h));
    bodies.push_back(parse_cst(lx));
  }

  std::vector<Unknown> unknowns;
  for (std::size_t i = 0; i < el.headers.size(); i++) {
    const UnknownHeader& h = el.headers[i];
    Elaborator::Env env;
    for (std::size_t k = 0; k < h.ctx.size(); k++)
      env.emplace_back(h.ctx_names[k], h.ctx[k]);
    unknowns.push_back(
        Unknown{h.name, h.ctx, h.sort, el.elaborate(bodies[i], env)});
  }
  EquationSystem es(std::move(sig), std::move(unknowns));
  es.check();
  return es;
}

// ---------------------------------------------------------------------

namespace {

struct Printer {
  const EquationSystem& es;

  void term(std::ostream& out, const PreTerm& pre,
            std::vector<std::string>& env, std::size_t& fresh) const {
    if (auto* v = std::get_if<PVar>(&pre.node)) {
      out << env[v->index];
      return;
    }
    if (auto* c = std::get_if<PCon>(&pre.node)) {
      auto arity = es.sig()->arity(c->op);
      out << c->op.str() << "(";
      for (std::size_t j = 0; j < c->args.size(); j++) {
        if (j) out << ", ";
        const auto& bound = arity->args[j].bound;
        std::vector<std::string> names;
        if (!bound.empty()) {
          out << "[";
          for (std::size_t k = 0; k < bound.size(); k++) {
            if (k) out << " ";
            names.push_back("b" + std::to_string(fresh++));
            out << names.back();
          }
          out << "] ";
        }
        env.insert(env.begin(), names.begin(), names.end());
        term(out, c->args[j], env, fresh);
        env.erase(env.begin(), env.begin() + names.size());
      }
      out << ")";
      return;
    }
    if (auto* r = std::get_if<PRef>(&pre.node)) {
      const Unknown& u = es.unknown(r->unknown);
      out << r->unknown << "@[";
      for (std::size_t i = 0; i < r->ren.map.size(); i++) {
        if (i) out << ", ";
        out << "v" << i << " := " << env[r->ren.map[i]];
      }
      (void)u;
      out << "]";
      return;
    }
    const PEmbed& e = std::get<PEmbed>(pre.node);
    out << "embed";  // not parseable; display only
    (void)e;
  }
};

}  // namespace

std::string print_equation_system(const EquationSystem& es) {
  std::ostringstream out;
  Printer p{es};
  for (const Unknown& u : es.unknowns()) {
    out << "let " << u.name << " : " << u.sort.str() << " [";
    for (std::size_t i = 0; i < u.ctx.size(); i++) {
      if (i) out << ", ";
      out << "v" << i << " : " << u.ctx[i].str();
    }
    out << "] = ";
    std::vector<std::string> env;
    for (std::size_t i = 0; i < u.ctx.size(); i++)
      env.push_back("v" + std::to_string(i));
    std::size_t fresh = 0;
    p.term(out, u.rhs, env, fresh);
    out << "\n";
  }
  return out.str();
}

}  // namespace cocalc
