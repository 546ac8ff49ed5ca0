#include <map>
#include <set>

#include "cocalc/error.hpp"
#include "cocalc/signature.hpp"
#include "lexer.hpp"

namespace cocalc {

namespace {

using detail::Lexer;

Sort declared_sort(Lexer& lx, const std::set<std::string>& sorts) {
  auto tok = lx.peek();
  std::string name = lx.expect_ident("sort name");
  if (!sorts.count(name))
    throw ParseError("arity references undeclared sort '" + name + "'",
                     tok.line, tok.column);
  return Sort::atom(name);
}

}  // namespace

SignaturePtr parse_signature(std::string_view text) {
  Lexer lx(text);
  FiniteSignature fin;
  std::set<std::string> sort_names;

  if (lx.expect_ident("'sorts'") != "sorts") lx.fail("expected 'sorts'");
  lx.expect_symbol("{");
  while (!lx.eat_symbol("}")) {
    auto tok = lx.peek();
    std::string name = lx.expect_ident("sort name");
    if (!sort_names.insert(name).second)
      throw ParseError("duplicate sort '" + name + "'", tok.line, tok.column);
    fin.sorts.push_back(name);
    lx.expect_symbol(";");
  }
  lx.eat_symbol(";");  // optional separator after the block

  if (lx.expect_ident("'ops'") != "ops") lx.fail("expected 'ops'");
  lx.expect_symbol("{");
  std::set<std::string> op_names;
  while (!lx.eat_symbol("}")) {
    auto tok = lx.peek();
    std::string name = lx.expect_ident("constructor name");
    if (!op_names.insert(name).second)
      throw ParseError("duplicate constructor '" + name + "'", tok.line,
                       tok.column);
    lx.expect_symbol(":");
    ConstructorArity arity{{}, Sort::atom("")};
    if (!lx.at_symbol("->")) {
      for (;;) {
        BinderArity arg{{}, Sort::atom("")};
        if (lx.eat_symbol("[")) {
          while (!lx.eat_symbol("]"))
            arg.bound.push_back(declared_sort(lx, sort_names));
        }
        arg.arg_sort = declared_sort(lx, sort_names);
        arity.args.push_back(std::move(arg));
        if (!lx.eat_symbol(",")) break;
      }
    }
    lx.expect_symbol("->");
    arity.target = declared_sort(lx, sort_names);
    lx.expect_symbol(";");
    fin.ops.emplace_back(name, std::move(arity));
  }
  lx.eat_symbol(";");
  if (!lx.at_end()) lx.fail("expected end of input");

  auto sig = std::make_shared<Signature>();
  sig->name = "dsl";
  sig->finite = fin;
  auto ops = std::make_shared<std::map<std::string, ConstructorArity>>();
  for (const auto& [name, arity] : fin.ops) {
    ops->emplace(name, arity);
    sig->probe_ops.push_back(OpIndex{name, {}, {}});
  }
  for (const auto& s : fin.sorts) sig->sample_sorts.push_back(Sort::atom(s));
  auto sorts = std::make_shared<std::set<std::string>>(std::move(sort_names));

  sig->valid_sort = [sorts](const Sort& s) {
    return s.is_atom() && sorts->count(s.atom_name()) > 0;
  };
  sig->arity = [ops](const OpIndex& op) -> std::optional<ConstructorArity> {
    if (!op.sort_params.empty() || !op.nat_params.empty()) return std::nullopt;
    auto it = ops->find(op.name);
    if (it == ops->end()) return std::nullopt;
    return it->second;
  };
  return sig;
}

std::string print_signature(const Signature& sig) {
  if (!sig.finite)
    throw Error("signature '" + sig.name + "' has no finite presentation");
  std::string out = "sorts {";
  for (const auto& s : sig.finite->sorts) out += " " + s + ";";
  out += " }\nops {\n";
  for (const auto& [name, arity] : sig.finite->ops) {
    out += "  " + name + " : ";
    for (std::size_t i = 0; i < arity.args.size(); i++) {
      if (i) out += ", ";
      const BinderArity& a = arity.args[i];
      if (!a.bound.empty()) {
        out += "[";
        for (std::size_t j = 0; j < a.bound.size(); j++) {
          if (j) out += " ";
          out += a.bound[j].str();
        }
        out += "]";
      }
      out += a.arg_sort.str();
    }
    out += " -> " + arity.target.str() + ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace cocalc
