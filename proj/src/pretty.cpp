#include <string>

#include "cocalc/bisim.hpp"
#include "cocalc/error.hpp"

namespace cocalc {

namespace {

struct Renderer {
  const Signature& sig;
  PrettyStyle style;
  std::size_t fresh = 0;

  std::string fresh_name() { return "x" + std::to_string(fresh++); }

  // env[i] = display name of de Bruijn position i (named style only).
  std::string render(const Truncation& tr, std::vector<std::string>& env) {
    if (std::holds_alternative<Truncation::Cut>(tr.node)) return "…";
    if (auto* v = std::get_if<Truncation::Var>(&tr.node)) {
      if (style == PrettyStyle::DeBruijn) return "#" + std::to_string(v->index);
      return env[v->index];
    }
    const Truncation::Con& c = std::get<Truncation::Con>(tr.node);
    auto arity = sig.arity(c.op);
    if (!arity) throw Error("pretty: unknown constructor " + c.op.str());

    if (style == PrettyStyle::Named) {
      // Sugar for the built-in families.
      if (c.op.name == "lam" && c.children.size() == 1 &&
          arity->args[0].bound.size() == 1) {
        std::string name = fresh_name();
        env.insert(env.begin(), name);
        std::string body = render(c.children[0], env);
        env.erase(env.begin());
        return "λ" + name + ". " + body;
      }
      if (c.op.name == "app" && c.children.size() == 2 &&
          arity->args[0].bound.empty() && arity->args[1].bound.empty()) {
        return "(" + render(c.children[0], env) + " " +
               render(c.children[1], env) + ")";
      }
      if (c.op.name == "sum") {
        std::string out = "+⟨";
        for (std::size_t j = 0; j < c.children.size(); j++) {
          if (j) out += ", ";
          out += render(c.children[j], env);
        }
        return out + "⟩";
      }
      if (c.op.name == "tup" && !c.children.empty()) {
        std::string out = render(c.children[0], env) + "⟨";
        for (std::size_t j = 1; j < c.children.size(); j++) {
          if (j > 1) out += ", ";
          out += render(c.children[j], env);
        }
        return out + "⟩";
      }
    }

    // Canonical form: full constructor literal, binder names in brackets.
    std::string out = c.op.str() + "(";
    for (std::size_t j = 0; j < c.children.size(); j++) {
      if (j) out += ", ";
      const auto& bound = arity->args[j].bound;
      std::size_t n = bound.size();
      if (style == PrettyStyle::Named && n > 0) {
        out += "[";
        std::vector<std::string> names;
        for (std::size_t k = 0; k < n; k++) {
          if (k) out += " ";
          names.push_back(fresh_name());
          out += names.back();
        }
        out += "] ";
        env.insert(env.begin(), names.begin(), names.end());
        out += render(c.children[j], env);
        env.erase(env.begin(), env.begin() + n);
      } else {
        // de Bruijn style: binders implicit in the arity.
        out += render(c.children[j], env);
      }
    }
    return out + ")";
  }
};

}  // namespace

std::string pretty(const CoTerm& t, std::size_t depth, PrettyStyle style) {
  Truncation tr = truncate(t, depth);
  Renderer r{*t.sig(), style, 0};
  std::vector<std::string> env;
  if (style == PrettyStyle::Named) {
    // Free variables named first, outermost (highest index) first.
    std::size_t k = t.ctx().size();
    env.resize(k, "");
    for (std::size_t i = 0; i < k; i++) env[k - 1 - i] = r.fresh_name();
  }
  return r.render(tr, env);
}

}  // namespace cocalc
