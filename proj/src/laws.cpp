#include "cocalc/laws.hpp"

#include <sstream>

#include "cocalc/bisim.hpp"
#include "cocalc/error.hpp"
#include "cocalc/random.hpp"
#include "coterm_impl.hpp"

namespace cocalc {

bool LawReport::ok() const {
  for (const auto& l : lines)
    if (l.failures) return false;
  return true;
}

std::string LawReport::str() const {
  std::ostringstream out;
  for (const auto& l : lines)
    out << "LAW " << l.law << " trials=" << l.trials
        << " failures=" << l.failures << "\n";
  for (const auto& l : lines)
    if (l.failures) out << "CEX " << l.law << " " << l.counterexample << "\n";
  return out.str();
}

namespace {

// Plain recursive bind with a pluggable lift; only used by the mutation
// seam, so no sharing machinery.
CoTerm hooked_bind(const Substitution& sigma, const CoTerm& t,
                   const LawHooks hooks) {
  return detail::CoTermAccess::lazy(
      t.sig(), sigma.target(), t.sort(), [sigma, t, hooks]() -> Node {
        const Node& n = t.out();
        if (auto* v = std::get_if<VarNode>(&n)) return sigma.assign(v->index).out();
        const ConNode& c = std::get<ConNode>(n);
        auto arity = t.sig()->arity(c.op);
        std::vector<CoTerm> args;
        for (std::size_t j = 0; j < c.args.size(); j++)
          args.push_back(hooked_bind(hooks.lift_impl(sigma, arity->args[j].bound),
                                     c.args[j], hooks));
        return Node{ConNode{c.op, std::move(args)}};
      });
}

struct LawRun {
  std::string law;
  int trials = 0;
  int failures = 0;
  std::string smallest;

  void record(bool pass, const std::string& serialized) {
    trials++;
    if (pass) return;
    failures++;
    if (smallest.empty() || serialized < smallest) smallest = serialized;
  }

  LawLine line() const { return LawLine{law, trials, failures, smallest}; }
};

std::string describe(const CoTerm& t, const Substitution& sigma,
                     std::size_t depth) {
  std::ostringstream out;
  out << "t=" << pretty(t, std::min<std::size_t>(depth, 4), PrettyStyle::DeBruijn)
      << " sigma=[";
  for (std::size_t i = 0; i < sigma.source().size(); i++) {
    if (i) out << ", ";
    out << pretty(sigma.assign(i), 2, PrettyStyle::DeBruijn);
  }
  out << "]";
  return out.str();
}

}  // namespace

LawReport check_monad_laws(const SignaturePtr& sig, std::uint64_t seed,
                           int trials, std::size_t depth,
                           const LawHooks* hooks) {
  TermGen gen(sig, seed);
  GenOptions opt;
  auto do_bind = [&](const Substitution& s, const CoTerm& t) {
    return hooks && hooks->lift_impl ? hooked_bind(s, t, *hooks) : bind(s, t);
  };

  LawRun right_unit{"right-unit"};
  LawRun left_unit{"left-unit"};
  LawRun assoc{"associativity"};

  for (int i = 0; i < trials; i++) {
    Context ctx = gen.random_context(gen.random_sort(), gen.pick(3));
    Sort sort = gen.random_sort();
    CoTerm t = gen.random_rational(ctx, sort, opt);

    // Right unit: bind eta = id.
    {
      Substitution eta = Substitution::identity(sig, ctx);
      bool pass = bisim_to_depth(do_bind(eta, t), t, depth);
      right_unit.record(pass, describe(t, eta, depth));
    }

    Substitution sigma = gen.random_substitution(ctx, opt);

    // Left unit on variable leaves: bind sigma (var i) = sigma(i).
    {
      std::size_t i_var = gen.pick(ctx.size());
      CoTerm v = var(sig, ctx, i_var);
      bool pass = bisim_to_depth(do_bind(sigma, v), sigma.assign(i_var), depth);
      left_unit.record(pass, describe(v, sigma, depth));
    }

    // Associativity: bind tau . bind sigma = bind (bind tau . sigma).
    {
      Substitution tau = gen.random_substitution(sigma.target(), opt);
      CoTerm lhs = do_bind(tau, do_bind(sigma, t));
      std::vector<CoTerm> assign;
      for (std::size_t k = 0; k < sigma.source().size(); k++)
        assign.push_back(do_bind(tau, sigma.assign(k)));
      Substitution composite(sig, sigma.source(), tau.target(),
                             std::move(assign));
      CoTerm rhs = do_bind(composite, t);
      bool pass = bisim_to_depth(lhs, rhs, depth);
      assoc.record(pass, describe(t, sigma, depth));
    }
  }

  LawReport report;
  report.lines = {right_unit.line(), left_unit.line(), assoc.line()};
  return report;
}

}  // namespace cocalc
