#include "cocalc/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cocalc/bisim.hpp"
#include "cocalc/eqdsl.hpp"
#include "cocalc/error.hpp"
#include "cocalc/inhabit.hpp"
#include "cocalc/laws.hpp"

namespace cocalc {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> parse_atoms(const std::string& spec) {
  if (spec.empty()) return {};
  bool digits = true;
  for (char c : spec)
    if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
  if (digits) {
    std::vector<std::string> atoms;
    for (int i = 0; i < std::stoi(spec); i++) atoms.push_back(std::to_string(i));
    return atoms;
  }
  std::vector<std::string> atoms;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      atoms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  atoms.push_back(cur);
  return atoms;
}

// Built-in names first; a slash forces file parsing.
SignaturePtr load_signature(const std::string& name, const std::string& atoms) {
  bool is_path = name.find('/') != std::string::npos;
  if (!is_path &&
      (name == "stlc" || name == "untyped-forests" || name == "typed-forests"))
    return builtin_signature(name, parse_atoms(atoms));
  return parse_signature(slurp(name));
}

PrettyStyle parse_style(const std::string& s) {
  if (s == "named") return PrettyStyle::Named;
  if (s == "debruijn") return PrettyStyle::DeBruijn;
  throw Error("unknown style '" + s + "' (named|debruijn)");
}

struct CommonFlags {
  std::string sig;
  std::string atoms;
};

void add_sig_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--sig", f.sig, "signature: built-in name or DSL file path")
      ->required();
  cmd->add_option("--atoms", f.atoms,
                  "atom list for stlc/typed-forests: a count or names a,b,c");
}

int cmd_unfold(const CommonFlags& f, const std::string& eqs,
               const std::string& root, std::size_t depth,
               const std::string& style, std::ostream& out) {
  SignaturePtr sig = load_signature(f.sig, f.atoms);
  EquationSystem es = parse_equations(sig, slurp(eqs));
  Solution sol = solve(es);
  auto it = sol.find(root);
  if (it == sol.end()) throw Error("no unknown named '" + root + "'");
  out << pretty(it->second, depth, parse_style(style)) << "\n";
  return 0;
}

int cmd_bisim(const CommonFlags& f, const std::string& eqs,
              const std::string& root, const std::string& eqs2,
              const std::string& root2, std::size_t depth, bool rational,
              bool expect_equal, std::ostream& out) {
  SignaturePtr sig = load_signature(f.sig, f.atoms);
  EquationSystem a = parse_equations(sig, slurp(eqs));
  EquationSystem b = parse_equations(sig, slurp(eqs2.empty() ? eqs : eqs2));
  std::string rb = root2.empty() ? root : root2;
  bool equal;
  if (rational) {
    equal = bisim_rational(RationalHandle::make(a, root),
                           RationalHandle::make(b, rb));
  } else {
    equal = bisim_to_depth(solve(a).at(root), solve(b).at(rb), depth);
  }
  out << (equal ? "true" : "false") << "\n";
  if (expect_equal && !equal) throw Error("terms are not bisimilar");
  return 0;
}

int cmd_laws(const CommonFlags& f, std::uint64_t seed, int trials,
             std::size_t depth, std::ostream& out) {
  SignaturePtr sig = load_signature(f.sig, f.atoms);
  LawReport report = check_monad_laws(sig, seed, trials, depth);
  out << report.str();
  if (!report.ok()) throw Error("law failures reported");
  return 0;
}

int cmd_inhabit(const std::string& type_text, const std::string& ctx_text,
                std::size_t fuel, const std::string& mode, std::ostream& out) {
  SimpleType a = parse_simple_type(type_text);
  std::vector<SimpleType> gamma;
  for (auto& [name, ty] : parse_typing_context(ctx_text)) gamma.push_back(ty);
  if (mode == "forest") {
    out << pretty(generate_search_forest(gamma, a), fuel, PrettyStyle::Named)
        << "\n";
    return 0;
  }
  if (mode != "terms") throw Error("unknown mode '" + mode + "' (forest|terms)");
  for (const FinTerm& t : enumerate_inhabitants(gamma, a, fuel))
    out << pretty(embed(t), t.height() + 1, PrettyStyle::Named) << "\n";
  return 0;
}

int cmd_check_sig(const CommonFlags& f, const std::vector<std::string>& probe,
                  std::ostream& out) {
  SignaturePtr sig = load_signature(f.sig, f.atoms);
  std::vector<OpIndex> ops;
  if (probe.empty()) {
    ops = sig->probe_ops;
  } else {
    for (const auto& p : probe) ops.push_back(parse_op_index(*sig, p));
  }
  ValidationReport report = validate_signature(*sig, ops);
  out << report.str();
  if (!report.ok()) throw Error("signature validation failures");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"coinductive syntax engine"};
  app.require_subcommand(1);

  CommonFlags uf, bf, lf, cf;
  std::string eqs, root, eqs2, root2, style = "named";
  std::size_t depth = 4;
  auto* unfold = app.add_subcommand("unfold", "solve a system and print a prefix");
  add_sig_flags(unfold, uf);
  unfold->add_option("--eqs", eqs, "equation file")->required();
  unfold->add_option("--root", root, "unknown to print")->required();
  unfold->add_option("--depth", depth, "constructor layers to force");
  unfold->add_option("--style", style, "named|debruijn");

  std::string b_eqs, b_root, b_eqs2, b_root2;
  std::size_t b_depth = 64;
  bool b_rational = false, b_expect = false;
  auto* bisim = app.add_subcommand("bisim", "compare two rational terms");
  add_sig_flags(bisim, bf);
  bisim->add_option("--eqs", b_eqs, "equation file")->required();
  bisim->add_option("--root", b_root, "unknown on the left")->required();
  bisim->add_option("--eqs2", b_eqs2, "second equation file (defaults to --eqs)");
  bisim->add_option("--root2", b_root2, "unknown on the right (defaults to --root)");
  bisim->add_option("--depth", b_depth, "comparison depth");
  bisim->add_flag("--rational", b_rational, "decide exactly on the presentations");
  bisim->add_flag("--expect-equal", b_expect, "exit 1 when not bisimilar");

  std::uint64_t seed = 0;
  int trials = 100;
  std::size_t l_depth = 8;
  auto* laws = app.add_subcommand("laws", "randomized monad-law checks");
  add_sig_flags(laws, lf);
  laws->add_option("--seed", seed, "rng seed");
  laws->add_option("--trials", trials, "trials per law");
  laws->add_option("--depth", l_depth, "bisimilarity depth");

  std::string i_type, i_ctx, i_mode = "terms";
  std::size_t i_fuel = 8;
  auto* inhabit = app.add_subcommand("inhabit", "inhabitation search forests");
  inhabit->add_option("--type", i_type, "goal type, e.g. \"(0->0)->0->0\"")
      ->required();
  inhabit->add_option("--context", i_ctx, "typing context \"x:A, y:B\"");
  inhabit->add_option("--fuel", i_fuel, "constructor layers to explore");
  inhabit->add_option("--mode", i_mode, "terms|forest");

  std::vector<std::string> probe;
  auto* check = app.add_subcommand("check-sig", "validate a signature on a probe");
  add_sig_flags(check, cf);
  check->add_option("--probe", probe, "constructor literals to probe");

  try {
    // CLI11's vector overload expects a reversed argument list.
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (unfold->parsed()) return cmd_unfold(uf, eqs, root, depth, style, out);
    if (bisim->parsed())
      return cmd_bisim(bf, b_eqs, b_root, b_eqs2, b_root2, b_depth, b_rational,
                       b_expect, out);
    if (laws->parsed()) return cmd_laws(lf, seed, trials, l_depth, out);
    if (inhabit->parsed()) return cmd_inhabit(i_type, i_ctx, i_fuel, i_mode, out);
    if (check->parsed()) return cmd_check_sig(cf, probe, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace cocalc
