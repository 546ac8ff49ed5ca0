#include "cocalc/signature.hpp"

#include <cctype>
#include <sstream>

#include "cocalc/error.hpp"

namespace cocalc {

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool OpIndex::operator==(const OpIndex& other) const {
  return name == other.name && sort_params == other.sort_params &&
         nat_params == other.nat_params;
}

std::size_t OpIndex::hash() const {
  std::size_t h = std::hash<std::string>{}(name);
  h = combine(h, hash_sorts(sort_params));
  for (auto n : nat_params) h = combine(h, static_cast<std::size_t>(n));
  return h;
}

std::string OpIndex::str() const {
  std::string out = name;
  if (!sort_params.empty()) {
    out += '{';
    for (std::size_t i = 0; i < sort_params.size(); i++) {
      if (i) out += ',';
      out += sort_params[i].str();
    }
    out += '}';
  }
  for (auto n : nat_params) out += "_" + std::to_string(n);
  return out;
}

std::string ConstructorArity::str() const {
  std::string out;
  for (std::size_t i = 0; i < args.size(); i++) {
    if (i) out += ", ";
    if (!args[i].bound.empty()) {
      out += '[';
      for (std::size_t j = 0; j < args[i].bound.size(); j++) {
        if (j) out += ' ';
        out += args[i].bound[j].str();
      }
      out += ']';
    }
    out += args[i].arg_sort.str();
  }
  out += " -> ";
  out += target.str();
  return out;
}

bool ValidationReport::ok() const {
  for (const auto& e : entries)
    if (!e.failures.empty()) return false;
  return true;
}

std::string ValidationReport::str() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << e.op.str() << ": ";
    if (e.arity)
      out << e.arity->str();
    else
      out << "<no arity>";
    if (e.failures.empty()) {
      out << " ok";
    } else {
      for (const auto& f : e.failures) out << "\n  failure: " << f;
    }
    out << "\n";
  }
  return out.str();
}

ValidationReport validate_signature(const Signature& sig,
                                    const std::vector<OpIndex>& probe) {
  ValidationReport report;
  for (const OpIndex& op : probe) {
    ValidationEntry entry{op, std::nullopt, {}};
    entry.arity = sig.arity(op);
    if (!entry.arity) {
      entry.failures.push_back("not an index of signature " + sig.name);
    } else {
      auto check_sort = [&](const Sort& s, const std::string& where) {
        if (!sig.valid_sort(s))
          entry.failures.push_back("invalid sort " + s.str() + " in " + where);
      };
      check_sort(entry.arity->target, "target");
      for (std::size_t i = 0; i < entry.arity->args.size(); i++) {
        const BinderArity& a = entry.arity->args[i];
        check_sort(a.arg_sort, "argument " + std::to_string(i));
        for (const Sort& b : a.bound)
          check_sort(b, "binders of argument " + std::to_string(i));
      }
      // Purity spot check: a second lookup must agree.
      auto again = sig.arity(op);
      if (!again || !(*again == *entry.arity))
        entry.failures.push_back("arity lookup is not stable");
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

OpIndex parse_op_index(const Signature& sig, std::string_view text) {
  OpIndex op;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw Error("constructor '" + std::string(text) + "': " + msg);
  };
  while (pos < text.size() && ident_char(text[pos])) pos++;
  if (pos == 0) fail("expected constructor name");
  std::string full(text.substr(0, pos));

  // A declared (DSL) constructor wins over family decomposition; the whole
  // literal must then be the bare name.
  if (sig.finite && pos == text.size()) {
    for (const auto& [name, arity] : sig.finite->ops) {
      if (name == full) {
        op.name = full;
        return op;
      }
    }
  }

  if (pos < text.size() && text[pos] == '{') {
    // Family with sort parameters; any _n suffixes follow the brace.
    op.name = full;
    std::size_t depth = 0;
    std::size_t start = ++pos;
    std::vector<std::string> parts;
    for (;; pos++) {
      if (pos >= text.size()) fail("unterminated '{'");
      char c = text[pos];
      if (c == '(')
        depth++;
      else if (c == ')')
        depth--;
      else if (depth == 0 && (c == ',' || c == '}')) {
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
        if (c == '}') break;
      }
    }
    pos++;
    for (const auto& p : parts) op.sort_params.push_back(Sort::parse(p));
    while (pos < text.size() && text[pos] == '_') {
      std::size_t start2 = ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) pos++;
      if (pos == start2) fail("expected digits after '_'");
      op.nat_params.push_back(std::stoull(std::string(text.substr(start2, pos - start2))));
    }
    if (pos != text.size()) fail("trailing characters");
  } else {
    if (pos != text.size()) fail("trailing characters");
    // Family without sort parameters: strip trailing _<digits> groups.
    std::string base = full;
    while (true) {
      std::size_t us = base.find_last_of('_');
      if (us == std::string::npos || us + 1 >= base.size()) break;
      bool digits = true;
      for (std::size_t i = us + 1; i < base.size(); i++)
        if (!std::isdigit(static_cast<unsigned char>(base[i]))) digits = false;
      if (!digits) break;
      op.nat_params.insert(op.nat_params.begin(), std::stoull(base.substr(us + 1)));
      base.resize(us);
    }
    op.name = base;
  }

  if (!sig.arity(op)) fail("not a constructor of signature " + sig.name);
  return op;
}

}  // namespace cocalc
