#include "cocalc/sort.hpp"

#include <cctype>

#include "cocalc/error.hpp"

namespace cocalc {

namespace {

std::size_t combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Sort Sort::atom(std::string name) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Atom;
  rep->name = std::move(name);
  rep->hash = combine(1, std::hash<std::string>{}(rep->name));
  return Sort(std::move(rep));
}

Sort Sort::arrow(Sort domain, Sort codomain) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Arrow;
  rep->left = domain.rep_;
  rep->right = codomain.rep_;
  rep->hash = combine(combine(2, domain.hash()), codomain.hash());
  return Sort(std::move(rep));
}

Sort Sort::pair(Sort first, Sort second) {
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Pair;
  rep->left = first.rep_;
  rep->right = second.rep_;
  rep->hash = combine(combine(3, first.hash()), second.hash());
  return Sort(std::move(rep));
}

const std::string& Sort::atom_name() const { return rep_->name; }

Sort Sort::left() const { return Sort(rep_->left); }

Sort Sort::right() const { return Sort(rep_->right); }

bool Sort::rep_equal(const Rep& a, const Rep& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.hash != b.hash) return false;
  switch (a.kind) {
    case Kind::Atom:
      return a.name == b.name;
    case Kind::Arrow:
    case Kind::Pair:
      return rep_equal(*a.left, *b.left) && rep_equal(*a.right, *b.right);
  }
  return false;
}

bool Sort::operator==(const Sort& other) const {
  return rep_equal(*rep_, *other.rep_);
}

// Precedence levels: 0 = arrow position, 1 = pair component, 2 = primary.
void Sort::print_to(std::string& out, int parent_level) const {
  switch (rep_->kind) {
    case Kind::Atom:
      out += rep_->name;
      return;
    case Kind::Arrow: {
      bool parens = parent_level >= 1;
      if (parens) out += '(';
      Sort(rep_->left).print_to(out, 1);
      out += " -> ";
      Sort(rep_->right).print_to(out, 0);
      if (parens) out += ')';
      return;
    }
    case Kind::Pair: {
      bool parens = parent_level >= 2;
      if (parens) out += '(';
      Sort(rep_->left).print_to(out, 2);
      out += " * ";
      Sort(rep_->right).print_to(out, 2);
      if (parens) out += ')';
      return;
    }
  }
}

std::string Sort::str() const {
  std::string out;
  print_to(out, 0);
  return out;
}

namespace {

struct SortParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) {
    // Sorts are single-line; column is offset + 1.
    throw ParseError("sort syntax: " + msg, 1, pos + 1);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      pos++;
      return true;
    }
    return false;
  }

  bool eat_arrow() {
    skip_ws();
    if (pos + 1 < text.size() && text[pos] == '-' && text[pos + 1] == '>') {
      pos += 2;
      return true;
    }
    return false;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) pos++;
    if (pos == start) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  Sort primary() {
    skip_ws();
    if (eat('(')) {
      Sort s = arrow_level();
      if (!eat(')')) fail("expected ')'");
      return s;
    }
    return Sort::atom(ident());
  }

  Sort pair_level() {
    Sort s = primary();
    if (eat('*')) return Sort::pair(s, primary());
    return s;
  }

  Sort arrow_level() {
    Sort s = pair_level();
    if (eat_arrow()) return Sort::arrow(s, arrow_level());
    return s;
  }

  Sort parse() {
    Sort s = arrow_level();
    skip_ws();
    if (pos != text.size()) fail("trailing characters");
    return s;
  }
};

}  // namespace

Sort Sort::parse(std::string_view text) { return SortParser{text}.parse(); }

std::size_t hash_sorts(const std::vector<Sort>& sorts) {
  std::size_t h = sorts.size();
  for (const Sort& s : sorts) h = combine(h, s.hash());
  return h;
}

std::string sorts_str(const std::vector<Sort>& sorts) {
  std::string out = "[";
  for (std::size_t i = 0; i < sorts.size(); i++) {
    if (i) out += ", ";
    out += sorts[i].str();
  }
  out += "]";
  return out;
}

}  // namespace cocalc
