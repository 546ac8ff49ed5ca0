#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cocalc/error.hpp"
#include "cocalc/signature.hpp"

using namespace cocalc;

TEST_CASE("sort printing round-trips") {
  Sort a = Sort::atom("0");
  Sort arr = Sort::arrow(Sort::arrow(a, a), a);
  Sort pr = Sort::pair(Sort::arrow(a, a), Sort::atom("t"));
  for (const Sort& s : {a, arr, pr, Sort::arrow(a, Sort::arrow(a, a))}) {
    CHECK(Sort::parse(s.str()) == s);
  }
  CHECK(arr.str() == "(0 -> 0) -> 0");
  CHECK(pr.str() == "(0 -> 0) * t");
  CHECK(Sort::arrow(a, Sort::arrow(a, a)).str() == "0 -> 0 -> 0");
}

TEST_CASE("sort equality is structural") {
  Sort a1 = Sort::arrow(Sort::atom("x"), Sort::atom("y"));
  Sort a2 = Sort::arrow(Sort::atom("x"), Sort::atom("y"));
  CHECK(a1 == a2);
  CHECK(a1.hash() == a2.hash());
  CHECK(a1 != Sort::arrow(Sort::atom("y"), Sort::atom("x")));
}

TEST_CASE("stlc arities match the standard typing rules") {
  auto sig = builtin_signature("stlc", {"0"});
  Sort z = Sort::atom("0");

  // lam<s,t> : [ [s]t ] -> s=>t
  auto lam = sig->arity(OpIndex{"lam", {z, z}, {}});
  REQUIRE(lam.has_value());
  CHECK(lam->target == Sort::arrow(z, z));
  REQUIRE(lam->args.size() == 1);
  CHECK(lam->args[0].bound == std::vector<Sort>{z});
  CHECK(lam->args[0].arg_sort == z);

  // app<s,t> : [ s=>t, s ] -> t
  auto app = sig->arity(OpIndex{"app", {z, z}, {}});
  REQUIRE(app.has_value());
  CHECK(app->target == z);
  REQUIRE(app->args.size() == 2);
  CHECK(app->args[0].bound.empty());
  CHECK(app->args[0].arg_sort == Sort::arrow(z, z));
  CHECK(app->args[1].arg_sort == z);
}

TEST_CASE("stlc arities hold for random sort pairs") {
  auto sig = builtin_signature("stlc", {"0", "1"});
  std::mt19937_64 rng(7);
  std::vector<Sort> pool = sig->sample_sorts;
  for (int i = 0; i < 100; i++) {
    Sort s = pool[rng() % pool.size()];
    Sort t = pool[rng() % pool.size()];
    auto app = sig->arity(OpIndex{"app", {s, t}, {}});
    REQUIRE(app.has_value());
    CHECK(app->args[0].arg_sort == Sort::arrow(s, t));
    CHECK(app->args[1].arg_sort == s);
    CHECK(app->target == t);
    auto lam = sig->arity(OpIndex{"lam", {s, t}, {}});
    REQUIRE(lam.has_value());
    CHECK(lam->args[0].bound == std::vector<Sort>{s});
    CHECK(lam->args[0].arg_sort == t);
    CHECK(lam->target == Sort::arrow(s, t));
    // purity: lookups are stable
    CHECK(*lam == *sig->arity(OpIndex{"lam", {s, t}, {}}));
  }
}

TEST_CASE("untyped forest arities") {
  auto sig = builtin_signature("untyped-forests");
  Sort v = Sort::atom("v"), t = Sort::atom("t"), e = Sort::atom("e");

  auto lam = sig->arity(OpIndex{"lam", {}, {}});
  REQUIRE(lam.has_value());
  CHECK(lam->args[0].bound == std::vector<Sort>{v});
  CHECK(lam->args[0].arg_sort == t);
  CHECK(lam->target == t);

  // n = 0: empty choice of alternatives
  auto sum0 = sig->arity(OpIndex{"sum", {}, {0}});
  REQUIRE(sum0.has_value());
  CHECK(sum0->args.empty());
  CHECK(sum0->target == t);

  auto sum3 = sig->arity(OpIndex{"sum", {}, {3}});
  REQUIRE(sum3->args.size() == 3);
  for (const auto& a : sum3->args) CHECK(a.arg_sort == e);

  auto tup2 = sig->arity(OpIndex{"tup", {}, {2}});
  REQUIRE(tup2->args.size() == 3);
  CHECK(tup2->args[0].arg_sort == v);
  CHECK(tup2->args[1].arg_sort == t);
  CHECK(tup2->args[2].arg_sort == t);
  CHECK(tup2->target == e);
}

TEST_CASE("typed forest tuple arity builds the spine type") {
  auto sig = builtin_signature("typed-forests", {"p"});
  Sort p = Sort::atom("p");
  Sort b1 = Sort::arrow(p, p);
  Sort b2 = p;
  auto tup = sig->arity(OpIndex{"tup", {b1, b2, p}, {}});
  REQUIRE(tup.has_value());
  // head variable has sort <B1 => B2 => p, v>
  Sort head = Sort::arrow(b1, Sort::arrow(b2, p));
  CHECK(tup->args[0].arg_sort == Sort::pair(head, Sort::atom("v")));
  CHECK(tup->args[1].arg_sort == Sort::pair(b1, Sort::atom("t")));
  CHECK(tup->args[2].arg_sort == Sort::pair(b2, Sort::atom("t")));
  CHECK(tup->target == Sort::pair(p, Sort::atom("e")));

  auto lam = sig->arity(OpIndex{"lam", {p, p}, {}});
  REQUIRE(lam.has_value());
  CHECK(lam->args[0].bound ==
        std::vector<Sort>{Sort::pair(p, Sort::atom("v"))});
  CHECK(lam->args[0].arg_sort == Sort::pair(p, Sort::atom("t")));
  CHECK(lam->target == Sort::pair(Sort::arrow(p, p), Sort::atom("t")));
}

TEST_CASE("unknown built-in name fails") {
  CHECK_THROWS_AS(builtin_signature("nope"), Error);
}

TEST_CASE("validate_signature reports per probe index") {
  auto sig = builtin_signature("stlc", {"0"});
  Sort z = Sort::atom("0");
  auto report = validate_signature(
      *sig, {OpIndex{"app", {z, z}, {}}, OpIndex{"lam", {z, z}, {}}});
  CHECK(report.ok());
  CHECK(report.entries.size() == 2);

  // a bogus index is a failure in the report, not an exception
  auto bad = validate_signature(*sig, {OpIndex{"frob", {z}, {}}});
  CHECK_FALSE(bad.ok());
  CHECK_FALSE(bad.entries[0].arity.has_value());
}

TEST_CASE("validate flags sorts outside the signature") {
  // DSL signature whose op mentions a sort the validator rejects: build a
  // signature by hand with a broken arity function.
  auto sig = std::make_shared<Signature>();
  sig->name = "broken";
  sig->valid_sort = [](const Sort& s) { return s == Sort::atom("ok"); };
  sig->arity = [](const OpIndex& op) -> std::optional<ConstructorArity> {
    if (op.name != "c") return std::nullopt;
    return ConstructorArity{{}, Sort::atom("mystery")};
  };
  auto report = validate_signature(*sig, {OpIndex{"c", {}, {}}});
  CHECK_FALSE(report.ok());
  REQUIRE(!report.entries[0].failures.empty());
  CHECK(report.entries[0].failures[0].find("mystery") != std::string::npos);
}

TEST_CASE("empty probe of an empty signature is vacuously valid") {
  auto sig = parse_signature("sorts { } ops { }");
  auto report = validate_signature(*sig, {});
  CHECK(report.ok());
  CHECK(report.entries.empty());
}

static const char* kForestDsl = R"(
# untyped forests, sums up to n=2
sorts { v; t; e; }
ops {
  lam : [v]t -> t;
  sum0 : -> t;
  sum1 : e -> t;
  sum2 : e, e -> t;
  tup1 : v, t -> e;
}
)";

TEST_CASE("signature DSL parses the forest fragment") {
  auto sig = parse_signature(kForestDsl);
  REQUIRE(sig->finite.has_value());
  CHECK(sig->finite->sorts == std::vector<std::string>{"v", "t", "e"});
  // hand count: lam, sum0, sum1, sum2, tup1
  CHECK(sig->finite->ops.size() == 5);

  auto lam = sig->arity(OpIndex{"lam", {}, {}});
  REQUIRE(lam.has_value());
  CHECK(lam->args[0].bound == std::vector<Sort>{Sort::atom("v")});
  auto sum2 = sig->arity(OpIndex{"sum2", {}, {}});
  REQUIRE(sum2.has_value());
  CHECK(sum2->args.size() == 2);
  CHECK_FALSE(sig->arity(OpIndex{"nope", {}, {}}).has_value());
}

TEST_CASE("signature DSL round-trips through the printer") {
  auto sig = parse_signature(kForestDsl);
  std::string printed = print_signature(*sig);
  auto again = parse_signature(printed);
  REQUIRE(again->finite.has_value());
  CHECK(again->finite->sorts == sig->finite->sorts);
  REQUIRE(again->finite->ops.size() == sig->finite->ops.size());
  for (std::size_t i = 0; i < sig->finite->ops.size(); i++) {
    CHECK(again->finite->ops[i].first == sig->finite->ops[i].first);
    CHECK(again->finite->ops[i].second == sig->finite->ops[i].second);
  }
}

TEST_CASE("signature DSL errors") {
  // undeclared sort, named in the message
  try {
    parse_signature("sorts { v; } ops { c : w -> v; }");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'w'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_signature("sorts { v; v; } ops { }"), ParseError);
  CHECK_THROWS_AS(parse_signature("sorts { v; } ops { c : v -> v; c : -> v; }"),
                  ParseError);
  CHECK_THROWS_AS(parse_signature("sorts { v } ops { }"), ParseError);
}

TEST_CASE("op index literals parse against a signature") {
  auto forests = builtin_signature("untyped-forests");
  CHECK(parse_op_index(*forests, "sum_2") == (OpIndex{"sum", {}, {2}}));
  CHECK(parse_op_index(*forests, "lam") == (OpIndex{"lam", {}, {}}));

  auto stlc = builtin_signature("stlc", {"0"});
  Sort z = Sort::atom("0");
  CHECK(parse_op_index(*stlc, "app{0,0}") == (OpIndex{"app", {z, z}, {}}));
  CHECK(parse_op_index(*stlc, "lam{0 -> 0,0}") ==
        (OpIndex{"lam", {Sort::arrow(z, z), z}, {}}));

  auto typed = builtin_signature("typed-forests", {"0"});
  CHECK(parse_op_index(*typed, "sum{0}_2") == (OpIndex{"sum", {z}, {2}}));
  CHECK_THROWS_AS(parse_op_index(*stlc, "sum_2"), Error);

  // canonical form round-trips
  for (const OpIndex& op : typed->probe_ops)
    CHECK(parse_op_index(*typed, op.str()) == op);
}
