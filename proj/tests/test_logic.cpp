#include <doctest.h>

#include <set>

#include "doxa/error.hpp"
#include "doxa/formula.hpp"
#include "doxa/harness.hpp"
#include "doxa/point_set.hpp"
#include "doxa/syntax.hpp"

using doxa::Formula;
using doxa::FormulaKind;
using doxa::parse_formula;
using doxa::render_formula;

namespace {
Formula p() { return Formula::atom("p"); }
Formula q() { return Formula::atom("q"); }
}  // namespace

TEST_SUITE("logic") {
  TEST_CASE("sugar normalizes to the core connectives") {
    CHECK(Formula::negation(p()) == Formula::implies(p(), Formula::falsum()));
    CHECK(Formula::verum() == Formula::implies(Formula::falsum(), Formula::falsum()));
    CHECK(Formula::conjunction(p(), q()) ==
          Formula::negation(Formula::implies(p(), Formula::negation(q()))));
    CHECK(Formula::disjunction(p(), q()) == Formula::implies(Formula::negation(p()), q()));
    CHECK(Formula::equivalence(p(), q()) ==
          Formula::conjunction(Formula::implies(p(), q()), Formula::implies(q(), p())));
  }

  TEST_CASE("accessors refuse the wrong kind") {
    CHECK_THROWS(p().lhs());
    CHECK_THROWS(p().body());
    CHECK(Formula::knows("a", p()).label() == "a");
    CHECK(Formula::knows("a", p()).body() == p());
  }

  TEST_CASE("modal depth") {
    CHECK(doxa::modal_depth(p()) == 0);
    CHECK(doxa::modal_depth(Formula::believes("a", Formula::implies(Formula::believes("b", p()), p()))) == 2);
    CHECK(doxa::modal_depth(Formula::knows("a", Formula::knows("a", Formula::knows("a", p())))) == 3);
    const auto l = Formula::knows("a", p());
    const auto r = Formula::believes("b", Formula::knows("a", q()));
    CHECK(doxa::modal_depth(Formula::implies(l, r)) == 2);
  }

  TEST_CASE("agents and atoms") {
    const auto f = parse_formula("K[a] p -> B[b] (q & K[a] false)");
    CHECK(doxa::agents_of(f) == std::set<std::string>{"a", "b"});
    CHECK(doxa::atoms_of(f) == std::set<std::string>{"p", "q"});
    CHECK(doxa::formula_size(p()) == 1);
    CHECK(doxa::formula_size(Formula::negation(p())) == 3);
  }

  TEST_CASE("beliefs as knowledge rewrites every B") {
    CHECK(doxa::beliefs_as_knowledge(parse_formula("B[a] (p -> B[b] q)")) == parse_formula("K[a] (p -> K[b] q)"));
  }

  TEST_CASE("parse examples") {
    CHECK(parse_formula("K[a] p -> B[a] p") == Formula::implies(Formula::knows("a", p()), Formula::believes("a", p())));
    CHECK(parse_formula("~p") == Formula::implies(p(), Formula::falsum()));
    CHECK(parse_formula("false") == Formula::falsum());
    CHECK(parse_formula("true") == Formula::verum());
    CHECK(parse_formula("  ( p )  ") == p());
  }

  TEST_CASE("precedence and associativity") {
    // -> is right-associative
    CHECK(parse_formula("p -> q -> p") == Formula::implies(p(), Formula::implies(q(), p())));
    // & binds tighter than |, | tighter than ->, -> tighter than <->
    CHECK(parse_formula("p | q & p") == Formula::disjunction(p(), Formula::conjunction(q(), p())));
    CHECK(parse_formula("p & q -> p | q") ==
          Formula::implies(Formula::conjunction(p(), q()), Formula::disjunction(p(), q())));
    CHECK(parse_formula("p <-> q -> p") == Formula::equivalence(p(), Formula::implies(q(), p())));
    CHECK(parse_formula("p <-> q <-> p") == Formula::equivalence(Formula::equivalence(p(), q()), p()));
    // modalities and ~ bind tightest
    CHECK(parse_formula("K[a] p & q") == Formula::conjunction(Formula::knows("a", p()), q()));
    CHECK(parse_formula("~K[a] ~p") == Formula::negation(Formula::knows("a", Formula::negation(p()))));
    CHECK(parse_formula("K[agent_2]B[b]x1") == Formula::knows("agent_2", Formula::believes("b", Formula::atom("x1"))));
  }

  TEST_CASE("K and B are ordinary identifiers without a bracket") {
    CHECK(parse_formula("K -> B") == Formula::implies(Formula::atom("K"), Formula::atom("B")));
  }

  TEST_CASE("syntax errors") {
    auto error = [](const char* text) -> doxa::ParseError {
      try {
        parse_formula(text);
      } catch (const doxa::ParseError& e) {
        return e;
      }
      FAIL("no error for " << text);
      return doxa::ParseError("", 0);
    };
    auto e = error("B[a]");
    CHECK(std::string(e.what()).find("expected formula after modality") != std::string::npos);
    CHECK(e.offset() == 4);
    CHECK_FALSE(e.expected().empty());

    CHECK(std::string(error("p + q").what()).find("unknown operator '+'") != std::string::npos);
    CHECK(error("p + q").offset() == 2);
    CHECK(std::string(error("(p -> q").what()).find("unbalanced parenthesis") != std::string::npos);
    CHECK(std::string(error("p)").what()).find("unbalanced parenthesis") != std::string::npos);
    CHECK(std::string(error("K[a p").what()).find("unbalanced bracket") != std::string::npos);
    CHECK(std::string(error("p]").what()).find("unbalanced bracket") != std::string::npos);
    CHECK(std::string(error("K[] p").what()).find("expected agent identifier") != std::string::npos);
    CHECK(std::string(error("~").what()).find("expected formula after '~'") != std::string::npos);
    CHECK(std::string(error("").what()).find("unexpected end of input") != std::string::npos);
    CHECK(std::string(error("p q").what()).find("unexpected 'q'") != std::string::npos);
  }

  TEST_CASE("render examples") {
    CHECK(render_formula(Formula::implies(p(), Formula::falsum())) == "~p");
    CHECK(render_formula(Formula::knows("a", Formula::believes("b", p()))) == "K[a] B[b] p");
    CHECK(render_formula(Formula::falsum()) == "false");
    CHECK(render_formula(Formula::verum()) == "true");
    CHECK(render_formula(parse_formula("(p -> q) -> p")) == "(p -> q) -> p");
    CHECK(render_formula(parse_formula("p -> (q -> p)")) == "p -> q -> p");
    CHECK(render_formula(parse_formula("K[a] (p & q)")) == "K[a] (p & q)");
    CHECK(render_formula(parse_formula("p & q | ~p")) == "p & q | ~p");
  }

  TEST_CASE("parse(render(f)) == f over enumerated and sampled formulas") {
    const std::vector<std::string> agents{"a", "b"};
    const std::vector<std::string> atoms{"p", "q"};
    for (const auto& f : doxa::enumerate_formulas(agents, atoms, 2)) {
      const auto text = render_formula(f);
      REQUIRE_MESSAGE(parse_formula(text) == f, text);
    }
    doxa::Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
      const auto f = doxa::sample_formula(rng, agents, atoms, 1 + i % 4);
      const auto text = render_formula(f);
      REQUIRE_MESSAGE(parse_formula(text) == f, text);
    }
  }

  TEST_CASE("sugared formulas round-trip") {
    for (const char* text : {"p & q & p", "(p | q) & p", "p | q | p", "(p <-> q) & (q <-> p)", "~(p & q)",
                             "~~p", "(p -> false) -> false", "K[a] ~p | B[b] true", "(p | q) -> false",
                             "~p -> q", "~(p -> q) -> q"}) {
      const auto f = parse_formula(text);
      CHECK_MESSAGE(parse_formula(render_formula(f)) == f, text);
    }
  }

  TEST_CASE("structural order is total and consistent with equality") {
    const auto fs = doxa::enumerate_formulas({"a"}, {"p"}, 1);
    std::set<Formula> unique(fs.begin(), fs.end());
    CHECK(unique.size() == fs.size());
    CHECK(parse_formula("p -> q") == parse_formula("p->q"));
    CHECK(parse_formula("p -> q") != parse_formula("q -> p"));
  }
}

TEST_SUITE("point_set") {
  TEST_CASE("bitset operations agree with std::set") {
    doxa::Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 1 + rng.below(150);
      doxa::PointSet a(n), b(n);
      std::set<std::size_t> sa, sb;
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.coin()) a.set(i), sa.insert(i);
        if (rng.coin()) b.set(i), sb.insert(i);
      }
      std::set<std::size_t> inter, uni, comp;
      for (std::size_t i = 0; i < n; ++i) {
        if (sa.count(i) && sb.count(i)) inter.insert(i);
        if (sa.count(i) || sb.count(i)) uni.insert(i);
        if (!sa.count(i)) comp.insert(i);
      }
      auto as_set = [](const doxa::PointSet& s) {
        const auto m = s.members();
        return std::set<std::size_t>(m.begin(), m.end());
      };
      CHECK(as_set(a & b) == inter);
      CHECK(as_set(a | b) == uni);
      CHECK(as_set(~a) == comp);
      CHECK(a.count() == sa.size());
      CHECK(a.none() == sa.empty());
      CHECK(a.all() == (sa.size() == n));
      CHECK(a.intersects(b) == !inter.empty());
      CHECK(a.is_subset_of(b) == std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
      CHECK(a.first() == (sa.empty() ? std::nullopt : std::optional(*sa.begin())));
    }
  }

  TEST_CASE("of and equality") {
    const auto s = doxa::PointSet::of(5, {1, 3});
    CHECK(s.test(1));
    CHECK_FALSE(s.test(2));
    CHECK(s == doxa::PointSet::of(5, {3, 1}));
    CHECK(doxa::PointSet(70, true).all());
    CHECK((~doxa::PointSet(70, true)).none());
  }
}
