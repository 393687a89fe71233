#include <doctest.h>

#include "doxa/error.hpp"
#include "doxa/harness.hpp"
#include "doxa/syntax.hpp"
#include "doxa/transform.hpp"
#include "support.hpp"

using doxa::RelationalModel;
using testing::load_rel;
using testing::load_simp;

namespace {

using WorldSet = std::set<std::string>;
using Vertex = std::pair<WorldSet, std::string>;  // (knowledge class, agent)
using Simplex = std::set<Vertex>;

WorldSet naive_class(const RelationalModel& m, const std::string& a, std::size_t w) {
  WorldSet out;
  for (const auto& [from, to] : m.knowledge.at(a).edges())
    if (from == w) out.insert(m.worlds[to]);
  return out;
}

/// The expected complex, facets and belief facets written out directly.
struct ExpectedComplex {
  std::set<Simplex> facets;
  std::map<std::string, std::set<Simplex>> belief;
};

ExpectedComplex expected_translation(const RelationalModel& m) {
  ExpectedComplex out;
  for (std::size_t w = 0; w < m.size(); ++w) {
    Simplex x;
    for (const auto& a : m.agents) x.insert({naive_class(m, a, w), a});
    out.facets.insert(x);
    for (const auto& a : m.agents)
      if (m.belief.at(a).contains(w, w)) out.belief[a].insert(x);
  }
  return out;
}

ExpectedComplex actual_translation(const RelationalModel& m, const doxa::SimplicialModel& s) {
  // node ids are "(<least world>,<agent>)"; resolve them to classes via the
  // relational model rather than the translation witness
  auto vertex = [&](const doxa::ColoredNode& n) {
    const auto inner = n.id.substr(1, n.id.size() - 2);
    const auto comma = inner.rfind(',');
    const auto world = inner.substr(0, comma);
    REQUIRE(inner.substr(comma + 1) == n.color);
    return Vertex{naive_class(m, n.color, m.world_index(world)), n.color};
  };
  auto simplex = [&](const doxa::Face& f) {
    Simplex x;
    for (auto i : f) x.insert(vertex(s.nodes[i]));
    return x;
  };
  ExpectedComplex out;
  for (const auto& f : s.knowledge.facets) out.facets.insert(simplex(f));
  for (const auto& [a, c] : s.belief)
    for (const auto& f : c.facets) out.belief[a].insert(simplex(f));
  return out;
}

}  // namespace

TEST_SUITE("transform") {
  TEST_CASE("an improper model cannot be translated directly") {
    try {
      doxa::to_simplicial(load_rel("fig1.json"));
      FAIL("expected an error");
    } catch (const doxa::ModelError& e) {
      CHECK(std::string(e.what()).find("not proper") != std::string::npos);
      REQUIRE(e.witness().size() == 2);
      CHECK(e.witness()[0] != e.witness()[1]);
    }
  }

  TEST_CASE("properize then translate the three-agent fixture") {
    const auto m = load_rel("fig1.json");
    const auto p = doxa::properize(m);
    CHECK(p.model.size() == 9);
    CHECK(p.witness.distinguished == "a");
    CHECK(p.model.worlds[1] == "(w0,w1)");
    CHECK(doxa::validate_relational(p.model).ok());
    CHECK(doxa::is_proper(p.model));
    CHECK(doxa::check_bounded_morphism(p.model, m, p.witness.projection).ok());

    const auto t = doxa::to_simplicial(p.model);
    CHECK(t.model.facet_count() == 9);
    for (const auto& a : t.model.agents) {
      std::size_t count = 0;
      for (const auto& n : t.model.nodes) count += n.color == a;
      CHECK(count == 3);
    }
    auto in = [&](const std::string& a, std::size_t x) {
      const auto& fs = t.model.belief.at(a).facets;
      return std::find(fs.begin(), fs.end(), t.model.knowledge.facets[x]) != fs.end();
    };
    std::size_t ab = 0, ac = 0, none = 0;
    for (std::size_t x = 0; x < 9; ++x) {
      ab += in("a", x) && in("b", x);
      ac += in("a", x) && in("c", x);
      none += !in("a", x) && !in("b", x) && !in("c", x);
    }
    CHECK(ab == 3);
    CHECK(ac == 3);
    CHECK(none == 3);
    const auto report = doxa::validate_simplicial(t.model);
    CHECK(report.ok());
    for (const auto& a : t.model.agents) CHECK(report.flags.at(a + "-serial"));
  }

  TEST_CASE("translation matches the brute-force construction") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      doxa::GenParams gp;
      gp.seed = seed;
      gp.worlds = 1 + seed % 6;
      gp.agents = 1 + seed % 3;
      const auto m = doxa::gen_proper_relational(gp);
      const auto t = doxa::to_simplicial(m);
      const auto expected = expected_translation(m);
      const auto actual = actual_translation(m, t.model);
      CHECK(actual.facets == expected.facets);
      CHECK(actual.belief == expected.belief);
      CHECK(t.model.facet_count() == m.size());
      // the witness: f is a bijection and f(w) is the facet of w's classes
      std::set<std::size_t> image(t.witness.world_to_facet.begin(), t.witness.world_to_facet.end());
      CHECK(image.size() == m.size());
      for (std::size_t w = 0; w < m.size(); ++w)
        for (auto n : t.model.knowledge.facets[t.witness.world_to_facet[w]]) {
          const auto& meaning = t.witness.node_semantics[n];
          CHECK(std::find(meaning.worlds.begin(), meaning.worlds.end(), w) != meaning.worlds.end());
        }
      for (const auto& [p, ext] : m.valuation)
        for (std::size_t w = 0; w < m.size(); ++w)
          CHECK(ext.test(w) == t.model.valuation.at(p).test(t.witness.world_to_facet[w]));
      const auto report = doxa::validate_simplicial(t.model);
      CHECK(report.ok());
      for (const auto& a : m.agents) CHECK(report.flags.at(a + "-serial"));
    }
  }

  TEST_CASE("single world") {
    RelationalModel m;
    m.worlds = {"w"};
    m.agents = {"a"};
    m.knowledge.emplace("a", doxa::Relation::identity(1));
    m.belief.emplace("a", doxa::Relation::identity(1));
    m.valuation.emplace("p", doxa::PointSet(1, true));
    const auto t = doxa::to_simplicial(m);
    CHECK(t.model.facet_count() == 1);
    CHECK(t.model.valuation.at("p") == doxa::PointSet(1, true));
    CHECK_THROWS_WITH_AS(doxa::properize(m), doctest::Contains("needs at least two agents"), doxa::ModelError);
  }

  TEST_CASE("to_relational on the false-belief fixture") {
    const auto t = doxa::to_relational(load_simp("fb.json"));
    const auto& m = t.model;
    REQUIRE(m.worlds == std::vector<std::string>{"X0", "X1"});
    CHECK(m.knowledge_of("a") == doxa::Relation::total(2));
    CHECK(m.knowledge_of("b") == doxa::Relation::identity(2));
    CHECK(m.belief_of("a").successors(0) == doxa::PointSet::of(2, {0}));
    CHECK(m.belief_of("a").successors(1) == doxa::PointSet::of(2, {0}));
    CHECK(m.belief_of("b").successors(0) == doxa::PointSet::of(2, {0}));
    // b1 occurs in no facet of S_b, so X1 has no Q_b-successor
    CHECK(m.belief_of("b").successors(1).none());
    const auto report = doxa::validate_relational(m);
    REQUIRE(report.has("belief-serial"));
    CHECK(report.find("belief-serial")->witness == std::vector<std::string>{"b", "X1"});
    CHECK(doxa::is_proper(m));
  }

  TEST_CASE("single facet to_relational") {
    auto s = load_simp("fb.json");
    s.knowledge.facets.resize(1);
    s.nodes.resize(2);
    s.valuation["p"] = doxa::PointSet(1, true);
    const auto t = doxa::to_relational(s);
    CHECK(t.model.size() == 1);
    for (const auto& a : t.model.agents) {
      CHECK(t.model.knowledge_of(a) == doxa::Relation::identity(1));
      CHECK(t.model.belief_of(a) == doxa::Relation::identity(1));
    }
  }

  TEST_CASE("to_relational agrees pointwise with the simplicial evaluator") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
      doxa::GenParams gp;
      gp.seed = seed;
      gp.agents = 1 + seed % 3;
      gp.nodes_per_agent = 1 + seed % 3;
      gp.facets = 1 + seed % 6;
      gp.serial = seed % 2 == 0;
      const auto s = doxa::gen_simplicial(gp);
      const auto t = doxa::to_relational(s);
      CHECK(doxa::is_proper(t.model));
      for (const auto& a : t.model.agents) CHECK(doxa::knowledge_class(t.model, a, 0).size() >= 1);
      doxa::Rng rng(seed);
      for (int i = 0; i < 30; ++i) {
        const auto f = doxa::sample_formula(rng, s.agents, {"p"}, i % 4);
        for (std::size_t x = 0; x < s.facet_count(); ++x)
          REQUIRE(doxa::eval_relational(t.model, x, f) == doxa::eval_simplicial(s, x, f));
      }
    }
  }

  TEST_CASE("to_relational after to_simplicial is an isomorphism") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      doxa::GenParams gp;
      gp.seed = seed + 77;
      gp.worlds = 1 + seed % 6;
      gp.agents = 1 + seed % 3;
      const auto m = doxa::gen_proper_relational(gp);
      const auto s = doxa::to_simplicial(m);
      const auto back = doxa::to_relational(s.model);
      CHECK(doxa::isomorphic_under(m, back.model, s.witness.world_to_facet));
    }
  }

  TEST_CASE("properize: class structure, properness and preservation") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      doxa::GenParams gp;
      gp.seed = seed;
      gp.worlds = 1 + seed % 5;
      gp.agents = 2 + seed % 2;
      const auto m = doxa::gen_relational(gp);
      const auto b = m.agents[seed % m.agents.size()];
      const auto p = doxa::properize(m, b);
      const auto n = m.size();
      REQUIRE(p.model.size() == n * n);
      CHECK(doxa::validate_relational(p.model).ok());
      CHECK(doxa::is_proper(p.model));
      const auto report = doxa::check_bounded_morphism(p.model, m, p.witness.projection);
      CHECK(report.ok());
      for (std::size_t i = 0; i < p.model.size(); ++i) {
        CHECK(p.witness.projection[i] == p.witness.carrier[i].first);
        CHECK(p.model.worlds[i] ==
              "(" + m.worlds[p.witness.carrier[i].first] + "," + m.worlds[p.witness.carrier[i].second] + ")");
      }
      std::set<std::size_t> g(p.witness.g.begin(), p.witness.g.end());
      CHECK(g.size() == n);
      CHECK(*g.rbegin() == n - 1);
      for (const auto& a : m.agents)
        for (std::size_t i = 0; i < p.model.size(); ++i) {
          const auto cls = doxa::knowledge_class(p.model, a, i);
          std::set<std::size_t> copies;
          for (auto j : cls) copies.insert(p.witness.carrier[j].second);
          if (a != b) CHECK(copies.size() == 1);
          else CHECK(copies.size() == cls.size());
        }
    }
  }

  TEST_CASE("properize of an already proper model still builds every copy") {
    doxa::GenParams gp;
    gp.seed = 4;
    gp.worlds = 3;
    gp.agents = 2;
    const auto m = doxa::gen_proper_relational(gp);
    const auto p = doxa::properize(m);
    CHECK(p.model.size() == 9);
    CHECK(doxa::is_proper(p.model));
    CHECK(doxa::check_bounded_morphism(p.model, m, p.witness.projection).ok());
    CHECK_THROWS_AS(doxa::properize(m, std::string("zz")), doxa::ModelError);
  }

  TEST_CASE("oracle on the properized three-agent fixture") {
    const auto p = doxa::properize(load_rel("fig1.json"));
    const auto r = doxa::oracle_agreement(p.model, 2, 200, 1);
    CHECK(r.ok());
    CHECK(r.instances > 0);
    CHECK_THROWS_AS(doxa::oracle_agreement(load_rel("fig1.json"), 1, 0, 1), doxa::ModelError);
  }

  TEST_CASE("a corrupted translation is caught with a witness") {
    const auto p = doxa::properize(load_rel("fig1.json"));
    auto t = doxa::to_simplicial(p.model);
    auto& sb = t.model.belief.at("b").facets;
    REQUIRE(sb.size() == 3);
    sb.erase(sb.begin());
    const auto r = doxa::oracle_agreement(p.model, t, 1, 0, 1);
    REQUIRE_FALSE(r.ok());
    bool falsum = false;
    for (const auto& f : r.failures) {
      CHECK(p.model.world_index(f.point) == f.point_index);
      CHECK(doxa::eval_relational(p.model, f.point_index, f.instance) !=
            doxa::eval_simplicial(t.model, t.witness.world_to_facet[f.point_index], f.instance));
      falsum = falsum || doxa::render_formula(f.instance) == "B[b] false";
    }
    CHECK(falsum);
  }
}
