#include <doctest.h>

#include <json.hpp>

#include "doxa/error.hpp"
#include "doxa/harness.hpp"
#include "doxa/model_io.hpp"
#include "support.hpp"

using nlohmann::json;

namespace {

json fb() {
  return json::parse(R"({
    "kind": "simplicial", "agents": ["a", "b"],
    "nodes": [{"id": "a0", "color": "a"}, {"id": "b0", "color": "b"}, {"id": "b1", "color": "b"}],
    "facets": [["a0", "b0"], ["a0", "b1"]],
    "belief": {"a": [0], "b": [["b0", "a0"]]},
    "val": {"p": [0]}
  })");
}

}  // namespace

TEST_SUITE("model_io") {
  TEST_CASE("belief entries may be indices or node lists") {
    const auto file = doxa::parse_model(fb());
    const auto& m = std::get<doxa::SimplicialModel>(file.model);
    CHECK(m.belief.at("a") == m.belief.at("b"));
    CHECK(m == testing::load_simp("fb.json"));
  }

  TEST_CASE("models round-trip through JSON") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      doxa::GenParams p;
      p.seed = seed;
      p.worlds = 1 + seed % 5;
      p.agents = 1 + seed % 3;
      p.atoms = seed % 3;
      const auto r = doxa::gen_relational(p);
      CHECK(std::get<doxa::RelationalModel>(doxa::parse_model(doxa::to_json(r)).model) == r);
      const auto s = doxa::gen_simplicial(p);
      CHECK(std::get<doxa::SimplicialModel>(doxa::parse_model(doxa::to_json(s)).model) == s);
      CHECK(doxa::model_digest(r) == doxa::model_digest(r));
    }
    const auto file = doxa::load_model(testing::fixture("kasc.json"));
    const auto& m = std::get<doxa::SimplicialModel>(file.model);
    const auto again = doxa::parse_model(doxa::to_json(m, file.perspective_map));
    CHECK(again.perspective_map == file.perspective_map);
  }

  TEST_CASE("digests are stable and sensitive") {
    const auto m = testing::load_rel("fig1.json");
    const auto d = doxa::model_digest(m);
    CHECK(d.size() == 16);
    auto changed = m;
    changed.valuation.at("p").set(0);
    CHECK(doxa::model_digest(changed) != d);
  }

  TEST_CASE("schema errors") {
    auto rejects = [](json j) { CHECK_THROWS_AS(doxa::parse_model(j), doxa::SchemaError); };
    rejects(json::array());
    rejects({{"kind", "other"}, {"agents", {"a"}}});
    auto j = fb();
    j["agents"] = json::array();
    rejects(j);
    j = fb();
    j["facets"] = json::array();
    rejects(j);
    j = fb();
    j["facets"][0][0] = "zz";
    rejects(j);
    j = fb();
    j["val"]["p"] = {7};
    rejects(j);
    j = fb();
    j["belief"]["a"] = {5};
    rejects(j);
    j = fb();
    j["nodes"][0]["color"] = "c";
    rejects(j);
    j = fb();
    j["agents"] = {"a", "a"};
    rejects(j);
    j = fb();
    j["agents"] = {"a b", "c"};
    rejects(j);
    j = fb();
    j["allow_non_ucf"] = true;
    j["facets"] = {{"a0"}, {"b0", "b1"}};
    rejects(j);

    auto r = doxa::to_json(testing::load_rel("fig1.json"));
    r["R"]["a"][0] = {"w0", "w9"};
    rejects(r);
    r = doxa::to_json(testing::load_rel("fig1.json"));
    r["Q"].erase("c");
    rejects(r);
    CHECK_THROWS_AS(doxa::load_model("/nonexistent/model.json"), doxa::SchemaError);
  }

  TEST_CASE("world maps") {
    const auto m = testing::load_rel("fig1.json");
    CHECK(doxa::parse_world_map({{"map", {{"w0", "w0"}, {"w1", "w2"}, {"w2", "w1"}}}}, m, m) ==
          std::vector<std::size_t>{0, 2, 1});
    CHECK_THROWS_AS(doxa::parse_world_map({{"map", {{"w0", "w0"}}}}, m, m), doxa::SchemaError);
  }
}
