#include "doxa/transform.hpp"

#include <algorithm>

#include "doxa/error.hpp"

namespace doxa {

namespace {

void require_valid(const RelationalModel& m) {
  auto report = validate_relational(m);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw ModelError("input model is invalid: " + v.check + (v.detail.empty() ? "" : " (" + v.detail + ")"),
                     v.witness);
  }
}

}  // namespace

SimplicialTranslation to_simplicial(const RelationalModel& m) {
  require_valid(m);
  if (auto pair = improper_pair(m))
    throw ModelError("model is not proper: worlds '" + m.worlds[pair->first] + "' and '" +
                         m.worlds[pair->second] + "' share every knowledge class",
                     {m.worlds[pair->first], m.worlds[pair->second]});

  const auto n = m.size();
  SimplicialTranslation out;
  auto& s = out.model;
  auto& witness = out.witness;
  s.agents = m.agents;

  // class_node[a][w] = node index of ([w]_a, a)
  std::vector<std::vector<std::size_t>> class_node(m.agents.size(), std::vector<std::size_t>(n));
  for (std::size_t ai = 0; ai < m.agents.size(); ++ai) {
    const auto& a = m.agents[ai];
    const Relation& r = m.knowledge_of(a);
    PointSet seen(n);
    for (std::size_t w = 0; w < n; ++w) {
      if (seen.test(w)) continue;
      const auto& cls = r.successors(w);
      const auto index = s.nodes.size();
      s.nodes.push_back({"(" + m.worlds[w] + "," + a + ")", a});
      witness.node_semantics.push_back({cls.members(), a});
      for (auto v : cls.members()) {
        class_node[ai][v] = index;
        seen.set(v);
      }
    }
  }

  for (std::size_t w = 0; w < n; ++w) {
    Face face;
    for (std::size_t ai = 0; ai < m.agents.size(); ++ai) face.push_back(class_node[ai][w]);
    std::sort(face.begin(), face.end());
    s.knowledge.facets.push_back(std::move(face));
    witness.world_to_facet.push_back(w);
  }

  for (const auto& a : m.agents) {
    Complex sa;
    const Relation& q = m.belief_of(a);
    for (std::size_t w = 0; w < n; ++w)
      if (q.contains(w, w)) sa.facets.push_back(s.knowledge.facets[witness.world_to_facet[w]]);
    s.belief.emplace(a, std::move(sa));
  }

  for (const auto& [p, ext] : m.valuation) {
    PointSet facets(n);
    for (auto w : ext.members()) facets.set(witness.world_to_facet[w]);
    s.valuation.emplace(p, std::move(facets));
  }
  return out;
}

RelationalTranslation to_relational(const SimplicialModel& m) {
  const auto n = m.facet_count();
  RelationalTranslation out;
  auto& r = out.model;
  r.agents = m.agents;
  for (std::size_t x = 0; x < n; ++x) r.worlds.push_back(m.facet_name(x));

  for (const auto& a : m.agents) {
    std::vector<std::size_t> node(n);
    for (std::size_t x = 0; x < n; ++x) node[x] = pi(m, a, x);
    PointSet in_sa(n);
    for (auto y : belief_facets(m, a)) in_sa.set(y);
    Relation know(n), believe(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (node[x] != node[y]) continue;
        know.add(x, y);
        if (in_sa.test(y)) believe.add(x, y);
      }
    r.knowledge.emplace(a, std::move(know));
    r.belief.emplace(a, std::move(believe));
  }
  r.valuation = m.valuation;

  auto& witness = out.witness;
  for (std::size_t x = 0; x < n; ++x) witness.world_to_facet.push_back(x);
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    TranslationWitness::NodeMeaning meaning{{}, m.nodes[i].color};
    for (std::size_t x = 0; x < n; ++x)
      if (std::binary_search(m.knowledge.facets[x].begin(), m.knowledge.facets[x].end(), i))
        meaning.worlds.push_back(x);
    witness.node_semantics.push_back(std::move(meaning));
  }
  return out;
}

Properized properize(const RelationalModel& m, std::optional<std::string> distinguished) {
  if (m.agents.size() < 2) throw ModelError("properize needs at least two agents");
  require_valid(m);
  const std::string b =
      distinguished ? *distinguished : *std::min_element(m.agents.begin(), m.agents.end());
  if (std::find(m.agents.begin(), m.agents.end(), b) == m.agents.end())
    throw ModelError("unknown agent '" + b + "'", {b});

  const auto n = m.size();
  const auto size = n * n;
  auto index = [n](std::size_t w, std::size_t u) { return w * n + u; };

  Properized out;
  auto& witness = out.witness;
  witness.distinguished = b;
  for (std::size_t w = 0; w < n; ++w) witness.g.push_back(w);
  std::vector<std::size_t> g_inverse(n);
  for (std::size_t w = 0; w < n; ++w) g_inverse[witness.g[w]] = w;
  // copy offset g(u) - g(w) mod |W|
  auto offset = [&](std::size_t w, std::size_t u) { return (witness.g[u] + n - witness.g[w]) % n; };

  auto& p = out.model;
  p.agents = m.agents;
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t u = 0; u < n; ++u) {
      p.worlds.push_back("(" + m.worlds[w] + "," + m.worlds[u] + ")");
      witness.carrier.emplace_back(w, u);
      witness.projection.push_back(w);
    }

  auto lift = [&](const Relation& rel, bool skew) {
    Relation out_rel(size);
    for (const auto& [w, v] : rel.edges())
      for (std::size_t u = 0; u < n; ++u) {
        if (!skew) {
          out_rel.add(index(w, u), index(v, u));
          continue;
        }
        // (w,u) ~ (v,u') iff g(u)-g(w) = g(u')-g(v)
        const auto u2 = g_inverse[(offset(w, u) + witness.g[v]) % n];
        out_rel.add(index(w, u), index(v, u2));
      }
    return out_rel;
  };

  for (const auto& a : m.agents) {
    p.knowledge.emplace(a, lift(m.knowledge_of(a), a == b));
    p.belief.emplace(a, lift(m.belief_of(a), a == b));
  }
  for (const auto& [atom, ext] : m.valuation) {
    PointSet lifted(size);
    for (std::size_t i = 0; i < size; ++i)
      if (ext.test(witness.projection[i])) lifted.set(i);
    p.valuation.emplace(atom, std::move(lifted));
  }
  return out;
}

}  // namespace doxa
