#include "doxa/simplicial.hpp"

#include <functional>

#include "doxa/error.hpp"

namespace doxa {

std::size_t ColoredModel::node_index(std::string_view id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return i;
  throw ModelError("unknown node '" + std::string(id) + "'", {std::string(id)});
}

std::size_t ColoredModel::facet_index(std::string_view name) const {
  if (name.size() >= 2 && name[0] == 'X' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const auto index = std::stoull(std::string(name.substr(1)));
    if (index < facet_count()) return index;
  }
  throw ModelError("unknown facet '" + std::string(name) + "'", {std::string(name)});
}

namespace {

std::string face_text(const ColoredModel& m, const Face& face) {
  std::string s = "{";
  for (std::size_t i = 0; i < face.size(); ++i) s += (i ? "," : "") + m.nodes[face[i]].id;
  return s + "}";
}

std::size_t color_count(const ColoredModel& m, const std::string& agent, const Face& face) {
  return static_cast<std::size_t>(
      std::count_if(face.begin(), face.end(), [&](std::size_t n) { return m.nodes[n].color == agent; }));
}

bool subset(const Face& x, const Face& y) { return std::includes(y.begin(), y.end(), x.begin(), x.end()); }

void require_declared(const SimplicialModel& m, const Formula& f) {
  for (const auto& a : agents_of(f))
    if (std::find(m.agents.begin(), m.agents.end(), a) == m.agents.end())
      throw ModelError("unknown agent '" + a + "'", {a});
  for (const auto& p : atoms_of(f))
    if (!m.valuation.count(p)) throw ModelError("unknown atom '" + p + "'", {p});
}

}  // namespace

std::size_t pi(const ColoredModel& m, const std::string& agent, const Face& face) {
  std::optional<std::size_t> found;
  for (auto n : face) {
    if (m.nodes[n].color != agent) continue;
    if (found)
      throw ModelError("UCF breach: several '" + agent + "'-colored nodes in " + face_text(m, face),
                       {agent, m.nodes[*found].id, m.nodes[n].id});
    found = n;
  }
  if (!found)
    throw ModelError("UCF breach: no '" + agent + "'-colored node in " + face_text(m, face), {agent});
  return *found;
}

std::size_t pi(const ColoredModel& m, const std::string& agent, std::size_t facet) {
  if (facet >= m.facet_count()) throw ModelError("unknown facet #" + std::to_string(facet));
  return pi(m, agent, m.knowledge.facets[facet]);
}

std::vector<std::size_t> belief_facets(const SimplicialModel& m, const std::string& agent) {
  auto it = m.belief.find(agent);
  if (it == m.belief.end()) throw ModelError("no belief complex for agent '" + agent + "'", {agent});
  std::vector<std::size_t> out;
  for (const auto& y : it->second.facets) {
    auto pos = std::find(m.knowledge.facets.begin(), m.knowledge.facets.end(), y);
    if (pos == m.knowledge.facets.end())
      throw ModelError("belief facet " + face_text(m, y) + " of '" + agent + "' is not a facet of S",
                       {agent, face_text(m, y)});
    out.push_back(static_cast<std::size_t>(pos - m.knowledge.facets.begin()));
  }
  return out;
}

ValidationReport validate_simplicial(const SimplicialModel& m) {
  ValidationReport report;
  if (m.agents.empty()) report.violations.push_back({"structure", {}, "no agents"});
  if (m.knowledge.facets.empty()) report.violations.push_back({"structure", {}, "no facets"});
  std::set<std::string> ids;
  for (const auto& node : m.nodes) {
    if (!ids.insert(node.id).second) report.violations.push_back({"structure", {node.id}, "duplicate node id"});
    if (std::find(m.agents.begin(), m.agents.end(), node.color) == m.agents.end())
      report.violations.push_back({"node-color", {node.id, node.color}, "color is not a declared agent"});
  }
  auto well_formed = [&](const Face& face) {
    return std::is_sorted(face.begin(), face.end()) &&
           std::adjacent_find(face.begin(), face.end()) == face.end() &&
           std::all_of(face.begin(), face.end(), [&](std::size_t n) { return n < m.nodes.size(); });
  };
  for (std::size_t i = 0; i < m.facet_count(); ++i)
    if (!well_formed(m.knowledge.facets[i]))
      report.violations.push_back({"structure", {m.facet_name(i)}, "facet is not a sorted set of known nodes"});
  for (const auto& [agent, complex] : m.belief)
    for (const auto& y : complex.facets)
      if (!well_formed(y)) report.violations.push_back({"structure", {agent}, "belief face is malformed"});
  for (const auto& [p, ext] : m.valuation)
    if (ext.size() != m.facet_count()) report.violations.push_back({"structure", {p}, "valuation mis-sized"});
  if (!report.ok()) return report;

  const auto& facets = m.knowledge.facets;
  for (std::size_t i = 0; i < facets.size(); ++i)
    for (std::size_t j = 0; j < facets.size(); ++j)
      if (i != j && subset(facets[i], facets[j]) && (facets[i] != facets[j] || i < j))
        report.violations.push_back({"facet-maximality", {m.facet_name(i), m.facet_name(j)},
                                     facets[i] == facets[j] ? "duplicate facet" : "facet inside another"});

  bool ucf = true;
  for (std::size_t i = 0; i < facets.size(); ++i)
    for (const auto& a : m.agents)
      if (auto k = color_count(m, a, facets[i]); k != 1) {
        ucf = false;
        report.violations.push_back(
            {"ucf", {a, m.facet_name(i)}, std::to_string(k) + " nodes of this color"});
      }

  for (const auto& a : m.agents) {
    auto it = m.belief.find(a);
    if (it == m.belief.end() || it->second.facets.empty()) {
      report.violations.push_back({"belief-nonempty", {a}, "S_a has no facets"});
      continue;
    }
    const auto& sa = it->second.facets;
    bool contained = true;
    for (std::size_t k = 0; k < sa.size(); ++k) {
      const auto& y = sa[k];
      for (const auto& b : m.agents)
        if (auto c = color_count(m, b, y); c != 1)
          report.violations.push_back(
              {"belief-ucf", {a, face_text(m, y), b}, std::to_string(c) + " nodes of this color"});
      if (std::find(facets.begin(), facets.end(), y) == facets.end()) {
        contained = false;
        const bool below = std::any_of(facets.begin(), facets.end(), [&](const Face& x) { return subset(y, x); });
        report.violations.push_back({"belief-containment", {a, face_text(m, y)},
                                     below ? "a face of S but not a facet" : "not a face of S"});
      }
      for (std::size_t l = k + 1; l < sa.size(); ++l)
        if (sa[l] == y) report.violations.push_back({"belief-maximality", {a, face_text(m, y)}, "duplicate facet"});
    }
    if (!ucf || !contained) continue;

    PointSet covered(m.nodes.size());
    for (auto y : belief_facets(m, a)) covered.set(pi(m, a, y));
    bool serial = true;
    for (std::size_t i = 0; i < facets.size(); ++i) {
      const auto n = pi(m, a, i);
      if (!covered.test(n)) {
        serial = false;
        report.warnings.push_back({"not-serial", {a, m.facet_name(i), m.nodes[n].id},
                                   "no facet of S_" + a + " contains this node"});
      }
    }
    report.flags[a + "-serial"] = serial;
  }
  return report;
}

bool eval_simplicial(const SimplicialModel& m, std::size_t facet, const Formula& f) {
  if (facet >= m.facet_count()) throw ModelError("unknown facet #" + std::to_string(facet));
  require_declared(m, f);
  std::map<std::string, std::vector<std::size_t>> sa;
  for (const auto& a : m.agents) sa[a] = belief_facets(m, a);

  std::function<bool(std::size_t, const Formula&)> eval = [&](std::size_t x, const Formula& g) -> bool {
    switch (g.kind()) {
      case FormulaKind::Atom:
        return m.valuation.at(g.label()).test(x);
      case FormulaKind::Falsum:
        return false;
      case FormulaKind::Implies:
        return !eval(x, g.lhs()) || eval(x, g.rhs());
      case FormulaKind::Knows: {
        const auto node = pi(m, g.label(), x);
        for (std::size_t y = 0; y < m.facet_count(); ++y)
          if (pi(m, g.label(), y) == node && !eval(y, g.body())) return false;
        return true;
      }
      case FormulaKind::Believes: {
        const auto node = pi(m, g.label(), x);
        for (auto y : sa.at(g.label()))
          if (pi(m, g.label(), y) == node && !eval(y, g.body())) return false;
        return true;
      }
    }
    return false;
  };
  return eval(facet, f);
}

ModalFrame simplicial_frame(const SimplicialModel& m) {
  ModalFrame frame;
  const auto n = m.facet_count();
  frame.points = n;
  frame.agents = m.agents;
  for (const auto& a : m.agents) {
    std::vector<std::size_t> node(n);
    for (std::size_t x = 0; x < n; ++x) node[x] = pi(m, a, x);
    const auto sa = belief_facets(m, a);
    std::vector<PointSet> know(n, PointSet(n)), believe(n, PointSet(n));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y)
        if (node[y] == node[x]) know[x].set(y);
      for (auto y : sa)
        if (node[y] == node[x]) believe[x].set(y);
    }
    frame.knowledge.push_back(std::move(know));
    frame.belief.push_back(std::move(believe));
  }
  frame.valuation = m.valuation;
  return frame;
}

ValidityResult is_valid_in_model(const SimplicialModel& m, const Formula& f) {
  for (std::size_t x = 0; x < m.facet_count(); ++x)
    if (!eval_simplicial(m, x, f)) return {false, x};
  return {};
}

}  // namespace doxa
