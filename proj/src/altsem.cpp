#include "doxa/altsem.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "doxa/error.hpp"

namespace doxa {

namespace {

void require_declared(const ColoredModel& m, const Formula& f) {
  for (const auto& a : agents_of(f))
    if (std::find(m.agents.begin(), m.agents.end(), a) == m.agents.end())
      throw ModelError("unknown agent '" + a + "'", {a});
  for (const auto& p : atoms_of(f))
    if (!m.valuation.count(p)) throw ModelError("unknown atom '" + p + "'", {p});
}

void require_facet(const ColoredModel& m, std::size_t facet) {
  if (facet >= m.facet_count()) throw ModelError("unknown facet #" + std::to_string(facet));
}

// perspective[a][node] = f_a(node), total on the agent's nodes
std::vector<std::vector<std::size_t>> perspective_table(const ColoredModel& m, const PerspectiveMap& pm) {
  validate_perspective_map(m, pm);
  std::vector<std::vector<std::size_t>> table;
  for (const auto& a : m.agents) {
    std::vector<std::size_t> fa(m.nodes.size());
    for (std::size_t n = 0; n < m.nodes.size(); ++n) fa[n] = n;
    if (auto it = pm.find(a); it != pm.end())
      for (const auto& [from, to] : it->second) fa[m.node_index(from)] = m.node_index(to);
    table.push_back(std::move(fa));
  }
  return table;
}

bool share_color(const ColoredModel& m, const Face& x, const Face& y, const std::string& a) {
  for (auto n : x)
    if (m.nodes[n].color == a && std::binary_search(y.begin(), y.end(), n)) return true;
  return false;
}

}  // namespace

void validate_perspective_map(const ColoredModel& m, const PerspectiveMap& pm) {
  for (const auto& [agent, fa] : pm) {
    if (std::find(m.agents.begin(), m.agents.end(), agent) == m.agents.end())
      throw ModelError("perspective map for unknown agent '" + agent + "'", {agent});
    auto image = [&](const std::string& node) {
      auto it = fa.find(node);
      return it == fa.end() ? node : it->second;
    };
    for (const auto& [from, to] : fa) {
      for (const auto* id : {&from, &to}) {
        const auto& node = m.nodes[m.node_index(*id)];
        if (node.color != agent)
          throw ModelError("perspective map of '" + agent + "' leaves its color at node '" + *id + "'", {agent, *id});
      }
      if (image(to) != to)
        throw ModelError("perspective map of '" + agent + "' is not idempotent at node '" + from + "'",
                         {agent, from});
    }
  }
}

bool eval_kasc(const ColoredModel& m, const PerspectiveMap& pm, std::size_t facet, const Formula& f) {
  require_facet(m, facet);
  require_declared(m, f);
  const auto table = perspective_table(m, pm);
  std::map<std::string, std::size_t> agent_ids;
  for (std::size_t i = 0; i < m.agents.size(); ++i) agent_ids[m.agents[i]] = i;

  std::function<bool(std::size_t, const Formula&)> eval = [&](std::size_t x, const Formula& g) -> bool {
    switch (g.kind()) {
      case FormulaKind::Atom:
        return m.valuation.at(g.label()).test(x);
      case FormulaKind::Falsum:
        return false;
      case FormulaKind::Implies:
        return !eval(x, g.lhs()) || eval(x, g.rhs());
      case FormulaKind::Knows:
      case FormulaKind::Believes: {
        const auto& a = g.label();
        auto target = pi(m, a, x);
        if (g.kind() == FormulaKind::Believes) target = table[agent_ids.at(a)][target];
        for (std::size_t y = 0; y < m.facet_count(); ++y)
          if (pi(m, a, y) == target && !eval(y, g.body())) return false;
        return true;
      }
    }
    return false;
  };
  return eval(facet, f);
}

ModalFrame kasc_frame(const ColoredModel& m, const PerspectiveMap& pm) {
  const auto table = perspective_table(m, pm);
  const auto n = m.facet_count();
  ModalFrame frame;
  frame.points = n;
  frame.agents = m.agents;
  for (std::size_t ai = 0; ai < m.agents.size(); ++ai) {
    std::vector<std::size_t> node(n);
    for (std::size_t x = 0; x < n; ++x) node[x] = pi(m, m.agents[ai], x);
    std::vector<PointSet> know(n, PointSet(n)), believe(n, PointSet(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (node[y] == node[x]) know[x].set(y);
        if (node[y] == table[ai][node[x]]) believe[x].set(y);
      }
    frame.knowledge.push_back(std::move(know));
    frame.belief.push_back(std::move(believe));
  }
  frame.valuation = m.valuation;
  return frame;
}

std::size_t multiplicity(const ColoredModel& m, const Face& face, const std::string& agent) {
  return static_cast<std::size_t>(
      std::count_if(face.begin(), face.end(), [&](std::size_t n) { return m.nodes[n].color == agent; }));
}

ValidationReport validate_colored(const ColoredModel& m) {
  ValidationReport report;
  if (m.agents.empty()) report.violations.push_back({"structure", {}, "no agents"});
  if (m.knowledge.facets.empty()) report.violations.push_back({"structure", {}, "no facets"});
  for (const auto& node : m.nodes)
    if (std::find(m.agents.begin(), m.agents.end(), node.color) == m.agents.end())
      report.violations.push_back({"node-color", {node.id, node.color}, "color is not a declared agent"});
  for (const auto& [p, ext] : m.valuation)
    if (ext.size() != m.facet_count()) report.violations.push_back({"structure", {p}, "valuation mis-sized"});
  const auto& facets = m.knowledge.facets;
  bool ucf = true;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (std::any_of(facets[i].begin(), facets[i].end(), [&](std::size_t n) { return n >= m.nodes.size(); })) {
      report.violations.push_back({"structure", {m.facet_name(i)}, "unknown node"});
      continue;
    }
    for (const auto& a : m.agents) {
      const auto k = multiplicity(m, facets[i], a);
      if (k == 0) report.violations.push_back({"missing-color", {a, m.facet_name(i)}, "facet lacks this color"});
      ucf = ucf && k == 1;
    }
    for (std::size_t j = 0; j < facets.size(); ++j)
      if (i != j && std::includes(facets[j].begin(), facets[j].end(), facets[i].begin(), facets[i].end()) &&
          (facets[i] != facets[j] || i < j))
        report.violations.push_back({"facet-maximality", {m.facet_name(i), m.facet_name(j)}, ""});
  }
  report.flags["ucf"] = ucf;
  return report;
}

ModalFrame simpbel_frame(const ColoredModel& m, SimpBelVariant variant) {
  const auto report = validate_colored(m);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw ModelError("colored model is invalid: " + v.check, v.witness);
  }
  const auto n = m.facet_count();
  const auto& facets = m.knowledge.facets;
  ModalFrame frame;
  frame.points = n;
  frame.agents = m.agents;
  for (const auto& a : m.agents) {
    std::vector<std::size_t> mult(n);
    for (std::size_t x = 0; x < n; ++x) mult[x] = multiplicity(m, facets[x], a);
    std::vector<PointSet> know(n, PointSet(n)), believe(n, PointSet(n));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y)
        if (share_color(m, facets[x], facets[y], a)) know[x].set(y);
      std::size_t bound = mult[x];
      if (variant == SimpBelVariant::Minimal)
        for (auto y : know[x].members()) bound = std::min(bound, mult[y]);
      for (auto y : know[x].members())
        if (variant == SimpBelVariant::Bounded ? mult[y] <= bound : mult[y] == bound) believe[x].set(y);
    }
    frame.knowledge.push_back(std::move(know));
    frame.belief.push_back(std::move(believe));
  }
  frame.valuation = m.valuation;
  return frame;
}

bool eval_simpbel(const ColoredModel& m, std::size_t facet, const Formula& f, SimpBelVariant variant) {
  require_facet(m, facet);
  require_declared(m, f);
  const auto report = validate_colored(m);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw ModelError("colored model is invalid: " + v.check, v.witness);
  }
  const auto& facets = m.knowledge.facets;

  std::function<bool(std::size_t, const Formula&)> eval = [&](std::size_t x, const Formula& g) -> bool {
    switch (g.kind()) {
      case FormulaKind::Atom:
        return m.valuation.at(g.label()).test(x);
      case FormulaKind::Falsum:
        return false;
      case FormulaKind::Implies:
        return !eval(x, g.lhs()) || eval(x, g.rhs());
      case FormulaKind::Knows:
        for (std::size_t y = 0; y < m.facet_count(); ++y)
          if (share_color(m, facets[x], facets[y], g.label()) && !eval(y, g.body())) return false;
        return true;
      case FormulaKind::Believes: {
        const auto& a = g.label();
        std::size_t least = std::numeric_limits<std::size_t>::max();
        for (std::size_t z = 0; z < m.facet_count(); ++z)
          if (share_color(m, facets[x], facets[z], a)) least = std::min(least, multiplicity(m, facets[z], a));
        const auto own = multiplicity(m, facets[x], a);
        for (std::size_t y = 0; y < m.facet_count(); ++y) {
          if (!share_color(m, facets[x], facets[y], a)) continue;
          const auto my = multiplicity(m, facets[y], a);
          const bool accessible = variant == SimpBelVariant::Bounded ? my <= own : my == least;
          if (accessible && !eval(y, g.body())) return false;
        }
        return true;
      }
    }
    return false;
  };
  return eval(facet, f);
}

}  // namespace doxa
