#include "doxa/relational.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "doxa/error.hpp"

namespace doxa {

Relation Relation::identity(std::size_t n) {
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i) r.add(i, i);
  return r;
}

Relation Relation::total(std::size_t n) {
  Relation r(n);
  for (auto& row : r.rows_) row = PointSet(n, true);
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (auto j : rows_[i].members()) out.emplace_back(i, j);
  return out;
}

std::size_t RelationalModel::world_index(std::string_view id) const {
  auto it = std::find(worlds.begin(), worlds.end(), id);
  if (it == worlds.end()) throw ModelError("unknown world '" + std::string(id) + "'", {std::string(id)});
  return static_cast<std::size_t>(it - worlds.begin());
}

const Relation& RelationalModel::knowledge_of(const std::string& agent) const {
  auto it = knowledge.find(agent);
  if (it == knowledge.end()) throw ModelError("unknown agent '" + agent + "'", {agent});
  return it->second;
}

const Relation& RelationalModel::belief_of(const std::string& agent) const {
  auto it = belief.find(agent);
  if (it == belief.end()) throw ModelError("unknown agent '" + agent + "'", {agent});
  return it->second;
}

namespace {

// First witness that R is not an equivalence, as (detail, worlds...).
std::optional<Violation> equivalence_breach(const RelationalModel& m, const std::string& a) {
  const Relation& r = m.knowledge_of(a);
  const auto n = m.size();
  const auto& w = m.worlds;
  for (std::size_t i = 0; i < n; ++i)
    if (!r.contains(i, i)) return Violation{"knowledge-equivalence", {a, w[i], w[i]}, "not reflexive"};
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : r.successors(i).members())
      if (!r.contains(j, i)) return Violation{"knowledge-equivalence", {a, w[i], w[j]}, "not symmetric"};
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : r.successors(i).members())
      for (auto k : r.successors(j).members())
        if (!r.contains(i, k))
          return Violation{"knowledge-equivalence", {a, w[i], w[j], w[k]}, "not transitive"};
  return std::nullopt;
}

void require_equivalence(const RelationalModel& m, const std::string& a) {
  if (auto v = equivalence_breach(m, a))
    throw ModelError("knowledge relation of '" + a + "' is not an equivalence (" + v->detail + ")",
                     v->witness);
}

void require_declared(const RelationalModel& m, const Formula& f) {
  for (const auto& a : agents_of(f))
    if (!m.knowledge.count(a) || !m.belief.count(a)) throw ModelError("unknown agent '" + a + "'", {a});
  for (const auto& p : atoms_of(f))
    if (!m.valuation.count(p)) throw ModelError("unknown atom '" + p + "'", {p});
}

}  // namespace

ValidationReport validate_relational(const RelationalModel& m) {
  ValidationReport report;
  const auto n = m.size();
  if (n == 0) report.violations.push_back({"structure", {}, "no worlds"});
  if (m.agents.empty()) report.violations.push_back({"structure", {}, "no agents"});
  for (const auto& a : m.agents) {
    for (const auto* family : {&m.knowledge, &m.belief}) {
      auto it = family->find(a);
      if (it == family->end() || it->second.size() != n)
        report.violations.push_back(
            {"structure", {a}, std::string(family == &m.knowledge ? "R" : "Q") + " missing or mis-sized"});
    }
  }
  for (const auto& [p, ext] : m.valuation)
    if (ext.size() != n) report.violations.push_back({"structure", {p}, "valuation mis-sized"});
  if (!report.ok()) return report;

  const auto& w = m.worlds;
  bool all_equivalences = true;
  for (const auto& a : m.agents) {
    const Relation& r = m.knowledge_of(a);
    const Relation& q = m.belief_of(a);

    bool equivalence = true;
    for (std::size_t i = 0; i < n; ++i)
      if (!r.contains(i, i)) {
        report.violations.push_back({"knowledge-equivalence", {a, w[i], w[i]}, "not reflexive"});
        equivalence = false;
      }
    for (std::size_t i = 0; i < n; ++i)
      for (auto j : r.successors(i).members())
        if (!r.contains(j, i)) {
          report.violations.push_back({"knowledge-equivalence", {a, w[i], w[j]}, "not symmetric"});
          equivalence = false;
        }
    for (std::size_t i = 0; i < n; ++i)
      for (auto j : r.successors(i).members())
        for (auto k : r.successors(j).members())
          if (!r.contains(i, k)) {
            report.violations.push_back({"knowledge-equivalence", {a, w[i], w[j], w[k]}, "not transitive"});
            equivalence = false;
          }
    all_equivalences = all_equivalences && equivalence;

    for (std::size_t i = 0; i < n; ++i)
      for (auto j : q.successors(i).members())
        if (!r.contains(i, j)) report.violations.push_back({"belief-within-knowledge", {a, w[i], w[j]}, ""});
    for (std::size_t i = 0; i < n; ++i)
      if (q.successors(i).none()) report.violations.push_back({"belief-serial", {a, w[i]}, ""});
    for (std::size_t i = 0; i < n; ++i)
      for (auto j : r.successors(i).members()) {
        if (j <= i || q.successors(i) == q.successors(j)) continue;
        PointSet diff = (q.successors(i) & ~q.successors(j)) | (q.successors(j) & ~q.successors(i));
        report.violations.push_back(
            {"belief-constant-on-classes", {a, w[i], w[j], w[*diff.first()]}, "Q differs within an R-class"});
      }
  }

  if (all_equivalences) {
    auto pair = improper_pair(m);
    report.flags["proper"] = !pair.has_value();
    if (pair)
      report.warnings.push_back(
          {"improper", {w[pair->first], w[pair->second]}, "worlds share every knowledge class"});
  }
  return report;
}

bool eval_relational(const RelationalModel& m, std::size_t w, const Formula& f) {
  if (w >= m.size()) throw ModelError("unknown world #" + std::to_string(w));
  require_declared(m, f);
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
        const Relation& rel =
            g.kind() == FormulaKind::Knows ? m.knowledge_of(g.label()) : m.belief_of(g.label());
        for (auto y : rel.successors(x).members())
          if (!eval(y, g.body())) return false;
        return true;
      }
    }
    return false;
  };
  return eval(w, f);
}

ModalFrame relational_frame(const RelationalModel& m) {
  ModalFrame frame;
  frame.points = m.size();
  frame.agents = m.agents;
  for (const auto& a : m.agents) {
    frame.knowledge.push_back(m.knowledge_of(a).rows());
    frame.belief.push_back(m.belief_of(a).rows());
  }
  frame.valuation = m.valuation;
  return frame;
}

std::vector<std::size_t> knowledge_class(const RelationalModel& m, const std::string& agent,
                                         std::size_t w) {
  if (w >= m.size()) throw ModelError("unknown world #" + std::to_string(w));
  require_equivalence(m, agent);
  return m.knowledge_of(agent).successors(w).members();
}

std::optional<std::pair<std::size_t, std::size_t>> improper_pair(const RelationalModel& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    PointSet common(m.size(), true);
    for (const auto& a : m.agents) common &= m.knowledge_of(a).successors(i);
    for (auto j : common.members())
      if (j != i) return std::pair{std::min(i, j), std::max(i, j)};
  }
  return std::nullopt;
}

bool is_proper(const RelationalModel& m) {
  for (const auto& a : m.agents) require_equivalence(m, a);
  return !improper_pair(m).has_value();
}

ValidationReport check_bounded_morphism(const RelationalModel& source, const RelationalModel& target,
                                        const std::vector<std::size_t>& h) {
  if (h.size() != source.size()) throw ModelError("morphism is not total on source worlds");
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] >= target.size())
      throw ModelError("morphism sends '" + source.worlds[i] + "' outside the target", {source.worlds[i]});
  if (source.agents != target.agents) throw ModelError("source and target agents differ");

  ValidationReport report;
  const auto& sw = source.worlds;
  const auto& tw = target.worlds;
  for (const char* family : {"R", "Q"}) {
    const bool is_r = family[0] == 'R';
    for (const auto& a : source.agents) {
      const Relation& src = is_r ? source.knowledge_of(a) : source.belief_of(a);
      const Relation& tgt = is_r ? target.knowledge_of(a) : target.belief_of(a);
      for (std::size_t w = 0; w < source.size(); ++w)
        for (auto v : src.successors(w).members())
          if (!tgt.contains(h[w], h[v])) report.violations.push_back({"forth", {family, a, sw[w], sw[v]}, ""});
      for (std::size_t w = 0; w < source.size(); ++w) {
        PointSet image(target.size());
        for (auto v : src.successors(w).members()) image.set(h[v]);
        for (auto u : tgt.successors(h[w]).members())
          if (!image.test(u)) report.violations.push_back({"back", {family, a, sw[w], tw[u]}, ""});
      }
    }
  }

  std::set<std::string> atoms;
  for (const auto& [p, _] : source.valuation) atoms.insert(p);
  for (const auto& [p, _] : target.valuation) atoms.insert(p);
  for (const auto& p : atoms) {
    auto s = source.valuation.find(p);
    auto t = target.valuation.find(p);
    for (std::size_t w = 0; w < source.size(); ++w) {
      const bool in_s = s != source.valuation.end() && s->second.test(w);
      const bool in_t = t != target.valuation.end() && t->second.test(h[w]);
      if (in_s != in_t) report.violations.push_back({"atom", {p, sw[w]}, ""});
    }
  }

  PointSet image(target.size());
  for (auto v : h) image.set(v);
  for (std::size_t u = 0; u < target.size(); ++u)
    if (!image.test(u)) report.violations.push_back({"surjective", {tw[u]}, ""});
  return report;
}

bool isomorphic_under(const RelationalModel& source, const RelationalModel& target,
                      const std::vector<std::size_t>& map) {
  const auto n = source.size();
  if (target.size() != n || map.size() != n || source.agents != target.agents) return false;
  PointSet image(n);
  for (auto v : map) {
    if (v >= n || image.test(v)) return false;
    image.set(v);
  }
  for (const auto& a : source.agents)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (source.knowledge_of(a).contains(i, j) != target.knowledge_of(a).contains(map[i], map[j])) return false;
        if (source.belief_of(a).contains(i, j) != target.belief_of(a).contains(map[i], map[j])) return false;
      }
  if (source.valuation.size() != target.valuation.size()) return false;
  for (const auto& [p, ext] : source.valuation) {
    auto it = target.valuation.find(p);
    if (it == target.valuation.end()) return false;
    for (std::size_t i = 0; i < n; ++i)
      if (ext.test(i) != it->second.test(map[i])) return false;
  }
  return true;
}

}  // namespace doxa
