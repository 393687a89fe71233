#include "doxa/extension.hpp"

#include "doxa/error.hpp"

namespace doxa {

ExtensionEvaluator::ExtensionEvaluator(ModalFrame frame) : frame_(std::move(frame)) {
  for (std::size_t i = 0; i < frame_.agents.size(); ++i) agent_ids_.emplace(frame_.agents[i], i);
}

std::size_t ExtensionEvaluator::agent_index(const std::string& agent) const {
  auto it = agent_ids_.find(agent);
  if (it == agent_ids_.end()) throw ModelError("unknown agent '" + agent + "'", {agent});
  return it->second;
}

const PointSet& ExtensionEvaluator::atom(const std::string& name) const {
  auto it = frame_.valuation.find(name);
  if (it == frame_.valuation.end()) throw ModelError("unknown atom '" + name + "'", {name});
  return it->second;
}

PointSet ExtensionEvaluator::box(const std::vector<PointSet>& access, const PointSet& s) {
  PointSet out(s.size());
  for (std::size_t x = 0; x < access.size(); ++x)
    if (access[x].is_subset_of(s)) out.set(x);
  return out;
}

const PointSet& ExtensionEvaluator::extension(const Formula& f) {
  if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second.second;
  PointSet result;
  switch (f.kind()) {
    case FormulaKind::Atom:
      result = atom(f.label());
      break;
    case FormulaKind::Falsum:
      result = PointSet(frame_.points);
      break;
    case FormulaKind::Implies: {
      const PointSet& l = extension(f.lhs());
      const PointSet& r = extension(f.rhs());
      result = ~l | r;
      break;
    }
    case FormulaKind::Knows: {
      const auto a = agent_index(f.label());
      result = box(frame_.knowledge[a], extension(f.body()));
      break;
    }
    case FormulaKind::Believes: {
      const auto a = agent_index(f.label());
      result = box(frame_.belief[a], extension(f.body()));
      break;
    }
  }
  return memo_.emplace(f.identity(), std::pair{f, std::move(result)}).first->second.second;
}

PointSet ExtensionEvaluator::extension(const Formula& f, const Bindings& bindings) const {
  switch (f.kind()) {
    case FormulaKind::Atom:
      if (auto it = bindings.find(f.label()); it != bindings.end()) return it->second;
      return atom(f.label());
    case FormulaKind::Falsum:
      return PointSet(frame_.points);
    case FormulaKind::Implies:
      return ~extension(f.lhs(), bindings) | extension(f.rhs(), bindings);
    case FormulaKind::Knows:
      return box(frame_.knowledge[agent_index(f.label())], extension(f.body(), bindings));
    case FormulaKind::Believes:
      return box(frame_.belief[agent_index(f.label())], extension(f.body(), bindings));
  }
  return PointSet(frame_.points);
}

}  // namespace doxa
