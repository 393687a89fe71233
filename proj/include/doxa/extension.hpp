#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "doxa/formula.hpp"
#include "doxa/point_set.hpp"

namespace doxa {

/// What every evaluator in the library reduces to: a finite set of points and,
/// per agent, the points the knowledge operator and the belief operator
/// quantify over from each point. Relational models, simplicial models and
/// the two rival belief semantics each build one of these their own way.
struct ModalFrame {
  std::size_t points = 0;
  std::vector<std::string> agents;
  std::vector<std::vector<PointSet>> knowledge;  // [agent][point]
  std::vector<std::vector<PointSet>> belief;     // [agent][point]
  std::map<std::string, PointSet> valuation;
};

/// Extra atom extensions, used to evaluate schema templates whose
/// metavariables stand for arbitrary sets of points.
using Bindings = std::map<std::string, PointSet>;

/// Computes the set of points where a formula holds.
class ExtensionEvaluator {
 public:
  explicit ExtensionEvaluator(ModalFrame frame);

  const ModalFrame& frame() const { return frame_; }

  /// Memoized on node identity, so formulas that share subterms (as
  /// enumerated ones do) are evaluated once per distinct node.
  const PointSet& extension(const Formula& f);

  /// Not memoized. Atoms present in `bindings` take the bound extension.
  PointSet extension(const Formula& f, const Bindings& bindings) const;

  /// {x : access[x] ⊆ s}
  static PointSet box(const std::vector<PointSet>& access, const PointSet& s);

 private:
  std::size_t agent_index(const std::string& agent) const;
  const PointSet& atom(const std::string& name) const;

  ModalFrame frame_;
  std::map<std::string, std::size_t> agent_ids_;
  std::unordered_map<const void*, std::pair<Formula, PointSet>> memo_;
};

}  // namespace doxa
