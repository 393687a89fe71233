#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "doxa/extension.hpp"
#include "doxa/formula.hpp"
#include "doxa/report.hpp"
#include "doxa/simplicial.hpp"

namespace doxa {

// Two earlier belief semantics on colored complexes, kept for comparison
// with the belief-subcomplex semantics.

/// Per agent, a map on that agent's nodes (by node id). Nodes without an
/// entry map to themselves.
using PerspectiveMap = std::map<std::string, std::map<std::string, std::string>>;

/// Throws ModelError naming the offending node if some f_a leaves the
/// agent's color, mentions an unknown node, or is not idempotent.
void validate_perspective_map(const ColoredModel& m, const PerspectiveMap& pm);

/// Belief as knowledge at the shifted perspective: B_a phi holds at X iff phi
/// holds at every facet Y with pi_a(Y) = f_a(pi_a(X)). K is the usual
/// shared-node clause. Requires UCF and a valid map.
bool eval_kasc(const ColoredModel& m, const PerspectiveMap& pm, std::size_t facet, const Formula& f);
ModalFrame kasc_frame(const ColoredModel& m, const PerspectiveMap& pm);

/// Number of `agent`-colored nodes in `face`.
std::size_t multiplicity(const ColoredModel& m, const Face& face, const std::string& agent);

enum class SimpBelVariant {
  /// Y ~_a X and m_a(Y) <= m_a(X)
  Bounded,
  /// Y ~_a X and m_a(Y) minimal over the ~_a-neighbourhood of X
  Minimal,
};

/// Facets may carry several nodes of a color but must carry at least one of
/// every color. Also checks facet maximality. UCF is reported as a flag.
ValidationReport validate_colored(const ColoredModel& m);

/// Multiplicity-based belief: K_a quantifies over all Y sharing an a-node
/// with X; B_a additionally restricts by multiplicity per `variant`.
bool eval_simpbel(const ColoredModel& m, std::size_t facet, const Formula& f, SimpBelVariant variant);
ModalFrame simpbel_frame(const ColoredModel& m, SimpBelVariant variant);

}  // namespace doxa
