#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "doxa/extension.hpp"
#include "doxa/formula.hpp"
#include "doxa/point_set.hpp"
#include "doxa/report.hpp"

namespace doxa {

// ---------------------------------------------------------------------------
// Face families

template <class T>
using FaceFamily = std::set<std::set<T>>;

/// Smallest subset-closed family containing `faces`. Exponential in the size
/// of the largest face.
template <class T>
FaceFamily<T> close_downward(const FaceFamily<T>& faces) {
  FaceFamily<T> out;
  for (const auto& face : faces) {
    if (out.count(face)) continue;
    const std::vector<T> items(face.begin(), face.end());
    if (items.size() >= 63) throw std::length_error("face too large to close downward");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
      std::set<T> sub;
      for (std::size_t i = 0; i < items.size(); ++i)
        if (mask >> i & 1U) sub.insert(items[i]);
      out.insert(std::move(sub));
    }
  }
  return out;
}

/// The ⊆-maximal members of `faces`.
template <class T>
FaceFamily<T> facets(const FaceFamily<T>& faces) {
  FaceFamily<T> out;
  for (const auto& x : faces) {
    const bool dominated = std::any_of(faces.begin(), faces.end(), [&](const std::set<T>& y) {
      return y.size() > x.size() && std::includes(y.begin(), y.end(), x.begin(), x.end());
    });
    if (!dominated) out.insert(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Models

struct ColoredNode {
  std::string id;
  std::string color;

  friend bool operator==(const ColoredNode&, const ColoredNode&) = default;
};

/// Sorted node indices.
using Face = std::vector<std::size_t>;

/// A complex given by its facet list; the faces are everything below some
/// facet. A facet is addressed by its position in the list.
struct Complex {
  std::vector<Face> facets;

  friend bool operator==(const Complex&, const Complex&) = default;
};

/// Colored nodes, a knowledge complex and a facet valuation. This is all the
/// rival belief semantics need; SimplicialModel adds belief subcomplexes.
struct ColoredModel {
  std::vector<std::string> agents;
  std::vector<ColoredNode> nodes;
  Complex knowledge;
  /// atom -> facets of `knowledge` where it holds
  std::map<std::string, PointSet> valuation;

  std::size_t facet_count() const { return knowledge.facets.size(); }
  /// Throws ModelError("unknown node").
  std::size_t node_index(std::string_view id) const;
  /// Facets are named X0, X1, ... after their index. Throws ModelError("unknown facet").
  std::size_t facet_index(std::string_view name) const;
  std::string facet_name(std::size_t index) const { return "X" + std::to_string(index); }

  friend bool operator==(const ColoredModel&, const ColoredModel&) = default;
};

/// A simplicial belief model: one belief subcomplex S_a per agent, each
/// expected to consist of facets of the knowledge complex.
struct SimplicialModel : ColoredModel {
  std::map<std::string, Complex> belief;

  friend bool operator==(const SimplicialModel&, const SimplicialModel&) = default;
};

/// UCF for the knowledge complex and every belief subcomplex, facet
/// maximality, belief containment and non-emptiness. a-seriality is reported
/// per agent as the flag "<a>-serial" with a warning carrying (agent, facet,
/// node) when it fails; it is not a violation.
ValidationReport validate_simplicial(const SimplicialModel& m);

/// The unique node of color `agent` in `face`. Throws ModelError when there
/// are zero or several.
std::size_t pi(const ColoredModel& m, const std::string& agent, const Face& face);
/// pi on facet `facet` of the knowledge complex.
std::size_t pi(const ColoredModel& m, const std::string& agent, std::size_t facet);

/// Direct recursive evaluation at facet `facet`.
bool eval_simplicial(const SimplicialModel& m, std::size_t facet, const Formula& f);

/// For each agent: K reaches facets sharing the agent's node, B reaches the
/// facets of S_a sharing it.
ModalFrame simplicial_frame(const SimplicialModel& m);

struct ValidityResult {
  bool valid = true;
  std::optional<std::size_t> counterexample;  // first refuting facet
};

ValidityResult is_valid_in_model(const SimplicialModel& m, const Formula& f);

/// Index in m.knowledge of each facet of S_agent. Throws ModelError when a
/// belief facet is not a facet of the knowledge complex.
std::vector<std::size_t> belief_facets(const SimplicialModel& m, const std::string& agent);

}  // namespace doxa
