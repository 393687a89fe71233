#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "doxa/relational.hpp"
#include "doxa/simplicial.hpp"

namespace doxa {

/// Correspondence between the worlds of a relational model and the facets of
/// a simplicial one.
struct TranslationWitness {
  /// world index -> facet index (a bijection)
  std::vector<std::size_t> world_to_facet;

  /// What a node stands for: a knowledge class of `agent`.
  struct NodeMeaning {
    std::vector<std::size_t> worlds;
    std::string agent;
    friend bool operator==(const NodeMeaning&, const NodeMeaning&) = default;
  };
  /// indexed like the simplicial model's nodes
  std::vector<NodeMeaning> node_semantics;
};

struct SimplicialTranslation {
  SimplicialModel model;
  TranslationWitness witness;
};

struct RelationalTranslation {
  RelationalModel model;
  TranslationWitness witness;
};

/// Nodes are the pairs (knowledge class, agent); facet f(w) collects the
/// classes of w; S_a keeps the facets f(w) with w Q_a w. Node ids have the
/// form "(<least world of the class>,<agent>)".
///
/// Requires a valid, proper model: throws ModelError otherwise, naming a pair
/// of worlds with identical class profiles when the input is improper.
SimplicialTranslation to_simplicial(const RelationalModel& m);

/// Worlds are the facets (named X0, X1, ...); X R_a Y iff pi_a(X) = pi_a(Y);
/// X Q_a Y iff additionally Y is a facet of S_a. Requires UCF.
RelationalTranslation to_relational(const SimplicialModel& m);

struct ProperizeWitness {
  /// world index of the output -> (w, u)
  std::vector<std::pair<std::size_t, std::size_t>> carrier;
  /// g: W -> Z_|W|, here g(w) = index of w
  std::vector<std::size_t> g;
  std::string distinguished;
  /// output world -> input world (first projection)
  std::vector<std::size_t> projection;
};

struct Properized {
  RelationalModel model;
  ProperizeWitness witness;
};

/// |W|^2 copies of the model with the distinguished agent's relations skewed
/// across copies. Output worlds are the pairs (w,u) in lexicographic order,
/// named "(w,u)". The distinguished agent defaults to the least agent id.
///
/// Requires a valid input with at least two agents.
Properized properize(const RelationalModel& m, std::optional<std::string> distinguished = std::nullopt);

}  // namespace doxa
