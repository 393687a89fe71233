#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "doxa/extension.hpp"
#include "doxa/formula.hpp"
#include "doxa/point_set.hpp"
#include "doxa/report.hpp"

namespace doxa {

/// Binary relation over worlds {0..n-1}, stored as successor sets.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : rows_(n, PointSet(n)) {}

  static Relation identity(std::size_t n);
  static Relation total(std::size_t n);

  std::size_t size() const { return rows_.size(); }
  void add(std::size_t from, std::size_t to) { rows_[from].set(to); }
  bool contains(std::size_t from, std::size_t to) const { return rows_[from].test(to); }
  const PointSet& successors(std::size_t from) const { return rows_[from]; }
  const std::vector<PointSet>& rows() const { return rows_; }
  /// Edges in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::vector<PointSet> rows_;
};

/// Worlds with, per agent, a knowledge relation R_a and a belief relation Q_a.
/// Worlds are addressed by their index in `worlds`. The intended invariants
/// (R_a an equivalence, Q_a ⊆ R_a serial and constant on R_a-classes) are
/// checked by validate_relational, not enforced here.
struct RelationalModel {
  std::vector<std::string> worlds;
  std::vector<std::string> agents;
  std::map<std::string, Relation> knowledge;
  std::map<std::string, Relation> belief;
  std::map<std::string, PointSet> valuation;

  std::size_t size() const { return worlds.size(); }
  /// Throws ModelError("unknown world").
  std::size_t world_index(std::string_view id) const;
  const Relation& knowledge_of(const std::string& agent) const;
  const Relation& belief_of(const std::string& agent) const;

  friend bool operator==(const RelationalModel&, const RelationalModel&) = default;
};

/// Structural sanity plus the knowledge/belief invariants. Properness is
/// reported as the informational flag "proper".
ValidationReport validate_relational(const RelationalModel& m);

/// Direct recursive evaluation at world `w`.
bool eval_relational(const RelationalModel& m, std::size_t w, const Formula& f);

/// Per-agent successor sets of R_a and Q_a, for bulk evaluation.
ModalFrame relational_frame(const RelationalModel& m);

/// [w]_a. Throws ModelError with a witness if R_a is not an equivalence.
std::vector<std::size_t> knowledge_class(const RelationalModel& m, const std::string& agent,
                                         std::size_t w);

/// Every world is the only member of the intersection of its knowledge
/// classes. Throws like knowledge_class.
bool is_proper(const RelationalModel& m);

/// First pair of distinct worlds (lexicographic) lying in the same knowledge
/// class for every agent, if any.
std::optional<std::pair<std::size_t, std::size_t>> improper_pair(const RelationalModel& m);

/// Forth, back and atom conditions for both the R and the Q relations, and
/// surjectivity of `h`. Throws ModelError if `h` is not a total map into
/// target worlds or the agent sets differ.
ValidationReport check_bounded_morphism(const RelationalModel& source, const RelationalModel& target,
                                        const std::vector<std::size_t>& h);

/// Same worlds count, relations and valuation after renaming source world i
/// to target world map[i].
bool isomorphic_under(const RelationalModel& source, const RelationalModel& target,
                      const std::vector<std::size_t>& map);

}  // namespace doxa
