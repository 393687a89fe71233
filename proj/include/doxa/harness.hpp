#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "doxa/extension.hpp"
#include "doxa/formula.hpp"
#include "doxa/relational.hpp"
#include "doxa/rng.hpp"
#include "doxa/simplicial.hpp"
#include "doxa/transform.hpp"

namespace doxa {

struct GenParams {
  std::uint64_t seed = 0;
  std::size_t worlds = 3;           // relational
  std::size_t agents = 2;
  std::size_t atoms = 1;
  std::size_t nodes_per_agent = 2;  // simplicial
  std::size_t facets = 4;           // simplicial
  bool serial = true;               // simplicial: every S_a is a-serial
  bool shared_belief = false;       // simplicial: one complex for all agents
};

/// a, b, c, ... and p, q, r, ... (then indexed names past the alphabet).
std::vector<std::string> agent_names(std::size_t n);
std::vector<std::string> atom_names(std::size_t n);

/// Each R_a from a random partition (k uniform in [1,|W|], a random
/// permutation, the first k worlds open distinct blocks, the rest land in
/// uniform blocks); Q_a is C x T on each class C for a random non-empty T.
/// Atoms hold on each world with probability 1/2.
RelationalModel gen_relational(const GenParams& p);

/// gen_relational on derived seeds until the result is proper. Throws Error
/// after `attempts` improper draws.
RelationalModel gen_proper_relational(const GenParams& p, std::size_t attempts = 10000);

/// Facets pick one node per agent uniformly and are deduplicated; unused
/// nodes are dropped. When the requested facet count exceeds the number of
/// distinct combinations it is truncated and `*truncated` is set.
SimplicialModel gen_simplicial(const GenParams& p, bool* truncated = nullptr);

/// Depth 0: atoms, false, and implications between them. Depth d adds
/// implications between modal chains of length at most d and every modality
/// applied to depth d-1. Structurally deduplicated, deterministic order.
/// Throws Error past `cap` formulas.
std::vector<Formula> enumerate_formulas(const std::vector<std::string>& agents, const std::vector<std::string>& atoms,
                                        std::size_t depth, std::size_t cap = 200000);

/// A random formula of modal depth exactly `depth`.
Formula sample_formula(Rng& rng, const std::vector<std::string>& agents, const std::vector<std::string>& atoms,
                       std::size_t depth);

// ---------------------------------------------------------------------------
// Axiom schemas

/// A named template over metavariables $phi (and $psi) and agent slots a (and
/// b, always distinct from a).
struct Schema {
  std::string name;
  std::string description;
  std::size_t agent_slots;
  std::size_t formula_slots;
  Formula (*build)(const std::vector<std::string>& agents, const std::vector<Formula>& fills);
};

const std::vector<Schema>& schema_registry();
/// Throws SchemaError on an unknown name.
const Schema& find_schema(const std::string& name);
/// Expands the groups FULL, S5K and KD45B; other names pass through after
/// lookup. Comma-separated.
std::vector<std::string> expand_schemas(const std::string& list);

struct SchemaFailure {
  std::string schema;
  Formula instance;
  std::string digest;
  std::string point;  // world id or facet name
  std::size_t point_index = 0;
};

struct SchemaReport {
  std::string schema;
  std::size_t instances = 0;
  std::vector<SchemaFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Validity of every instance of `schema` over `fill` and all agent
/// assignments. Instances whose fills have the same extension are decided
/// together, so one failure is recorded per refuted extension (with the first
/// fill that has it).
SchemaReport check_axiom_schema(const RelationalModel& m, const std::string& schema, const std::vector<Formula>& fill);
SchemaReport check_axiom_schema(const SimplicialModel& m, const std::string& schema, const std::vector<Formula>& fill);
/// Frame-level core of the two above.
SchemaReport check_axiom_schema(ExtensionEvaluator& eval, const std::string& schema, const std::vector<Formula>& fill,
                                const std::string& digest, const std::vector<std::string>& point_names);

/// Compares the relational evaluator on `m` with the simplicial evaluator on
/// its translation: every world, every formula enumerated to `depth` (bulk
/// evaluators) plus `samples` formulas of depth + 1 (recursive evaluators).
/// Throws ModelError on an improper input.
SchemaReport oracle_agreement(const RelationalModel& m, std::size_t depth, std::size_t samples, std::uint64_t seed);
/// Same, against a supplied translation (which may be deliberately broken).
SchemaReport oracle_agreement(const RelationalModel& m, const SimplicialTranslation& t, std::size_t depth,
                              std::size_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Suites

enum class Family { Relational, Simplicial };

struct SuiteParams {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  Family family = Family::Simplicial;
  std::vector<std::string> schemas;  // already expanded
  bool serial = true;
  bool shared_belief = false;
  std::size_t depth = 2;
};

/// Sizes for trial `trial_seed`: up to 6 worlds or 6 facets, 1-3 agents
/// (2-3 for schemas needing two), 1-2 atoms, 1-3 nodes per agent.
GenParams trial_params(const SuiteParams& s, std::uint64_t trial_seed);

struct SuiteResult {
  std::size_t trials = 0;
  std::size_t failing_trials = 0;
  std::size_t failures = 0;
  std::optional<std::uint64_t> first_failing_seed;
};

/// One JSON object per trial on `log`, in trial order.
SuiteResult run_suite(const SuiteParams& s, std::ostream& log);

}  // namespace doxa
