#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "doxa/altsem.hpp"
#include "doxa/relational.hpp"
#include "doxa/simplicial.hpp"
#include "doxa/transform.hpp"

namespace doxa {

/// A loaded model file. A "simplicial" file with "allow_non_ucf": true loads
/// as a bare ColoredModel (no belief subcomplexes).
struct ModelFile {
  std::variant<RelationalModel, SimplicialModel, ColoredModel> model;
  std::optional<PerspectiveMap> perspective_map;
};

/// Throws SchemaError on malformed input or dangling references.
ModelFile parse_model(const nlohmann::json& j);
ModelFile load_model(const std::filesystem::path& path);

nlohmann::json to_json(const RelationalModel& m);
nlohmann::json to_json(const SimplicialModel& m, const std::optional<PerspectiveMap>& pm = std::nullopt);
nlohmann::json to_json(const ColoredModel& m, const std::optional<PerspectiveMap>& pm = std::nullopt);

/// world id -> facet name, node id -> (agent, class)
nlohmann::json witness_json(const TranslationWitness& w, const RelationalModel& relational,
                            const SimplicialModel& simplicial);
/// distinguished agent, g table, carrier pairs and the projection as a
/// world-id map, replayable with check_bounded_morphism.
nlohmann::json witness_json(const ProperizeWitness& w, const RelationalModel& input, const RelationalModel& output);

/// Reads a {"projection"|"map": {source id: target id}} object into indices.
std::vector<std::size_t> parse_world_map(const nlohmann::json& j, const RelationalModel& source,
                                         const RelationalModel& target);

/// FNV-1a 64 of the canonical JSON text, as 16 hex digits.
std::string model_digest(const RelationalModel& m);
std::string model_digest(const SimplicialModel& m);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace doxa
