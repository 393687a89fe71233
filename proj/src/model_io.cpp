#include "doxa/model_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>

#include "doxa/error.hpp"

namespace doxa {

using nlohmann::json;

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_of(const json& j, const std::string& what) {
  if (!j.is_string()) throw SchemaError(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> unique_strings(const json& j, const std::string& what, bool identifiers) {
  if (!j.is_array() || j.empty()) throw SchemaError(what + " must be a non-empty array");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : j) {
    auto s = string_of(e, what + " entry");
    if (s.empty()) throw SchemaError(what + " entries must be non-empty");
    if (identifiers && !is_identifier(s)) throw SchemaError(what + " entry '" + s + "' is not an identifier");
    if (!seen.insert(s).second) throw SchemaError("duplicate " + what + " entry '" + s + "'");
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t lookup(const std::vector<std::string>& ids, const std::string& id, const std::string& what) {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) throw SchemaError("unknown " + what + " '" + id + "'");
  return static_cast<std::size_t>(it - ids.begin());
}

std::map<std::string, PointSet> parse_valuation(const json& j, std::size_t points,
                                                const std::function<std::size_t(const json&)>& resolve) {
  std::map<std::string, PointSet> out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw SchemaError("'val' must be an object");
  for (const auto& [atom, points_json] : j.items()) {
    if (!is_identifier(atom)) throw SchemaError("atom '" + atom + "' is not an identifier");
    if (!points_json.is_array()) throw SchemaError("valuation of '" + atom + "' must be an array");
    PointSet ext(points);
    for (const auto& p : points_json) ext.set(resolve(p));
    out.emplace(atom, std::move(ext));
  }
  return out;
}

RelationalModel parse_relational(const json& j, std::vector<std::string> agents) {
  RelationalModel m;
  m.agents = std::move(agents);
  m.worlds = unique_strings(field(j, "worlds"), "worlds", false);
  const auto n = m.worlds.size();
  auto world = [&](const json& e) { return lookup(m.worlds, string_of(e, "world id"), "world"); };
  for (const char* key : {"R", "Q"}) {
    const auto& rels = field(j, key);
    if (!rels.is_object()) throw SchemaError(std::string("'") + key + "' must be an object");
    for (const auto& [agent, _] : rels.items()) lookup(m.agents, agent, "agent");
    auto& family = key[0] == 'R' ? m.knowledge : m.belief;
    for (const auto& a : m.agents) {
      auto it = rels.find(a);
      if (it == rels.end()) throw SchemaError(std::string("'") + key + "' has no relation for agent '" + a + "'");
      if (!it->is_array()) throw SchemaError("relation must be an array of pairs");
      Relation r(n);
      for (const auto& edge : *it) {
        if (!edge.is_array() || edge.size() != 2) throw SchemaError("relation edges must be [from, to] pairs");
        r.add(world(edge[0]), world(edge[1]));
      }
      family.emplace(a, std::move(r));
    }
  }
  m.valuation = parse_valuation(j.value("val", json()), n, world);
  return m;
}

ColoredModel parse_colored(const json& j, std::vector<std::string> agents, std::vector<std::string>& node_ids) {
  ColoredModel m;
  m.agents = std::move(agents);
  const auto& nodes = field(j, "nodes");
  if (!nodes.is_array()) throw SchemaError("'nodes' must be an array");
  for (const auto& node : nodes) {
    if (!node.is_object()) throw SchemaError("node entries must be objects");
    auto id = string_of(field(node, "id"), "node id");
    auto color = string_of(field(node, "color"), "node color");
    if (id.empty()) throw SchemaError("node ids must be non-empty");
    lookup(m.agents, color, "agent");
    if (std::find(node_ids.begin(), node_ids.end(), id) != node_ids.end())
      throw SchemaError("duplicate node id '" + id + "'");
    node_ids.push_back(id);
    m.nodes.push_back({std::move(id), std::move(color)});
  }
  const auto& facets = field(j, "facets");
  if (!facets.is_array() || facets.empty()) throw SchemaError("'facets' must be a non-empty array");
  for (const auto& facet : facets) m.knowledge.facets.push_back([&] {
      if (!facet.is_array()) throw SchemaError("facets must be arrays of node ids");
      Face face;
      for (const auto& id : facet) face.push_back(lookup(node_ids, string_of(id, "node id"), "node"));
      std::sort(face.begin(), face.end());
      if (std::adjacent_find(face.begin(), face.end()) != face.end())
        throw SchemaError("facet lists a node twice");
      return face;
    }());
  const auto count = m.knowledge.facets.size();
  m.valuation = parse_valuation(j.value("val", json()), count, [&](const json& e) {
    if (!e.is_number_unsigned() || e.get<std::size_t>() >= count)
      throw SchemaError("facet reference must be an index below " + std::to_string(count));
    return e.get<std::size_t>();
  });
  return m;
}

std::optional<PerspectiveMap> parse_perspective_map(const json& j, const ColoredModel& m) {
  auto it = j.find("perspective_map");
  if (it == j.end()) return std::nullopt;
  if (!it->is_object()) throw SchemaError("'perspective_map' must be an object");
  PerspectiveMap pm;
  for (const auto& [agent, table] : it->items()) {
    lookup(m.agents, agent, "agent");
    if (!table.is_object()) throw SchemaError("perspective map entries must be objects");
    for (const auto& [from, to] : table.items()) {
      m.node_index(from);
      pm[agent][from] = string_of(to, "perspective target");
      m.node_index(pm[agent][from]);
    }
  }
  return pm;
}

json edges_json(const Relation& r, const std::vector<std::string>& worlds) {
  json out = json::array();
  for (const auto& [i, j] : r.edges()) out.push_back({worlds[i], worlds[j]});
  return out;
}

json face_json(const ColoredModel& m, const Face& face) {
  json out = json::array();
  for (auto n : face) out.push_back(m.nodes[n].id);
  return out;
}

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

ModelFile parse_model(const json& j) {
  try {
    if (!j.is_object()) throw SchemaError("model file must be a JSON object");
    const auto kind = string_of(field(j, "kind"), "'kind'");
    auto agents = unique_strings(field(j, "agents"), "agents", true);
    if (kind == "relational") return {parse_relational(j, std::move(agents)), std::nullopt};
    if (kind != "simplicial") throw SchemaError("unknown kind '" + kind + "'");

    std::vector<std::string> node_ids;
    ColoredModel colored = parse_colored(j, std::move(agents), node_ids);
    auto pm = parse_perspective_map(j, colored);
    if (j.value("allow_non_ucf", false)) {
      for (std::size_t x = 0; x < colored.facet_count(); ++x)
        for (const auto& a : colored.agents)
          if (multiplicity(colored, colored.knowledge.facets[x], a) == 0)
            throw SchemaError("facet X" + std::to_string(x) + " has no node of color '" + a + "'");
      return {std::move(colored), std::move(pm)};
    }

    SimplicialModel m;
    static_cast<ColoredModel&>(m) = std::move(colored);
    if (auto it = j.find("belief"); it != j.end()) {
      if (!it->is_object()) throw SchemaError("'belief' must be an object");
      for (const auto& [agent, faces] : it->items()) {
        lookup(m.agents, agent, "agent");
        if (!faces.is_array()) throw SchemaError("belief complexes must be arrays");
        Complex c;
        for (const auto& entry : faces) {
          if (entry.is_number_unsigned()) {
            const auto index = entry.get<std::size_t>();
            if (index >= m.facet_count()) throw SchemaError("belief facet index out of range");
            c.facets.push_back(m.knowledge.facets[index]);
          } else if (entry.is_array()) {
            Face face;
            for (const auto& id : entry) face.push_back(lookup(node_ids, string_of(id, "node id"), "node"));
            std::sort(face.begin(), face.end());
            face.erase(std::unique(face.begin(), face.end()), face.end());
            c.facets.push_back(std::move(face));
          } else {
            throw SchemaError("belief entries must be facet indices or node arrays");
          }
        }
        m.belief.emplace(agent, std::move(c));
      }
    }
    return {std::move(m), std::move(pm)};
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  } catch (const ModelError& e) {
    throw SchemaError(e.what());
  }
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError("'" + path.string() + "': " + e.what());
  }
  return parse_model(j);
}

json to_json(const RelationalModel& m) {
  json j;
  j["kind"] = "relational";
  j["agents"] = m.agents;
  j["worlds"] = m.worlds;
  j["R"] = json::object();
  j["Q"] = json::object();
  for (const auto& a : m.agents) {
    j["R"][a] = edges_json(m.knowledge_of(a), m.worlds);
    j["Q"][a] = edges_json(m.belief_of(a), m.worlds);
  }
  j["val"] = json::object();
  for (const auto& [p, ext] : m.valuation) {
    json ws = json::array();
    for (auto w : ext.members()) ws.push_back(m.worlds[w]);
    j["val"][p] = ws;
  }
  return j;
}

json to_json(const ColoredModel& m, const std::optional<PerspectiveMap>& pm) {
  json j;
  j["kind"] = "simplicial";
  j["agents"] = m.agents;
  j["nodes"] = json::array();
  for (const auto& n : m.nodes) j["nodes"].push_back({{"id", n.id}, {"color", n.color}});
  j["facets"] = json::array();
  for (const auto& f : m.knowledge.facets) j["facets"].push_back(face_json(m, f));
  j["val"] = json::object();
  for (const auto& [p, ext] : m.valuation) j["val"][p] = ext.members();
  if (pm) j["perspective_map"] = *pm;
  return j;
}

json to_json(const SimplicialModel& m, const std::optional<PerspectiveMap>& pm) {
  json j = to_json(static_cast<const ColoredModel&>(m), pm);
  j["belief"] = json::object();
  for (const auto& [a, c] : m.belief) {
    json faces = json::array();
    for (const auto& y : c.facets) {
      auto it = std::find(m.knowledge.facets.begin(), m.knowledge.facets.end(), y);
      if (it != m.knowledge.facets.end())
        faces.push_back(static_cast<std::size_t>(it - m.knowledge.facets.begin()));
      else
        faces.push_back(face_json(m, y));
    }
    j["belief"][a] = faces;
  }
  return j;
}

json witness_json(const TranslationWitness& w, const RelationalModel& relational, const SimplicialModel& simplicial) {
  json j;
  j["world_to_facet"] = json::object();
  for (std::size_t i = 0; i < w.world_to_facet.size(); ++i)
    j["world_to_facet"][relational.worlds[i]] = simplicial.facet_name(w.world_to_facet[i]);
  j["node_semantics"] = json::object();
  for (std::size_t i = 0; i < w.node_semantics.size(); ++i) {
    json cls = json::array();
    for (auto v : w.node_semantics[i].worlds) cls.push_back(relational.worlds[v]);
    j["node_semantics"][simplicial.nodes[i].id] = {{"agent", w.node_semantics[i].agent}, {"class", cls}};
  }
  return j;
}

json witness_json(const ProperizeWitness& w, const RelationalModel& input, const RelationalModel& output) {
  json j;
  j["distinguished"] = w.distinguished;
  j["g"] = json::object();
  for (std::size_t i = 0; i < w.g.size(); ++i) j["g"][input.worlds[i]] = w.g[i];
  j["modulus"] = input.size();
  j["carrier"] = json::array();
  for (const auto& [a, b] : w.carrier) j["carrier"].push_back({input.worlds[a], input.worlds[b]});
  j["projection"] = json::object();
  for (std::size_t i = 0; i < w.projection.size(); ++i) j["projection"][output.worlds[i]] = input.worlds[w.projection[i]];
  return j;
}

std::vector<std::size_t> parse_world_map(const json& j, const RelationalModel& source, const RelationalModel& target) {
  const json* table = nullptr;
  if (j.contains("projection")) table = &j["projection"];
  else if (j.contains("map")) table = &j["map"];
  if (!table || !table->is_object()) throw SchemaError("expected a 'projection' or 'map' object");
  std::vector<std::size_t> h(source.size(), target.size());
  for (const auto& [from, to] : table->items())
    h[lookup(source.worlds, from, "source world")] = lookup(target.worlds, string_of(to, "target world"), "target world");
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] == target.size()) throw SchemaError("map has no image for '" + source.worlds[i] + "'");
  return h;
}

std::string model_digest(const RelationalModel& m) { return fnv1a(to_json(m).dump()); }
std::string model_digest(const SimplicialModel& m) { return fnv1a(to_json(m).dump()); }

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace doxa
