#include "doxa/harness.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "doxa/error.hpp"
#include "doxa/model_io.hpp"
#include "doxa/syntax.hpp"

namespace doxa {

namespace {

std::vector<std::string> names(std::size_t n, const std::string& letters, char fallback) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(i < letters.size() ? std::string(1, letters[i]) : fallback + std::to_string(i));
  return out;
}

/// Non-empty subset of `items` by coin flips, redrawn while empty.
std::vector<std::size_t> nonempty_subset(Rng& rng, const std::vector<std::size_t>& items) {
  for (;;) {
    std::vector<std::size_t> out;
    for (auto i : items)
      if (rng.coin()) out.push_back(i);
    if (!out.empty()) return out;
  }
}

std::map<std::string, PointSet> random_valuation(Rng& rng, const std::vector<std::string>& atoms, std::size_t points) {
  std::map<std::string, PointSet> out;
  for (const auto& p : atoms) {
    PointSet ext(points);
    for (std::size_t i = 0; i < points; ++i)
      if (rng.coin()) ext.set(i);
    out.emplace(p, std::move(ext));
  }
  return out;
}

Formula phi() { return Formula::atom("$phi"); }
Formula psi() { return Formula::atom("$psi"); }

using F = Formula;

const std::vector<Schema> kSchemas = {
    {"Kdist", "K[a](phi -> psi) -> (K[a]phi -> K[a]psi)", 1, 2,
     [](const auto& ag, const auto& x) {
       return F::implies(F::knows(ag[0], F::implies(x[0], x[1])), F::implies(F::knows(ag[0], x[0]), F::knows(ag[0], x[1])));
     }},
    {"T", "K[a]phi -> phi", 1, 1, [](const auto& ag, const auto& x) { return F::implies(F::knows(ag[0], x[0]), x[0]); }},
    {"K4", "K[a]phi -> K[a]K[a]phi", 1, 1,
     [](const auto& ag, const auto& x) { return F::implies(F::knows(ag[0], x[0]), F::knows(ag[0], F::knows(ag[0], x[0]))); }},
    {"K5", "~K[a]phi -> K[a]~K[a]phi", 1, 1,
     [](const auto& ag, const auto& x) {
       auto k = F::knows(ag[0], x[0]);
       return F::implies(F::negation(k), F::knows(ag[0], F::negation(k)));
     }},
    {"Bdist", "B[a](phi -> psi) -> (B[a]phi -> B[a]psi)", 1, 2,
     [](const auto& ag, const auto& x) {
       return F::implies(F::believes(ag[0], F::implies(x[0], x[1])),
                         F::implies(F::believes(ag[0], x[0]), F::believes(ag[0], x[1])));
     }},
    {"D", "B[a]phi -> ~B[a]~phi", 1, 1,
     [](const auto& ag, const auto& x) {
       return F::implies(F::believes(ag[0], x[0]), F::negation(F::believes(ag[0], F::negation(x[0]))));
     }},
    {"B4", "B[a]phi -> B[a]B[a]phi", 1, 1,
     [](const auto& ag, const auto& x) {
       return F::implies(F::believes(ag[0], x[0]), F::believes(ag[0], F::believes(ag[0], x[0])));
     }},
    {"B5", "~B[a]phi -> B[a]~B[a]phi", 1, 1,
     [](const auto& ag, const auto& x) {
       auto b = F::believes(ag[0], x[0]);
       return F::implies(F::negation(b), F::believes(ag[0], F::negation(b)));
     }},
    {"KB", "K[a]phi -> B[a]phi", 1, 1,
     [](const auto& ag, const auto& x) { return F::implies(F::knows(ag[0], x[0]), F::believes(ag[0], x[0])); }},
    {"SPI", "B[a]phi -> K[a]B[a]phi", 1, 1,
     [](const auto& ag, const auto& x) {
       return F::implies(F::believes(ag[0], x[0]), F::knows(ag[0], F::believes(ag[0], x[0])));
     }},
    {"SNI", "~B[a]phi -> K[a]~B[a]phi", 1, 1,
     [](const auto& ag, const auto& x) {
       auto b = F::believes(ag[0], x[0]);
       return F::implies(F::negation(b), F::knows(ag[0], F::negation(b)));
     }},
    {"BT", "B[a]phi -> phi", 1, 1, [](const auto& ag, const auto& x) { return F::implies(F::believes(ag[0], x[0]), x[0]); }},
    {"TRUST", "B[a](B[b]phi -> phi)", 2, 1,
     [](const auto& ag, const auto& x) { return F::believes(ag[0], F::implies(F::believes(ag[1], x[0]), x[0])); }},
};

const std::map<std::string, std::vector<std::string>> kGroups = {
    {"S5K", {"Kdist", "T", "K4", "K5"}},
    {"KD45B", {"Bdist", "D", "B4", "B5"}},
    {"FULL", {"Kdist", "T", "K4", "K5", "Bdist", "D", "B4", "B5", "KB", "SPI", "SNI"}},
};

/// Ordered agent tuples of distinct agents.
std::vector<std::vector<std::string>> agent_tuples(const std::vector<std::string>& agents, std::size_t slots) {
  std::vector<std::vector<std::string>> out;
  if (slots == 1) {
    for (const auto& a : agents) out.push_back({a});
  } else {
    for (const auto& a : agents)
      for (const auto& b : agents)
        if (a != b) out.push_back({a, b});
  }
  return out;
}

std::vector<std::string> model_atoms(const std::map<std::string, PointSet>& valuation) {
  std::vector<std::string> out;
  for (const auto& [p, _] : valuation) out.push_back(p);
  if (out.empty()) out.push_back("p");
  return out;
}

std::map<std::string, PointSet> with_missing_atoms(std::map<std::string, PointSet> valuation,
                                                   const std::vector<std::string>& atoms, std::size_t points) {
  for (const auto& p : atoms) valuation.try_emplace(p, PointSet(points));
  return valuation;
}

}  // namespace

std::vector<std::string> agent_names(std::size_t n) { return names(n, "abcdefgh", 'a'); }
std::vector<std::string> atom_names(std::size_t n) { return names(n, "pqrstuv", 'p'); }

RelationalModel gen_relational(const GenParams& p) {
  if (p.worlds == 0 || p.agents == 0) throw Error("gen_relational needs at least one world and one agent");
  Rng rng(p.seed);
  RelationalModel m;
  const auto n = p.worlds;
  for (std::size_t i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i));
  m.agents = agent_names(p.agents);
  for (const auto& a : m.agents) {
    const auto k = rng.between(1, n);
    const auto order = rng.permutation(n);
    std::vector<std::size_t> block(n);
    for (std::size_t i = 0; i < n; ++i) block[order[i]] = i < k ? i : rng.below(k);
    std::vector<std::vector<std::size_t>> classes(k);
    for (std::size_t w = 0; w < n; ++w) classes[block[w]].push_back(w);

    Relation r(n), q(n);
    for (const auto& cls : classes) {
      const auto target = nonempty_subset(rng, cls);
      for (auto w : cls) {
        for (auto v : cls) r.add(w, v);
        for (auto v : target) q.add(w, v);
      }
    }
    m.knowledge.emplace(a, std::move(r));
    m.belief.emplace(a, std::move(q));
  }
  m.valuation = random_valuation(rng, atom_names(p.atoms), n);
  return m;
}

RelationalModel gen_proper_relational(const GenParams& p, std::size_t attempts) {
  GenParams q = p;
  for (std::size_t i = 0; i < attempts; ++i) {
    auto m = gen_relational(q);
    if (is_proper(m)) return m;
    q.seed = derive_seed(p.seed, i);
  }
  throw Error("no proper model within " + std::to_string(attempts) + " draws");
}

SimplicialModel gen_simplicial(const GenParams& p, bool* truncated) {
  if (p.agents == 0 || p.nodes_per_agent == 0 || p.facets == 0)
    throw Error("gen_simplicial needs positive agent, node and facet counts");
  Rng rng(p.seed);
  const auto agents = agent_names(p.agents);
  const auto k = p.nodes_per_agent;

  std::size_t combinations = 1;
  for (std::size_t i = 0; i < agents.size() && combinations < p.facets; ++i) combinations *= k;
  const auto wanted = std::min(p.facets, combinations);
  if (truncated) *truncated = wanted < p.facets;

  // candidate node (agent i, j) has index i * k + j
  std::vector<Face> raw;
  std::set<Face> seen;
  while (raw.size() < wanted) {
    Face face;
    for (std::size_t i = 0; i < agents.size(); ++i) face.push_back(i * k + rng.below(k));
    if (seen.insert(face).second) raw.push_back(std::move(face));
  }

  SimplicialModel m;
  m.agents = agents;
  std::map<std::size_t, std::size_t> renumber;
  for (const auto& face : raw)
    for (auto n : face) renumber.emplace(n, 0);
  for (auto& [old, fresh] : renumber) {
    fresh = m.nodes.size();
    m.nodes.push_back({agents[old / k] + std::to_string(old % k), agents[old / k]});
  }
  for (const auto& face : raw) {
    Face f;
    for (auto n : face) f.push_back(renumber.at(n));
    m.knowledge.facets.push_back(std::move(f));
  }

  std::vector<std::size_t> all(m.facet_count());
  for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;

  auto draw_belief = [&](const std::vector<std::string>& cover) {
    std::set<std::size_t> chosen;
    if (p.serial) {
      for (const auto& a : cover)
        for (std::size_t n = 0; n < m.nodes.size(); ++n) {
          if (m.nodes[n].color != a) continue;
          std::vector<std::size_t> holders;
          for (auto x : all)
            if (std::binary_search(m.knowledge.facets[x].begin(), m.knowledge.facets[x].end(), n)) holders.push_back(x);
          chosen.insert(holders[rng.below(holders.size())]);
        }
      for (auto x : all)
        if (rng.coin()) chosen.insert(x);
    } else {
      const auto subset = nonempty_subset(rng, all);
      chosen.insert(subset.begin(), subset.end());
    }
    Complex c;
    for (auto x : chosen) c.facets.push_back(m.knowledge.facets[x]);
    return c;
  };

  if (p.shared_belief) {
    const auto c = draw_belief(agents);
    for (const auto& a : agents) m.belief.emplace(a, c);
  } else {
    for (const auto& a : agents) m.belief.emplace(a, draw_belief({a}));
  }
  m.valuation = random_valuation(rng, atom_names(p.atoms), m.facet_count());
  return m;
}

std::vector<Formula> enumerate_formulas(const std::vector<std::string>& agents, const std::vector<std::string>& atoms,
                                        std::size_t depth, std::size_t cap) {
  std::vector<Formula> base;
  for (const auto& p : atoms) base.push_back(Formula::atom(p));
  base.push_back(Formula::falsum());

  auto modalize = [&](const std::vector<Formula>& fs) {
    std::vector<Formula> out;
    for (const auto& a : agents)
      for (const auto& f : fs) out.push_back(Formula::knows(a, f));
    for (const auto& a : agents)
      for (const auto& f : fs) out.push_back(Formula::believes(a, f));
    return out;
  };

  std::vector<Formula> out;
  std::set<Formula> seen;
  auto push = [&](const Formula& f) {
    if (!seen.insert(f).second) return;
    if (out.size() >= cap) throw Error("formula enumeration exceeds the cap of " + std::to_string(cap));
    out.push_back(f);
  };

  std::vector<Formula> chains = base;  // C(d)
  std::vector<Formula> previous;       // E(d-1)
  for (std::size_t d = 0; d <= depth; ++d) {
    if (d > 0) {
      auto next = base;
      for (auto& f : modalize(chains)) next.push_back(std::move(f));
      chains = std::move(next);
    }
    if (chains.size() * chains.size() > cap) throw Error("formula enumeration exceeds the cap of " + std::to_string(cap));
    out.clear();
    seen.clear();
    for (const auto& f : chains) push(f);
    for (const auto& l : chains)
      for (const auto& r : chains) push(Formula::implies(l, r));
    for (const auto& f : modalize(previous)) push(f);
    previous = out;
  }
  return out;
}

Formula sample_formula(Rng& rng, const std::vector<std::string>& agents, const std::vector<std::string>& atoms,
                       std::size_t depth) {
  auto leaf = [&] {
    const auto i = rng.below(atoms.size() + 1);
    return i < atoms.size() ? Formula::atom(atoms[i]) : Formula::falsum();
  };
  if (depth == 0) {
    if (rng.below(3) != 0) return leaf();
    return Formula::implies(leaf(), leaf());
  }
  auto modal = [&] {
    const auto& a = agents[rng.below(agents.size())];
    auto body = sample_formula(rng, agents, atoms, depth - 1);
    return rng.coin() ? Formula::knows(a, std::move(body)) : Formula::believes(a, std::move(body));
  };
  if (rng.below(3) != 0) return modal();
  auto deep = modal();
  auto other = rng.coin() ? sample_formula(rng, agents, atoms, rng.below(depth)) : leaf();
  return rng.coin() ? Formula::implies(std::move(deep), std::move(other)) : Formula::implies(std::move(other), std::move(deep));
}

// ---------------------------------------------------------------------------

const std::vector<Schema>& schema_registry() { return kSchemas; }

const Schema& find_schema(const std::string& name) {
  for (const auto& s : kSchemas)
    if (s.name == name) return s;
  throw SchemaError("unknown schema '" + name + "'");
}

std::vector<std::string> expand_schemas(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (auto g = kGroups.find(item); g != kGroups.end()) {
      out.insert(out.end(), g->second.begin(), g->second.end());
    } else {
      out.push_back(find_schema(item).name);
    }
  }
  std::vector<std::string> unique;
  for (auto& s : out)
    if (std::find(unique.begin(), unique.end(), s) == unique.end()) unique.push_back(s);
  return unique;
}

SchemaReport check_axiom_schema(ExtensionEvaluator& eval, const std::string& name, const std::vector<Formula>& fill,
                                const std::string& digest, const std::vector<std::string>& point_names) {
  const auto& schema = find_schema(name);
  SchemaReport report{schema.name, 0, {}};
  const auto tuples = agent_tuples(eval.frame().agents, schema.agent_slots);
  if (tuples.empty() || fill.empty()) return report;

  // distinct extensions, each with the first fill formula that has it
  std::vector<std::pair<PointSet, Formula>> classes;
  std::unordered_map<PointSet, std::size_t, PointSetHash> index;
  for (const auto& f : fill) {
    const auto& ext = eval.extension(f);
    if (index.emplace(ext, classes.size()).second) classes.emplace_back(ext, f);
  }

  std::size_t per_tuple = fill.size();
  for (std::size_t i = 1; i < schema.formula_slots; ++i) per_tuple *= fill.size();
  report.instances = per_tuple * tuples.size();

  std::vector<std::size_t> pick(schema.formula_slots, 0);
  for (const auto& agents : tuples) {
    const auto templ = schema.build(agents, {phi(), psi()});
    std::fill(pick.begin(), pick.end(), 0);
    for (;;) {
      Bindings b{{"$phi", classes[pick[0]].first}};
      if (schema.formula_slots > 1) b.emplace("$psi", classes[pick[1]].first);
      const auto ext = eval.extension(templ, b);
      if (!ext.all()) {
        std::vector<Formula> fills;
        for (auto i : pick) fills.push_back(classes[i].second);
        const auto point = *(~ext).first();
        report.failures.push_back({schema.name, schema.build(agents, fills), digest, point_names[point], point});
      }
      std::size_t slot = 0;
      while (slot < pick.size() && ++pick[slot] == classes.size()) pick[slot++] = 0;
      if (slot == pick.size()) break;
    }
  }
  return report;
}

SchemaReport check_axiom_schema(const RelationalModel& m, const std::string& schema, const std::vector<Formula>& fill) {
  auto frame = relational_frame(m);
  std::set<std::string> atoms;
  for (const auto& f : fill)
    for (const auto& p : atoms_of(f)) atoms.insert(p);
  frame.valuation = with_missing_atoms(std::move(frame.valuation), {atoms.begin(), atoms.end()}, m.size());
  ExtensionEvaluator eval(std::move(frame));
  return check_axiom_schema(eval, schema, fill, model_digest(m), m.worlds);
}

SchemaReport check_axiom_schema(const SimplicialModel& m, const std::string& schema, const std::vector<Formula>& fill) {
  auto frame = simplicial_frame(m);
  std::set<std::string> atoms;
  for (const auto& f : fill)
    for (const auto& p : atoms_of(f)) atoms.insert(p);
  frame.valuation = with_missing_atoms(std::move(frame.valuation), {atoms.begin(), atoms.end()}, m.facet_count());
  std::vector<std::string> names;
  for (std::size_t x = 0; x < m.facet_count(); ++x) names.push_back(m.facet_name(x));
  ExtensionEvaluator eval(std::move(frame));
  return check_axiom_schema(eval, schema, fill, model_digest(m), names);
}

SchemaReport oracle_agreement(const RelationalModel& m, std::size_t depth, std::size_t samples, std::uint64_t seed) {
  return oracle_agreement(m, to_simplicial(m), depth, samples, seed);
}

SchemaReport oracle_agreement(const RelationalModel& m, const SimplicialTranslation& t, std::size_t depth,
                              std::size_t samples, std::uint64_t seed) {
  if (auto pair = improper_pair(m))
    throw ModelError("oracle needs a proper model", {m.worlds[pair->first], m.worlds[pair->second]});
  const auto atoms = model_atoms(m.valuation);
  const auto digest = model_digest(m);
  SchemaReport report{"oracle", 0, {}};
  const auto& f = t.witness.world_to_facet;

  ExtensionEvaluator rel(relational_frame(m));
  ExtensionEvaluator simp(simplicial_frame(t.model));
  for (const auto& phi : enumerate_formulas(m.agents, atoms, depth)) {
    const auto& a = rel.extension(phi);
    const auto& b = simp.extension(phi);
    for (std::size_t w = 0; w < m.size(); ++w) {
      ++report.instances;
      if (a.test(w) != b.test(f[w])) report.failures.push_back({"oracle", phi, digest, m.worlds[w], w});
    }
  }

  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto phi = sample_formula(rng, m.agents, atoms, depth + 1);
    for (std::size_t w = 0; w < m.size(); ++w) {
      ++report.instances;
      if (eval_relational(m, w, phi) != eval_simplicial(t.model, f[w], phi))
        report.failures.push_back({"oracle", phi, digest, m.worlds[w], w});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

GenParams trial_params(const SuiteParams& s, std::uint64_t trial_seed) {
  Rng rng(trial_seed);
  bool needs_pair = false;
  for (const auto& name : s.schemas) needs_pair = needs_pair || find_schema(name).agent_slots > 1;
  GenParams p;
  p.seed = rng.next() | (std::uint64_t{rng.next()} << 32);
  p.agents = rng.between(needs_pair ? 2 : 1, 3);
  p.atoms = rng.between(1, 2);
  p.worlds = rng.between(1, 6);
  p.nodes_per_agent = rng.between(1, 3);
  p.facets = rng.between(1, 6);
  p.serial = s.serial;
  p.shared_belief = s.shared_belief;
  return p;
}

SuiteResult run_suite(const SuiteParams& s, std::ostream& log) {
  using nlohmann::json;
  SuiteResult result;
  for (std::size_t i = 0; i < s.trials; ++i) {
    const auto trial_seed = derive_seed(s.seed, i);
    const auto p = trial_params(s, trial_seed);
    json line;
    line["trial"] = i;
    line["seed"] = trial_seed;
    line["family"] = s.family == Family::Relational ? "rel" : "simp";
    line["gen"] = {{"seed", p.seed}, {"agents", p.agents}, {"atoms", p.atoms}};
    if (s.family == Family::Relational) {
      line["gen"]["worlds"] = p.worlds;
    } else {
      line["gen"]["nodes_per_agent"] = p.nodes_per_agent;
      line["gen"]["facets"] = p.facets;
      line["gen"]["serial"] = p.serial;
      line["gen"]["shared_belief"] = p.shared_belief;
    }

    std::vector<SchemaReport> reports;
    if (s.family == Family::Relational) {
      const auto m = gen_relational(p);
      const auto fill = enumerate_formulas(m.agents, atom_names(p.atoms), s.depth);
      line["digest"] = model_digest(m);
      line["size"] = {{"worlds", m.size()}, {"agents", m.agents.size()}, {"atoms", p.atoms}};
      for (const auto& name : s.schemas) reports.push_back(check_axiom_schema(m, name, fill));
    } else {
      bool truncated = false;
      const auto m = gen_simplicial(p, &truncated);
      const auto fill = enumerate_formulas(m.agents, atom_names(p.atoms), s.depth);
      line["digest"] = model_digest(m);
      line["size"] = {{"facets", m.facet_count()}, {"nodes", m.nodes.size()}, {"agents", m.agents.size()},
                      {"atoms", p.atoms}, {"truncated", truncated}};
      for (const auto& name : s.schemas) reports.push_back(check_axiom_schema(m, name, fill));
    }

    json schemas = json::object();
    json failures = json::array();
    std::size_t count = 0;
    for (const auto& r : reports) {
      schemas[r.schema] = {{"instances", r.instances}, {"failures", r.failures.size()}};
      for (const auto& f : r.failures)
        failures.push_back({{"schema", f.schema}, {"formula", render_formula(f.instance)}, {"point", f.point}});
      count += r.failures.size();
    }
    line["schemas"] = schemas;
    line["failures"] = failures;
    log << line.dump() << '\n';

    ++result.trials;
    result.failures += count;
    if (count) {
      ++result.failing_trials;
      if (!result.first_failing_seed) result.first_failing_seed = trial_seed;
    }
  }
  return result;
}

}  // namespace doxa
