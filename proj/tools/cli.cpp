#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "doxa/altsem.hpp"
#include "doxa/error.hpp"
#include "doxa/harness.hpp"
#include "doxa/model_io.hpp"
#include "doxa/syntax.hpp"
#include "doxa/transform.hpp"

namespace doxa::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kBadInput = 2;

/// Raised for a failed precondition the user can act on; maps to exit 1.
struct Refusal : Error {
  using Error::Error;
};

struct Options {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("DOXA_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw SchemaError(std::string("DOXA_SEED is not a number: '") + s + "'");
    }
  }
  return 0;
}

fs::path sidecar(const fs::path& out, const std::string& suffix) {
  auto p = out;
  p.replace_extension();
  return p.string() + suffix;
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_json(path, j);
  }
}

std::string witness_text(const std::vector<std::string>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + w[i];
  return "(" + s + ")";
}

// ---------------------------------------------------------------------------
// check

int cmd_check(const std::string& path, bool strict, const Options& o, std::ostream& out) {
  const auto file = load_model(path);
  ValidationReport report;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, RelationalModel>) {
          report = validate_relational(m);
        } else if constexpr (std::is_same_v<M, SimplicialModel>) {
          report = validate_simplicial(m);
        } else {
          report = validate_colored(m);
        }
        if constexpr (!std::is_same_v<M, RelationalModel>) {
          if (file.perspective_map) {
            try {
              validate_perspective_map(m, *file.perspective_map);
            } catch (const ModelError& e) {
              report.violations.push_back({"perspective-map", e.witness(), e.what()});
            }
          }
        }
      },
      file.model);
  if (o.json()) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << to_text(report);
  }
  if (!report.ok()) return kNo;
  if (strict && !report.warnings.empty()) return kNo;
  return kOk;
}

// ---------------------------------------------------------------------------
// eval

const ColoredModel& colored_view(const ModelFile& file, const std::string& semantics) {
  if (const auto* s = std::get_if<SimplicialModel>(&file.model)) return *s;
  if (const auto* c = std::get_if<ColoredModel>(&file.model)) return *c;
  throw SchemaError("semantics '" + semantics + "' needs a simplicial model");
}

void require_valid(const ValidationReport& r) {
  if (!r.ok()) {
    const auto& v = r.violations.front();
    throw SchemaError("model is invalid: " + v.check + " " + witness_text(v.witness) +
                      (v.detail.empty() ? "" : ": " + v.detail));
  }
}

int cmd_eval(const std::string& path, const std::string& at, const std::string& text, const std::string& semantics,
             const Options& o, std::ostream& out) {
  const auto file = load_model(path);
  const auto f = parse_formula(text);
  bool value = false;
  if (const auto* rel = std::get_if<RelationalModel>(&file.model)) {
    if (semantics != "standard") throw SchemaError("semantics '" + semantics + "' needs a simplicial model");
    require_valid(validate_relational(*rel));
    value = eval_relational(*rel, rel->world_index(at), f);
  } else if (semantics == "standard") {
    const auto* s = std::get_if<SimplicialModel>(&file.model);
    if (!s) throw SchemaError("standard semantics needs belief subcomplexes");
    require_valid(validate_simplicial(*s));
    value = eval_simplicial(*s, s->facet_index(at), f);
  } else {
    const auto& m = colored_view(file, semantics);
    require_valid(validate_colored(m));
    const auto x = m.facet_index(at);
    if (semantics == "kasc") {
      const auto pm = file.perspective_map.value_or(PerspectiveMap{});
      validate_perspective_map(m, pm);
      value = eval_kasc(m, pm, x, f);
    } else if (semantics == "bounded") {
      value = eval_simpbel(m, x, f, SimpBelVariant::Bounded);
    } else {
      value = eval_simpbel(m, x, f, SimpBelVariant::Minimal);
    }
  }
  if (o.json()) {
    out << json{{"point", at}, {"formula", render_formula(f)}, {"semantics", semantics}, {"value", value}}.dump() << '\n';
  } else {
    out << (value ? "true" : "false") << '\n';
  }
  return value ? kOk : kNo;
}

// ---------------------------------------------------------------------------
// translations

RelationalModel load_relational(const std::string& path) {
  auto file = load_model(path);
  auto* m = std::get_if<RelationalModel>(&file.model);
  if (!m) throw SchemaError("'" + path + "' is not a relational model");
  require_valid(validate_relational(*m));
  return std::move(*m);
}

SimplicialModel load_simplicial(const std::string& path) {
  auto file = load_model(path);
  auto* m = std::get_if<SimplicialModel>(&file.model);
  if (!m) throw SchemaError("'" + path + "' is not a simplicial belief model");
  return std::move(*m);
}

Properized properize_or_refuse(const RelationalModel& m, const std::string& distinguished) {
  if (m.agents.size() < 2) throw Refusal("properize needs at least two agents");
  if (!distinguished.empty() && std::find(m.agents.begin(), m.agents.end(), distinguished) == m.agents.end())
    throw SchemaError("unknown agent '" + distinguished + "'");
  return properize(m, distinguished.empty() ? std::nullopt : std::optional(distinguished));
}

int cmd_translate(const std::string& path, bool properize_first, const std::string& distinguished,
                  const std::string& output, std::ostream& out, std::ostream& err) {
  auto source = load_relational(path);
  std::optional<Properized> proper;
  if (properize_first) {
    proper = properize_or_refuse(source, distinguished);
  } else if (auto pair = improper_pair(source)) {
    err << "error: model is not proper; worlds " << source.worlds[pair->first] << " and "
        << source.worlds[pair->second] << " share every knowledge class (use --properize-first)\n";
    return kNo;
  }
  const auto& input = proper ? proper->model : source;
  const auto t = to_simplicial(input);
  emit(to_json(t.model), output, out);
  if (!output.empty()) {
    write_json(sidecar(output, ".witness.json"), witness_json(t.witness, input, t.model));
    if (proper) {
      write_json(sidecar(output, ".properized.json"), to_json(proper->model));
      write_json(sidecar(output, ".properize-witness.json"), witness_json(proper->witness, source, proper->model));
    }
    err << "wrote " << output << " (" << t.model.facet_count() << " facets, " << t.model.nodes.size() << " nodes)\n";
  }
  return kOk;
}

int cmd_to_relational(const std::string& path, const std::string& output, std::ostream& out, std::ostream& err) {
  const auto source = load_simplicial(path);
  const auto report = validate_simplicial(source);
  for (const char* check : {"structure", "node-color", "ucf", "belief-ucf"})
    if (const auto* v = report.find(check)) throw Refusal("cannot translate: " + v->check + " " + witness_text(v->witness));
  const auto t = to_relational(source);
  emit(to_json(t.model), output, out);
  if (!output.empty()) {
    write_json(sidecar(output, ".witness.json"), witness_json(t.witness, t.model, source));
    err << "wrote " << output << " (" << t.model.size() << " worlds)\n";
  }
  return kOk;
}

int cmd_properize(const std::string& path, const std::string& distinguished, const std::string& output,
                  std::ostream& out, std::ostream& err) {
  const auto source = load_relational(path);
  const auto p = properize_or_refuse(source, distinguished);
  emit(to_json(p.model), output, out);
  if (!output.empty()) {
    write_json(sidecar(output, ".witness.json"), witness_json(p.witness, source, p.model));
    err << "wrote " << output << " (" << p.model.size() << " worlds, distinguished " << p.witness.distinguished << ")\n";
  }
  return kOk;
}

int cmd_check_morphism(const std::string& source_path, const std::string& target_path, const std::string& map_path,
                       const Options& o, std::ostream& out) {
  const auto source = load_relational(source_path);
  const auto target = load_relational(target_path);
  std::ifstream in(map_path);
  if (!in) throw SchemaError("cannot read '" + map_path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  }
  const auto h = parse_world_map(j, source, target);
  const auto report = check_bounded_morphism(source, target, h);
  if (o.json()) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << to_text(report);
  }
  return report.ok() ? kOk : kNo;
}

// ---------------------------------------------------------------------------
// suite / gen

Family parse_family(const std::string& s) {
  if (s == "rel") return Family::Relational;
  if (s == "simp") return Family::Simplicial;
  throw SchemaError("unknown family '" + s + "'");
}

int cmd_suite(SuiteParams params, const std::string& schemas, const Options& o, std::ostream& out, std::ostream& err) {
  params.schemas = expand_schemas(schemas);
  if (params.schemas.empty()) throw SchemaError("no schemas given");
  const auto result = run_suite(params, out);
  json summary = {{"trials", result.trials}, {"failing_trials", result.failing_trials}, {"failures", result.failures}};
  if (result.first_failing_seed) summary["first_failing_seed"] = *result.first_failing_seed;
  if (o.json()) {
    err << summary.dump() << '\n';
  } else {
    err << result.trials << " trials, " << result.failures << " schema failures in " << result.failing_trials
        << " models";
    if (result.first_failing_seed) err << "; first failing trial seed " << *result.first_failing_seed;
    err << '\n';
  }
  return result.failures == 0 ? kOk : kNo;
}

int cmd_gen(const std::string& family, GenParams p, bool proper, const std::string& output, std::ostream& out,
            std::ostream& err) {
  if (parse_family(family) == Family::Relational) {
    const auto m = proper ? gen_proper_relational(p) : gen_relational(p);
    emit(to_json(m), output, out);
  } else {
    bool truncated = false;
    const auto m = gen_simplicial(p, &truncated);
    if (truncated) err << "warning: only " << m.facet_count() << " distinct facets exist; facet count truncated\n";
    emit(to_json(m), output, out);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// compare-semantics

int cmd_compare(const std::string& path, std::vector<std::string> texts, const Options& o, std::ostream& out) {
  const auto file = load_model(path);
  const auto& m = colored_view(file, "compare");
  require_valid(validate_colored(m));
  const auto* s = std::get_if<SimplicialModel>(&file.model);
  if (s) require_valid(validate_simplicial(*s));
  const bool ucf = validate_colored(m).flags.at("ucf");
  const auto pm = file.perspective_map.value_or(PerspectiveMap{});
  if (ucf) validate_perspective_map(m, pm);

  if (texts.empty()) {
    std::vector<std::string> atoms;
    for (const auto& [p, _] : m.valuation) atoms.push_back(p);
    if (atoms.empty()) atoms.push_back("p");
    for (const auto& a : m.agents)
      for (const auto& p : atoms) texts.push_back("B[" + a + "] " + p);
  }

  std::vector<std::string> columns;
  if (s) columns.push_back("standard");
  if (ucf) columns.push_back("kasc");
  columns.push_back("bounded");
  columns.push_back("minimal");

  json rows = json::array();
  std::size_t disagreements = 0;
  for (const auto& text : texts) {
    const auto f = parse_formula(text);
    for (std::size_t x = 0; x < m.facet_count(); ++x) {
      json row = {{"facet", m.facet_name(x)}, {"formula", render_formula(f)}};
      std::set<bool> seen;
      for (const auto& c : columns) {
        bool v = false;
        if (c == "standard") v = eval_simplicial(*s, x, f);
        else if (c == "kasc") v = eval_kasc(m, pm, x, f);
        else if (c == "bounded") v = eval_simpbel(m, x, f, SimpBelVariant::Bounded);
        else v = eval_simpbel(m, x, f, SimpBelVariant::Minimal);
        row[c] = v;
        seen.insert(v);
      }
      row["agree"] = seen.size() == 1;
      disagreements += seen.size() != 1;
      rows.push_back(row);
    }
  }

  if (o.json()) {
    out << json{{"columns", columns}, {"rows", rows}, {"disagreements", disagreements}}.dump(2) << '\n';
    return kOk;
  }
  std::size_t width = 7;
  for (const auto& r : rows) width = std::max(width, r["formula"].get<std::string>().size());
  out << std::left << std::setw(6) << "facet" << ' ' << std::setw(static_cast<int>(width)) << "formula";
  for (const auto& c : columns) out << ' ' << std::setw(9) << c;
  out << " agree\n";
  for (const auto& r : rows) {
    out << std::setw(6) << r["facet"].get<std::string>() << ' ' << std::setw(static_cast<int>(width))
        << r["formula"].get<std::string>();
    for (const auto& c : columns) out << ' ' << std::setw(9) << (r[c].get<bool>() ? "true" : "false");
    out << ' ' << (r["agree"].get<bool>() ? "yes" : "NO") << '\n';
  }
  out << disagreements << " disagreeing rows\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Model checking for knowledge and belief on relational and simplicial models", "doxa"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string path, at, formula, output, distinguished, semantics = "standard";
  bool strict = false, properize_first = false;

  auto* check = app.add_subcommand("check", "Validate a model file");
  check->add_option("model", path)->required();
  check->add_flag("--strict", strict, "Treat warnings (improper, non-serial) as failures");

  auto* eval = app.add_subcommand("eval", "Evaluate a formula at a world or facet");
  eval->add_option("model", path)->required();
  eval->add_option("formula", formula)->required();
  eval->add_option("--at", at, "World id or facet name (X0, X1, ...)")->required();
  eval->add_option("--semantics", semantics, "Belief semantics for simplicial models")
      ->check(CLI::IsMember({"standard", "kasc", "bounded", "minimal"}));

  auto* translate = app.add_subcommand("translate", "Relational model to simplicial belief model");
  translate->add_option("model", path)->required();
  translate->add_flag("--properize-first", properize_first, "Properize an improper input first");
  translate->add_option("--distinguished", distinguished, "Agent whose relations are skewed");
  translate->add_option("-o,--output", output, "Output file; witness sidecars are written next to it");

  auto* to_rel = app.add_subcommand("to-relational", "Simplicial belief model to relational model");
  to_rel->add_option("model", path)->required();
  to_rel->add_option("-o,--output", output, "Output file");

  auto* prop = app.add_subcommand("properize", "Proper relational model with a bounded morphism onto the input");
  prop->add_option("model", path)->required();
  prop->add_option("--distinguished", distinguished, "Agent whose relations are skewed");
  prop->add_option("-o,--output", output, "Output file; the witness is written next to it");

  SuiteParams suite_params;
  std::string family = "simp", schemas = "FULL";
  auto* suite = app.add_subcommand("suite", "Randomized axiom-schema validity suite");
  auto* suite_seed = suite->add_option("--seed", suite_params.seed, "Base seed (default $DOXA_SEED or 0)");
  suite->add_option("--trials", suite_params.trials, "Number of generated models");
  suite->add_option("--family", family, "rel or simp")->check(CLI::IsMember({"rel", "simp"}));
  suite->add_option("--schemas", schemas, "Comma-separated schema names or groups (FULL, S5K, KD45B)");
  suite->add_flag("--serial,!--no-serial", suite_params.serial, "Generate a-serial belief complexes");
  suite->add_flag("--shared-belief", suite_params.shared_belief, "One belief complex for all agents");
  suite->add_option("--depth", suite_params.depth, "Fill formula depth")->check(CLI::Range(0, 2));

  GenParams gen_params;
  bool proper = false;
  auto* gen = app.add_subcommand("gen", "Generate a random model");
  gen->add_option("--family", family, "rel or simp")->check(CLI::IsMember({"rel", "simp"}));
  auto* gen_seed = gen->add_option("--seed", gen_params.seed, "Seed (default $DOXA_SEED or 0)");
  gen->add_option("--worlds", gen_params.worlds)->check(CLI::PositiveNumber);
  gen->add_option("--agents", gen_params.agents)->check(CLI::PositiveNumber);
  gen->add_option("--atoms", gen_params.atoms);
  gen->add_option("--nodes-per-agent", gen_params.nodes_per_agent)->check(CLI::PositiveNumber);
  gen->add_option("--facets", gen_params.facets)->check(CLI::PositiveNumber);
  gen->add_flag("--serial,!--no-serial", gen_params.serial);
  gen->add_flag("--shared-belief", gen_params.shared_belief);
  gen->add_flag("--proper", proper, "Relational: redraw until proper");
  gen->add_option("-o,--output", output, "Output file");

  std::vector<std::string> formulas;
  auto* compare = app.add_subcommand("compare-semantics", "Belief semantics side by side, per facet");
  compare->add_option("model", path)->required();
  compare->add_option("formulas", formulas, "Formulas (default: B[a] p for every agent and atom)");

  std::string target, map;
  auto* morphism = app.add_subcommand("check-morphism", "Check a world map is a surjective bounded morphism");
  morphism->add_option("source", path)->required();
  morphism->add_option("target", target)->required();
  morphism->add_option("map", map, "JSON with a 'projection' or 'map' object")->required();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*check) return cmd_check(path, strict, o, out);
    if (*eval) return cmd_eval(path, at, formula, semantics, o, out);
    if (*translate) return cmd_translate(path, properize_first, distinguished, output, out, err);
    if (*to_rel) return cmd_to_relational(path, output, out, err);
    if (*prop) return cmd_properize(path, distinguished, output, out, err);
    if (*suite) {
      if (!*suite_seed) suite_params.seed = default_seed();
      return cmd_suite(suite_params, schemas, o, out, err);
    }
    if (*gen) {
      if (!*gen_seed) gen_params.seed = default_seed();
      return cmd_gen(family, gen_params, proper, output, out, err);
    }
    if (*compare) return cmd_compare(path, formulas, o, out);
    if (*morphism) return cmd_check_morphism(path, target, map, o, out);
  } catch (const Refusal& e) {
    err << "error: " << e.what() << '\n';
    return kNo;
  } catch (const ModelError& e) {
    const std::string message = e.what();
    err << "error: " << message;
    const bool named = std::all_of(e.witness().begin(), e.witness().end(),
                                   [&](const std::string& w) { return message.find(w) != std::string::npos; });
    if (!named) err << ' ' << witness_text(e.witness());
    err << '\n';
    return kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace doxa::cli
