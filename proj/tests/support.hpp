#pragma once

// Shared test helpers: fixture loading and brute-force evaluators that work
// on edge lists and node-id sets, independent of the library's frames.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "doxa/formula.hpp"
#include "doxa/model_io.hpp"
#include "doxa/relational.hpp"
#include "doxa/simplicial.hpp"

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(DOXA_FIXTURE_DIR) + "/" + name; }

inline doxa::RelationalModel load_rel(const std::string& name) {
  return std::get<doxa::RelationalModel>(doxa::load_model(fixture(name)).model);
}

inline doxa::SimplicialModel load_simp(const std::string& name) {
  return std::get<doxa::SimplicialModel>(doxa::load_model(fixture(name)).model);
}

/// Truth by the textbook clauses over explicit edge lists.
inline bool naive_rel(const doxa::RelationalModel& m, std::size_t w, const doxa::Formula& f) {
  using K = doxa::FormulaKind;
  switch (f.kind()) {
    case K::Falsum: return false;
    case K::Atom: return m.valuation.at(f.label()).test(w);
    case K::Implies: return !naive_rel(m, w, f.lhs()) || naive_rel(m, w, f.rhs());
    case K::Knows:
    case K::Believes: {
      const auto& rel = f.kind() == K::Knows ? m.knowledge.at(f.label()) : m.belief.at(f.label());
      for (const auto& [from, to] : rel.edges())
        if (from == w && !naive_rel(m, to, f.body())) return false;
      return true;
    }
  }
  return false;
}

using IdSet = std::set<std::string>;

/// A simplicial model as plain sets of node ids.
struct PlainComplex {
  std::map<std::string, std::string> color;  // node id -> agent
  std::vector<IdSet> facets;
  std::map<std::string, std::vector<IdSet>> belief;
  std::map<std::string, std::set<std::size_t>> val;
};

inline PlainComplex plain(const doxa::SimplicialModel& m) {
  PlainComplex out;
  for (const auto& n : m.nodes) out.color[n.id] = n.color;
  auto ids = [&](const doxa::Face& face) {
    IdSet s;
    for (auto i : face) s.insert(m.nodes[i].id);
    return s;
  };
  for (const auto& x : m.knowledge.facets) out.facets.push_back(ids(x));
  for (const auto& [a, c] : m.belief)
    for (const auto& y : c.facets) out.belief[a].push_back(ids(y));
  for (const auto& [p, ext] : m.valuation) {
    auto members = ext.members();
    out.val[p] = {members.begin(), members.end()};
  }
  return out;
}

inline IdSet colored(const PlainComplex& c, const IdSet& face, const std::string& a) {
  IdSet out;
  for (const auto& n : face)
    if (c.color.at(n) == a) out.insert(n);
  return out;
}

/// Truth at facet x: K_a over facets with the same a-vertex set, B_a over
/// those facets that also appear in S_a.
inline bool naive_simp(const PlainComplex& c, std::size_t x, const doxa::Formula& f) {
  using K = doxa::FormulaKind;
  switch (f.kind()) {
    case K::Falsum: return false;
    case K::Atom: return c.val.at(f.label()).count(x) > 0;
    case K::Implies: return !naive_simp(c, x, f.lhs()) || naive_simp(c, x, f.rhs());
    case K::Knows:
    case K::Believes: {
      const auto& a = f.label();
      const auto mine = colored(c, c.facets[x], a);
      for (std::size_t y = 0; y < c.facets.size(); ++y) {
        if (colored(c, c.facets[y], a) != mine) continue;
        if (f.kind() == K::Believes) {
          const auto& sa = c.belief.at(a);
          if (std::find(sa.begin(), sa.end(), c.facets[y]) == sa.end()) continue;
        }
        if (!naive_simp(c, y, f.body())) return false;
      }
      return true;
    }
  }
  return false;
}

inline doxa::Formula p() { return doxa::Formula::atom("p"); }

}  // namespace testing
