#include "doxa/formula.hpp"

#include <algorithm>
#include <vector>

#include "doxa/error.hpp"

namespace doxa {

struct Formula::Node {
  FormulaKind kind;
  std::string label;
  std::vector<Formula> children;
};

Formula Formula::atom(std::string name) {
  if (name.empty()) throw Error("atom name must be non-empty");
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(name), {}}));
}

Formula Formula::falsum() {
  static const Formula bottom(std::make_shared<const Node>(Node{FormulaKind::Falsum, {}, {}}));
  return bottom;
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Implies, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::knows(std::string agent, Formula body) {
  if (agent.empty()) throw Error("agent id must be non-empty");
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Knows, std::move(agent), {std::move(body)}}));
}

Formula Formula::believes(std::string agent, Formula body) {
  if (agent.empty()) throw Error("agent id must be non-empty");
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Believes, std::move(agent), {std::move(body)}}));
}

Formula Formula::verum() { return implies(falsum(), falsum()); }

Formula Formula::negation(Formula f) { return implies(std::move(f), falsum()); }

// a & b  :=  ~(a -> ~b)
Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return negation(implies(std::move(lhs), negation(std::move(rhs))));
}

// a | b  :=  ~a -> b
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return implies(negation(std::move(lhs)), std::move(rhs));
}

// a <-> b  :=  (a -> b) & (b -> a)
Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return conjunction(implies(lhs, rhs), implies(rhs, lhs));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::label() const { return node_->label; }

const Formula& Formula::lhs() const {
  if (node_->kind != FormulaKind::Implies) throw Error("lhs() on a non-implication");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (node_->kind != FormulaKind::Implies) throw Error("rhs() on a non-implication");
  return node_->children[1];
}

const Formula& Formula::body() const {
  if (!is_modal()) throw Error("body() on a non-modal formula");
  return node_->children[0];
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind || a.node_->label != b.node_->label) return false;
  return a.node_->children == b.node_->children;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->label <=> b.node_->label; c != 0) return c;
  const auto& x = a.node_->children;
  const auto& y = b.node_->children;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  return x.size() <=> y.size();
}

std::size_t modal_depth(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Falsum:
      return 0;
    case FormulaKind::Implies:
      return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
    case FormulaKind::Knows:
    case FormulaKind::Believes:
      return 1 + modal_depth(f.body());
  }
  return 0;
}

std::size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Implies:
      return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    case FormulaKind::Knows:
    case FormulaKind::Believes:
      return 1 + formula_size(f.body());
    default:
      return 1;
  }
}

namespace {

void collect(const Formula& f, std::set<std::string>& agents, std::set<std::string>& atoms) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      atoms.insert(f.label());
      break;
    case FormulaKind::Falsum:
      break;
    case FormulaKind::Implies:
      collect(f.lhs(), agents, atoms);
      collect(f.rhs(), agents, atoms);
      break;
    case FormulaKind::Knows:
    case FormulaKind::Believes:
      agents.insert(f.label());
      collect(f.body(), agents, atoms);
      break;
  }
}

}  // namespace

std::set<std::string> agents_of(const Formula& f) {
  std::set<std::string> agents, atoms;
  collect(f, agents, atoms);
  return agents;
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> agents, atoms;
  collect(f, agents, atoms);
  return atoms;
}

Formula beliefs_as_knowledge(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Falsum:
      return f;
    case FormulaKind::Implies:
      return Formula::implies(beliefs_as_knowledge(f.lhs()), beliefs_as_knowledge(f.rhs()));
    case FormulaKind::Knows:
    case FormulaKind::Believes:
      return Formula::knows(f.label(), beliefs_as_knowledge(f.body()));
  }
  return f;
}

}  // namespace doxa
