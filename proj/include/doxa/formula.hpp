#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>

namespace doxa {

enum class FormulaKind { Atom, Falsum, Implies, Knows, Believes };

/// Immutable formula of the knowledge/belief language. Only the five core
/// constructors exist as node kinds; negation, conjunction, disjunction,
/// equivalence and truth are built out of implication and falsum.
///
/// Copies share structure, so a Formula is cheap to pass by value and safe
/// to share across threads.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula falsum();
  static Formula implies(Formula lhs, Formula rhs);
  static Formula knows(std::string agent, Formula body);
  static Formula believes(std::string agent, Formula body);

  // derived connectives
  static Formula verum();
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  FormulaKind kind() const;
  /// Atom name for atoms, agent id for modalities, empty otherwise.
  const std::string& label() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  /// Operand of a modality.
  const Formula& body() const;

  bool is_atom() const { return kind() == FormulaKind::Atom; }
  bool is_falsum() const { return kind() == FormulaKind::Falsum; }
  bool is_implies() const { return kind() == FormulaKind::Implies; }
  bool is_modal() const {
    return kind() == FormulaKind::Knows || kind() == FormulaKind::Believes;
  }

  /// Node identity; equal for copies of the same Formula.
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Longest chain of nested K/B operators.
std::size_t modal_depth(const Formula& f);
/// Number of nodes.
std::size_t formula_size(const Formula& f);
std::set<std::string> agents_of(const Formula& f);
std::set<std::string> atoms_of(const Formula& f);

/// Rewrites every B_a into K_a.
Formula beliefs_as_knowledge(const Formula& f);

}  // namespace doxa
