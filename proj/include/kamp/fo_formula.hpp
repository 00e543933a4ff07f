#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace kamp {

enum class FoKind : std::uint8_t { predicate, less, equal, negation, disjunction, conjunction, exists, forall };

/// First-order monadic formula of order: P(x), x < y, x = y, booleans and quantifiers.
/// Immutable value with shared structure; `==` is structural.
class FoFormula {
 public:
  static FoFormula predicate(std::string_view atom, std::string_view var);
  static FoFormula less(std::string_view lhs, std::string_view rhs);
  static FoFormula equal(std::string_view lhs, std::string_view rhs);
  static FoFormula negation(const FoFormula& f);
  static FoFormula disjunction(const FoFormula& lhs, const FoFormula& rhs);
  static FoFormula conjunction(const FoFormula& lhs, const FoFormula& rhs);
  static FoFormula exists(std::string_view var, const FoFormula& body);
  static FoFormula forall(std::string_view var, const FoFormula& body);
  /// `!lhs | rhs`
  static FoFormula implication(const FoFormula& lhs, const FoFormula& rhs);

  FoKind kind() const noexcept { return node_->kind; }
  /// Predicate name of an atom.
  const std::string& atom() const noexcept { return node_->atom; }
  /// Variable of a predicate atom, left variable of `<`/`=`, bound variable of a quantifier.
  const std::string& var() const noexcept { return node_->var; }
  /// Right variable of `<`/`=`.
  const std::string& var2() const noexcept { return node_->var2; }
  /// Operand of a negation or quantifier; left operand of a binary connective.
  const FoFormula& lhs() const noexcept { return *node_->lhs; }
  const FoFormula& rhs() const noexcept { return *node_->rhs; }
  const FoFormula& body() const noexcept { return *node_->lhs; }

  bool is_atomic() const noexcept {
    return kind() == FoKind::predicate || kind() == FoKind::less || kind() == FoKind::equal;
  }

  friend bool operator==(const FoFormula& a, const FoFormula& b);

 private:
  struct Node {
    FoKind kind;
    std::string atom;
    std::string var;
    std::string var2;
    std::shared_ptr<const FoFormula> lhs;
    std::shared_ptr<const FoFormula> rhs;
  };

  explicit FoFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

std::set<std::string> free_vars(const FoFormula& f);
std::set<std::string> atoms_of(const FoFormula& f);

/// Quantifier nesting depth.
int quantifier_depth(const FoFormula& f);

/// AST size: atoms count their node plus symbol and variable leaves
/// (`P(x)` and `x < y` are 3), quantifiers count node and bound variable.
std::uint64_t fo_size(const FoFormula& f);

/// Fully parenthesised, re-parses to the same AST:
/// `P(x)`, `x < y`, `!P(x)`, `(a & b)`, `(E y. body)`.
std::string print_fo(const FoFormula& f);

}  // namespace kamp
