#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace kamp {

enum class TlKind : std::uint8_t { top, atom, negation, disjunction, conjunction, until, since };

namespace detail {
struct TlNode;
}

/// Temporal formula over strict Until and Since.
///
/// Nodes are hash-consed: two formulas are structurally equal iff they share
/// the same node, so `==` is a pointer comparison and every node carries a
/// process-unique id usable as a memo key. Formulas are immutable and may be
/// shared freely across threads.
///
/// The named constructors build exactly the requested node. The `fold_*`
/// helpers further down apply semantics-preserving constant folding.
class TlFormula {
 public:
  /// Defaults to `true`.
  TlFormula();

  static TlFormula top();
  static TlFormula atom(std::string_view name);
  static TlFormula negation(const TlFormula& f);
  static TlFormula disjunction(const TlFormula& lhs, const TlFormula& rhs);
  static TlFormula conjunction(const TlFormula& lhs, const TlFormula& rhs);
  static TlFormula until(const TlFormula& hold, const TlFormula& goal);
  static TlFormula since(const TlFormula& hold, const TlFormula& goal);

  // Abbreviations, expanded to core nodes on construction.
  static TlFormula bottom();                          // !true
  static TlFormula always(const TlFormula& f);        // G f  = !(true U !f)
  static TlFormula historically(const TlFormula& f);  // H f  = !(true S !f)
  static TlFormula limit_future(const TlFormula& f);  // K+ f = !(!f U true)
  static TlFormula limit_past(const TlFormula& f);    // K- f = !(!f S true)
  static TlFormula implication(const TlFormula& lhs, const TlFormula& rhs);

  TlKind kind() const noexcept;
  /// Atom name; empty for other kinds.
  const std::string& name() const noexcept;
  /// Operand of a negation, left operand of a binary node.
  const TlFormula& lhs() const noexcept;
  /// Right operand of a binary node.
  const TlFormula& rhs() const noexcept;

  std::uint64_t id() const noexcept;
  /// Number of nodes in the tree expansion, saturating at UINT64_MAX.
  std::uint64_t tree_size() const noexcept;
  /// Operator nesting depth; `true` and atoms are 0.
  std::uint32_t depth() const noexcept;

  bool is_true() const noexcept { return kind() == TlKind::top; }
  bool is_false() const noexcept;
  bool is_binary() const noexcept;

  friend bool operator==(const TlFormula& a, const TlFormula& b) noexcept {
    return a.node_ == b.node_;
  }

  const detail::TlNode* node() const noexcept { return node_.get(); }

 private:
  friend struct detail::TlNode;

  explicit TlFormula(std::nullptr_t) noexcept {}
  explicit TlFormula(std::shared_ptr<const detail::TlNode> node) : node_(std::move(node)) {}
  static TlFormula make(TlKind kind, std::string_view name, const TlFormula* lhs,
                        const TlFormula* rhs);

  std::shared_ptr<const detail::TlNode> node_;
};

/// Total structural order: kind, then atom name, then operands left to right.
/// Independent of construction history, so sorting by it is reproducible.
int compare(const TlFormula& a, const TlFormula& b);

struct TlLess {
  bool operator()(const TlFormula& a, const TlFormula& b) const { return compare(a, b) < 0; }
};

struct TlHash {
  std::size_t operator()(const TlFormula& f) const noexcept {
    return std::hash<std::uint64_t>{}(f.id());
  }
};

/// Number of distinct nodes reachable from `f`.
std::uint64_t dag_size(const TlFormula& f);

/// Swap every Until with Since. Structural; involutive.
TlFormula mirror(const TlFormula& f);

/// Atom names occurring in `f`, sorted.
std::vector<std::string> atoms_of(const TlFormula& f);

// Constant-folding constructors. Sound over every chain: true/false
// absorption, double negation, idempotence, complementary literals,
// flattening with a canonical operand order for & and |, and
// (a U false) = (a S false) = false.
TlFormula fold_not(const TlFormula& f);
TlFormula fold_and(const TlFormula& a, const TlFormula& b);
TlFormula fold_or(const TlFormula& a, const TlFormula& b);
TlFormula fold_until(const TlFormula& hold, const TlFormula& goal);
TlFormula fold_since(const TlFormula& hold, const TlFormula& goal);
TlFormula fold_and(const std::vector<TlFormula>& operands);
TlFormula fold_or(const std::vector<TlFormula>& operands);
/// Rebuild bottom-up with the folding constructors.
TlFormula fold(const TlFormula& f);

/// Conjuncts of a (possibly nested) conjunction; `[f]` if `f` is not one.
std::vector<TlFormula> conjuncts(const TlFormula& f);

/// `(P U Q)`, `!P`, `(a & b)`, `true`. Fully parenthesised, no re-sugaring.
std::string print_tl(const TlFormula& f);
/// `(until P Q)`, `(not P)`, `(and a b)`, `true`.
std::string print_tl_sexpr(const TlFormula& f);

}  // namespace kamp
