#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kamp/batch.hpp"
#include "kamp/chain.hpp"
#include "kamp/semantics.hpp"
#include "kamp/tl_formula.hpp"

namespace kamp {

/// Ordered list of distinct variable names.
using VariableOrder = std::vector<std::string>;

/// One existential block: points x_0 < ... < x_n labeled alpha_0..alpha_n,
/// intervals labeled beta_0 (before x_0), beta_j on (x_{j-1}, x_j), and
/// beta_{n+1} (after x_n). Each free variable is bound to one point; several
/// variables may share a point.
struct EaFormula {
  std::vector<TlFormula> points;
  std::vector<TlFormula> intervals;
  std::map<std::string, std::size_t> bindings;

  friend bool operator==(const EaFormula&, const EaFormula&) = default;
};

/// Disjunction of EA formulas over a shared scope. No disjuncts is FALSE.
struct Dea {
  VariableOrder scope;
  std::vector<EaFormula> disjuncts;
};

/// All-true EA with one point per entry of `groups`, binding every variable
/// of group i to point i.
EaFormula ea_skeleton(const std::vector<std::vector<std::string>>& groups);

/// Throws ScopeError on a malformed EA (interval count, binding range).
void validate(const EaFormula& e);
/// Also checks that every disjunct binds exactly the scope.
void validate(const Dea& d);

/// Brute-force reference evaluation: searches increasing point tuples
/// directly. Labels are evaluated with the memo of `tl`.
class DeaEvaluator {
 public:
  explicit DeaEvaluator(const Chain& m) : m_(m), tl_(m) {}

  bool eval(const Assignment& a, const EaFormula& e);
  /// Throws EvalError if `a` misses a scope variable.
  bool eval(const Assignment& a, const Dea& d);

 private:
  bool search(const Assignment& a, const EaFormula& e, std::size_t j, std::size_t from);
  bool interval(const TlFormula& label, std::size_t lo, std::size_t hi);

  const Chain& m_;
  TlEvaluator tl_;
};

bool eval_ea(const Chain& m, const Assignment& a, const EaFormula& e);
bool eval_dea(const Chain& m, const Assignment& a, const Dea& d);

/// Lane-parallel version of the same search over a batch of chains.
Rows eval_dea_lanes(const ChainBatch& batch, BatchTlEvaluator& tl, const Assignment& a,
                    const Dea& d, const simd::KernelTable& kernels);

/// One disjunct per weak ordering of `scope`, all labels true.
Dea top_dea(const VariableOrder& scope);
Dea false_dea(const VariableOrder& scope);

/// All order-preserving merges of two EA point sequences, points of either
/// side possibly coinciding; a variable bound on both sides forces its two
/// points to coincide. Merges with a label folding to false are dropped.
std::vector<EaFormula> merge(const EaFormula& a, const EaFormula& b);

/// Conjunction of Deas over the same variable set. Throws ScopeError.
Dea ea_and(const Dea& a, const Dea& b);
/// Conjunction over the union of both scopes (`a`'s order, then new variables of `b`).
Dea conjoin(const Dea& a, const Dea& b);
/// Disjunction over the same variable set. Throws ScopeError.
Dea ea_or(const Dea& a, const Dea& b);
/// Existential closure over `v`; the point stays, its binding goes.
/// Throws ScopeError if `v` is not in scope.
Dea ea_exists(std::string_view v, const Dea& d);
/// Conjunction-equivalent list of EAs with at most two free variables each:
/// a prefix up to the first bound point, one piece per pair of consecutive
/// bound points, a suffix from the last, and an equality piece for every
/// further variable sharing a point. Returns `[e]` with at most one variable.
std::vector<EaFormula> ea_split_pairs(const EaFormula& e);
/// Same truth value over a larger scope. Throws ScopeError unless
/// `scope` contains `d.scope`.
Dea embed(const Dea& d, const VariableOrder& scope);
/// Simultaneous renaming of free variables.
Dea rename(const Dea& d, const std::map<std::string, std::string>& names);
/// Time reversal: evaluates on reverse(m) as `d` does on m.
Dea mirror(const Dea& d);

/// Constant-folds labels, drops disjuncts that cannot hold (a point label
/// folding to false, a conjunct !(f U true) before the last point or
/// !(f S true) after the first) and duplicates. Idempotent.
Dea simplify(const Dea& d);

/// Sum of label tree sizes, saturating.
std::uint64_t dea_size(const Dea& d);

/// `[b0 | a0 | b1 | a1 | b2] @ {z0->0, z1->1}`
std::string format_ea(const EaFormula& e);
/// Scope line followed by one indented disjunct per line.
std::string format_dea(const Dea& d);

}  // namespace kamp
