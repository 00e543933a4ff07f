#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kamp/fo_formula.hpp"
#include "kamp/normal_form.hpp"
#include "kamp/tl_formula.hpp"

namespace kamp {

/// Bracket pattern [a0, b1, a1, ..., bn, an](z0, z1): points z0 = x_0 <
/// x_1 < ... < x_n = z1 with a_i at x_i and b_i on (x_{i-1}, x_i).
struct IntervalPattern {
  std::vector<TlFormula> points;     // a_0..a_n
  std::vector<TlFormula> intervals;  // b_1..b_n

  /// From the alternating list a0, b1, a1, ..., bn, an. Throws
  /// std::invalid_argument on an even-length list.
  static IntervalPattern alternating(const std::vector<TlFormula>& labels);
  std::vector<TlFormula> labels() const;
  std::size_t length() const noexcept { return intervals.size(); }
};

/// Equivalent temporal formula for a Dea with exactly one free variable.
/// Throws ArityError otherwise.
TlFormula dea1_to_tl(const Dea& d);

// The ladder and interval constructions below are Deas over fixed variable
// names. Each holds only where z0 < z1 (or z0 < r0 < z1).

/// No increasing sequence x_1 < ... < x_n in (z0, z1) with preds[i] at x_i.
/// Throws std::invalid_argument on an empty list.
Dea oc(const std::vector<TlFormula>& preds);

/// r0 is the infimum of the p-points in (z0, z1), scope (z0, r0, z1).
Dea inf_pattern(const TlFormula& p);

/// No z in (z0, z1) with pat(z0, z).
Dea neg_exists_between_left(const IntervalPattern& pat);
/// No z in (z0, z1) with pat(z, z1).
Dea neg_exists_between_right(const IntervalPattern& pat);

/// z0 < z1 and not pat(z0, z1). Results are memoized per pattern.
Dea neg_interval(const IntervalPattern& pat);

/// The three exhaustive case conditions behind neg_interval, for patterns
/// with at least one interval.
std::array<Dea, 3> interval_case_conditions(const IntervalPattern& pat);
/// Scope (z0, z, z1): a_0 at z0 and z the infimum of the points of (z0, z1)
/// where b_1 fails. The third case condition is its closure over z.
Dea interval_infimum(const IntervalPattern& pat);

/// Negation of an EA with one or two free variables; the scope lists its
/// variables by name. Throws ScopeError for other arities.
Dea neg_ea2(const EaFormula& e);

/// Complement over the same scope.
Dea neg_dea(const Dea& d);

/// Renames bound variables apart, pushes negations to literals, and moves
/// quantifiers inward as far as they go, dropping vacuous ones. Equivalent
/// on nonempty chains.
FoFormula normalize(const FoFormula& f);

/// Normal form of `f`; the scope always contains `anchor`, listed first,
/// followed by the other free variables in name order. Inside the induction
/// the anchor is added only to closed subformulas.
Dea fo_to_dea(const FoFormula& f, std::string_view anchor);

/// Equivalent temporal formula for `f` with exactly one free variable.
/// Throws ArityError otherwise.
TlFormula translate(const FoFormula& f);

struct TraceEntry {
  std::string pass;
  std::string input;
  std::string scope;
  std::size_t disjuncts = 0;
  /// Label nodes of the pass result, or the formula size for emission.
  std::uint64_t size = 0;
  /// Running sum of `size` over the trace so far.
  std::uint64_t total = 0;
};

struct TranslationTrace {
  std::vector<TraceEntry> entries;
};

struct TranslateOptions {
  /// Upper bound on the size of any intermediate normal form and of the
  /// result; BudgetExceeded is thrown beyond it.
  std::uint64_t node_budget = 1'000'000;
};

struct Translation {
  TlFormula formula;
  TranslationTrace trace;
};

/// As `translate`, recording one entry per pass in post-order: "normalize", then
/// "atomic", "or", "and", "exists", "forall" as the induction visits them,
/// and finally "emit".
Translation translate_with_trace(const FoFormula& f, const TranslateOptions& options = {});

/// Plain-text table of a trace.
std::string format_trace(const TranslationTrace& trace);

}  // namespace kamp
