#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kamp/chain.hpp"
#include "kamp/fo_formula.hpp"
#include "kamp/simd.hpp"
#include "kamp/tl_formula.hpp"

namespace kamp {

/// Reference evaluator for temporal formulas on one chain. Until and Since
/// are evaluated by direct search for a witness; rows are memoized per
/// subformula for the lifetime of the evaluator.
class TlEvaluator {
 public:
  explicit TlEvaluator(const Chain& m) : m_(m) {}

  /// Throws EvalError if `t` is not a position of the chain.
  bool eval(std::size_t t, const TlFormula& f);
  /// Truth value at every position.
  const std::vector<bool>& row(const TlFormula& f);

 private:
  std::vector<bool> compute(const TlFormula& f);

  const Chain& m_;
  std::unordered_map<TlFormula, std::vector<bool>, TlHash> memo_;
};

bool eval_tl(const Chain& m, std::size_t t, const TlFormula& f);
std::vector<bool> eval_tl_row(const Chain& m, const TlFormula& f);

/// Tarskian evaluation; quantifiers range over the positions of `m`.
/// Throws EvalError on an unassigned free variable or an out-of-range position.
bool eval_fo(const Chain& m, const Assignment& a, const FoFormula& f);

struct Counterexample {
  std::size_t chain_index;
  Chain chain;
  std::size_t position;
  bool fo_value;
  bool tl_value;
};

struct Verdict {
  bool pass = true;
  std::uint64_t chains_checked = 0;
  std::uint64_t points_checked = 0;
  std::optional<Counterexample> counterexample;
};

struct CheckOptions {
  /// Worker threads; 0 or 1 runs inline.
  unsigned workers = 1;
  /// Lane-parallel evaluation; false selects the scalar reference evaluators.
  bool batched = true;
  /// Kernel table for batched evaluation; nullptr selects active_kernels().
  const simd::KernelTable* kernels = nullptr;
  /// Maximum chains per batch.
  std::size_t lanes = 256;
};

/// Compares `fo` (free variable `x`) with `tl` at every position of every
/// chain. The reported counterexample is the first one in chain order, then
/// position order, independent of `options`. Throws ArityError if `fo` has a
/// free variable other than `x`.
Verdict check_equiv_fo_tl(const FoFormula& fo, std::string_view x, const TlFormula& tl,
                          std::span<const Chain> chains, const CheckOptions& options = {});

}  // namespace kamp
