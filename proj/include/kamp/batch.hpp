#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kamp/chain.hpp"
#include "kamp/fo_formula.hpp"
#include "kamp/simd.hpp"
#include "kamp/tl_formula.hpp"

namespace kamp {

using Rows = std::vector<simd::Word>;

/// Chains of one common size packed one per bit lane. Row t of an atom has
/// bit l set iff the atom holds at position t of chain l. Bits past
/// `lanes()` are unspecified in computed rows; `lane_mask()` selects the
/// valid ones.
class ChainBatch {
 public:
  /// Throws std::invalid_argument if the chains differ in size.
  explicit ChainBatch(std::span<const Chain* const> chains);

  std::size_t positions() const noexcept { return positions_; }
  std::size_t lanes() const noexcept { return lanes_; }
  std::size_t words() const noexcept { return words_; }

  /// positions() rows of words() words; all-zero for atoms never set.
  const simd::Word* atom_rows(std::string_view atom) const;
  const Rows& lane_mask() const noexcept { return mask_; }

  static bool bit(const simd::Word* row, std::size_t lane) noexcept {
    return (row[lane / 64] >> (lane % 64)) & 1U;
  }

 private:
  std::size_t positions_ = 0;
  std::size_t lanes_ = 0;
  std::size_t words_ = 0;
  std::map<std::string, Rows, std::less<>> atoms_;
  Rows zero_;
  Rows mask_;
};

/// Lane-parallel temporal evaluation; tables are memoized per subformula.
class BatchTlEvaluator {
 public:
  BatchTlEvaluator(const ChainBatch& batch, const simd::KernelTable& kernels)
      : batch_(batch), k_(kernels) {}

  /// positions() rows of words() words.
  const Rows& rows(const TlFormula& f);

 private:
  void compute(const TlFormula& f);

  const ChainBatch& batch_;
  const simd::KernelTable& k_;
  std::unordered_map<TlFormula, Rows, TlHash> memo_;
};

/// Lane-parallel first-order evaluation under a partial assignment; returns
/// one row of lanes.
Rows eval_fo_lanes(const ChainBatch& batch, const FoFormula& f, const Assignment& a,
                   const simd::KernelTable& kernels);

/// Table of `f` with free variable `x` placed at each position in turn.
Rows eval_fo_table(const ChainBatch& batch, const FoFormula& f, std::string_view x,
                   const simd::KernelTable& kernels);

}  // namespace kamp
