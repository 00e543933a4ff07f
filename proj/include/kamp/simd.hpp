#pragma once

#include <cstddef>
#include <cstdint>

namespace kamp::simd {

using Word = std::uint64_t;

/// Bit-parallel row kernels. A row holds one bit per lane (one lane per
/// chain) and spans `words` machine words; a table is `positions` rows laid
/// out contiguously, row t at offset t*words.
struct KernelTable {
  const char* name;

  void (*and_words)(Word* out, const Word* a, const Word* b, std::size_t n);
  void (*or_words)(Word* out, const Word* a, const Word* b, std::size_t n);
  /// out = a & ~b
  void (*andnot_words)(Word* out, const Word* a, const Word* b, std::size_t n);
  void (*not_words)(Word* out, const Word* a, std::size_t n);

  /// Strict Until over a table:
  ///   out[N-1] = 0, out[t] = goal[t+1] | (hold[t+1] & out[t+1]).
  void (*until_scan)(Word* out, const Word* hold, const Word* goal, std::size_t positions,
                     std::size_t words);
  /// Strict Since, the mirror image:
  ///   out[0] = 0, out[t] = goal[t-1] | (hold[t-1] & out[t-1]).
  void (*since_scan)(Word* out, const Word* hold, const Word* goal, std::size_t positions,
                     std::size_t words);

  bool (*any_words)(const Word* a, std::size_t n);
};

const KernelTable& scalar_kernels();

/// AVX2 kernels, or nullptr when they were not compiled in or the CPU
/// lacks AVX2.
const KernelTable* avx2_kernels();

/// Fastest table the host supports. Setting the environment variable
/// KAMP_SIMD=scalar forces the scalar table.
const KernelTable& active_kernels();

}  // namespace kamp::simd
