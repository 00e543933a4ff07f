#include <cstdlib>
#include <cstring>
#include <string_view>

#include "kamp/simd.hpp"

namespace kamp::simd {

namespace {

void and_words(Word* out, const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void or_words(Word* out, const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_words(Word* out, const Word* a, const Word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & ~b[i];
}

void not_words(Word* out, const Word* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = ~a[i];
}

void until_scan(Word* out, const Word* hold, const Word* goal, std::size_t positions,
                std::size_t words) {
  if (positions == 0) return;
  std::memset(out + (positions - 1) * words, 0, words * sizeof(Word));
  for (std::size_t t = positions - 1; t-- > 0;) {
    const Word* h = hold + (t + 1) * words;
    const Word* g = goal + (t + 1) * words;
    const Word* next = out + (t + 1) * words;
    Word* row = out + t * words;
    for (std::size_t i = 0; i < words; ++i) row[i] = g[i] | (h[i] & next[i]);
  }
}

void since_scan(Word* out, const Word* hold, const Word* goal, std::size_t positions,
                std::size_t words) {
  if (positions == 0) return;
  std::memset(out, 0, words * sizeof(Word));
  for (std::size_t t = 1; t < positions; ++t) {
    const Word* h = hold + (t - 1) * words;
    const Word* g = goal + (t - 1) * words;
    const Word* prev = out + (t - 1) * words;
    Word* row = out + t * words;
    for (std::size_t i = 0; i < words; ++i) row[i] = g[i] | (h[i] & prev[i]);
  }
}

bool any_words(const Word* a, std::size_t n) {
  Word acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc |= a[i];
  return acc != 0;
}

constexpr KernelTable kScalar{"scalar", and_words,  or_words,   andnot_words,
                              not_words, until_scan, since_scan, any_words};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

#if !defined(KAMP_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif

const KernelTable& active_kernels() {
  static const KernelTable* chosen = [] {
    const char* forced = std::getenv("KAMP_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return &kScalar;
    const KernelTable* avx2 = avx2_kernels();
    return avx2 != nullptr ? avx2 : &kScalar;
  }();
  return *chosen;
}

}  // namespace kamp::simd
