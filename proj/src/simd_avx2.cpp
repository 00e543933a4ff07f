#include <immintrin.h>

#include <cstring>

#include "kamp/simd.hpp"

namespace kamp::simd {

namespace {

constexpr std::size_t kLane = 4;

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void and_words(Word* out, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) store(out + i, _mm256_and_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] & b[i];
}

void or_words(Word* out, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) store(out + i, _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] | b[i];
}

void andnot_words(Word* out, const Word* a, const Word* b, std::size_t n) {
  std::size_t i = 0;
  // _mm256_andnot_si256(x, y) computes ~x & y.
  for (; i + kLane <= n; i += kLane) store(out + i, _mm256_andnot_si256(load(b + i), load(a + i)));
  for (; i < n; ++i) out[i] = a[i] & ~b[i];
}

void not_words(Word* out, const Word* a, std::size_t n) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) store(out + i, _mm256_xor_si256(load(a + i), ones));
  for (; i < n; ++i) out[i] = ~a[i];
}

inline void step(Word* row, const Word* h, const Word* g, const Word* other, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane) {
    store(row + i, _mm256_or_si256(load(g + i), _mm256_and_si256(load(h + i), load(other + i))));
  }
  for (; i < words; ++i) row[i] = g[i] | (h[i] & other[i]);
}

void until_scan(Word* out, const Word* hold, const Word* goal, std::size_t positions,
                std::size_t words) {
  if (positions == 0) return;
  std::memset(out + (positions - 1) * words, 0, words * sizeof(Word));
  for (std::size_t t = positions - 1; t-- > 0;) {
    step(out + t * words, hold + (t + 1) * words, goal + (t + 1) * words, out + (t + 1) * words,
         words);
  }
}

void since_scan(Word* out, const Word* hold, const Word* goal, std::size_t positions,
                std::size_t words) {
  if (positions == 0) return;
  std::memset(out, 0, words * sizeof(Word));
  for (std::size_t t = 1; t < positions; ++t) {
    step(out + t * words, hold + (t - 1) * words, goal + (t - 1) * words, out + (t - 1) * words,
         words);
  }
}

bool any_words(const Word* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) acc = _mm256_or_si256(acc, load(a + i));
  Word tail = 0;
  for (; i < n; ++i) tail |= a[i];
  return tail != 0 || !_mm256_testz_si256(acc, acc);
}

constexpr KernelTable kAvx2{"avx2",    and_words,  or_words,   andnot_words,
                            not_words, until_scan, since_scan, any_words};

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
}

}  // namespace kamp::simd
