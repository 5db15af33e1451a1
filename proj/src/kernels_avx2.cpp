#include "readscore/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>
#include <cstdint>

#include "readscore/symbols.hpp"

namespace readscore::kernels::avx2 {

bool supported() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

inline std::uint32_t movemask(__m256i m) {
  return static_cast<std::uint32_t>(_mm256_movemask_epi8(m));
}

}  // namespace

ClassCounts count_classes(std::string_view symbols) {
  const char* p = symbols.data();
  std::size_t n = symbols.size();

  const __m256i sep = _mm256_set1_epi8(kSeparatorCode);
  const __m256i unk = _mm256_set1_epi8(kUnknownCode);

  std::uint64_t separators = 0;
  std::uint64_t inactives = 0;

  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    separators += std::popcount(movemask(_mm256_cmpeq_epi8(b, sep)));
    inactives += std::popcount(movemask(_mm256_cmpeq_epi8(b, unk)));
  }
  for (; i < n; ++i) {
    if (p[i] == kSeparatorCode) {
      ++separators;
    } else if (p[i] == kUnknownCode) {
      ++inactives;
    }
  }

  ClassCounts counts;
  counts.separator = separators;
  counts.inactive = inactives;
  counts.active = static_cast<std::uint64_t>(n) - separators - inactives;
  return counts;
}

std::optional<std::size_t> find_illegal(std::string_view text) {
  const char* p = text.data();
  std::size_t n = text.size();

  // legal: 'a'..'z', '-', ' ', '\'', '\n', '\r'. The range compare is signed,
  // which is fine: bytes >= 0x80 are negative and fail both range tests.
  const __m256i lo = _mm256_set1_epi8('a' - 1);
  const __m256i hi = _mm256_set1_epi8('z' + 1);
  const __m256i unk = _mm256_set1_epi8(kUnknownCode);
  const __m256i sep = _mm256_set1_epi8(kSeparatorCode);
  const __m256i apo = _mm256_set1_epi8(kApostropheCode);
  const __m256i nl = _mm256_set1_epi8('\n');
  const __m256i cr = _mm256_set1_epi8('\r');

  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    __m256i letter = _mm256_and_si256(_mm256_cmpgt_epi8(b, lo),
                                      _mm256_cmpgt_epi8(hi, b));
    __m256i legal = _mm256_or_si256(
        letter,
        _mm256_or_si256(
            _mm256_or_si256(_mm256_cmpeq_epi8(b, unk),
                            _mm256_cmpeq_epi8(b, sep)),
            _mm256_or_si256(
                _mm256_cmpeq_epi8(b, apo),
                _mm256_or_si256(_mm256_cmpeq_epi8(b, nl),
                                _mm256_cmpeq_epi8(b, cr)))));
    std::uint32_t bad = ~movemask(legal);
    if (bad != 0) return i + static_cast<std::size_t>(std::countr_zero(bad));
  }
  for (; i < n; ++i) {
    char c = p[i];
    if (!is_canonical_code(c) && c != '\n' && c != '\r') return i;
  }
  return std::nullopt;
}

}  // namespace readscore::kernels::avx2

#endif  // x86_64
