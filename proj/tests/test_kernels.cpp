#include "readscore/kernels.hpp"

#include <doctest.h>

#include <string>

#include "helpers.hpp"
#include "readscore/symbols.hpp"

using namespace readscore;
using kernels::ClassCounts;

namespace {

// Independent reference written against the symbol predicates only.
ClassCounts naive_counts(std::string_view s) {
  ClassCounts c;
  for (char ch : s) {
    if (ch == ' ') {
      ++c.separator;
    } else if (ch == '-') {
      ++c.inactive;
    } else {
      ++c.active;
    }
  }
  return c;
}

std::optional<std::size_t> naive_find_illegal(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool legal = (c >= 'a' && c <= 'z') || c == '-' || c == ' ' || c == '\'' ||
                 c == '\n' || c == '\r';
    if (!legal) return i;
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar count_classes on known strings") {
  CHECK(kernels::scalar::count_classes("") == ClassCounts{0, 0, 0});
  CHECK(kernels::scalar::count_classes("--ab- -cd") == ClassCounts{4, 4, 1});
  CHECK(kernels::scalar::count_classes("it's") == ClassCounts{4, 0, 0});
  CHECK(kernels::scalar::count_classes("   ") == ClassCounts{0, 0, 3});
  CHECK(kernels::scalar::count_classes("---") == ClassCounts{0, 3, 0});
}

TEST_CASE("scalar find_illegal") {
  CHECK(kernels::scalar::find_illegal("abc- '\n\r") == std::nullopt);
  CHECK(kernels::scalar::find_illegal("a$b") == 1);
  CHECK(kernels::scalar::find_illegal("ABC") == 0);
  CHECK(kernels::scalar::find_illegal("") == std::nullopt);
}

TEST_CASE("scalar matches an independent tally on random buffers") {
  testutil::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::string s = rng.canonical_string(rng.below(512));
    CHECK(kernels::scalar::count_classes(s) == naive_counts(s));
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 count_classes agrees with scalar") {
  if (!kernels::avx2::supported()) return;
  testutil::Rng rng(202);
  // Cover the empty buffer, sub-vector tails and multi-block sizes.
  for (std::size_t len : {0u, 1u, 31u, 32u, 33u, 63u, 64u, 65u, 255u, 4097u}) {
    std::string s = rng.canonical_string(len);
    CHECK(kernels::avx2::count_classes(s) == kernels::scalar::count_classes(s));
  }
  for (int trial = 0; trial < 500; ++trial) {
    std::string s = rng.canonical_string(rng.below(2048));
    // Unaligned starts as well.
    std::string_view views[] = {s, std::string_view(s).substr(
                                       std::min<std::size_t>(s.size(),
                                                             rng.below(17)))};
    for (auto v : views) {
      CHECK(kernels::avx2::count_classes(v) ==
            kernels::scalar::count_classes(v));
    }
  }
}

TEST_CASE("avx2 find_illegal agrees with scalar on arbitrary bytes") {
  if (!kernels::avx2::supported()) return;
  testutil::Rng rng(303);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t len = rng.below(1024);
    std::string s(len, '\0');
    for (auto& c : s) {
      // mostly canonical, occasionally any byte at all
      c = rng.below(8) == 0 ? static_cast<char>(rng.below(256))
                            : rng.canonical();
    }
    auto expected = naive_find_illegal(s);
    CHECK(kernels::avx2::find_illegal(s) == expected);
    CHECK(kernels::scalar::find_illegal(s) == expected);
  }
}

TEST_CASE("avx2 find_illegal pinpoints the first bad byte across blocks") {
  if (!kernels::avx2::supported()) return;
  std::string s(100, 'a');
  for (std::size_t pos : {0u, 5u, 31u, 32u, 33u, 64u, 99u}) {
    std::string bad = s;
    bad[pos] = '$';
    CHECK(kernels::avx2::find_illegal(bad) == pos);
  }
}
#endif

TEST_CASE("dispatched kernels agree with scalar") {
  testutil::Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    std::string s = rng.canonical_string(rng.below(1024));
    CHECK(kernels::count_classes(s) == kernels::scalar::count_classes(s));
    CHECK(kernels::find_illegal(s) == kernels::scalar::find_illegal(s));
  }
  CHECK((kernels::active_kernel() == "avx2" ||
         kernels::active_kernel() == "scalar"));
}

}  // TEST_SUITE
