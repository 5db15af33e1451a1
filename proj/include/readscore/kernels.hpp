#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

// Byte-scan kernels behind stream validation and class counting. The scalar
// implementations are the reference; the dispatched entry points must agree
// with them exactly on every input, which the test suite checks on random
// buffers.

namespace readscore::kernels {

/// Per-class frame tallies from one scan of a canonical symbol buffer.
struct ClassCounts {
  std::uint64_t active = 0;
  std::uint64_t inactive = 0;
  std::uint64_t separator = 0;

  std::uint64_t total() const { return active + inactive + separator; }
  bool operator==(const ClassCounts&) const = default;
};

namespace scalar {
// `symbols` must contain canonical bytes only.
ClassCounts count_classes(std::string_view symbols);
// First byte that is neither canonical nor a newline ('\n'/'\r'), if any.
std::optional<std::size_t> find_illegal(std::string_view text);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
bool supported();
ClassCounts count_classes(std::string_view symbols);
std::optional<std::size_t> find_illegal(std::string_view text);
}  // namespace avx2
#endif

// Runtime-dispatched entry points: widest instruction set the CPU offers,
// scalar otherwise.
ClassCounts count_classes(std::string_view symbols);
std::optional<std::size_t> find_illegal(std::string_view text);

/// Name of the implementation the dispatcher selected ("avx2" or "scalar").
std::string_view active_kernel();

}  // namespace readscore::kernels
