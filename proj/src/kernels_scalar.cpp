#include "readscore/kernels.hpp"

#include "readscore/symbols.hpp"

namespace readscore::kernels::scalar {

ClassCounts count_classes(std::string_view symbols) {
  ClassCounts counts;
  for (char c : symbols) {
    if (is_separator_code(c)) {
      ++counts.separator;
    } else if (is_inactive_code(c)) {
      ++counts.inactive;
    } else {
      ++counts.active;
    }
  }
  return counts;
}

std::optional<std::size_t> find_illegal(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!is_canonical_code(c) && c != '\n' && c != '\r') return i;
  }
  return std::nullopt;
}

}  // namespace readscore::kernels::scalar
