#include "readscore/kernels.hpp"

namespace readscore::kernels {

namespace {

struct Dispatch {
  ClassCounts (*count_classes)(std::string_view);
  std::optional<std::size_t> (*find_illegal)(std::string_view);
  std::string_view name;
};

Dispatch select() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2::supported()) {
    return {&avx2::count_classes, &avx2::find_illegal, "avx2"};
  }
#endif
  return {&scalar::count_classes, &scalar::find_illegal, "scalar"};
}

const Dispatch& table() {
  static const Dispatch d = select();
  return d;
}

}  // namespace

ClassCounts count_classes(std::string_view symbols) {
  return table().count_classes(symbols);
}

std::optional<std::size_t> find_illegal(std::string_view text) {
  return table().find_illegal(text);
}

std::string_view active_kernel() { return table().name; }

}  // namespace readscore::kernels
