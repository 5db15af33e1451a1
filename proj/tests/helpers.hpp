#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testutil {

// Absolute-tolerance comparison.
inline bool within(double value, double expected, double tol) {
  return std::fabs(value - expected) <= tol;
}

// Deterministic generator for property-style tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(gen_()) * n) >> 64);
  }
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double in(double lo, double hi) { return lo + (hi - lo) * unit(); }
  char canonical() {
    static constexpr char pool[] =
        "abcdefghijklmnopqrstuvwxyz-- ''";  // skewed toward letters
    return pool[below(sizeof(pool) - 1)];
  }
  std::string canonical_string(std::size_t len) {
    std::string s(len, 'a');
    for (auto& c : s) c = canonical();
    return s;
  }

 private:
  std::mt19937_64 gen_;
};

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            (tag + "_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace testutil
