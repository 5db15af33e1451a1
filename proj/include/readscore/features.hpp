#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "readscore/stream.hpp"

namespace readscore {

/// The five counted quantities plus the separator tally that makes the
/// conservation invariant checkable:
/// active_count + inactive_count + separator_count = alphabet_count.
struct MeasuredFeatures {
  double duration_s = 0.0;
  std::uint64_t word_count = 0;
  std::uint64_t alphabet_count = 0;
  std::uint64_t active_count = 0;
  std::uint64_t inactive_count = 0;
  std::uint64_t separator_count = 0;

  bool operator==(const MeasuredFeatures&) const = default;
};

/// The five ratios. A ratio with a zero denominator is nullopt (never NaN,
/// never an exception) so corpus runs can flag-and-skip degenerate segments.
struct DerivedFeatures {
  std::optional<double> awl;           // alphabets / word
  std::optional<double> aps;           // alphabets / second
  std::optional<double> wps;           // words / second        (f3)
  std::optional<double> inactive_aps;  // inactive alphabets / second (f2)
  std::optional<double> active_awl;    // active alphabets / word     (f1)

  std::optional<double> f1() const { return active_awl; }
  std::optional<double> f2() const { return inactive_aps; }
  std::optional<double> f3() const { return wps; }

  /// True when all three classifier inputs are defined.
  bool complete() const {
    return active_awl.has_value() && inactive_aps.has_value() &&
           wps.has_value();
  }
};

MeasuredFeatures measure(const AlphabetStream& stream, WordPolicy policy);

DerivedFeatures derive(const MeasuredFeatures& m);

// Feature dump rows: undefined ratios serialize as empty fields.
std::string features_csv_header();
std::string features_csv_row(std::string_view id, const MeasuredFeatures& m,
                             const DerivedFeatures& d);

}  // namespace readscore
