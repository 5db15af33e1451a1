#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "readscore/corpus.hpp"
#include "readscore/stream.hpp"

namespace readscore {

/// Targets for one synthetic stream. Feasibility: every second must fit
/// wps * (active_awl + 1) active-plus-separator frames plus inactive_aps
/// inactive frames into the 1000/stride_ms frame budget.
struct GenProfile {
  double wps = 0.0;           // words / second target        (f3)
  double active_awl = 0.0;    // active alphabets / word      (f1)
  double inactive_aps = 0.0;  // inactive alphabets / second  (f2)
  double duration_s = 0.0;
  double stride_ms = kDefaultStrideMs;
  std::uint64_t seed = 0;

  // Share of inactive frames placed between a word's active symbols; the
  // rest lead the word at its boundary. Either way they belong to the word's
  // separator-free run.
  double intra_word_inactive_fraction = 0.7;

  double frame_budget_per_s() const { return 1000.0 / stride_ms; }
  double demand_per_s() const {
    return wps * (active_awl + 1.0) + inactive_aps;
  }

  /// Throws InfeasibleProfileError when the budget is violated, ConfigError
  /// on non-positive targets/duration/stride or a fraction outside [0,1].
  void validate() const;
};

/// Profiles whose targets match the reference read / spontaneous feature
/// columns (wps 2.43 / 1.45, active awl 13.21 / 27.75, inactive aps
/// 13.92 / 7.63) at the default 20 ms stride.
GenProfile default_read_profile();
GenProfile default_spontaneous_profile();

/// Deterministic for a given profile: same targets and seed give the same
/// symbols. Extracted features land within 5% of the targets for streams of
/// 10 s and longer.
AlphabetStream generate(const GenProfile& profile, std::string id = {},
                        std::optional<std::string> speaker = {},
                        std::optional<SpeechClass> ground_truth = {});

struct CorpusSpec {
  std::size_t n_read = 0;
  std::size_t n_spont = 0;
  GenProfile read_profile;
  GenProfile spont_profile;
  double jitter = 0.0;  // relative spread applied per stream to each target
  std::uint64_t seed = 0;
};

/// Writes n_read + n_spont labeled .als files plus manifest.csv into
/// `out_dir` and returns the manifest. Byte-identical for identical inputs.
/// Per-stream jittered targets are redrawn until they fit the frame budget;
/// a base profile that itself violates the budget raises
/// InfeasibleProfileError.
Manifest generate_corpus(const CorpusSpec& spec,
                         const std::filesystem::path& out_dir);

}  // namespace readscore
