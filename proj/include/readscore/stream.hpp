#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "readscore/symbols.hpp"

namespace readscore {

inline constexpr double kDefaultStrideMs = 20.0;

enum class SpeechClass { Read, Spontaneous };

std::string_view to_string(SpeechClass c);
std::optional<SpeechClass> speech_class_from(std::string_view s);

/// Frame-aligned symbol sequence for one utterance segment, one canonical
/// byte per frame. Immutable after construction and safe to share across
/// threads.
class AlphabetStream {
 public:
  AlphabetStream() = default;

  /// `symbols` must be canonical bytes (no newlines). Throws
  /// IllegalCharacterError / NonPositiveStrideError otherwise.
  AlphabetStream(std::string symbols, double stride_ms, std::string id = {},
                 std::optional<std::string> speaker = {},
                 std::optional<SpeechClass> ground_truth = {});

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  double stride_ms() const { return stride_ms_; }
  double duration_seconds() const {
    return static_cast<double>(symbols_.size()) * stride_ms_ / 1000.0;
  }

  Symbol at(std::size_t i) const { return Symbol(symbols_.at(i)); }

  /// Canonical byte form; the exact inverse of parse_stream.
  std::string_view encoded() const { return symbols_; }

  const std::string& id() const { return id_; }
  const std::optional<std::string>& speaker() const { return speaker_; }
  const std::optional<SpeechClass>& ground_truth() const {
    return ground_truth_;
  }

 private:
  std::string symbols_;
  double stride_ms_ = kDefaultStrideMs;
  std::string id_;
  std::optional<std::string> speaker_;
  std::optional<SpeechClass> ground_truth_;
};

/// Decodes `text` into a stream. Newlines are wrapping and are skipped; any
/// byte that is neither canonical nor a newline raises IllegalCharacterError
/// with its offset in `text`.
AlphabetStream parse_stream(std::string_view text, double stride_ms,
                            std::string id = {},
                            std::optional<std::string> speaker = {},
                            std::optional<SpeechClass> ground_truth = {});

enum class WordPolicy {
  AnySymbol,   // every non-empty separator-free run is a word
  ActiveOnly,  // runs without a single active symbol are dropped
};

std::string_view to_string(WordPolicy p);
std::optional<WordPolicy> word_policy_from(std::string_view s);

/// One separator-delimited run of symbols.
struct WordSegment {
  std::size_t total_len = 0;
  std::size_t active_len = 0;
  std::size_t inactive_len = 0;
  std::size_t start_frame = 0;

  bool operator==(const WordSegment&) const = default;
};

std::vector<WordSegment> segment_words(const AlphabetStream& stream,
                                       WordPolicy policy);

/// Word-length frequencies keyed by total_len. With `normalize` the values
/// sum to 1 (empty input stays empty).
std::map<std::size_t, double> word_length_histogram(
    std::span<const WordSegment> words, bool normalize);

/// Per-word inactive_len/total_len ratios sorted ascending. `mean` is the
/// unsorted average, 0 when there are no words.
struct InactiveRatioCurve {
  std::vector<double> ratios;
  double mean = 0.0;
};

InactiveRatioCurve inactive_ratio_curve(std::span<const WordSegment> words);

// .als file form: canonical bytes, optional first line "#stride_ms=<real>",
// newlines allowed anywhere as wrapping.
AlphabetStream load_als(const std::filesystem::path& path,
                        double default_stride_ms = kDefaultStrideMs,
                        std::string id = {},
                        std::optional<std::string> speaker = {},
                        std::optional<SpeechClass> ground_truth = {});

void save_als(const AlphabetStream& stream, const std::filesystem::path& path,
              std::size_t wrap_columns = 80);

}  // namespace readscore
