#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "readscore/scoring.hpp"
#include "readscore/stream.hpp"

namespace readscore {

struct ManifestEntry {
  std::string path;  // .als file, relative paths resolve against the manifest
  std::string id;
  std::optional<std::string> speaker;
  std::optional<SpeechClass> ground_truth;

  bool operator==(const ManifestEntry&) const = default;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
};

/// CSV `path,id,speaker,ground_truth`; header row optional; speaker and
/// ground_truth may be empty. Throws FormatError on duplicate ids, empty
/// paths or unknown labels.
Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Keeps streams with duration_seconds() >= min_s, order preserved.
std::vector<AlphabetStream> filter_min_duration(std::vector<AlphabetStream> streams,
                                                double min_s);

struct SegmentRecord {
  std::string id;
  std::optional<std::string> speaker;
  double duration_s = 0.0;
  std::optional<double> f1, f2, f3;
  std::optional<double> score;
  Label label = Label::Undetermined;
  bool borderline = false;
  std::optional<SpeechClass> ground_truth;
};

struct SegmentError {
  std::string id;
  std::string path;
  std::string message;
};

/// read_as_* / spont_as_* name ground truth first, prediction second.
struct ConfusionCounts {
  std::uint64_t read_as_read = 0;
  std::uint64_t spont_as_read = 0;
  std::uint64_t read_as_spont = 0;
  std::uint64_t spont_as_spont = 0;

  std::uint64_t labeled_total() const {
    return read_as_read + spont_as_read + read_as_spont + spont_as_spont;
  }
  std::uint64_t correct() const { return read_as_read + spont_as_spont; }
  std::optional<double> accuracy() const;
  std::optional<double> read_recall() const;
  std::optional<double> spontaneous_recall() const;

  bool operator==(const ConfusionCounts&) const = default;
};

struct SpeakerErrors {
  std::string speaker;
  std::uint64_t spont_as_read = 0;
  std::uint64_t read_as_spont = 0;
  std::uint64_t undetermined = 0;

  bool both_ways() const { return spont_as_read > 0 && read_as_spont > 0; }
};

struct EvalOptions {
  double stride_ms = kDefaultStrideMs;  // .als headers override per file
  double min_duration_s = 0.0;
  WordPolicy policy = WordPolicy::AnySymbol;
  ScoreParams params{};
  std::filesystem::path base_dir;  // resolves relative manifest paths
};

struct EvalReport {
  EvalOptions options;
  std::vector<SegmentRecord> segments;  // sorted by id
  std::vector<SegmentError> errors;     // parse/read failures, batch continues
  std::uint64_t discarded_below_min = 0;

  // Aggregates over `segments`; confusion covers rows that have ground truth
  // and a determined label.
  ConfusionCounts confusion;
  std::uint64_t undetermined_total = 0;
  std::uint64_t undetermined_labeled = 0;

  std::uint64_t scored_total() const {
    return segments.size() - undetermined_total;
  }
};

/// Per-segment pipeline parse -> measure -> derive -> classify, segments
/// merged in id order. Throws FileError only if nothing could be read at the
/// manifest level; per-segment failures land in `errors`.
EvalReport evaluate(const Manifest& manifest, const EvalOptions& options);

struct BorderlineStats {
  std::uint64_t segment_count = 0;  // rows flagged borderline
  ConfusionCounts confusion;
};

BorderlineStats borderline_stats(const EvalReport& report);

/// Score histogram over [0,3]; bin counts sum to scored_total().
std::vector<std::uint64_t> score_histogram(const EvalReport& report,
                                           std::size_t bins);
std::vector<std::uint64_t> score_histogram(std::span<const double> scores,
                                           std::size_t bins);

/// Speakers with at least one misclassified or undetermined labeled segment,
/// sorted by speaker id. Rows without a speaker are not counted.
std::vector<SpeakerErrors> speaker_error_table(const EvalReport& report);

// Exports. Deterministic; numeric fields use 4 decimal places, undefined
// values serialize as empty CSV fields / JSON nulls.
std::string report_json(const EvalReport& report);
std::string segments_csv(const EvalReport& report);
std::string scatter_csv(const EvalReport& report);
std::string histogram_csv(const EvalReport& report, std::size_t bins);
std::string histogram_csv(std::span<const double> scores, std::size_t bins);

}  // namespace readscore
