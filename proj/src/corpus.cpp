#include "readscore/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "readscore/errors.hpp"
#include "readscore/features.hpp"
#include "readscore/textio.hpp"

namespace readscore {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kManifestHeader = "path,id,speaker,ground_truth";

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path.string(), "cannot open");

  Manifest manifest;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view stripped = trim(line);
    if (stripped.empty()) continue;

    auto fields = split_fields(stripped);
    // header row, with or without the optional columns
    if (line_no == 1 && fields.size() >= 2 && fields[0] == "path" &&
        fields[1] == "id")
      continue;
    if (fields.size() < 2 || fields.size() > 4) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected path,id[,speaker[,ground_truth]]");
    }
    ManifestEntry entry;
    entry.path = trim(fields[0]);
    entry.id = trim(fields[1]);
    if (entry.path.empty())
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": empty path");
    if (entry.id.empty())
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": empty id");
    if (fields.size() >= 3) {
      std::string speaker(trim(fields[2]));
      if (!speaker.empty()) entry.speaker = std::move(speaker);
    }
    if (fields.size() == 4) {
      std::string_view label = trim(fields[3]);
      if (!label.empty()) {
        auto cls = speech_class_from(label);
        if (!cls)
          throw FormatError(path.string() + ":" + std::to_string(line_no) +
                            ": unknown ground_truth '" + std::string(label) +
                            "'");
        entry.ground_truth = cls;
      }
    }
    if (!seen_ids.insert(entry.id).second)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": duplicate id '" + entry.id + "'");
    manifest.entries.push_back(std::move(entry));
  }
  if (in.bad()) throw FileError(path.string(), "read failure");
  return manifest;
}

void save_manifest(const Manifest& manifest,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError(path.string(), "cannot open for writing");
  out << kManifestHeader << '\n';
  for (const ManifestEntry& e : manifest.entries) {
    out << e.path << ',' << e.id << ','
        << (e.speaker ? *e.speaker : std::string{}) << ','
        << (e.ground_truth ? std::string(to_string(*e.ground_truth))
                           : std::string{})
        << '\n';
  }
  out.flush();
  if (!out) throw FileError(path.string(), "write failure");
}

std::vector<AlphabetStream> filter_min_duration(
    std::vector<AlphabetStream> streams, double min_s) {
  std::erase_if(streams, [min_s](const AlphabetStream& s) {
    return s.duration_seconds() < min_s;
  });
  return streams;
}

std::optional<double> ConfusionCounts::accuracy() const {
  std::uint64_t n = labeled_total();
  if (n == 0) return std::nullopt;
  return static_cast<double>(correct()) / static_cast<double>(n);
}

std::optional<double> ConfusionCounts::read_recall() const {
  std::uint64_t n = read_as_read + read_as_spont;
  if (n == 0) return std::nullopt;
  return static_cast<double>(read_as_read) / static_cast<double>(n);
}

std::optional<double> ConfusionCounts::spontaneous_recall() const {
  std::uint64_t n = spont_as_read + spont_as_spont;
  if (n == 0) return std::nullopt;
  return static_cast<double>(spont_as_spont) / static_cast<double>(n);
}

namespace {

void tally(ConfusionCounts& c, SpeechClass truth, Label predicted) {
  if (truth == SpeechClass::Read) {
    if (predicted == Label::Read) {
      ++c.read_as_read;
    } else {
      ++c.read_as_spont;
    }
  } else {
    if (predicted == Label::Read) {
      ++c.spont_as_read;
    } else {
      ++c.spont_as_spont;
    }
  }
}

}  // namespace

EvalReport evaluate(const Manifest& manifest, const EvalOptions& options) {
  options.params.validate();
  if (options.min_duration_s < 0.0)
    throw ConfigError("min_duration_s must be >= 0");

  EvalReport report;
  report.options = options;

  for (const ManifestEntry& entry : manifest.entries) {
    std::filesystem::path file(entry.path);
    if (file.is_relative() && !options.base_dir.empty())
      file = options.base_dir / file;

    AlphabetStream stream;
    try {
      stream = load_als(file, options.stride_ms, entry.id, entry.speaker,
                        entry.ground_truth);
    } catch (const Error& e) {
      report.errors.push_back({entry.id, file.string(), e.what()});
      continue;
    }
    if (stream.duration_seconds() < options.min_duration_s) {
      ++report.discarded_below_min;
      continue;
    }

    DerivedFeatures derived = derive(measure(stream, options.policy));
    Decision decision = classify(derived, options.params);

    SegmentRecord rec;
    rec.id = entry.id;
    rec.speaker = entry.speaker;
    rec.duration_s = stream.duration_seconds();
    rec.f1 = derived.f1();
    rec.f2 = derived.f2();
    rec.f3 = derived.f3();
    rec.score = decision.score;
    rec.label = decision.label;
    rec.borderline = decision.borderline;
    rec.ground_truth = entry.ground_truth;
    report.segments.push_back(std::move(rec));
  }

  std::sort(report.segments.begin(), report.segments.end(),
            [](const SegmentRecord& a, const SegmentRecord& b) {
              return a.id < b.id;
            });

  for (const SegmentRecord& rec : report.segments) {
    if (rec.label == Label::Undetermined) {
      ++report.undetermined_total;
      if (rec.ground_truth) ++report.undetermined_labeled;
      continue;
    }
    if (rec.ground_truth) tally(report.confusion, *rec.ground_truth, rec.label);
  }
  return report;
}

BorderlineStats borderline_stats(const EvalReport& report) {
  BorderlineStats stats;
  for (const SegmentRecord& rec : report.segments) {
    if (!rec.borderline) continue;
    ++stats.segment_count;
    if (rec.ground_truth && rec.label != Label::Undetermined)
      tally(stats.confusion, *rec.ground_truth, rec.label);
  }
  return stats;
}

std::vector<std::uint64_t> score_histogram(std::span<const double> scores,
                                           std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  std::vector<std::uint64_t> counts(bins, 0);
  for (double s : scores) {
    auto idx = static_cast<std::size_t>(s / 3.0 * static_cast<double>(bins));
    if (idx >= bins) idx = bins - 1;
    ++counts[idx];
  }
  return counts;
}

std::vector<std::uint64_t> score_histogram(const EvalReport& report,
                                           std::size_t bins) {
  std::vector<double> scores;
  scores.reserve(report.segments.size());
  for (const SegmentRecord& rec : report.segments) {
    if (rec.score) scores.push_back(*rec.score);
  }
  return score_histogram(scores, bins);
}

std::vector<SpeakerErrors> speaker_error_table(const EvalReport& report) {
  std::map<std::string, SpeakerErrors> by_speaker;
  for (const SegmentRecord& rec : report.segments) {
    if (!rec.ground_truth || !rec.speaker) continue;
    if (rec.label == Label::Undetermined) {
      by_speaker[*rec.speaker].undetermined += 1;
    } else if (*rec.ground_truth == SpeechClass::Spontaneous &&
               rec.label == Label::Read) {
      by_speaker[*rec.speaker].spont_as_read += 1;
    } else if (*rec.ground_truth == SpeechClass::Read &&
               rec.label == Label::Spontaneous) {
      by_speaker[*rec.speaker].read_as_spont += 1;
    }
  }
  std::vector<SpeakerErrors> table;
  for (auto& [speaker, errors] : by_speaker) {
    if (errors.spont_as_read + errors.read_as_spont + errors.undetermined == 0)
      continue;
    errors.speaker = speaker;
    table.push_back(errors);
  }
  return table;
}

namespace {

ordered_json opt_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return round_places(*v);
}

ordered_json confusion_json(const ConfusionCounts& c) {
  ordered_json j;
  j["read_as_read"] = c.read_as_read;
  j["spont_as_read"] = c.spont_as_read;
  j["read_as_spont"] = c.read_as_spont;
  j["spont_as_spont"] = c.spont_as_spont;
  return j;
}

std::string opt_field(const std::optional<double>& v) {
  return v ? fmt_fixed(*v) : std::string{};
}

}  // namespace

std::string report_json(const EvalReport& report) {
  const EvalOptions& opt = report.options;
  ordered_json j;
  j["stride_ms"] = opt.stride_ms;
  j["min_duration_s"] = opt.min_duration_s;
  j["policy"] = to_string(opt.policy);

  ordered_json params;
  params["lambda1"] = opt.params.lambda1;
  params["lambda2"] = opt.params.lambda2;
  params["lambda3"] = opt.params.lambda3;
  params["tau1"] = opt.params.tau1;
  params["tau2"] = opt.params.tau2;
  params["tau3"] = opt.params.tau3;
  params["tau_r"] = opt.params.tau_r;
  params["delta"] = opt.params.delta;
  params["rule_polarity"] = to_string(opt.params.polarity);
  j["params"] = std::move(params);

  ordered_json summary;
  summary["segments"] = report.segments.size();
  summary["scored"] = report.scored_total();
  summary["undetermined"] = report.undetermined_total;
  summary["undetermined_labeled"] = report.undetermined_labeled;
  summary["discarded_below_min"] = report.discarded_below_min;
  summary["parse_errors"] = report.errors.size();
  summary["labeled"] = report.confusion.labeled_total();
  summary["confusion"] = confusion_json(report.confusion);
  summary["accuracy"] = opt_number(report.confusion.accuracy());
  summary["read_recall"] = opt_number(report.confusion.read_recall());
  summary["spontaneous_recall"] =
      opt_number(report.confusion.spontaneous_recall());
  j["summary"] = std::move(summary);

  BorderlineStats border = borderline_stats(report);
  ordered_json borderline;
  borderline["segments"] = border.segment_count;
  borderline["confusion"] = confusion_json(border.confusion);
  borderline["accuracy"] = opt_number(border.confusion.accuracy());
  j["borderline"] = std::move(borderline);

  ordered_json speakers = ordered_json::array();
  for (const SpeakerErrors& s : speaker_error_table(report)) {
    ordered_json row;
    row["speaker"] = s.speaker;
    row["spont_as_read"] = s.spont_as_read;
    row["read_as_spont"] = s.read_as_spont;
    row["undetermined"] = s.undetermined;
    row["both_ways"] = s.both_ways();
    speakers.push_back(std::move(row));
  }
  j["speaker_errors"] = std::move(speakers);

  ordered_json errors = ordered_json::array();
  for (const SegmentError& e : report.errors) {
    ordered_json row;
    row["id"] = e.id;
    row["path"] = e.path;
    row["message"] = e.message;
    errors.push_back(std::move(row));
  }
  j["errors"] = std::move(errors);

  ordered_json segments = ordered_json::array();
  for (const SegmentRecord& rec : report.segments) {
    ordered_json row;
    row["id"] = rec.id;
    row["speaker"] = rec.speaker ? ordered_json(*rec.speaker)
                                 : ordered_json(nullptr);
    row["duration_s"] = round_places(rec.duration_s);
    row["f1"] = opt_number(rec.f1);
    row["f2"] = opt_number(rec.f2);
    row["f3"] = opt_number(rec.f3);
    row["score"] = opt_number(rec.score);
    row["label"] = to_string(rec.label);
    row["borderline"] = rec.borderline;
    row["ground_truth"] = rec.ground_truth
                              ? ordered_json(to_string(*rec.ground_truth))
                              : ordered_json(nullptr);
    segments.push_back(std::move(row));
  }
  j["segments"] = std::move(segments);

  return j.dump(2) + "\n";
}

std::string segments_csv(const EvalReport& report) {
  std::string out = "id,speaker,f1,f2,f3,score,label,borderline,ground_truth\n";
  for (const SegmentRecord& rec : report.segments) {
    out += rec.id;
    out += ',';
    if (rec.speaker) out += *rec.speaker;
    out += ',' + opt_field(rec.f1);
    out += ',' + opt_field(rec.f2);
    out += ',' + opt_field(rec.f3);
    out += ',' + opt_field(rec.score);
    out += ',';
    out += to_string(rec.label);
    out += rec.borderline ? ",true," : ",false,";
    if (rec.ground_truth) out += to_string(*rec.ground_truth);
    out += '\n';
  }
  return out;
}

std::string scatter_csv(const EvalReport& report) {
  std::string out = "f1,f2,f3,score\n";
  for (const SegmentRecord& rec : report.segments) {
    out += opt_field(rec.f1) + ',' + opt_field(rec.f2) + ',' +
           opt_field(rec.f3) + ',' + opt_field(rec.score) + '\n';
  }
  return out;
}

std::string histogram_csv(std::span<const double> scores, std::size_t bins) {
  std::vector<std::uint64_t> counts = score_histogram(scores, bins);
  std::string out = "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double lo = 3.0 * static_cast<double>(i) / static_cast<double>(bins);
    double hi = 3.0 * static_cast<double>(i + 1) / static_cast<double>(bins);
    out += fmt_fixed(lo) + ',' + fmt_fixed(hi) + ',' +
           std::to_string(counts[i]) + '\n';
  }
  return out;
}

std::string histogram_csv(const EvalReport& report, std::size_t bins) {
  std::vector<double> scores;
  scores.reserve(report.segments.size());
  for (const SegmentRecord& rec : report.segments) {
    if (rec.score) scores.push_back(*rec.score);
  }
  return histogram_csv(scores, bins);
}

}  // namespace readscore
