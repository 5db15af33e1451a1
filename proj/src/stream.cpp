#include "readscore/stream.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "readscore/errors.hpp"
#include "readscore/kernels.hpp"

namespace readscore {

std::string_view to_string(SpeechClass c) {
  return c == SpeechClass::Read ? "read" : "spontaneous";
}

std::optional<SpeechClass> speech_class_from(std::string_view s) {
  if (s == "read") return SpeechClass::Read;
  if (s == "spontaneous") return SpeechClass::Spontaneous;
  return std::nullopt;
}

std::string_view to_string(WordPolicy p) {
  return p == WordPolicy::AnySymbol ? "any" : "active-only";
}

std::optional<WordPolicy> word_policy_from(std::string_view s) {
  if (s == "any") return WordPolicy::AnySymbol;
  if (s == "active-only") return WordPolicy::ActiveOnly;
  return std::nullopt;
}

AlphabetStream::AlphabetStream(std::string symbols, double stride_ms,
                               std::string id,
                               std::optional<std::string> speaker,
                               std::optional<SpeechClass> ground_truth)
    : symbols_(std::move(symbols)),
      stride_ms_(stride_ms),
      id_(std::move(id)),
      speaker_(std::move(speaker)),
      ground_truth_(std::move(ground_truth)) {
  if (!(stride_ms_ > 0.0)) throw NonPositiveStrideError(stride_ms_);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!is_canonical_code(symbols_[i]))
      throw IllegalCharacterError(i, symbols_[i]);
  }
}

AlphabetStream parse_stream(std::string_view text, double stride_ms,
                            std::string id, std::optional<std::string> speaker,
                            std::optional<SpeechClass> ground_truth) {
  if (!(stride_ms > 0.0)) throw NonPositiveStrideError(stride_ms);
  if (auto bad = kernels::find_illegal(text)) {
    throw IllegalCharacterError(*bad, text[*bad]);
  }
  std::string symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    if (c != '\n' && c != '\r') symbols.push_back(c);
  }
  return AlphabetStream(std::move(symbols), stride_ms, std::move(id),
                        std::move(speaker), std::move(ground_truth));
}

std::vector<WordSegment> segment_words(const AlphabetStream& stream,
                                       WordPolicy policy) {
  std::vector<WordSegment> words;
  std::string_view s = stream.encoded();
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_separator_code(s[i])) {
      ++i;
      continue;
    }
    WordSegment w;
    w.start_frame = i;
    while (i < s.size() && !is_separator_code(s[i])) {
      if (is_active_code(s[i])) {
        ++w.active_len;
      } else {
        ++w.inactive_len;
      }
      ++i;
    }
    w.total_len = i - w.start_frame;
    if (policy == WordPolicy::ActiveOnly && w.active_len == 0) continue;
    words.push_back(w);
  }
  return words;
}

std::map<std::size_t, double> word_length_histogram(
    std::span<const WordSegment> words, bool normalize) {
  std::map<std::size_t, double> hist;
  for (const WordSegment& w : words) hist[w.total_len] += 1.0;
  if (normalize && !words.empty()) {
    double n = static_cast<double>(words.size());
    for (auto& [len, freq] : hist) freq /= n;
  }
  return hist;
}

InactiveRatioCurve inactive_ratio_curve(std::span<const WordSegment> words) {
  InactiveRatioCurve curve;
  curve.ratios.reserve(words.size());
  for (const WordSegment& w : words) {
    curve.ratios.push_back(static_cast<double>(w.inactive_len) /
                           static_cast<double>(w.total_len));
  }
  if (!curve.ratios.empty()) {
    curve.mean = std::accumulate(curve.ratios.begin(), curve.ratios.end(), 0.0) /
                 static_cast<double>(curve.ratios.size());
  }
  std::sort(curve.ratios.begin(), curve.ratios.end());
  return curve;
}

namespace {

constexpr std::string_view kStrideHeader = "#stride_ms=";

}  // namespace

AlphabetStream load_als(const std::filesystem::path& path,
                        double default_stride_ms, std::string id,
                        std::optional<std::string> speaker,
                        std::optional<SpeechClass> ground_truth) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path.string(), "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FileError(path.string(), "read failure");
  std::string content = std::move(buf).str();

  double stride_ms = default_stride_ms;
  std::size_t body_start = 0;
  if (content.starts_with(kStrideHeader)) {
    std::size_t eol = content.find('\n');
    std::string_view line(content.data(),
                          eol == std::string::npos ? content.size() : eol);
    std::string_view value = line.substr(kStrideHeader.size());
    if (!value.empty() && value.back() == '\r') value.remove_suffix(1);
    double parsed = 0.0;
    auto [end, ec] =
        std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || end != value.data() + value.size()) {
      throw FormatError(path.string() + ": bad stride header '" +
                        std::string(line) + "'");
    }
    if (!(parsed > 0.0)) throw NonPositiveStrideError(parsed);
    stride_ms = parsed;
    body_start = eol == std::string::npos ? content.size() : eol + 1;
  }

  if (id.empty()) id = path.stem().string();
  std::string_view body(content.data() + body_start,
                        content.size() - body_start);
  try {
    return parse_stream(body, stride_ms, std::move(id), std::move(speaker),
                        std::move(ground_truth));
  } catch (const IllegalCharacterError& e) {
    throw IllegalCharacterError(e.position() + body_start, e.character(),
                                path.string());
  }
}

void save_als(const AlphabetStream& stream, const std::filesystem::path& path,
              std::size_t wrap_columns) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError(path.string(), "cannot open for writing");
  char stride_buf[32];
  auto [stride_end, _] = std::to_chars(stride_buf, stride_buf + sizeof(stride_buf),
                                       stream.stride_ms());
  out << kStrideHeader << std::string_view(stride_buf, stride_end) << '\n';
  std::string_view s = stream.encoded();
  if (wrap_columns == 0) wrap_columns = s.size();
  for (std::size_t i = 0; i < s.size(); i += wrap_columns) {
    out << s.substr(i, wrap_columns) << '\n';
  }
  out.flush();
  if (!out) throw FileError(path.string(), "write failure");
}

}  // namespace readscore
