#include "readscore/features.hpp"

#include <sstream>

#include "readscore/kernels.hpp"
#include "readscore/textio.hpp"

namespace readscore {

MeasuredFeatures measure(const AlphabetStream& stream, WordPolicy policy) {
  MeasuredFeatures m;
  kernels::ClassCounts counts = kernels::count_classes(stream.encoded());
  m.alphabet_count = stream.size();
  m.active_count = counts.active;
  m.inactive_count = counts.inactive;
  m.separator_count = counts.separator;
  m.duration_s = stream.duration_seconds();
  m.word_count = segment_words(stream, policy).size();
  return m;
}

namespace {

std::optional<double> ratio(double numerator, double denominator) {
  if (!(denominator > 0.0)) return std::nullopt;
  return numerator / denominator;
}

}  // namespace

DerivedFeatures derive(const MeasuredFeatures& m) {
  DerivedFeatures d;
  auto words = static_cast<double>(m.word_count);
  auto alphabets = static_cast<double>(m.alphabet_count);
  d.awl = ratio(alphabets, words);
  d.aps = ratio(alphabets, m.duration_s);
  d.wps = ratio(words, m.duration_s);
  d.inactive_aps = ratio(static_cast<double>(m.inactive_count), m.duration_s);
  d.active_awl = ratio(static_cast<double>(m.active_count), words);
  return d;
}

std::string features_csv_header() {
  return "id,duration_s,words,alphabets,active,inactive,separators,"
         "awl,aps,wps,inactive_aps,active_awl";
}

namespace {

void append_opt(std::string& row, const std::optional<double>& v) {
  row += ',';
  if (v) row += fmt_fixed(*v);
}

}  // namespace

std::string features_csv_row(std::string_view id, const MeasuredFeatures& m,
                             const DerivedFeatures& d) {
  std::string row(id);
  row += ',';
  row += fmt_fixed(m.duration_s);
  for (std::uint64_t count : {m.word_count, m.alphabet_count, m.active_count,
                              m.inactive_count, m.separator_count}) {
    row += ',';
    row += std::to_string(count);
  }
  append_opt(row, d.awl);
  append_opt(row, d.aps);
  append_opt(row, d.wps);
  append_opt(row, d.inactive_aps);
  append_opt(row, d.active_awl);
  return row;
}

}  // namespace readscore
