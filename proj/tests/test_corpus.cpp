#include "readscore/corpus.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "readscore/errors.hpp"
#include "readscore/synthgen.hpp"

using namespace readscore;

namespace {

SegmentRecord record(std::string id, std::optional<std::string> speaker,
                     std::optional<SpeechClass> truth, Label label,
                     double score, bool borderline = false) {
  SegmentRecord r;
  r.id = std::move(id);
  r.speaker = std::move(speaker);
  r.ground_truth = truth;
  r.label = label;
  if (label != Label::Undetermined) r.score = score;
  r.borderline = borderline;
  return r;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("confusion arithmetic reproduces the reference matrix") {
  ConfusionCounts c{88, 8, 16, 90};
  CHECK(c.labeled_total() == 202);
  CHECK(c.correct() == 178);
  // exact to two decimals when expressed as percentages
  CHECK(testutil::within(*c.accuracy() * 100.0, 88.12, 0.005));
  CHECK(testutil::within(*c.read_recall() * 100.0, 84.62, 0.005));
  CHECK(testutil::within(*c.spontaneous_recall() * 100.0, 91.84, 0.005));
}

TEST_CASE("borderline band arithmetic: 16 of 23 correct") {
  ConfusionCounts c{8, 4, 3, 8};
  CHECK(c.labeled_total() == 23);
  CHECK(c.correct() == 16);
  CHECK(testutil::within(*c.accuracy() * 100.0, 69.6, 0.05));
}

TEST_CASE("empty confusion has undefined rates") {
  ConfusionCounts c;
  CHECK(!c.accuracy());
  CHECK(!c.read_recall());
  CHECK(!c.spontaneous_recall());
}

TEST_CASE("filter_min_duration keeps the boundary") {
  std::vector<AlphabetStream> streams;
  streams.push_back(parse_stream(std::string(50, 'a'), 20.0, "one"));    // 1.0 s
  streams.push_back(parse_stream(std::string(100, 'a'), 20.0, "two"));   // 2.0 s
  streams.push_back(parse_stream(std::string(175, 'a'), 20.0, "three")); // 3.5 s

  auto kept = filter_min_duration(streams, 2.0);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].id() == "two");
  CHECK(kept[1].id() == "three");

  CHECK(filter_min_duration(streams, 0.0).size() == 3);
}

TEST_CASE("manifest round trip and validation") {
  testutil::TempDir dir("manifest");
  Manifest m;
  m.entries.push_back({"a.als", "a", "spk1", SpeechClass::Read});
  m.entries.push_back({"b.als", "b", std::nullopt, SpeechClass::Spontaneous});
  m.entries.push_back({"c.als", "c", "spk2", std::nullopt});
  save_manifest(m, dir.file("m.csv"));
  Manifest back = load_manifest(dir.file("m.csv"));
  CHECK(back.entries == m.entries);

  // header optional, and recognized even without the optional columns
  testutil::write_file(dir.file("short.csv"), "path,id\na.als,x\n");
  CHECK(load_manifest(dir.file("short.csv")).entries.size() == 1);
  testutil::write_file(dir.file("bare.csv"), "a.als,x\n");
  CHECK(load_manifest(dir.file("bare.csv")).entries.size() == 1);

  testutil::write_file(dir.file("dup.csv"), "a.als,x\nb.als,x\n");
  CHECK_THROWS_AS(load_manifest(dir.file("dup.csv")), FormatError);
  testutil::write_file(dir.file("nopath.csv"), ",x\n");
  CHECK_THROWS_AS(load_manifest(dir.file("nopath.csv")), FormatError);
  testutil::write_file(dir.file("badlabel.csv"), "a.als,x,spk,scripted\n");
  CHECK_THROWS_AS(load_manifest(dir.file("badlabel.csv")), FormatError);
  CHECK_THROWS_AS(load_manifest(dir.file("missing.csv")), FileError);
}

TEST_CASE("evaluate classifies reference-profile synthetic streams") {
  testutil::TempDir dir("eval");
  GenProfile read = default_read_profile();
  read.seed = 7;
  GenProfile spont = default_spontaneous_profile();
  spont.seed = 8;
  save_als(generate(read, "r0", "spk0", SpeechClass::Read), dir.file("r0.als"));
  save_als(generate(spont, "s0", "spk0", SpeechClass::Spontaneous),
           dir.file("s0.als"));

  Manifest m;
  m.entries.push_back({"r0.als", "r0", "spk0", SpeechClass::Read});
  m.entries.push_back({"s0.als", "s0", "spk0", SpeechClass::Spontaneous});

  EvalOptions opt;
  opt.base_dir = dir.path();
  EvalReport report = evaluate(m, opt);

  REQUIRE(report.segments.size() == 2);
  CHECK(report.errors.empty());
  CHECK(*report.confusion.accuracy() == 1.0);
  CHECK(report.confusion.read_as_read == 1);
  CHECK(report.confusion.spont_as_spont == 1);

  const SegmentRecord& r0 = report.segments[0];
  CHECK(r0.id == "r0");
  CHECK(r0.label == Label::Read);
  CHECK(testutil::within(*r0.score, 1.683, 0.1));
  const SegmentRecord& s0 = report.segments[1];
  CHECK(s0.label == Label::Spontaneous);
  CHECK(testutil::within(*s0.score, 2.340, 0.1));
}

TEST_CASE("evaluate without ground truth emits labels, empty confusion") {
  testutil::TempDir dir("eval_nogt");
  GenProfile p = default_read_profile();
  p.seed = 3;
  save_als(generate(p, "x"), dir.file("x.als"));
  Manifest m;
  m.entries.push_back({"x.als", "x", std::nullopt, std::nullopt});

  EvalOptions opt;
  opt.base_dir = dir.path();
  EvalReport report = evaluate(m, opt);
  REQUIRE(report.segments.size() == 1);
  CHECK(report.segments[0].label == Label::Read);
  CHECK(report.confusion.labeled_total() == 0);
  CHECK(!report.confusion.accuracy());
}

TEST_CASE("evaluate applies the minimum duration filter") {
  testutil::TempDir dir("eval_min");
  save_als(parse_stream(std::string(50, 'a') + " " + std::string(49, 'b'), 20.0,
                        "short"),
           dir.file("short.als"));  // 2.0 s exactly
  save_als(parse_stream(std::string(40, 'a'), 20.0, "tiny"),
           dir.file("tiny.als"));  // 0.8 s
  Manifest m;
  m.entries.push_back({"short.als", "short", std::nullopt, std::nullopt});
  m.entries.push_back({"tiny.als", "tiny", std::nullopt, std::nullopt});

  EvalOptions opt;
  opt.base_dir = dir.path();
  opt.min_duration_s = 2.0;
  EvalReport report = evaluate(m, opt);
  REQUIRE(report.segments.size() == 1);  // boundary kept
  CHECK(report.segments[0].id == "short");
  CHECK(report.discarded_below_min == 1);
}

TEST_CASE("evaluate records parse failures and keeps going") {
  testutil::TempDir dir("eval_err");
  testutil::write_file(dir.file("bad.als"), "ab$cd\n");
  GenProfile p = default_spontaneous_profile();
  p.seed = 5;
  save_als(generate(p, "ok"), dir.file("ok.als"));
  Manifest m;
  m.entries.push_back({"bad.als", "bad", std::nullopt, SpeechClass::Read});
  m.entries.push_back({"ok.als", "ok", std::nullopt, SpeechClass::Spontaneous});

  EvalOptions opt;
  opt.base_dir = dir.path();
  EvalReport report = evaluate(m, opt);
  REQUIRE(report.errors.size() == 1);
  CHECK(report.errors[0].id == "bad");
  CHECK(report.errors[0].message.find("position") != std::string::npos);
  REQUIRE(report.segments.size() == 1);
  CHECK(report.segments[0].id == "ok");
  CHECK(*report.confusion.accuracy() == 1.0);
}

TEST_CASE("evaluate is order-independent") {
  testutil::TempDir dir("eval_perm");
  Manifest m;
  for (int i = 0; i < 6; ++i) {
    GenProfile p =
        i % 2 ? default_spontaneous_profile() : default_read_profile();
    p.seed = 100 + static_cast<std::uint64_t>(i);
    std::string id = "seg" + std::to_string(i);
    auto truth = i % 2 ? SpeechClass::Spontaneous : SpeechClass::Read;
    save_als(generate(p, id, "spk", truth), dir.file(id + ".als"));
    m.entries.push_back({id + ".als", id, "spk", truth});
  }
  EvalOptions opt;
  opt.base_dir = dir.path();
  EvalReport a = evaluate(m, opt);

  Manifest shuffled = m;
  std::reverse(shuffled.entries.begin(), shuffled.entries.end());
  EvalReport b = evaluate(shuffled, opt);

  CHECK(a.confusion == b.confusion);
  CHECK(report_json(a) == report_json(b));  // byte-identical output
  REQUIRE(a.segments.size() == b.segments.size());
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    CHECK(a.segments[i].id == b.segments[i].id);
    CHECK(a.segments[i].score == b.segments[i].score);
  }
}

TEST_CASE("confusion marginals match ground-truth class counts") {
  testutil::TempDir dir("eval_marg");
  Manifest m;
  int n_read = 0, n_spont = 0;
  for (int i = 0; i < 8; ++i) {
    bool spont = i % 3 == 0;
    GenProfile p = spont ? default_spontaneous_profile() : default_read_profile();
    p.seed = 200 + static_cast<std::uint64_t>(i);
    std::string id = "m" + std::to_string(i);
    auto truth = spont ? SpeechClass::Spontaneous : SpeechClass::Read;
    (spont ? n_spont : n_read) += 1;
    save_als(generate(p, id, std::nullopt, truth), dir.file(id + ".als"));
    m.entries.push_back({id + ".als", id, std::nullopt, truth});
  }
  EvalOptions opt;
  opt.base_dir = dir.path();
  EvalReport report = evaluate(m, opt);
  const ConfusionCounts& c = report.confusion;
  CHECK(c.read_as_read + c.read_as_spont == static_cast<std::uint64_t>(n_read));
  CHECK(c.spont_as_read + c.spont_as_spont ==
        static_cast<std::uint64_t>(n_spont));
  CHECK(c.labeled_total() + report.undetermined_labeled ==
        static_cast<std::uint64_t>(n_read + n_spont));
}

TEST_CASE("borderline stats cover exactly the flagged rows") {
  EvalReport report;
  report.segments.push_back(record("a", "s", SpeechClass::Read, Label::Read,
                                   1.76, true));
  report.segments.push_back(record("b", "s", SpeechClass::Spontaneous,
                                   Label::Read, 1.74, true));
  report.segments.push_back(record("c", "s", SpeechClass::Read, Label::Read,
                                   1.2, false));
  report.segments.push_back(record("d", std::nullopt, std::nullopt,
                                   Label::Spontaneous, 1.79, true));
  BorderlineStats stats = borderline_stats(report);
  CHECK(stats.segment_count == 3);
  CHECK(stats.confusion.labeled_total() == 2);  // "d" has no ground truth
  CHECK(stats.confusion.read_as_read == 1);
  CHECK(stats.confusion.spont_as_read == 1);

  CHECK(borderline_stats(EvalReport{}).segment_count == 0);
}

TEST_CASE("score histogram: hand-binned example and edge cases") {
  std::vector<double> scores = {0.5, 1.5, 2.5};
  auto counts = score_histogram(scores, 3);
  CHECK(counts == std::vector<std::uint64_t>{1, 1, 1});

  CHECK(score_histogram(std::span<const double>{}, 4) ==
        std::vector<std::uint64_t>{0, 0, 0, 0});

  CHECK(score_histogram(scores, 1) == std::vector<std::uint64_t>{3});

  CHECK_THROWS_AS(score_histogram(scores, 0), ConfigError);
}

TEST_CASE("histogram mass equals the number of scored segments") {
  testutil::Rng rng(52);
  EvalReport report;
  std::size_t scored = 0;
  for (int i = 0; i < 100; ++i) {
    bool undetermined = rng.below(7) == 0;
    report.segments.push_back(record(
        "h" + std::to_string(i), std::nullopt, std::nullopt,
        undetermined ? Label::Undetermined : Label::Read, rng.in(0.001, 2.999)));
    if (!undetermined) ++scored;
  }
  report.undetermined_total = 100 - scored;
  for (std::size_t bins : {1u, 7u, 30u}) {
    auto counts = score_histogram(report, bins);
    CHECK(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) ==
          scored);
  }
}

TEST_CASE("speaker error table classifies one-way and both-ways speakers") {
  EvalReport report;
  // spkA: two spont->read errors, nothing else
  report.segments.push_back(
      record("1", "spkA", SpeechClass::Spontaneous, Label::Read, 1.9));
  report.segments.push_back(
      record("2", "spkA", SpeechClass::Spontaneous, Label::Read, 1.8));
  report.segments.push_back(
      record("3", "spkA", SpeechClass::Read, Label::Read, 1.1));
  // spkB: both directions
  report.segments.push_back(
      record("4", "spkB", SpeechClass::Spontaneous, Label::Read, 1.9));
  report.segments.push_back(
      record("5", "spkB", SpeechClass::Read, Label::Spontaneous, 1.8));
  // spkC: clean
  report.segments.push_back(
      record("6", "spkC", SpeechClass::Read, Label::Read, 1.0));
  // spkD: undetermined only
  report.segments.push_back(
      record("7", "spkD", SpeechClass::Read, Label::Undetermined, 0.0));
  // no speaker: not counted
  report.segments.push_back(
      record("8", std::nullopt, SpeechClass::Read, Label::Spontaneous, 2.0));

  auto table = speaker_error_table(report);
  REQUIRE(table.size() == 3);
  CHECK(table[0].speaker == "spkA");
  CHECK(table[0].spont_as_read == 2);
  CHECK(table[0].read_as_spont == 0);
  CHECK(!table[0].both_ways());
  CHECK(table[1].speaker == "spkB");
  CHECK(table[1].both_ways());
  CHECK(table[2].speaker == "spkD");
  CHECK(table[2].undetermined == 1);

  CHECK(speaker_error_table(EvalReport{}).empty());
}

TEST_CASE("exports are deterministic and well-formed") {
  EvalReport report;
  report.options.params = ScoreParams{};
  report.segments.push_back(
      record("a", "spk", SpeechClass::Read, Label::Read, 1.68));
  report.segments.push_back(record("u", std::nullopt, std::nullopt,
                                   Label::Undetermined, 0.0));
  report.undetermined_total = 1;
  report.confusion.read_as_read = 1;

  std::string json = report_json(report);
  CHECK(json == report_json(report));
  auto parsed = nlohmann::json::parse(json);
  CHECK(parsed["summary"]["segments"] == 2);
  CHECK(parsed["summary"]["accuracy"] == 1.0);
  CHECK(parsed["segments"][0]["score"] == 1.68);
  CHECK(parsed["segments"][1]["score"].is_null());

  std::string csv = segments_csv(report);
  CHECK(csv.find("a,spk,") != std::string::npos);
  CHECK(csv.find("1.6800") != std::string::npos);
  CHECK(csv.find("u,,,,,,undetermined,false,") != std::string::npos);

  std::string scatter = scatter_csv(report);
  CHECK(scatter.rfind("f1,f2,f3,score\n", 0) == 0);
  // one row per segment plus header
  CHECK(std::count(scatter.begin(), scatter.end(), '\n') == 3);

  std::string hist = histogram_csv(report, 3);
  CHECK(hist == "bin_low,bin_high,count\n"
                "0.0000,1.0000,0\n"
                "1.0000,2.0000,1\n"
                "2.0000,3.0000,0\n");
}

}  // TEST_SUITE
