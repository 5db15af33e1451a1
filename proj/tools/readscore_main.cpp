// readscore: classify utterances as read or spontaneous speech from
// frame-aligned alphabet streams (.als files).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "readscore/corpus.hpp"
#include "readscore/errors.hpp"
#include "readscore/features.hpp"
#include "readscore/kernels.hpp"
#include "readscore/scoring.hpp"
#include "readscore/stream.hpp"
#include "readscore/synthgen.hpp"
#include "readscore/textio.hpp"

namespace {

using namespace readscore;

// Exit codes, stable contract: 0 success, 1 I/O, 2 input format, 3 config.
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitFormat = 2;
constexpr int kExitConfig = 3;

struct ScoreFlags {
  std::string params_file;
  std::optional<double> lambda1, lambda2, lambda3;
  std::optional<double> tau1, tau2, tau3, tau_r, delta;
  std::string polarity;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--params", params_file,
                    "key=value file with score parameters");
    cmd->add_option("--lambda1", lambda1, "sigmoid slope for f1");
    cmd->add_option("--lambda2", lambda2, "sigmoid slope for f2");
    cmd->add_option("--lambda3", lambda3, "sigmoid slope for f3");
    cmd->add_option("--tau1", tau1, "sigmoid midpoint for f1");
    cmd->add_option("--tau2", tau2, "sigmoid midpoint for f2");
    cmd->add_option("--tau3", tau3, "sigmoid midpoint for f3");
    cmd->add_option("--tau-r", tau_r, "decision threshold on the score");
    cmd->add_option("--delta", delta, "borderline half-width");
    cmd->add_option("--rule-polarity", polarity,
                    "spontaneous-above (default) or read-above")
        ->check(CLI::IsMember({"spontaneous-above", "read-above"}));
  }

  ScoreParams resolve() const {
    ScoreParams p;
    if (!params_file.empty()) p = load_score_params(params_file, p);
    if (lambda1) p.lambda1 = *lambda1;
    if (lambda2) p.lambda2 = *lambda2;
    if (lambda3) p.lambda3 = *lambda3;
    if (tau1) p.tau1 = *tau1;
    if (tau2) p.tau2 = *tau2;
    if (tau3) p.tau3 = *tau3;
    if (tau_r) p.tau_r = *tau_r;
    if (delta) p.delta = *delta;
    if (!polarity.empty()) {
      p.polarity = *rule_polarity_from(polarity);
    }
    p.validate();
    return p;
  }
};

WordPolicy resolve_policy(const std::string& name) {
  auto policy = word_policy_from(name);
  if (!policy) throw ConfigError("unknown word policy '" + name + "'");
  return *policy;
}

void check_stride(double stride_ms) {
  if (!(stride_ms > 0.0))
    throw ConfigError("--stride-ms must be > 0, got " +
                      std::to_string(stride_ms));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError(path.string(), "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw FileError(path.string(), "write failure");
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    write_text(output_path, text);
  }
}

int cmd_features(const std::vector<std::string>& files, double stride_ms,
                 const std::string& policy_name, const std::string& output) {
  check_stride(stride_ms);
  WordPolicy policy = resolve_policy(policy_name);
  std::string csv = features_csv_header() + "\n";
  for (const std::string& file : files) {
    AlphabetStream stream = load_als(file, stride_ms);
    MeasuredFeatures m = measure(stream, policy);
    csv += features_csv_row(stream.id(), m, derive(m)) + "\n";
  }
  emit(csv, output);
  return kExitOk;
}

int cmd_classify(const std::vector<std::string>& files, double stride_ms,
                 const std::string& policy_name, const ScoreFlags& flags) {
  check_stride(stride_ms);
  WordPolicy policy = resolve_policy(policy_name);
  ScoreParams params = flags.resolve();
  for (const std::string& file : files) {
    AlphabetStream stream = load_als(file, stride_ms);
    Decision d = classify(derive(measure(stream, policy)), params);
    std::cout << stream.id() << '\t' << to_string(d.label) << '\t'
              << (d.score ? fmt_fixed(*d.score) : std::string{}) << '\n';
  }
  return kExitOk;
}

int cmd_evaluate(const std::string& manifest_path, double stride_ms,
                 const std::string& policy_name, double min_duration,
                 const ScoreFlags& flags, const std::string& json_out,
                 const std::string& csv_out, const std::string& scatter_out,
                 const std::string& histogram_out, std::size_t bins) {
  check_stride(stride_ms);
  EvalOptions options;
  options.stride_ms = stride_ms;
  options.policy = resolve_policy(policy_name);
  options.min_duration_s = min_duration;
  options.params = flags.resolve();
  options.base_dir = std::filesystem::path(manifest_path).parent_path();

  Manifest manifest = load_manifest(manifest_path);
  EvalReport report = evaluate(manifest, options);

  auto pct = [](const std::optional<double>& v) {
    return v ? fmt_fixed(*v * 100.0, 2) + "%" : std::string("n/a");
  };

  std::cout << "stride_ms: " << fmt_fixed(options.stride_ms, 1)
            << "  policy: " << to_string(options.policy)
            << "  tau_r: " << fmt_fixed(options.params.tau_r)
            << "  delta: " << fmt_fixed(options.params.delta)
            << "  polarity: " << to_string(options.params.polarity) << '\n';
  std::cout << "segments: " << report.segments.size()
            << "  discarded_below_min: " << report.discarded_below_min
            << "  parse_errors: " << report.errors.size()
            << "  undetermined: " << report.undetermined_total << '\n';
  const ConfusionCounts& c = report.confusion;
  std::cout << "confusion (truth->label): read->read " << c.read_as_read
            << ", spont->read " << c.spont_as_read << ", read->spont "
            << c.read_as_spont << ", spont->spont " << c.spont_as_spont
            << '\n';
  std::cout << "accuracy: " << pct(c.accuracy())
            << "  read_recall: " << pct(c.read_recall())
            << "  spontaneous_recall: " << pct(c.spontaneous_recall()) << '\n';
  BorderlineStats border = borderline_stats(report);
  std::cout << "borderline segments: " << border.segment_count
            << "  borderline accuracy: " << pct(border.confusion.accuracy())
            << '\n';
  for (const SegmentError& e : report.errors) {
    std::cerr << "error: " << e.id << ": " << e.message << '\n';
  }

  if (!json_out.empty()) write_text(json_out, report_json(report));
  if (!csv_out.empty()) write_text(csv_out, segments_csv(report));
  if (!scatter_out.empty()) write_text(scatter_out, scatter_csv(report));
  if (!histogram_out.empty())
    write_text(histogram_out, histogram_csv(report, bins));
  return kExitOk;
}

int cmd_synth(const std::string& out_dir, std::size_t n_read,
              std::size_t n_spont, double jitter, std::uint64_t seed,
              double stride_ms, double intra_fraction, GenProfile read_profile,
              GenProfile spont_profile) {
  check_stride(stride_ms);
  read_profile.stride_ms = stride_ms;
  spont_profile.stride_ms = stride_ms;
  read_profile.intra_word_inactive_fraction = intra_fraction;
  spont_profile.intra_word_inactive_fraction = intra_fraction;

  CorpusSpec spec;
  spec.n_read = n_read;
  spec.n_spont = n_spont;
  spec.read_profile = read_profile;
  spec.spont_profile = spont_profile;
  spec.jitter = jitter;
  spec.seed = seed;

  Manifest manifest = generate_corpus(spec, out_dir);
  std::cout << "wrote " << manifest.entries.size() << " streams and "
            << (std::filesystem::path(out_dir) / "manifest.csv").string()
            << '\n';
  return kExitOk;
}

int cmd_histogram(const std::string& report_path, std::size_t bins,
                  const std::string& output) {
  std::ifstream in(report_path, std::ios::binary);
  if (!in) throw FileError(report_path, "cannot open");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(report_path + ": " + e.what());
  }
  std::vector<double> scores;
  if (!j.contains("segments") || !j["segments"].is_array())
    throw FormatError(report_path + ": no segments array");
  for (const auto& seg : j["segments"]) {
    if (seg.contains("score") && seg["score"].is_number())
      scores.push_back(seg["score"].get<double>());
  }
  emit(histogram_csv(scores, bins), output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"read vs spontaneous speech classification over frame-aligned "
               "alphabet streams"};
  app.require_subcommand(1);

  double stride_ms = kDefaultStrideMs;
  std::string policy_name = "any";
  std::vector<std::string> files;
  std::string output;

  auto* features_cmd =
      app.add_subcommand("features", "extract per-stream feature rows as CSV");
  features_cmd->add_option("files", files, ".als input files")->required();
  features_cmd->add_option("--stride-ms", stride_ms,
                           "frame stride in ms (file headers override)");
  features_cmd->add_option("--policy", policy_name, "any or active-only")
      ->check(CLI::IsMember({"any", "active-only"}));
  features_cmd->add_option("-o,--output", output, "write CSV here (default stdout)");

  ScoreFlags classify_flags;
  auto* classify_cmd =
      app.add_subcommand("classify", "label each stream read/spontaneous");
  classify_cmd->add_option("files", files, ".als input files")->required();
  classify_cmd->add_option("--stride-ms", stride_ms,
                           "frame stride in ms (file headers override)");
  classify_cmd->add_option("--policy", policy_name, "any or active-only")
      ->check(CLI::IsMember({"any", "active-only"}));
  classify_flags.add_to(classify_cmd);

  ScoreFlags eval_flags;
  std::string manifest_path, json_out, csv_out, scatter_out, histogram_out;
  double min_duration = 2.0;
  std::size_t bins = 30;
  auto* eval_cmd =
      app.add_subcommand("evaluate", "batch-classify a manifest and report");
  eval_cmd->add_option("--manifest", manifest_path, "manifest CSV")->required();
  eval_cmd->add_option("--stride-ms", stride_ms,
                       "frame stride in ms (file headers override)");
  eval_cmd->add_option("--policy", policy_name, "any or active-only")
      ->check(CLI::IsMember({"any", "active-only"}));
  eval_cmd->add_option("--min-duration", min_duration,
                       "discard segments shorter than this many seconds");
  eval_cmd->add_option("--json", json_out, "write the full JSON report here");
  eval_cmd->add_option("--csv", csv_out, "write per-segment CSV here");
  eval_cmd->add_option("--scatter", scatter_out, "write f1,f2,f3,score CSV here");
  eval_cmd->add_option("--histogram", histogram_out, "write score histogram here");
  eval_cmd->add_option("--bins", bins, "histogram bin count");
  eval_flags.add_to(eval_cmd);

  std::string out_dir;
  std::size_t n_read = 50, n_spont = 50;
  double jitter = 0.1, intra_fraction = 0.7;
  std::uint64_t seed = 1;
  GenProfile read_profile = default_read_profile();
  GenProfile spont_profile = default_spontaneous_profile();
  auto* synth_cmd = app.add_subcommand(
      "synth", "generate a labeled synthetic corpus with known targets");
  synth_cmd->add_option("--out", out_dir, "output directory")->required();
  synth_cmd->add_option("--n-read", n_read, "number of read streams");
  synth_cmd->add_option("--n-spont", n_spont, "number of spontaneous streams");
  synth_cmd->add_option("--jitter", jitter, "relative target spread per stream");
  synth_cmd->add_option("--seed", seed, "master seed");
  synth_cmd->add_option("--stride-ms", stride_ms, "frame stride in ms");
  synth_cmd->add_option("--intra-fraction", intra_fraction,
                        "share of inactive frames placed inside words");
  synth_cmd->add_option("--read-wps", read_profile.wps, "read words/s target");
  synth_cmd->add_option("--read-awl", read_profile.active_awl,
                        "read active alphabets/word target");
  synth_cmd->add_option("--read-iaps", read_profile.inactive_aps,
                        "read inactive alphabets/s target");
  synth_cmd->add_option("--read-duration", read_profile.duration_s,
                        "read stream duration in s");
  synth_cmd->add_option("--spont-wps", spont_profile.wps,
                        "spontaneous words/s target");
  synth_cmd->add_option("--spont-awl", spont_profile.active_awl,
                        "spontaneous active alphabets/word target");
  synth_cmd->add_option("--spont-iaps", spont_profile.inactive_aps,
                        "spontaneous inactive alphabets/s target");
  synth_cmd->add_option("--spont-duration", spont_profile.duration_s,
                        "spontaneous stream duration in s");

  std::string report_path;
  auto* hist_cmd = app.add_subcommand(
      "histogram", "bin the scores of a JSON report over [0,3]");
  hist_cmd->add_option("--report", report_path, "JSON report from evaluate")
      ->required();
  hist_cmd->add_option("--bins", bins, "bin count");
  hist_cmd->add_option("-o,--output", output, "write CSV here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*features_cmd)
      return cmd_features(files, stride_ms, policy_name, output);
    if (*classify_cmd)
      return cmd_classify(files, stride_ms, policy_name, classify_flags);
    if (*eval_cmd)
      return cmd_evaluate(manifest_path, stride_ms, policy_name, min_duration,
                          eval_flags, json_out, csv_out, scatter_out,
                          histogram_out, bins);
    if (*synth_cmd)
      return cmd_synth(out_dir, n_read, n_spont, jitter, seed, stride_ms,
                       intra_fraction, read_profile, spont_profile);
    if (*hist_cmd) return cmd_histogram(report_path, bins, output);
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
