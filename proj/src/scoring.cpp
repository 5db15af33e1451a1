#include "readscore/scoring.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "readscore/errors.hpp"
#include "readscore/textio.hpp"

namespace readscore {

std::string_view to_string(RulePolarity p) {
  return p == RulePolarity::SpontaneousAboveThreshold ? "spontaneous-above"
                                                      : "read-above";
}

std::optional<RulePolarity> rule_polarity_from(std::string_view s) {
  if (s == "spontaneous-above") return RulePolarity::SpontaneousAboveThreshold;
  if (s == "read-above") return RulePolarity::ReadAboveThreshold;
  return std::nullopt;
}

std::string_view to_string(Label l) {
  switch (l) {
    case Label::Read:
      return "read";
    case Label::Spontaneous:
      return "spontaneous";
    default:
      return "undetermined";
  }
}

void ScoreParams::validate() const {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !(lambda3 > 0.0))
    throw ConfigError("lambda1..3 must be > 0");
  if (!(delta >= 0.0)) throw ConfigError("delta must be >= 0");
  if (!(tau_r >= 0.0 && tau_r <= 3.0))
    throw ConfigError("tau_r must lie in [0,3]");
  if (!std::isfinite(tau1) || !std::isfinite(tau2) || !std::isfinite(tau3))
    throw ConfigError("tau1..3 must be finite");
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double read_score(double f1, double f2, double f3, const ScoreParams& p) {
  if (!std::isfinite(f1) || !std::isfinite(f2) || !std::isfinite(f3))
    throw NonFiniteInputError("score inputs must be finite");
  return logistic(p.lambda1 * (f1 - p.tau1)) +
         logistic(-p.lambda2 * (f2 - p.tau2)) +
         logistic(p.lambda3 * (f3 - p.tau3));
}

Decision classify(const DerivedFeatures& f, const ScoreParams& p) {
  if (!f.complete()) return {std::nullopt, Label::Undetermined, false};
  double score = read_score(*f.f1(), *f.f2(), *f.f3(), p);
  bool above = score >= p.tau_r;
  Label label;
  if (p.polarity == RulePolarity::SpontaneousAboveThreshold) {
    label = above ? Label::Spontaneous : Label::Read;
  } else {
    label = above ? Label::Read : Label::Spontaneous;
  }
  bool borderline = std::fabs(score - p.tau_r) <= p.delta;
  return {score, label, borderline};
}

namespace {

double parse_double(std::string_view key, std::string_view value) {
  double parsed = 0.0;
  auto [end, ec] =
      std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || end != value.data() + value.size()) {
    throw FormatError("bad value for " + std::string(key) + ": '" +
                      std::string(value) + "'");
  }
  return parsed;
}

}  // namespace

ScoreParams parse_score_params(std::string_view text, const ScoreParams& base) {
  ScoreParams p = base;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t eol = text.find('\n', start);
    std::string_view raw =
        text.substr(start, eol == std::string_view::npos ? text.size() - start
                                                         : eol - start);
    start = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw FormatError("line " + std::to_string(line_no) +
                        ": expected key=value, got '" + std::string(line) + "'");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));

    if (key == "lambda1") {
      p.lambda1 = parse_double(key, value);
    } else if (key == "lambda2") {
      p.lambda2 = parse_double(key, value);
    } else if (key == "lambda3") {
      p.lambda3 = parse_double(key, value);
    } else if (key == "tau1") {
      p.tau1 = parse_double(key, value);
    } else if (key == "tau2") {
      p.tau2 = parse_double(key, value);
    } else if (key == "tau3") {
      p.tau3 = parse_double(key, value);
    } else if (key == "tau_r") {
      p.tau_r = parse_double(key, value);
    } else if (key == "delta") {
      p.delta = parse_double(key, value);
    } else if (key == "rule_polarity") {
      auto polarity = rule_polarity_from(value);
      if (!polarity)
        throw FormatError("bad rule_polarity '" + std::string(value) + "'");
      p.polarity = *polarity;
    } else {
      throw FormatError("unknown key '" + std::string(key) + "'");
    }
  }
  p.validate();
  return p;
}

ScoreParams load_score_params(const std::filesystem::path& path,
                              const ScoreParams& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(path.string(), "cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_score_params(buf.str(), base);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string serialize_score_params(const ScoreParams& p) {
  auto shortest = [](double v) {
    char buf[32];
    auto [end, _] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
  };
  std::string out;
  out += "lambda1=" + shortest(p.lambda1) + '\n';
  out += "lambda2=" + shortest(p.lambda2) + '\n';
  out += "lambda3=" + shortest(p.lambda3) + '\n';
  out += "tau1=" + shortest(p.tau1) + '\n';
  out += "tau2=" + shortest(p.tau2) + '\n';
  out += "tau3=" + shortest(p.tau3) + '\n';
  out += "tau_r=" + shortest(p.tau_r) + '\n';
  out += "delta=" + shortest(p.delta) + '\n';
  out += "rule_polarity=" + std::string(to_string(p.polarity)) + '\n';
  return out;
}

}  // namespace readscore
