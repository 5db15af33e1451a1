#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "readscore/features.hpp"

namespace readscore {

/// Which class sits above the score threshold. With the default parameters
/// the three-sigmoid score comes out higher for spontaneous speech (see
/// README for the arithmetic), so SpontaneousAboveThreshold is the default;
/// ReadAboveThreshold is the inverted reading.
enum class RulePolarity { SpontaneousAboveThreshold, ReadAboveThreshold };

std::string_view to_string(RulePolarity p);
std::optional<RulePolarity> rule_polarity_from(std::string_view s);

struct ScoreParams {
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  double lambda3 = 1.0;
  double tau1 = 6.0;
  double tau2 = 10.0;
  double tau3 = 1.75;
  double tau_r = 1.75;   // decision threshold on the score
  double delta = 0.05;   // half-width of the borderline band
  RulePolarity polarity = RulePolarity::SpontaneousAboveThreshold;

  /// Throws ConfigError unless lambdas > 0, delta >= 0 and 0 <= tau_r <= 3.
  void validate() const;

  bool operator==(const ScoreParams&) const = default;
};

enum class Label { Read, Spontaneous, Undetermined };

std::string_view to_string(Label l);

struct Decision {
  std::optional<double> score;  // empty iff label == Undetermined
  Label label = Label::Undetermined;
  bool borderline = false;  // |score - tau_r| <= delta

  bool operator==(const Decision&) const = default;
};

/// Numerically stable 1/(1+e^-z); saturates to exactly 0.0/1.0, never NaN.
double logistic(double z);

/// Three-sigmoid score over (f1, f2, f3), strictly inside (0,3) short of
/// saturation: rises with f1 and f3, falls with f2. Throws
/// NonFiniteInputError on NaN/infinite features.
double read_score(double f1, double f2, double f3, const ScoreParams& p);

/// Thresholded decision. Any undefined classifier input yields Undetermined
/// with no score and borderline = false.
Decision classify(const DerivedFeatures& f, const ScoreParams& p);

// Flat key=value form ("lambda1=1", "rule_polarity=spontaneous-above", ...).
// Unknown keys are errors; omitted keys keep the value from `base`.
ScoreParams parse_score_params(std::string_view text,
                               const ScoreParams& base = {});
ScoreParams load_score_params(const std::filesystem::path& path,
                              const ScoreParams& base = {});
std::string serialize_score_params(const ScoreParams& p);

}  // namespace readscore
