#include "readscore/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "readscore/errors.hpp"

namespace readscore {

namespace {

// Seeded generator with fully pinned-down sampling, so identical inputs give
// byte-identical streams regardless of the standard library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Failures before first success, success probability p in (0, 1].
  std::uint64_t geometric(double p) {
    if (p >= 1.0) return 0;
    double u = 1.0 - unit();  // (0, 1]
    return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 gen_;
};

// Largest-remainder split of `total` into quotas.size() integer parts.
std::vector<std::uint64_t> apportion(std::uint64_t total,
                                     std::span<const double> quotas) {
  std::size_t n = quotas.size();
  std::vector<std::uint64_t> parts(n, 0);
  std::vector<double> fractions(n, 0.0);
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double q = std::max(0.0, quotas[i]);
    auto base = static_cast<std::uint64_t>(std::floor(q));
    parts[i] = base;
    fractions[i] = q - std::floor(q);
    assigned += base;
  }
  // Floors can overshoot `total` by a frame or two when the quotas round up;
  // shave the largest parts first.
  while (assigned > total) {
    std::size_t biggest =
        std::max_element(parts.begin(), parts.end()) - parts.begin();
    --parts[biggest];
    --assigned;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fractions[a] > fractions[b];
  });
  std::size_t next = 0;
  while (assigned < total) {
    ++parts[order[next]];
    ++assigned;
    next = (next + 1) % n;
  }
  return parts;
}

}  // namespace

void GenProfile::validate() const {
  if (!(wps > 0.0) || !(active_awl > 0.0) || !(inactive_aps > 0.0))
    throw ConfigError("profile targets must be > 0");
  if (!(duration_s > 0.0)) throw ConfigError("duration_s must be > 0");
  if (!(stride_ms > 0.0)) throw ConfigError("stride_ms must be > 0");
  if (!(intra_word_inactive_fraction >= 0.0 &&
        intra_word_inactive_fraction <= 1.0))
    throw ConfigError("intra_word_inactive_fraction must lie in [0,1]");
  if (demand_per_s() > frame_budget_per_s())
    throw InfeasibleProfileError(
        "frame budget violated: wps*(active_awl+1)+inactive_aps = " +
        std::to_string(demand_per_s()) + " > " +
        std::to_string(frame_budget_per_s()) + " frames/s");
}

GenProfile default_read_profile() {
  GenProfile p;
  p.wps = 2.43;
  p.active_awl = 13.21;
  p.inactive_aps = 13.92;
  p.duration_s = 30.0;
  return p;
}

GenProfile default_spontaneous_profile() {
  GenProfile p;
  p.wps = 1.45;
  p.active_awl = 27.75;
  p.inactive_aps = 7.63;
  p.duration_s = 48.0;
  return p;
}

AlphabetStream generate(const GenProfile& profile, std::string id,
                        std::optional<std::string> speaker,
                        std::optional<SpeechClass> ground_truth) {
  profile.validate();

  const auto total_frames = static_cast<std::uint64_t>(
      std::llround(profile.duration_s * 1000.0 / profile.stride_ms));
  if (total_frames == 0) {
    return AlphabetStream({}, profile.stride_ms, std::move(id),
                          std::move(speaker), std::move(ground_truth));
  }
  const double actual_s =
      static_cast<double>(total_frames) * profile.stride_ms / 1000.0;

  const auto words = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::llround(profile.wps * actual_s)));
  if (total_frames < 2 * words)
    throw InfeasibleProfileError("not enough frames for " +
                                 std::to_string(words) + " words");

  // One separator per word is reserved up front; the rest of the frames are
  // split between actives, inactives and padding separators so the totals
  // come out exact.
  const std::uint64_t budget = total_frames - words;
  const double active_quota = profile.active_awl * static_cast<double>(words);
  const double inactive_quota = profile.inactive_aps * actual_s;
  if (active_quota + inactive_quota >
      static_cast<double>(budget) + 0.5)
    throw InfeasibleProfileError("frame budget violated after rounding");
  const double pad_quota = std::max(
      0.0, static_cast<double>(budget) - active_quota - inactive_quota);

  const double quotas[] = {active_quota, inactive_quota, pad_quota};
  auto parts = apportion(budget, quotas);
  std::uint64_t actives = parts[0];
  std::uint64_t inactives = parts[1];
  std::uint64_t padding = parts[2];
  if (actives < words) {
    std::uint64_t need = words - actives;
    if (padding < need)
      throw InfeasibleProfileError("cannot give every word an active frame");
    padding -= need;
    actives = words;
  }

  Rng rng(profile.seed);

  // Word active lengths: 1 + geometric-ish weights rescaled so the total is
  // exactly `actives`.
  std::vector<std::uint64_t> active_len(words, 1);
  const std::uint64_t extra_active = actives - words;
  if (extra_active > 0) {
    const double mean = static_cast<double>(actives) / static_cast<double>(words);
    std::vector<double> weights(words);
    double weight_sum = 0.0;
    for (auto& w : weights) {
      w = static_cast<double>(rng.geometric(1.0 / mean));
      weight_sum += w;
    }
    std::vector<double> quotas_w(words, 0.0);
    if (weight_sum <= 0.0) {
      std::fill(quotas_w.begin(), quotas_w.end(),
                static_cast<double>(extra_active) / static_cast<double>(words));
    } else {
      for (std::size_t i = 0; i < words; ++i)
        quotas_w[i] =
            weights[i] * static_cast<double>(extra_active) / weight_sum;
    }
    auto extras = apportion(extra_active, quotas_w);
    for (std::size_t i = 0; i < words; ++i) active_len[i] += extras[i];
  }

  // Inactive frames: a fraction goes between a word's active symbols, the
  // rest leads the word at its boundary.
  const auto intra_total = static_cast<std::uint64_t>(std::llround(
      profile.intra_word_inactive_fraction * static_cast<double>(inactives)));
  std::vector<std::uint64_t> intra(words, 0), boundary(words, 0),
      extra_seps(words, 0);
  for (std::uint64_t k = 0; k < intra_total; ++k) ++intra[rng.below(words)];
  for (std::uint64_t k = 0; k < inactives - intra_total; ++k)
    ++boundary[rng.below(words)];
  for (std::uint64_t k = 0; k < padding; ++k) ++extra_seps[rng.below(words)];

  std::string symbols;
  symbols.reserve(total_frames);
  std::vector<char> word;
  for (std::size_t i = 0; i < words; ++i) {
    symbols.append(boundary[i], kUnknownCode);
    word.clear();
    for (std::uint64_t j = 0; j < active_len[i]; ++j) {
      bool apostrophe = j > 0 && rng.below(50) == 0;
      word.push_back(apostrophe ? kApostropheCode
                                : static_cast<char>('a' + rng.below(26)));
    }
    for (std::uint64_t j = 0; j < intra[i]; ++j) {
      std::size_t pos = 1 + static_cast<std::size_t>(rng.below(word.size()));
      word.insert(word.begin() + static_cast<std::ptrdiff_t>(pos),
                  kUnknownCode);
    }
    symbols.append(word.begin(), word.end());
    symbols.push_back(kSeparatorCode);
    symbols.append(extra_seps[i], kSeparatorCode);
  }

  return AlphabetStream(std::move(symbols), profile.stride_ms, std::move(id),
                        std::move(speaker), std::move(ground_truth));
}

namespace {

// Draws a jittered copy of `base`, redrawing until the targets fit the frame
// budget with half a frame per second to spare for integer rounding. A jitter
// box can poke outside the feasible region even when the base profile is
// inside it; redrawing keeps every emitted stream honest about its targets.
GenProfile jittered(const GenProfile& base, double jitter, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    auto spread = [&](double v) {
      return v * (1.0 + jitter * (2.0 * rng.unit() - 1.0));
    };
    GenProfile p = base;
    p.wps = spread(p.wps);
    p.active_awl = spread(p.active_awl);
    p.inactive_aps = spread(p.inactive_aps);
    if (p.demand_per_s() <= p.frame_budget_per_s() - 0.5) return p;
  }
  throw InfeasibleProfileError(
      "could not draw feasible targets under jitter; base profile demand " +
      std::to_string(base.demand_per_s()) + " of " +
      std::to_string(base.frame_budget_per_s()) + " frames/s");
}

std::string indexed_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%04zu", prefix, i);
  return buf;
}

}  // namespace

Manifest generate_corpus(const CorpusSpec& spec,
                         const std::filesystem::path& out_dir) {
  if (!(spec.jitter >= 0.0 && spec.jitter < 1.0))
    throw ConfigError("jitter must lie in [0,1)");
  if (spec.n_read > 0) spec.read_profile.validate();
  if (spec.n_spont > 0) spec.spont_profile.validate();

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw FileError(out_dir.string(), "cannot create: " + ec.message());

  const std::size_t total = spec.n_read + spec.n_spont;
  const std::size_t speakers = std::max<std::size_t>(1, (total + 7) / 8);

  Rng master(spec.seed);
  Manifest manifest;
  auto emit = [&](SpeechClass cls, const GenProfile& base, std::size_t i) {
    GenProfile p = jittered(base, spec.jitter, master);
    p.seed = master.next();
    std::string id = indexed_id(cls == SpeechClass::Read ? "read" : "spont", i);
    std::string speaker = indexed_id("spk", manifest.entries.size() % speakers);
    AlphabetStream stream = generate(p, id, speaker, cls);
    std::string filename = id + ".als";
    save_als(stream, out_dir / filename);
    manifest.entries.push_back({filename, id, speaker, cls});
  };

  for (std::size_t i = 0; i < spec.n_read; ++i)
    emit(SpeechClass::Read, spec.read_profile, i);
  for (std::size_t i = 0; i < spec.n_spont; ++i)
    emit(SpeechClass::Spontaneous, spec.spont_profile, i);

  save_manifest(manifest, out_dir / "manifest.csv");
  return manifest;
}

}  // namespace readscore
