#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "forktail/dispatch.hpp"
#include "forktail/sentence_expansion.hpp"
#include "forktail/tweet_search.hpp"
#include "forktail/weighting.hpp"

namespace forktail {

/// Every tunable of the engine in one place, parsed from `key = value`
/// lines. Unknown keys and out-of-range values are ConfigErrors.
struct EngineConfig {
    WeightingConfig weighting;
    RankWeights rank_weights;
    double half_life_seconds = 3600.0;
    ExpansionConfig expansion;
    DispatchConfig dispatch;
    std::optional<std::filesystem::path> stopwords_file;
    size_t k_results = 10;

    TweetSearchConfig tweet_config() const {
        return TweetSearchConfig{weighting, rank_weights, half_life_seconds};
    }
};

/// Parses `key = value` lines. '#' starts a comment, blank lines are
/// skipped. Recognized keys: idf_variant, norm_variant, slope, pivot
/// (number or "auto"), pivot_stat, half_life_seconds, rank_weights (three
/// reals, renormalized), expansion_model, mu, n_feedback, k_expansion,
/// lambda, proximity_window, feedback_granularity, tweet_length_threshold,
/// dispatch_strict, stopwords_file, k_results.
EngineConfig parse_config(std::string_view text);

EngineConfig load_config(const std::filesystem::path& path);

/// Deterministic `key = value` rendering of every recognized key;
/// parse_config(render_config(c)) reproduces c (pivot "auto" included).
std::string render_config(const EngineConfig& config);

} // namespace forktail
