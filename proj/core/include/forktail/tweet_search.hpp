#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "forktail/index.hpp"
#include "forktail/weighting.hpp"

namespace forktail {

/// Mixing coefficients of the composite tweet rank (term weight, recency,
/// popularity). Normalized to sum to 1 on construction.
struct RankWeights {
    double term = 0.6;
    double time = 0.25;
    double pop = 0.15;

    /// Throws ConfigError when all three inputs are zero or any is
    /// negative.
    static RankWeights normalized(double term, double time, double pop);
};

/// Per-candidate score breakdown. term_component holds the raw similarity;
/// total mixes the min-max normalized similarity with the bounded recency
/// and popularity components.
struct TweetScore {
    uint32_t item_id = 0;
    double term_component = 0.0;
    double time_component = 0.0;
    double pop_component = 0.0;
    double total = 0.0;
};

struct TweetSearchConfig {
    WeightingConfig weighting;
    RankWeights weights;
    double half_life_seconds = 3600.0;
};

struct RankedTweets {
    std::vector<TweetScore> results;
    std::vector<std::string> warnings;
};

/// Half-life decay in (0,1]: 2^(-age/half_life). A timestamp ahead of
/// `now` clamps to 1 and sets *clock_skew when given.
double recency_weight(int64_t timestamp, int64_t now, double half_life_seconds,
                      bool* clock_skew = nullptr);

/// Log-damped engagement normalized by the candidate maximum:
/// ln(1+retweets+quotes+replies) / ln(1+candidate_max); 0 when
/// candidate_max is 0.
double popularity_weight(uint32_t retweets, uint32_t quotes, uint32_t replies,
                         uint64_t candidate_max);

/// Candidates are the union of the postings of the query stems (tweet-kind
/// items only), scored by the weighted mix and sorted by total descending,
/// then newer timestamp, then lower item id. At most k results.
/// Throws EmptyQueryError when the query preprocesses to nothing.
RankedTweets rank_tweets(const Index& index, const Pipeline& pipeline,
                         const std::string& query, size_t k,
                         const TweetSearchConfig& config, int64_t now);

/// Same, over already-preprocessed stems.
RankedTweets rank_tweet_stems(const Index& index,
                              std::span<const std::string> query_stems,
                              size_t k, const TweetSearchConfig& config,
                              int64_t now);

} // namespace forktail
