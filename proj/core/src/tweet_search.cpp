#include "forktail/tweet_search.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "forktail/errors.hpp"
#include "forktail/text_pipeline.hpp"

namespace forktail {

RankWeights RankWeights::normalized(double term, double time, double pop) {
    if (term < 0.0 || time < 0.0 || pop < 0.0) {
        throw ConfigError("rank weights must be non-negative");
    }
    const double sum = term + time + pop;
    if (sum <= 0.0) {
        throw ConfigError("rank weights must not all be zero");
    }
    RankWeights w;
    w.term = term / sum;
    w.time = time / sum;
    w.pop = pop / sum;
    return w;
}

double recency_weight(int64_t timestamp, int64_t now, double half_life_seconds,
                      bool* clock_skew) {
    if (half_life_seconds <= 0.0) {
        throw ConfigError("half_life_seconds must be positive");
    }
    if (timestamp > now) {
        if (clock_skew != nullptr) {
            *clock_skew = true;
        }
        return 1.0;
    }
    const double age = static_cast<double>(now - timestamp);
    return std::exp2(-age / half_life_seconds);
}

double popularity_weight(uint32_t retweets, uint32_t quotes, uint32_t replies,
                         uint64_t candidate_max) {
    if (candidate_max == 0) {
        return 0.0;
    }
    const uint64_t engagement = static_cast<uint64_t>(retweets) + quotes + replies;
    return std::log1p(static_cast<double>(engagement)) /
           std::log1p(static_cast<double>(candidate_max));
}

RankedTweets rank_tweet_stems(const Index& index,
                              std::span<const std::string> query_stems,
                              size_t k, const TweetSearchConfig& config,
                              int64_t now) {
    if (query_stems.empty()) {
        throw EmptyQueryError("query has no terms after preprocessing");
    }

    std::vector<std::string> stems(query_stems.begin(), query_stems.end());
    std::sort(stems.begin(), stems.end());
    stems.erase(std::unique(stems.begin(), stems.end()), stems.end());

    std::set<uint32_t> candidate_set;
    for (const auto& stem : stems) {
        for (const auto& posting : index.postings(stem)) {
            if (index.kind(posting.item_id) == ItemKind::Tweet) {
                candidate_set.insert(posting.item_id);
            }
        }
    }

    RankedTweets out;
    if (candidate_set.empty()) {
        return out;
    }

    std::vector<uint32_t> candidates(candidate_set.begin(), candidate_set.end());

    Scorer scorer(index, config.weighting);
    std::vector<double> sims(candidates.size(), 0.0);
    uint64_t max_engagement = 0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        sims[i] = scorer.similarity(stems, candidates[i]);
        const auto& meta = index.metadata(candidates[i]);
        const uint64_t engagement = static_cast<uint64_t>(meta.retweets) +
                                    meta.quotes + meta.replies;
        max_engagement = std::max(max_engagement, engagement);
    }

    const auto [min_it, max_it] = std::minmax_element(sims.begin(), sims.end());
    const double sim_min = *min_it;
    const double sim_max = *max_it;
    const double sim_range = sim_max - sim_min;

    bool clock_skew = false;
    out.results.reserve(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i) {
        const uint32_t id = candidates[i];
        const auto& meta = index.metadata(id);
        TweetScore score;
        score.item_id = id;
        score.term_component = sims[i];
        score.time_component =
            recency_weight(meta.timestamp, now, config.half_life_seconds, &clock_skew);
        score.pop_component = popularity_weight(meta.retweets, meta.quotes,
                                                meta.replies, max_engagement);
        double sim_norm;
        if (sim_range > 0.0) {
            sim_norm = (sims[i] - sim_min) / sim_range;
        } else {
            sim_norm = sim_max > 0.0 ? 1.0 : 0.0;
        }
        score.total = config.weights.term * sim_norm +
                      config.weights.time * score.time_component +
                      config.weights.pop * score.pop_component;
        out.results.push_back(score);
    }

    if (clock_skew) {
        out.warnings.push_back(
            "tweet timestamp ahead of query time; recency clamped to 1");
    }

    std::sort(out.results.begin(), out.results.end(),
              [&index](const TweetScore& a, const TweetScore& b) {
                  if (a.total != b.total) {
                      return a.total > b.total;
                  }
                  const int64_t ta = index.metadata(a.item_id).timestamp;
                  const int64_t tb = index.metadata(b.item_id).timestamp;
                  if (ta != tb) {
                      return ta > tb;
                  }
                  return a.item_id < b.item_id;
              });
    if (out.results.size() > k) {
        out.results.resize(k);
    }
    return out;
}

RankedTweets rank_tweets(const Index& index, const Pipeline& pipeline,
                         const std::string& query, size_t k,
                         const TweetSearchConfig& config, int64_t now) {
    const std::vector<std::string> stems = pipeline.stems(query);
    return rank_tweet_stems(index, stems, k, config, now);
}

} // namespace forktail
