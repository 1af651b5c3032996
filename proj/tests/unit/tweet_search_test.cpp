#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "forktail/errors.hpp"
#include "forktail/tweet_search.hpp"
#include "oracles.hpp"

using namespace forktail;

namespace {

constexpr int64_t kNow = 1'700'000'000;

std::optional<size_t> position_of(const RankedTweets& ranked, uint32_t item_id) {
    for (size_t i = 0; i < ranked.results.size(); ++i) {
        if (ranked.results[i].item_id == item_id) {
            return i;
        }
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("recency decays by powers of two over the half life") {
    CHECK(recency_weight(kNow, kNow, 3600.0) == 1.0);
    CHECK(recency_weight(kNow - 3600, kNow, 3600.0) == 0.5);
    CHECK(recency_weight(kNow - 7200, kNow, 3600.0) == 0.25);
    CHECK(recency_weight(kNow - 1800, kNow, 3600.0) ==
          doctest::Approx(std::exp2(-0.5)));
    CHECK(recency_weight(kNow - 10 * 3600, kNow, 3600.0) ==
          doctest::Approx(std::exp2(-10.0)));
}

TEST_CASE("future timestamps clamp to full recency and flag skew") {
    bool skew = false;
    CHECK(recency_weight(kNow + 500, kNow, 3600.0, &skew) == 1.0);
    CHECK(skew);
    skew = false;
    CHECK(recency_weight(kNow, kNow, 3600.0, &skew) == 1.0);
    CHECK_FALSE(skew);
}

TEST_CASE("a non-positive half life is a configuration error") {
    CHECK_THROWS_AS(recency_weight(kNow, kNow, 0.0), ConfigError);
    CHECK_THROWS_AS(recency_weight(kNow, kNow, -5.0), ConfigError);
}

TEST_CASE("popularity is log-damped engagement against the candidate max") {
    CHECK(popularity_weight(1, 1, 1, 7) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(popularity_weight(1, 1, 1, 7) == doctest::Approx(0.666667).epsilon(1e-5));
    CHECK(popularity_weight(7, 0, 0, 7) == 1.0);
    CHECK(popularity_weight(0, 0, 0, 7) == 0.0);
    CHECK(popularity_weight(5, 5, 5, 0) == 0.0);
    CHECK(popularity_weight(2, 1, 0, 100) ==
          doctest::Approx(std::log(4.0) / std::log(101.0)));
}

TEST_CASE("rank weights normalize to unit sum") {
    const RankWeights defaults;
    CHECK(defaults.term + defaults.time + defaults.pop == doctest::Approx(1.0));
    CHECK(defaults.term == doctest::Approx(0.6));

    const RankWeights halves = RankWeights::normalized(2.0, 1.0, 1.0);
    CHECK(halves.term == doctest::Approx(0.5));
    CHECK(halves.time == doctest::Approx(0.25));
    CHECK(halves.pop == doctest::Approx(0.25));

    const RankWeights pure = RankWeights::normalized(3.0, 0.0, 0.0);
    CHECK(pure.term == doctest::Approx(1.0));
    CHECK(pure.time == 0.0);

    CHECK_THROWS_AS(RankWeights::normalized(0.0, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(RankWeights::normalized(-1.0, 1.0, 1.0), ConfigError);
}

TEST_CASE("an empty query cannot rank tweets") {
    const Index index = fixtures::index_from_tweets({{{"crash"}, kNow, 0, 0, 0}});
    Pipeline pipeline;
    CHECK_THROWS_AS(rank_tweets(index, pipeline, "the of an", 10, {}, kNow),
                    EmptyQueryError);
    CHECK_THROWS_AS(
        rank_tweet_stems(index, std::vector<std::string>{}, 10, {}, kNow),
        EmptyQueryError);
}

TEST_CASE("candidates are exactly the tweets sharing a query stem") {
    const Index index = fixtures::index_from_tweets({
        {{"crash", "market"}, kNow - 10, 0, 0, 0},
        {{"sunny", "weather"}, kNow - 10, 0, 0, 0},
        {{"market", "calm"}, kNow - 20, 0, 0, 0},
        {{"crash"}, kNow - 30, 0, 0, 0},
    });
    const auto ranked = rank_tweet_stems(
        index, std::vector<std::string>{"crash", "market"}, 10, {}, kNow);
    REQUIRE(ranked.results.size() == 3);
    CHECK_FALSE(position_of(ranked, 1).has_value());
    CHECK(position_of(ranked, 0).has_value());
    CHECK(position_of(ranked, 2).has_value());
    CHECK(position_of(ranked, 3).has_value());
}

TEST_CASE("pure term weights reproduce the similarity ordering") {
    const std::vector<fixtures::TweetSpec> tweets = {
        {{"crash", "noise", "noise", "noise"}, kNow - 900, 7, 0, 0},
        {{"crash", "crash"}, kNow - 5000, 0, 0, 0},
        {{"crash", "other"}, kNow - 10, 0, 0, 99},
        {{"noise"}, kNow - 40, 0, 0, 0},
    };
    const Index index = fixtures::index_from_tweets(tweets);
    TweetSearchConfig config;
    config.weights = RankWeights::normalized(1.0, 0.0, 0.0);
    const auto ranked = rank_tweet_stems(
        index, std::vector<std::string>{"crash"}, 10, config, kNow);

    const Scorer scorer(index, config.weighting);
    std::vector<std::pair<double, uint32_t>> expected;
    for (uint32_t id = 0; id < 3; ++id) {
        expected.emplace_back(
            scorer.similarity(std::vector<std::string>{"crash"}, id), id);
    }
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;
    });
    REQUIRE(ranked.results.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(ranked.results[i].item_id == expected[i].second);
        CHECK(ranked.results[i].term_component ==
              doctest::Approx(expected[i].first));
    }
}

TEST_CASE("pure time weights rank newest first") {
    const Index index = fixtures::index_from_tweets({
        {{"crash"}, kNow - 5000, 0, 0, 0},
        {{"crash"}, kNow - 10, 0, 0, 0},
        {{"crash"}, kNow - 900, 50, 0, 0},
    });
    TweetSearchConfig config;
    config.weights = RankWeights::normalized(0.0, 1.0, 0.0);
    const auto ranked =
        rank_tweet_stems(index, std::vector<std::string>{"crash"}, 10, config, kNow);
    REQUIRE(ranked.results.size() == 3);
    CHECK(ranked.results[0].item_id == 1);
    CHECK(ranked.results[1].item_id == 2);
    CHECK(ranked.results[2].item_id == 0);
}

TEST_CASE("pure popularity weights rank most engaged first") {
    const Index index = fixtures::index_from_tweets({
        {{"crash"}, kNow - 10, 1, 1, 1},
        {{"crash"}, kNow - 10, 100, 0, 0},
        {{"crash"}, kNow - 10, 0, 0, 0},
    });
    TweetSearchConfig config;
    config.weights = RankWeights::normalized(0.0, 0.0, 1.0);
    const auto ranked =
        rank_tweet_stems(index, std::vector<std::string>{"crash"}, 10, config, kNow);
    REQUIRE(ranked.results.size() == 3);
    CHECK(ranked.results[0].item_id == 1);
    CHECK(ranked.results[0].total == doctest::Approx(1.0));
    CHECK(ranked.results[1].item_id == 0);
    CHECK(ranked.results[2].item_id == 2);
    CHECK(ranked.results[2].pop_component == 0.0);
}

TEST_CASE("a five tweet fixture matches the score recomputation") {
    const std::vector<fixtures::TweetSpec> tweets = {
        {{"crash", "market", "panic"}, kNow - 100, 5, 0, 0},
        {{"crash", "crash", "sell"}, kNow - 3600, 0, 1, 1},
        {{"market", "calm"}, kNow - 7200, 10, 5, 5},
        {{"weather", "sunny"}, kNow - 10, 100, 0, 0},
        {{"crash"}, kNow + 50, 0, 0, 0},
    };
    const Index index = fixtures::index_from_tweets(tweets);
    oracle::Corpus corpus;
    std::vector<uint64_t> engagement;
    for (const auto& tweet : tweets) {
        corpus.push_back(tweet.stems);
        engagement.push_back(tweet.retweets + tweet.quotes + tweet.replies);
    }
    const std::vector<std::string> query = {"crash", "market"};
    const TweetSearchConfig config;
    const auto ranked = rank_tweet_stems(index, query, 10, config, kNow);

    const std::vector<uint32_t> candidates = {0, 1, 2, 4};
    uint64_t max_engagement = 0;
    double min_sim = 1e300;
    double max_sim = -1e300;
    oracle::WeightingParams params;
    for (uint32_t id : candidates) {
        max_engagement = std::max(max_engagement, engagement[id]);
        const double sim = oracle::similarity(corpus, query, id, params);
        min_sim = std::min(min_sim, sim);
        max_sim = std::max(max_sim, sim);
    }

    REQUIRE(ranked.results.size() == candidates.size());
    REQUIRE(ranked.warnings.size() == 1);
    CHECK(ranked.warnings[0].find("recency") != std::string::npos);

    for (const auto& score : ranked.results) {
        const uint32_t id = score.item_id;
        CHECK(std::find(candidates.begin(), candidates.end(), id) !=
              candidates.end());
        const double sim = oracle::similarity(corpus, query, id, params);
        const double normalized =
            max_sim > min_sim ? (sim - min_sim) / (max_sim - min_sim)
                              : (max_sim > 0.0 ? 1.0 : 0.0);
        const double time = oracle::recency(tweets[id].timestamp, kNow, 3600.0);
        const double pop = oracle::popularity(engagement[id], max_engagement);
        const double total = config.weights.term * normalized +
                             config.weights.time * time +
                             config.weights.pop * pop;
        CAPTURE(id);
        CHECK(score.term_component == doctest::Approx(sim).epsilon(1e-12));
        CHECK(score.time_component == doctest::Approx(time).epsilon(1e-12));
        CHECK(score.pop_component == doctest::Approx(pop).epsilon(1e-12));
        CHECK(score.total == doctest::Approx(total).epsilon(1e-9));
    }
    for (size_t i = 1; i < ranked.results.size(); ++i) {
        CHECK(ranked.results[i - 1].total >= ranked.results[i].total);
    }
}

TEST_CASE("equal similarities min-max to one when positive, zero when flat zero") {
    const Index equal = fixtures::index_from_tweets({
        {{"crash", "a"}, kNow - 10, 0, 0, 0},
        {{"crash", "b"}, kNow - 10, 0, 0, 0},
        {{"noise"}, kNow - 10, 0, 0, 0},
    });
    TweetSearchConfig term_only;
    term_only.weights = RankWeights::normalized(1.0, 0.0, 0.0);
    auto ranked =
        rank_tweet_stems(equal, std::vector<std::string>{"crash"}, 10, term_only, kNow);
    REQUIRE(ranked.results.size() == 2);
    for (const auto& score : ranked.results) {
        CHECK(score.total == doctest::Approx(1.0));
    }

    // Both tweets hold the term, so idf1 and similarity are zero everywhere.
    const Index zero = fixtures::index_from_tweets({
        {{"crash"}, kNow - 10, 0, 0, 0},
        {{"crash"}, kNow - 10, 0, 0, 0},
    });
    ranked =
        rank_tweet_stems(zero, std::vector<std::string>{"crash"}, 10, term_only, kNow);
    REQUIRE(ranked.results.size() == 2);
    for (const auto& score : ranked.results) {
        CHECK(score.term_component == 0.0);
        CHECK(score.total == 0.0);
    }
}

TEST_CASE("ties break to the newer tweet, then the lower id") {
    const Index index = fixtures::index_from_tweets({
        {{"crash"}, kNow - 500, 0, 0, 0},
        {{"crash"}, kNow - 100, 0, 0, 0},
        {{"crash"}, kNow - 100, 0, 0, 0},
    });
    TweetSearchConfig config;
    config.weights = RankWeights::normalized(1.0, 0.0, 0.0);
    const auto ranked =
        rank_tweet_stems(index, std::vector<std::string>{"crash"}, 10, config, kNow);
    REQUIRE(ranked.results.size() == 3);
    CHECK(ranked.results[0].item_id == 1);
    CHECK(ranked.results[1].item_id == 2);
    CHECK(ranked.results[2].item_id == 0);
}

TEST_CASE("k bounds the result list") {
    const Index index = fixtures::index_from_tweets({
        {{"crash"}, kNow - 1, 0, 0, 0},
        {{"crash"}, kNow - 2, 0, 0, 0},
        {{"crash"}, kNow - 3, 0, 0, 0},
    });
    CHECK(rank_tweet_stems(index, std::vector<std::string>{"crash"}, 2, {}, kNow)
              .results.size() == 2);
    CHECK(rank_tweet_stems(index, std::vector<std::string>{"crash"}, 0, {}, kNow)
              .results.empty());
}

TEST_CASE("raising engagement never worsens a tweet's position") {
    std::mt19937 rng(99);
    const std::vector<std::string> vocab = {"crash", "market", "panic", "sell",
                                            "calm", "noise"};
    std::uniform_int_distribution<size_t> word(0, vocab.size() - 1);
    std::uniform_int_distribution<size_t> len(1, 5);
    std::uniform_int_distribution<int64_t> age(0, 5000);
    std::uniform_int_distribution<uint32_t> eng(0, 40);

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<fixtures::TweetSpec> tweets(8);
        for (auto& tweet : tweets) {
            const size_t n = len(rng);
            for (size_t i = 0; i < n; ++i) {
                tweet.stems.push_back(vocab[word(rng)]);
            }
            tweet.timestamp = kNow - age(rng);
            tweet.retweets = eng(rng);
        }
        const std::vector<std::string> query = {vocab[word(rng)], vocab[word(rng)]};
        const Index before = fixtures::index_from_tweets(tweets);
        const auto base = rank_tweet_stems(before, query, 10, {}, kNow);
        if (base.results.empty()) {
            continue;
        }
        const uint32_t target = base.results[base.results.size() / 2].item_id;
        auto boosted = tweets;
        boosted[target].retweets += 500;
        const Index after = fixtures::index_from_tweets(boosted);
        const auto bumped = rank_tweet_stems(after, query, 10, {}, kNow);
        const auto old_pos = position_of(base, target);
        const auto new_pos = position_of(bumped, target);
        REQUIRE(old_pos.has_value());
        REQUIRE(new_pos.has_value());
        CHECK(*new_pos <= *old_pos);
    }
}

TEST_CASE("full text queries run through the pipeline") {
    const Index index = fixtures::index_from_tweets({
        {{"crash", "market"}, kNow - 10, 0, 0, 0},
        {{"calm"}, kNow - 10, 0, 0, 0},
    });
    Pipeline pipeline;
    const auto ranked =
        rank_tweets(index, pipeline, "The market CRASHED!", 10, {}, kNow);
    REQUIRE(ranked.results.size() == 1);
    CHECK(ranked.results[0].item_id == 0);
}
