#include "forktail/engine.hpp"

#include <utility>

#include "forktail/errors.hpp"
#include "forktail/tweet_search.hpp"

namespace forktail {

Engine::Engine(Index index, std::optional<Index> sentences, Pipeline pipeline,
               EngineConfig config)
    : index_(std::move(index)),
      sentences_(std::move(sentences)),
      pipeline_(std::move(pipeline)),
      config_(std::move(config)) {
    if (!index_.frozen()) {
        throw std::logic_error("engine requires a frozen index");
    }
}

QueryOutcome Engine::run(const std::string& query, int64_t now,
                         std::optional<size_t> k_override) const {
    const QueryRecord record = query_scanner(query, pipeline_, config_.dispatch);
    const size_t k = k_override.value_or(config_.k_results);

    QueryOutcome outcome;
    outcome.requested_path = record.path;
    outcome.executed_path = record.path;

    if (record.path == QueryPath::Tweet && !index_.has_kind(ItemKind::Tweet)) {
        if (index_.has_kind(ItemKind::Document)) {
            outcome.executed_path = QueryPath::Slrs;
            outcome.warnings.push_back(
                "index has no tweets; running sentence-level retrieval instead");
        }
    } else if (record.path == QueryPath::Slrs &&
               !index_.has_kind(ItemKind::Document)) {
        if (index_.has_kind(ItemKind::Tweet)) {
            outcome.executed_path = QueryPath::Tweet;
            outcome.warnings.push_back(
                "index has no documents; running tweet retrieval instead");
        }
    }

    if (!index_.has_kind(ItemKind::Tweet) && !index_.has_kind(ItemKind::Document)) {
        outcome.warnings.push_back("index has no searchable items");
        return outcome;
    }

    if (outcome.executed_path == QueryPath::Tweet) {
        RankedTweets ranked =
            rank_tweet_stems(index_, record.stems, k, config_.tweet_config(), now);
        outcome.warnings.insert(outcome.warnings.end(), ranked.warnings.begin(),
                                ranked.warnings.end());
        for (const TweetScore& score : ranked.results) {
            const ItemMetadata& meta = index_.metadata(score.item_id);
            outcome.results.push_back({meta.external_id, score.total, meta.text});
        }
    } else {
        SlrsOutcome slrs = slrs_search_stems(index_, sentences(), record.stems, k,
                                             config_.expansion, config_.weighting);
        outcome.warnings.insert(outcome.warnings.end(), slrs.warnings.begin(),
                                slrs.warnings.end());
        outcome.expansion = std::move(slrs.expansion);
        for (const SlrsResult& result : slrs.results) {
            const ItemMetadata& meta = index_.metadata(result.item_id);
            outcome.results.push_back(
                {meta.external_id, result.score,
                 meta.title.empty() ? meta.text : meta.title});
        }
    }
    return outcome;
}

} // namespace forktail
