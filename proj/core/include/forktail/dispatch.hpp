#pragma once

#include <string>
#include <vector>

#include "forktail/text_pipeline.hpp"

namespace forktail {

enum class QueryPath { Tweet, Slrs };

std::string_view to_string(QueryPath path);

/// Routing threshold in content stems. By default a query of up to three
/// stems counts as tweet-length; strict_less restores a strict
/// "shorter than" comparison.
struct DispatchConfig {
    uint32_t tweet_length_threshold = 3;
    bool strict_less = false;
};

/// A scanned query: its surviving stems and the retrieval path chosen
/// from their count.
struct QueryRecord {
    std::string raw;
    std::vector<std::string> stems;
    QueryPath path = QueryPath::Tweet;
};

/// Preprocesses the query and routes it: the tweet path when the stem
/// count is within the threshold, the sentence-level path otherwise.
/// Throws EmptyQueryError when no stem survives, ConfigError when the
/// threshold is zero.
QueryRecord query_scanner(const std::string& query, const Pipeline& pipeline,
                          const DispatchConfig& config);

} // namespace forktail
