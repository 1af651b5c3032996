#include "forktail/dispatch.hpp"

#include "forktail/errors.hpp"

namespace forktail {

std::string_view to_string(QueryPath path) {
    switch (path) {
    case QueryPath::Tweet: return "tweet";
    case QueryPath::Slrs: return "slrs";
    }
    return "tweet";
}

QueryRecord query_scanner(const std::string& query, const Pipeline& pipeline,
                          const DispatchConfig& config) {
    if (config.tweet_length_threshold == 0) {
        throw ConfigError("tweet_length_threshold must be at least 1");
    }
    QueryRecord record;
    record.raw = query;
    record.stems = pipeline.stems(query);
    if (record.stems.empty()) {
        throw EmptyQueryError("query has no terms after preprocessing");
    }
    const size_t length = record.stems.size();
    const size_t threshold = config.tweet_length_threshold;
    const bool tweet = config.strict_less ? length < threshold : length <= threshold;
    record.path = tweet ? QueryPath::Tweet : QueryPath::Slrs;
    return record;
}

} // namespace forktail
