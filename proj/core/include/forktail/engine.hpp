#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forktail/config.hpp"
#include "forktail/dispatch.hpp"
#include "forktail/index.hpp"
#include "forktail/sentence_expansion.hpp"
#include "forktail/text_pipeline.hpp"

namespace forktail {

/// One row of ranked output: the item's external id, its score under the
/// executed path, and a display string (tweet text or document title).
struct RankedLine {
    std::string external_id;
    double score = 0.0;
    std::string display;
};

struct QueryOutcome {
    QueryPath requested_path = QueryPath::Tweet;
    QueryPath executed_path = QueryPath::Tweet;
    std::vector<RankedLine> results;
    ExpandedQuery expansion;
    std::vector<std::string> warnings;
};

/// A frozen index plus its optional sentence repository, pipeline and
/// config, answering queries end to end: scan, dispatch, rank. Falls back
/// to the other path with a warning when the index lacks the items the
/// chosen path needs.
class Engine {
public:
    Engine(Index index, std::optional<Index> sentences, Pipeline pipeline,
           EngineConfig config);

    /// Runs one query at the given clock. k_override widens or narrows
    /// the result cut without touching the config.
    QueryOutcome run(const std::string& query, int64_t now,
                     std::optional<size_t> k_override = std::nullopt) const;

    const Index& index() const { return index_; }
    const Index* sentences() const {
        return sentences_.has_value() ? &*sentences_ : nullptr;
    }
    const Pipeline& pipeline() const { return pipeline_; }
    const EngineConfig& config() const { return config_; }

private:
    Index index_;
    std::optional<Index> sentences_;
    Pipeline pipeline_;
    EngineConfig config_;
};

} // namespace forktail
