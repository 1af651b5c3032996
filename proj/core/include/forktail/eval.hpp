#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forktail/engine.hpp"

namespace forktail {

/// Relevant item external ids for one query text.
struct JudgmentSet {
    std::string query;
    std::vector<std::string> relevant;
};

/// One JSON object per line: {"query": ..., "relevant": [ids...]}.
/// Malformed lines and duplicate queries are DataErrors.
std::vector<JudgmentSet> parse_judgments(std::string_view text);
std::vector<JudgmentSet> load_judgments(const std::filesystem::path& path);

/// Plain text, one query per line; '#' comments and blank lines skipped.
std::vector<std::string> parse_queries(std::string_view text);
std::vector<std::string> load_queries(const std::filesystem::path& path);

struct QueryMetrics {
    std::string query;
    QueryPath path = QueryPath::Tweet;
    size_t retrieved = 0;
    double p_at_1 = 0.0;
    double p_at_5 = 0.0;
    double p_at_10 = 0.0;
    double reciprocal_rank = 0.0;
};

struct EvalReport {
    std::vector<QueryMetrics> per_query;

    /// Fixed-precision tab-separated table: one row per query followed by
    /// macro rows (all queries, then per executed path). Byte-identical
    /// across runs with the same corpus, config and clock.
    std::string render() const;
};

/// Runs the battery at the fixed clock and scores the top 10 of each
/// ranking: precision at 1, 5 and 10 (divided by the full cutoff even
/// when fewer items return) and reciprocal rank. Every query must have a
/// judgment and every judged id must exist in the index; violations are
/// DataErrors.
EvalReport evaluate(const Engine& engine, std::span<const std::string> queries,
                    std::span<const JudgmentSet> judgments, int64_t now);

} // namespace forktail
