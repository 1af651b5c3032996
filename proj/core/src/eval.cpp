#include "forktail/eval.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "forktail/errors.hpp"

namespace forktail {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path, std::string_view what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + std::string(what) + " file: " +
                        path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> lines_of(std::string_view text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        const size_t newline = text.find('\n', start);
        std::string_view line = newline == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, newline - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.emplace_back(line);
        if (newline == std::string_view::npos) {
            break;
        }
        start = newline + 1;
    }
    return lines;
}

void append_macro_row(std::ostringstream& out, std::string_view label,
                      std::span<const QueryMetrics* const> rows) {
    double p1 = 0.0;
    double p5 = 0.0;
    double p10 = 0.0;
    double rr = 0.0;
    for (const QueryMetrics* row : rows) {
        p1 += row->p_at_1;
        p5 += row->p_at_5;
        p10 += row->p_at_10;
        rr += row->reciprocal_rank;
    }
    const double n = static_cast<double>(rows.size());
    out << "macro\t" << label << '\t' << p1 / n << '\t' << p5 / n << '\t'
        << p10 / n << '\t' << rr / n << '\n';
}

} // namespace

std::vector<JudgmentSet> parse_judgments(std::string_view text) {
    std::vector<JudgmentSet> judgments;
    std::set<std::string> seen;
    size_t line_number = 0;
    for (const std::string& line : lines_of(text)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        const json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw DataError("judgments line " + std::to_string(line_number) +
                            ": not a JSON object");
        }
        const auto query = record.find("query");
        const auto relevant = record.find("relevant");
        if (query == record.end() || !query->is_string()) {
            throw DataError("judgments line " + std::to_string(line_number) +
                            ": missing string field 'query'");
        }
        if (relevant == record.end() || !relevant->is_array()) {
            throw DataError("judgments line " + std::to_string(line_number) +
                            ": missing array field 'relevant'");
        }
        JudgmentSet judgment;
        judgment.query = query->get<std::string>();
        for (const auto& id : *relevant) {
            if (!id.is_string()) {
                throw DataError("judgments line " + std::to_string(line_number) +
                                ": relevant ids must be strings");
            }
            judgment.relevant.push_back(id.get<std::string>());
        }
        if (!seen.insert(judgment.query).second) {
            throw DataError("judgments line " + std::to_string(line_number) +
                            ": duplicate judgment for query '" + judgment.query +
                            "'");
        }
        judgments.push_back(std::move(judgment));
    }
    return judgments;
}

std::vector<JudgmentSet> load_judgments(const std::filesystem::path& path) {
    return parse_judgments(read_file(path, "judgments"));
}

std::vector<std::string> parse_queries(std::string_view text) {
    std::vector<std::string> queries;
    for (std::string line : lines_of(text)) {
        if (const size_t hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
        size_t start = 0;
        while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) {
            ++start;
        }
        line.erase(0, start);
        if (!line.empty()) {
            queries.push_back(std::move(line));
        }
    }
    return queries;
}

std::vector<std::string> load_queries(const std::filesystem::path& path) {
    return parse_queries(read_file(path, "queries"));
}

std::string EvalReport::render() const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6);
    out << "query\tpath\tretrieved\tp@1\tp@5\tp@10\tmrr\n";
    for (const QueryMetrics& row : per_query) {
        out << row.query << '\t' << to_string(row.path) << '\t' << row.retrieved
            << '\t' << row.p_at_1 << '\t' << row.p_at_5 << '\t' << row.p_at_10
            << '\t' << row.reciprocal_rank << '\n';
    }
    if (per_query.empty()) {
        return out.str();
    }

    std::vector<const QueryMetrics*> all;
    std::vector<const QueryMetrics*> tweet_rows;
    std::vector<const QueryMetrics*> slrs_rows;
    for (const QueryMetrics& row : per_query) {
        all.push_back(&row);
        (row.path == QueryPath::Tweet ? tweet_rows : slrs_rows).push_back(&row);
    }
    append_macro_row(out, "all", all);
    if (!tweet_rows.empty()) {
        append_macro_row(out, "tweet", tweet_rows);
    }
    if (!slrs_rows.empty()) {
        append_macro_row(out, "slrs", slrs_rows);
    }
    return out.str();
}

EvalReport evaluate(const Engine& engine, std::span<const std::string> queries,
                    std::span<const JudgmentSet> judgments, int64_t now) {
    std::map<std::string, std::set<std::string>> relevant_by_query;
    for (const JudgmentSet& judgment : judgments) {
        auto& ids = relevant_by_query[judgment.query];
        for (const std::string& id : judgment.relevant) {
            if (!engine.index().find_external(id).has_value()) {
                throw DataError("judgment for query '" + judgment.query +
                                "' references unknown item id '" + id + "'");
            }
            ids.insert(id);
        }
    }

    EvalReport report;
    for (const std::string& query : queries) {
        const auto judged = relevant_by_query.find(query);
        if (judged == relevant_by_query.end()) {
            throw DataError("no judgment for query '" + query + "'");
        }
        const std::set<std::string>& relevant = judged->second;

        const QueryOutcome outcome = engine.run(query, now, 10);

        QueryMetrics metrics;
        metrics.query = query;
        metrics.path = outcome.executed_path;
        metrics.retrieved = outcome.results.size();

        size_t hits = 0;
        for (size_t rank = 0; rank < outcome.results.size() && rank < 10; ++rank) {
            const bool hit = relevant.contains(outcome.results[rank].external_id);
            if (hit) {
                ++hits;
                if (metrics.reciprocal_rank == 0.0) {
                    metrics.reciprocal_rank = 1.0 / static_cast<double>(rank + 1);
                }
            }
            if (rank + 1 == 1) {
                metrics.p_at_1 = static_cast<double>(hits) / 1.0;
            }
            if (rank + 1 == 5) {
                metrics.p_at_5 = static_cast<double>(hits) / 5.0;
            }
            if (rank + 1 == 10) {
                metrics.p_at_10 = static_cast<double>(hits) / 10.0;
            }
        }
        // Shorter rankings still divide by the full cutoff.
        if (outcome.results.size() < 5) {
            metrics.p_at_5 = static_cast<double>(hits) / 5.0;
        }
        if (outcome.results.size() < 10) {
            metrics.p_at_10 = static_cast<double>(hits) / 10.0;
        }
        if (outcome.results.empty()) {
            metrics.p_at_1 = 0.0;
        }
        report.per_query.push_back(std::move(metrics));
    }
    return report;
}

} // namespace forktail
