#include "forktail/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "forktail/errors.hpp"

namespace forktail {

namespace {

using nlohmann::json;

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start <= text.size()) {
        const size_t newline = text.find('\n', start);
        std::string_view line = newline == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, newline - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (newline == std::string_view::npos) {
            break;
        }
        start = newline + 1;
    }
    return lines;
}

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

bool get_uint(const json& record, const char* key, uint32_t& out) {
    const auto it = record.find(key);
    if (it == record.end()) {
        out = 0;
        return true;
    }
    if (!it->is_number_integer() || it->get<int64_t>() < 0) {
        return false;
    }
    out = static_cast<uint32_t>(it->get<int64_t>());
    return true;
}

/// Returns an empty optional when the record is unusable, with `why`
/// explaining the rejection.
std::optional<ItemMetadata> parse_record(const json& record, CorpusKind kind,
                                         std::string& why) {
    ItemMetadata meta;
    if (!record.is_object()) {
        why = "not a JSON object";
        return std::nullopt;
    }
    const auto id = record.find("id");
    if (id == record.end() || !id->is_string() || id->get<std::string>().empty()) {
        why = "missing or empty string field 'id'";
        return std::nullopt;
    }
    meta.external_id = id->get<std::string>();

    if (kind == CorpusKind::Tweets) {
        const auto text = record.find("text");
        if (text == record.end() || !text->is_string()) {
            why = "missing string field 'text'";
            return std::nullopt;
        }
        meta.text = text->get<std::string>();
        const auto timestamp = record.find("timestamp");
        if (timestamp == record.end() || !timestamp->is_number_integer()) {
            why = "missing integer field 'timestamp'";
            return std::nullopt;
        }
        meta.timestamp = timestamp->get<int64_t>();
        if (!get_uint(record, "retweets", meta.retweets) ||
            !get_uint(record, "quotes", meta.quotes) ||
            !get_uint(record, "replies", meta.replies)) {
            why = "engagement fields must be non-negative integers";
            return std::nullopt;
        }
    } else {
        const auto body = record.find("body");
        if (body == record.end() || !body->is_string()) {
            why = "missing string field 'body'";
            return std::nullopt;
        }
        meta.text = body->get<std::string>();
        const auto title = record.find("title");
        if (title != record.end()) {
            if (!title->is_string()) {
                why = "field 'title' must be a string";
                return std::nullopt;
            }
            meta.title = title->get<std::string>();
        }
    }
    return meta;
}

} // namespace

CorpusKind corpus_kind_from_string(std::string_view s) {
    if (s == "tweets") {
        return CorpusKind::Tweets;
    }
    if (s == "documents") {
        return CorpusKind::Documents;
    }
    throw ConfigError("unknown corpus kind '" + std::string(s) +
                      "' (expected tweets or documents)");
}

std::vector<TopicClass> parse_topics(std::string_view text, const Pipeline& pipeline) {
    std::vector<TopicClass> topics;
    std::set<std::string> names;
    size_t line_number = 0;
    for (std::string_view line : split_lines(text)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        const json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw ConfigError("topics line " + std::to_string(line_number) +
                              ": not a JSON object");
        }
        const auto name = record.find("name");
        const auto keywords = record.find("keywords");
        if (name == record.end() || !name->is_string() ||
            name->get<std::string>().empty()) {
            throw ConfigError("topics line " + std::to_string(line_number) +
                              ": missing string field 'name'");
        }
        if (keywords == record.end() || !keywords->is_array()) {
            throw ConfigError("topics line " + std::to_string(line_number) +
                              ": missing array field 'keywords'");
        }
        std::vector<std::string> raw;
        for (const auto& keyword : *keywords) {
            if (!keyword.is_string()) {
                throw ConfigError("topics line " + std::to_string(line_number) +
                                  ": keywords must be strings");
            }
            raw.push_back(keyword.get<std::string>());
        }
        if (!names.insert(name->get<std::string>()).second) {
            throw ConfigError("topics line " + std::to_string(line_number) +
                              ": duplicate topic name '" +
                              name->get<std::string>() + "'");
        }
        topics.push_back(TopicClass::make(name->get<std::string>(), std::move(raw),
                                          pipeline));
    }
    return topics;
}

std::vector<TopicClass> load_topics(const std::filesystem::path& path,
                                    const Pipeline& pipeline) {
    return parse_topics(read_file(path, "topics"), pipeline);
}

IngestResult ingest_text(std::string_view text, CorpusKind kind,
                         const Pipeline& pipeline,
                         std::span<const TopicClass> topics) {
    IngestResult result;
    size_t line_number = 0;

    auto skip = [&](const std::string& why) {
        ++result.report.records_skipped;
        result.report.warnings.push_back("line " + std::to_string(line_number) +
                                         ": " + why + "; record skipped");
    };

    for (std::string_view line : split_lines(text)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        const json record = json::parse(line, nullptr, false);
        if (record.is_discarded()) {
            skip("malformed JSON");
            continue;
        }
        std::string why;
        auto meta = parse_record(record, kind, why);
        if (!meta.has_value()) {
            skip(why);
            continue;
        }
        const std::vector<Token> tokens = pipeline.preprocess(meta->text);
        if (tokens.empty()) {
            skip("record '" + meta->external_id + "' has no content tokens");
            continue;
        }
        const ItemKind item_kind =
            kind == CorpusKind::Tweets ? ItemKind::Tweet : ItemKind::Document;
        try {
            result.index.add_item(item_kind, std::move(*meta), tokens);
            ++result.report.items_indexed;
        } catch (const DuplicateIdError& e) {
            skip(e.what());
        }
    }

    if (result.report.items_indexed == 0) {
        throw DataError("corpus contains no valid records");
    }
    result.index.freeze();
    result.report.vocabulary_size = result.index.vocabulary().size();

    if (kind == CorpusKind::Documents) {
        SentenceRepository repo =
            build_sentence_repository(result.index, pipeline, topics);
        result.report.sentences_indexed = repo.index.item_count();
        result.report.warnings.insert(result.report.warnings.end(),
                                      repo.warnings.begin(), repo.warnings.end());
        result.sentences = std::move(repo.index);
    }
    return result;
}

IngestResult ingest_file(const std::filesystem::path& input, CorpusKind kind,
                         const Pipeline& pipeline,
                         std::span<const TopicClass> topics) {
    return ingest_text(read_file(input, "corpus"), kind, pipeline, topics);
}

} // namespace forktail
