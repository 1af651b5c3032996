#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forktail/index.hpp"
#include "forktail/sentence_expansion.hpp"

namespace forktail {

enum class CorpusKind { Tweets, Documents };

CorpusKind corpus_kind_from_string(std::string_view s);

/// What ingestion did: counts plus line-numbered warnings for every
/// skipped record.
struct BuildReport {
    size_t items_indexed = 0;
    size_t records_skipped = 0;
    size_t vocabulary_size = 0;
    size_t sentences_indexed = 0;
    std::vector<std::string> warnings;
};

struct IngestResult {
    Index index;
    std::optional<Index> sentences;
    BuildReport report;
};

/// Topic definition records, one JSON object per line:
/// {"name": ..., "keywords": [...]}. Keywords are preprocessed into stems
/// on load. Malformed lines, duplicate names and topics with no usable
/// tags are ConfigErrors.
std::vector<TopicClass> parse_topics(std::string_view text, const Pipeline& pipeline);
std::vector<TopicClass> load_topics(const std::filesystem::path& path,
                                    const Pipeline& pipeline);

/// Builds a frozen index from a line-delimited JSON corpus. Tweet records
/// are {"id", "text", "timestamp", "retweets", "quotes", "replies"}
/// (engagement fields default to 0); document records are {"id", "title",
/// "body"} with the body indexed. Malformed records, duplicates and
/// records with no content tokens are skipped with line-numbered
/// warnings; a corpus with zero valid records is a DataError. Document
/// corpora additionally get a sentence repository.
IngestResult ingest_text(std::string_view text, CorpusKind kind,
                         const Pipeline& pipeline,
                         std::span<const TopicClass> topics);

IngestResult ingest_file(const std::filesystem::path& input, CorpusKind kind,
                         const Pipeline& pipeline,
                         std::span<const TopicClass> topics);

} // namespace forktail
