#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forktail/text_pipeline.hpp"

namespace forktail {

enum class ItemKind { Tweet, Document, Sentence };

std::string_view to_string(ItemKind kind);
ItemKind item_kind_from_string(std::string_view s);

/// One entry of an inverted list: an item plus that term's frequency and
/// token positions in the item. positions are strictly increasing and
/// term_frequency == positions.size().
struct Posting {
    uint32_t item_id = 0;
    uint32_t term_frequency = 0;
    std::vector<uint32_t> positions;

    bool operator==(const Posting&) const = default;
};

/// Per-kind metadata. Only the fields relevant to the item's kind are
/// meaningful (and serialized): timestamp/engagement for tweets, title for
/// documents, parent/ordinal/topics for sentences.
struct ItemMetadata {
    std::string external_id;
    std::string text;

    // tweets
    int64_t timestamp = 0;
    uint32_t retweets = 0;
    uint32_t quotes = 0;
    uint32_t replies = 0;

    // documents
    std::string title;

    // sentences
    uint32_t parent_doc = 0;
    uint32_t ordinal = 0;
    std::vector<std::string> topics;

    bool operator==(const ItemMetadata&) const = default;
};

/// Corpus-wide statistics: D, the mean token length, the mean distinct-term
/// count, and the per-item values they average.
struct CorpusStats {
    size_t item_count = 0;
    double avg_length = 0.0;
    double avg_unique = 0.0;
    std::vector<uint32_t> lengths;
    std::vector<uint32_t> uniques;
};

/// Positional inverted index over preprocessed items with a two-phase
/// lifecycle: build (single writer), then freeze (immutable, shareable
/// across any number of readers). All read accessors require a frozen
/// index and throw std::logic_error otherwise.
class Index {
public:
    Index() = default;

    // --- build phase ---

    /// Adds a preprocessed item. Returns a fresh dense id starting at 0.
    /// Throws DuplicateIdError if metadata.external_id was already added.
    uint32_t add_item(ItemKind kind, ItemMetadata metadata,
                      const std::vector<Token>& tokens);

    /// Preprocesses metadata.text through the pipeline and adds the item.
    uint32_t add_item(ItemKind kind, ItemMetadata metadata,
                      const Pipeline& pipeline);

    void freeze();

    // --- read phase (frozen) ---

    bool frozen() const { return frozen_; }
    size_t item_count() const { return kinds_.size(); }

    /// Postings sorted by item_id; empty list for an unknown term.
    const std::vector<Posting>& postings(std::string_view term) const;

    /// Number of distinct items containing the term (d_i); 0 if unknown.
    size_t document_frequency(std::string_view term) const;

    /// Total occurrences of the term across the corpus.
    uint64_t collection_frequency(std::string_view term) const;

    const CorpusStats& stats() const;
    uint64_t total_tokens() const;

    ItemKind kind(uint32_t item_id) const;
    const ItemMetadata& metadata(uint32_t item_id) const;
    uint32_t length(uint32_t item_id) const;
    uint32_t unique_terms(uint32_t item_id) const;

    /// The item's (term, frequency) pairs sorted by term.
    const std::vector<std::pair<std::string, uint32_t>>&
    item_terms(uint32_t item_id) const;

    /// All distinct terms, sorted.
    const std::vector<std::string>& vocabulary() const;

    std::optional<uint32_t> find_external(std::string_view external_id) const;

    bool has_kind(ItemKind kind) const;

    // --- persistence ---

    /// Versioned line-delimited UTF-8 records with a trailing checksum.
    /// Requires a frozen index; round-trips bit-for-bit.
    void save(const std::filesystem::path& path) const;
    std::string serialize() const;

    static Index load(const std::filesystem::path& path);
    static Index deserialize(std::string_view bytes);

private:
    void require_frozen() const;
    void require_item(uint32_t item_id) const;

    bool frozen_ = false;
    std::vector<ItemKind> kinds_;
    std::vector<ItemMetadata> metadata_;
    std::vector<uint32_t> lengths_;
    std::vector<uint32_t> uniques_;
    std::vector<std::vector<std::pair<std::string, uint32_t>>> item_terms_;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
    std::unordered_map<std::string, uint32_t> external_ids_;
    std::vector<std::string> vocabulary_;
    uint64_t total_tokens_ = 0;
    CorpusStats stats_;
};

/// FNV-1a, used as the index file's trailing checksum.
uint64_t fnv1a64(std::string_view bytes);

} // namespace forktail
