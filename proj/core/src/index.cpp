#include "forktail/index.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "forktail/errors.hpp"

namespace forktail {

std::string_view to_string(ItemKind kind) {
    switch (kind) {
    case ItemKind::Tweet: return "tweet";
    case ItemKind::Document: return "document";
    case ItemKind::Sentence: return "sentence";
    }
    return "unknown";
}

ItemKind item_kind_from_string(std::string_view s) {
    if (s == "tweet") return ItemKind::Tweet;
    if (s == "document") return ItemKind::Document;
    if (s == "sentence") return ItemKind::Sentence;
    throw DataError("unknown item kind: " + std::string(s));
}

uint32_t Index::add_item(ItemKind kind, ItemMetadata metadata,
                         const std::vector<Token>& tokens) {
    if (frozen_)
        throw std::logic_error("Index::add_item called on a frozen index");
    if (!metadata.external_id.empty() &&
        external_ids_.count(metadata.external_id))
        throw DuplicateIdError("duplicate external id: " + metadata.external_id);

    auto id = static_cast<uint32_t>(kinds_.size());

    std::map<std::string, std::vector<uint32_t>> positions_by_term;
    for (const auto& t : tokens)
        positions_by_term[t.stem].push_back(t.position);

    std::vector<std::pair<std::string, uint32_t>> terms;
    terms.reserve(positions_by_term.size());
    for (auto& [term, positions] : positions_by_term) {
        Posting p;
        p.item_id = id;
        p.term_frequency = static_cast<uint32_t>(positions.size());
        p.positions = std::move(positions);
        terms.emplace_back(term, p.term_frequency);
        postings_[term].push_back(std::move(p));
    }

    kinds_.push_back(kind);
    lengths_.push_back(static_cast<uint32_t>(tokens.size()));
    uniques_.push_back(static_cast<uint32_t>(terms.size()));
    item_terms_.push_back(std::move(terms));
    total_tokens_ += tokens.size();
    if (!metadata.external_id.empty())
        external_ids_.emplace(metadata.external_id, id);
    metadata_.push_back(std::move(metadata));
    return id;
}

uint32_t Index::add_item(ItemKind kind, ItemMetadata metadata,
                         const Pipeline& pipeline) {
    auto tokens = pipeline.preprocess(metadata.text);
    return add_item(kind, std::move(metadata), tokens);
}

void Index::freeze() {
    if (frozen_)
        return;
    vocabulary_.clear();
    vocabulary_.reserve(postings_.size());
    for (const auto& [term, _] : postings_)
        vocabulary_.push_back(term);
    std::sort(vocabulary_.begin(), vocabulary_.end());

    stats_.item_count = kinds_.size();
    stats_.lengths = lengths_;
    stats_.uniques = uniques_;
    if (!kinds_.empty()) {
        uint64_t lsum = 0, usum = 0;
        for (auto l : lengths_) lsum += l;
        for (auto u : uniques_) usum += u;
        stats_.avg_length = static_cast<double>(lsum) / kinds_.size();
        stats_.avg_unique = static_cast<double>(usum) / kinds_.size();
    }
    frozen_ = true;
}

void Index::require_frozen() const {
    if (!frozen_)
        throw std::logic_error("index must be frozen before reads");
}

void Index::require_item(uint32_t item_id) const {
    if (item_id >= kinds_.size())
        throw std::out_of_range("unknown item id " + std::to_string(item_id));
}

const std::vector<Posting>& Index::postings(std::string_view term) const {
    require_frozen();
    static const std::vector<Posting> empty;
    auto it = postings_.find(std::string(term));
    return it == postings_.end() ? empty : it->second;
}

size_t Index::document_frequency(std::string_view term) const {
    return postings(term).size();
}

uint64_t Index::collection_frequency(std::string_view term) const {
    uint64_t cf = 0;
    for (const auto& p : postings(term))
        cf += p.term_frequency;
    return cf;
}

const CorpusStats& Index::stats() const {
    require_frozen();
    return stats_;
}

uint64_t Index::total_tokens() const {
    require_frozen();
    return total_tokens_;
}

ItemKind Index::kind(uint32_t item_id) const {
    require_frozen();
    require_item(item_id);
    return kinds_[item_id];
}

const ItemMetadata& Index::metadata(uint32_t item_id) const {
    require_frozen();
    require_item(item_id);
    return metadata_[item_id];
}

uint32_t Index::length(uint32_t item_id) const {
    require_frozen();
    require_item(item_id);
    return lengths_[item_id];
}

uint32_t Index::unique_terms(uint32_t item_id) const {
    require_frozen();
    require_item(item_id);
    return uniques_[item_id];
}

const std::vector<std::pair<std::string, uint32_t>>&
Index::item_terms(uint32_t item_id) const {
    require_frozen();
    require_item(item_id);
    return item_terms_[item_id];
}

const std::vector<std::string>& Index::vocabulary() const {
    require_frozen();
    return vocabulary_;
}

std::optional<uint32_t> Index::find_external(std::string_view external_id) const {
    require_frozen();
    auto it = external_ids_.find(std::string(external_id));
    if (it == external_ids_.end())
        return std::nullopt;
    return it->second;
}

bool Index::has_kind(ItemKind kind) const {
    require_frozen();
    return std::find(kinds_.begin(), kinds_.end(), kind) != kinds_.end();
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace forktail
