#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "forktail/errors.hpp"
#include "forktail/index.hpp"

namespace forktail {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

std::string checksum_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

json metadata_to_json(ItemKind kind, const ItemMetadata& m) {
    json j;
    j["external_id"] = m.external_id;
    j["text"] = m.text;
    switch (kind) {
    case ItemKind::Tweet:
        j["timestamp"] = m.timestamp;
        j["retweets"] = m.retweets;
        j["quotes"] = m.quotes;
        j["replies"] = m.replies;
        break;
    case ItemKind::Document:
        j["title"] = m.title;
        break;
    case ItemKind::Sentence:
        j["parent_doc"] = m.parent_doc;
        j["ordinal"] = m.ordinal;
        j["topics"] = m.topics;
        break;
    }
    return j;
}

ItemMetadata metadata_from_json(ItemKind kind, const json& j) {
    ItemMetadata m;
    m.external_id = j.at("external_id").get<std::string>();
    m.text = j.at("text").get<std::string>();
    switch (kind) {
    case ItemKind::Tweet:
        m.timestamp = j.at("timestamp").get<int64_t>();
        m.retweets = j.at("retweets").get<uint32_t>();
        m.quotes = j.at("quotes").get<uint32_t>();
        m.replies = j.at("replies").get<uint32_t>();
        break;
    case ItemKind::Document:
        m.title = j.at("title").get<std::string>();
        break;
    case ItemKind::Sentence:
        m.parent_doc = j.at("parent_doc").get<uint32_t>();
        m.ordinal = j.at("ordinal").get<uint32_t>();
        m.topics = j.at("topics").get<std::vector<std::string>>();
        break;
    }
    return m;
}

} // namespace

std::string Index::serialize() const {
    require_frozen();
    std::string out;

    json header;
    header["format_version"] = kFormatVersion;
    header["item_count"] = stats_.item_count;
    header["avg_length"] = stats_.avg_length;
    header["avg_unique"] = stats_.avg_unique;
    out += header.dump();
    out += '\n';

    for (uint32_t id = 0; id < kinds_.size(); ++id) {
        json rec;
        rec["item_id"] = id;
        rec["kind"] = std::string(to_string(kinds_[id]));
        rec["metadata"] = metadata_to_json(kinds_[id], metadata_[id]);
        rec["length"] = lengths_[id];
        rec["unique"] = uniques_[id];
        out += rec.dump();
        out += '\n';
    }

    for (const auto& term : vocabulary_) {
        json rec;
        rec["term"] = term;
        json lists = json::array();
        for (const auto& p : postings_.at(term)) {
            json entry = json::array();
            entry.push_back(p.item_id);
            entry.push_back(p.term_frequency);
            entry.push_back(p.positions);
            lists.push_back(std::move(entry));
        }
        rec["postings"] = std::move(lists);
        out += rec.dump();
        out += '\n';
    }

    json trailer;
    trailer["checksum"] = checksum_hex(fnv1a64(out));
    out += trailer.dump();
    out += '\n';
    return out;
}

void Index::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot open for writing: " + path.string());
    out << serialize();
    if (!out)
        throw DataError("write failed: " + path.string());
}

Index Index::deserialize(std::string_view bytes) {
    // Split into lines, remembering each line's byte offset so the
    // checksum region (everything before the trailer line) is exact.
    std::vector<std::pair<size_t, std::string_view>> lines;
    size_t pos = 0;
    while (pos < bytes.size()) {
        size_t nl = bytes.find('\n', pos);
        size_t end = (nl == std::string_view::npos) ? bytes.size() : nl;
        if (end > pos)
            lines.emplace_back(pos, bytes.substr(pos, end - pos));
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    if (lines.empty())
        throw IndexFormatError("empty index file");

    json header;
    try {
        header = json::parse(lines.front().second);
    } catch (const json::exception&) {
        throw IndexFormatError("index file does not start with a header record");
    }
    if (!header.is_object() || !header.contains("format_version"))
        throw IndexFormatError("index file does not start with a header record");
    if (header["format_version"] != kFormatVersion)
        throw IndexVersionError("unsupported index format version " +
                                header["format_version"].dump());

    if (lines.size() < 2)
        throw IndexTruncatedError("missing checksum trailer");
    auto [trailer_off, trailer_line] = lines.back();
    json trailer;
    try {
        trailer = json::parse(trailer_line);
    } catch (const json::exception&) {
        throw IndexTruncatedError("missing checksum trailer");
    }
    if (!trailer.is_object() || !trailer.contains("checksum"))
        throw IndexTruncatedError("missing checksum trailer");

    std::string expected = trailer["checksum"].get<std::string>();
    std::string actual = checksum_hex(fnv1a64(bytes.substr(0, trailer_off)));
    if (expected != actual)
        throw IndexChecksumError("index checksum mismatch: stored " + expected +
                                 ", computed " + actual);

    Index idx;
    size_t declared_items = header.at("item_count").get<size_t>();
    try {
        for (size_t i = 1; i + 1 < lines.size(); ++i) {
            json rec = json::parse(lines[i].second);
            if (rec.contains("item_id")) {
                if (!idx.postings_.empty())
                    throw IndexFormatError("item record after term records");
                auto id = rec.at("item_id").get<uint32_t>();
                if (id != idx.kinds_.size())
                    throw IndexFormatError("item records out of order");
                auto kind = item_kind_from_string(
                    rec.at("kind").get<std::string>());
                auto meta = metadata_from_json(kind, rec.at("metadata"));
                idx.kinds_.push_back(kind);
                idx.lengths_.push_back(rec.at("length").get<uint32_t>());
                idx.uniques_.push_back(rec.at("unique").get<uint32_t>());
                if (!meta.external_id.empty())
                    idx.external_ids_.emplace(meta.external_id, id);
                idx.metadata_.push_back(std::move(meta));
            } else if (rec.contains("term")) {
                auto term = rec.at("term").get<std::string>();
                std::vector<Posting> list;
                for (const auto& entry : rec.at("postings")) {
                    Posting p;
                    p.item_id = entry.at(0).get<uint32_t>();
                    p.term_frequency = entry.at(1).get<uint32_t>();
                    p.positions = entry.at(2).get<std::vector<uint32_t>>();
                    if (p.item_id >= idx.kinds_.size())
                        throw IndexFormatError("posting references unknown item");
                    if (p.term_frequency != p.positions.size())
                        throw IndexFormatError(
                            "posting frequency does not match positions");
                    list.push_back(std::move(p));
                }
                idx.postings_.emplace(std::move(term), std::move(list));
            } else {
                throw IndexFormatError("unrecognized record");
            }
        }
    } catch (const json::exception& e) {
        throw IndexFormatError(std::string("malformed record: ") + e.what());
    }
    if (idx.kinds_.size() != declared_items)
        throw IndexFormatError("item count does not match header");

    // Rebuild the forward (item -> terms) view from the postings.
    idx.item_terms_.assign(idx.kinds_.size(), {});
    std::vector<std::string> vocab;
    vocab.reserve(idx.postings_.size());
    for (const auto& [term, _] : idx.postings_)
        vocab.push_back(term);
    std::sort(vocab.begin(), vocab.end());
    for (const auto& term : vocab)
        for (const auto& p : idx.postings_.at(term))
            idx.item_terms_[p.item_id].emplace_back(term, p.term_frequency);

    for (uint32_t id = 0; id < idx.kinds_.size(); ++id) {
        if (idx.item_terms_[id].size() != idx.uniques_[id])
            throw IndexFormatError("distinct-term count does not match postings");
        uint64_t l = 0;
        for (const auto& [_, tf] : idx.item_terms_[id])
            l += tf;
        if (l != idx.lengths_[id])
            throw IndexFormatError("item length does not match postings");
        idx.total_tokens_ += l;
    }

    idx.vocabulary_ = std::move(vocab);
    idx.stats_.item_count = idx.kinds_.size();
    idx.stats_.avg_length = header.at("avg_length").get<double>();
    idx.stats_.avg_unique = header.at("avg_unique").get<double>();
    idx.stats_.lengths = idx.lengths_;
    idx.stats_.uniques = idx.uniques_;
    idx.frozen_ = true;
    return idx;
}

Index Index::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IndexLoadError("cannot open index file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize(buf.str());
}

} // namespace forktail
