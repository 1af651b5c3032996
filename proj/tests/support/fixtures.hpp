#pragma once

// Shared corpus builders for the unit and acceptance tests. Items are built
// straight from stem lists (surface == stem, position == slot) so the tests
// control exactly what the index sees.

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "forktail/index.hpp"
#include "oracles.hpp"

namespace fixtures {

inline std::vector<forktail::Token> tokens_from_stems(
    const std::vector<std::string>& stems) {
    std::vector<forktail::Token> tokens;
    tokens.reserve(stems.size());
    for (size_t i = 0; i < stems.size(); ++i) {
        tokens.push_back({stems[i], stems[i], static_cast<uint32_t>(i)});
    }
    return tokens;
}

/// Indexes each stem list as one item of the given kind with external ids
/// "i0", "i1", ... and freezes the result.
inline forktail::Index index_from_stems(const oracle::Corpus& corpus,
                                        forktail::ItemKind kind =
                                            forktail::ItemKind::Document) {
    forktail::Index index;
    for (size_t i = 0; i < corpus.size(); ++i) {
        forktail::ItemMetadata meta;
        meta.external_id = "i" + std::to_string(i);
        for (const auto& stem : corpus[i]) {
            if (!meta.text.empty()) {
                meta.text += ' ';
            }
            meta.text += stem;
        }
        index.add_item(kind, std::move(meta), tokens_from_stems(corpus[i]));
    }
    index.freeze();
    return index;
}

struct TweetSpec {
    std::vector<std::string> stems;
    int64_t timestamp = 0;
    uint32_t retweets = 0;
    uint32_t quotes = 0;
    uint32_t replies = 0;
};

inline forktail::Index index_from_tweets(const std::vector<TweetSpec>& tweets) {
    forktail::Index index;
    for (size_t i = 0; i < tweets.size(); ++i) {
        forktail::ItemMetadata meta;
        meta.external_id = "t" + std::to_string(i);
        for (const auto& stem : tweets[i].stems) {
            if (!meta.text.empty()) {
                meta.text += ' ';
            }
            meta.text += stem;
        }
        meta.timestamp = tweets[i].timestamp;
        meta.retweets = tweets[i].retweets;
        meta.quotes = tweets[i].quotes;
        meta.replies = tweets[i].replies;
        index.add_item(forktail::ItemKind::Tweet, std::move(meta),
                       tokens_from_stems(tweets[i].stems));
    }
    index.freeze();
    return index;
}

/// Random corpus over a compact synthetic vocabulary ("w0".."w{vocab-1}").
/// Deterministic for a given seed.
inline oracle::Corpus random_corpus(std::mt19937& rng, size_t items,
                                    size_t vocab, size_t min_len = 1,
                                    size_t max_len = 12) {
    std::uniform_int_distribution<size_t> len_dist(min_len, max_len);
    std::uniform_int_distribution<size_t> word_dist(0, vocab - 1);
    oracle::Corpus corpus(items);
    for (auto& item : corpus) {
        const size_t len = len_dist(rng);
        item.reserve(len);
        for (size_t i = 0; i < len; ++i) {
            item.push_back("w" + std::to_string(word_dist(rng)));
        }
    }
    return corpus;
}

inline std::vector<std::string> random_query(std::mt19937& rng,
                                             const oracle::Corpus& corpus,
                                             size_t max_terms = 4) {
    std::vector<std::string> vocab = oracle::vocabulary(corpus);
    std::uniform_int_distribution<size_t> count_dist(1, max_terms);
    std::uniform_int_distribution<size_t> pick(0, vocab.size() - 1);
    std::vector<std::string> query;
    const size_t n = count_dist(rng);
    for (size_t i = 0; i < n; ++i) {
        query.push_back(vocab[pick(rng)]);
    }
    return query;
}

/// Scratch directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("forktail_" + tag + "_" + std::to_string(counter()++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const {
        return path_ / name;
    }

private:
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::filesystem::path path_;
};

} // namespace fixtures
