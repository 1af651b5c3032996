#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace forktail {

/// One content token after preprocessing. Positions are assigned over the
/// kept tokens only (after stop-word removal), 0-based and contiguous, so
/// they line up with index postings and proximity windows.
struct Token {
    std::string surface;
    std::string stem;
    uint32_t position = 0;

    bool operator==(const Token&) const = default;
};

/// Lowercase stop-word set. Words are lowercased on insertion so every
/// member equals its own lowercased form.
class StopwordSet {
public:
    StopwordSet() = default;
    explicit StopwordSet(std::initializer_list<std::string_view> words);

    void insert(std::string_view word);
    bool contains(std::string_view word) const;
    size_t size() const { return words_.size(); }
    const std::unordered_set<std::string>& words() const { return words_; }

private:
    std::unordered_set<std::string> words_;
};

/// One sentence of a document body, trimmed, with its 0-based ordinal.
struct SentenceSpan {
    std::string text;
    uint32_t ordinal = 0;

    bool operator==(const SentenceSpan&) const = default;
};

/// Lowercased maximal runs of ASCII letters and digits, in source order.
/// Punctuation and whitespace are discarded; apostrophes and hyphens split
/// tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Order-preserving filter; every surviving token is absent from stops.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordSet& stops);

/// Porter stem of a lowercase token. Deterministic and idempotent.
std::string stem(std::string_view token);

/// tokenize -> remove_stopwords -> stem, with positions 0..n-1 assigned
/// over the survivors.
std::vector<Token> preprocess(std::string_view text, const StopwordSet& stops);

/// Rule-based sentence splitting on '.', '!' or '?' followed by whitespace
/// or end of text. A short abbreviation list ("mr", "dr", "etc", "e.g",
/// "i.e") suppresses splits after those words; a trailing fragment without
/// terminal punctuation becomes the final sentence.
std::vector<SentenceSpan> split_sentences(std::string_view body);

/// The embedded default stop list (~120 English function words).
const StopwordSet& default_stopwords();

/// Stop-list override file: one lowercase word per line, UTF-8, '#'
/// comments and blank lines allowed.
StopwordSet load_stopwords(const std::filesystem::path& file);

/// Bundles a stop-word set for the two call sites (indexing and querying)
/// that must agree on it.
class Pipeline {
public:
    Pipeline() : stops_(default_stopwords()) {}
    explicit Pipeline(StopwordSet stops) : stops_(std::move(stops)) {}

    std::vector<Token> preprocess(std::string_view text) const {
        return forktail::preprocess(text, stops_);
    }
    std::vector<std::string> stems(std::string_view text) const;
    const StopwordSet& stopwords() const { return stops_; }

private:
    StopwordSet stops_;
};

} // namespace forktail
