#include "forktail/text_pipeline.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "forktail/errors.hpp"
#include "forktail/porter.hpp"

namespace forktail {

namespace {

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9');
}

char to_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](char c) { return to_lower(c); });
    return out;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
}

} // namespace

StopwordSet::StopwordSet(std::initializer_list<std::string_view> words) {
    for (auto w : words)
        insert(w);
}

void StopwordSet::insert(std::string_view word) {
    words_.insert(lowercase(word));
}

bool StopwordSet::contains(std::string_view word) const {
    return words_.count(std::string(word)) > 0;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (is_word_char(c)) {
            cur += to_lower(c);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordSet& stops) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!stops.contains(t))
            out.push_back(t);
    return out;
}

std::string stem(std::string_view token) {
    return porter_stem(token);
}

std::vector<Token> preprocess(std::string_view text, const StopwordSet& stops) {
    std::vector<Token> out;
    uint32_t pos = 0;
    for (auto& surface : remove_stopwords(tokenize(text), stops)) {
        Token t;
        t.stem = porter_stem(surface);
        t.surface = std::move(surface);
        t.position = pos++;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<std::string> Pipeline::stems(std::string_view text) const {
    std::vector<std::string> out;
    for (auto& t : preprocess(text))
        out.push_back(std::move(t.stem));
    return out;
}

namespace {

constexpr std::array<std::string_view, 5> kAbbreviations{"mr", "dr", "etc",
                                                         "e.g", "i.e"};

// The word immediately before position i (exclusive), read back over
// letters and dots so "e.g" comes out whole.
std::string word_before(std::string_view body, size_t i) {
    size_t end = i;
    size_t begin = end;
    while (begin > 0) {
        char c = body[begin - 1];
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '.')
            --begin;
        else
            break;
    }
    return lowercase(body.substr(begin, end - begin));
}

bool is_abbreviation(std::string_view body, size_t terminator_pos) {
    std::string w = word_before(body, terminator_pos);
    // strip a leading dot picked up from a previous sentence boundary
    while (!w.empty() && w.front() == '.')
        w.erase(w.begin());
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), w) !=
           kAbbreviations.end();
}

void push_span(std::vector<SentenceSpan>& out, std::string_view body,
               size_t begin, size_t end) {
    while (begin < end && is_space(body[begin]))
        ++begin;
    while (end > begin && is_space(body[end - 1]))
        --end;
    if (begin >= end)
        return;
    SentenceSpan span;
    span.text = std::string(body.substr(begin, end - begin));
    span.ordinal = static_cast<uint32_t>(out.size());
    out.push_back(std::move(span));
}

} // namespace

std::vector<SentenceSpan> split_sentences(std::string_view body) {
    std::vector<SentenceSpan> out;
    size_t start = 0;
    for (size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c != '.' && c != '!' && c != '?')
            continue;
        bool at_boundary = (i + 1 == body.size()) || is_space(body[i + 1]);
        if (!at_boundary)
            continue;
        if (c == '.' && is_abbreviation(body, i))
            continue;
        push_span(out, body, start, i + 1);
        start = i + 1;
    }
    push_span(out, body, start, body.size());
    return out;
}

StopwordSet load_stopwords(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw DataError("cannot open stop-word file: " + file.string());
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        auto end = line.find_last_not_of(" \t\r");
        set.insert(std::string_view(line).substr(begin, end - begin + 1));
    }
    return set;
}

} // namespace forktail
