#include "forktail/porter.hpp"

#include <array>
#include <cstddef>

namespace forktail {

namespace {

// Working buffer for one stemming pass. Letter classes, the measure m,
// and the *v* / *d / *o conditions follow the published definitions:
// a consonant is a letter other than a,e,i,o,u and other than y preceded
// by a consonant; m counts VC sequences in [C](VC)^m[V].
class Stemmer {
public:
    explicit Stemmer(std::string_view word) : w_(word) {}

    std::string run() {
        if (w_.size() <= 2)
            return w_;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
        return w_;
    }

private:
    std::string w_;

    bool consonant(size_t i) const {
        switch (w_[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !consonant(i - 1);
        default:
            return true;
        }
    }

    // m of the prefix w_[0..end)
    int measure(size_t end) const {
        int m = 0;
        size_t i = 0;
        while (i < end && consonant(i))
            ++i;
        while (i < end) {
            while (i < end && !consonant(i))
                ++i;
            if (i >= end)
                break;
            ++m;
            while (i < end && consonant(i))
                ++i;
        }
        return m;
    }

    bool has_vowel(size_t end) const {
        for (size_t i = 0; i < end; ++i)
            if (!consonant(i))
                return true;
        return false;
    }

    bool double_consonant(size_t end) const {
        return end >= 2 && w_[end - 1] == w_[end - 2] && consonant(end - 1);
    }

    // *o: ends consonant-vowel-consonant, final consonant not w, x or y
    bool cvc(size_t end) const {
        if (end < 3)
            return false;
        if (!consonant(end - 3) || consonant(end - 2) || !consonant(end - 1))
            return false;
        char c = w_[end - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view suffix) const {
        return w_.size() >= suffix.size() &&
               w_.compare(w_.size() - suffix.size(), suffix.size(), suffix) == 0;
    }

    void set_suffix(size_t suffix_len, std::string_view repl) {
        w_.replace(w_.size() - suffix_len, suffix_len, repl);
    }

    void step1a() {
        if (ends("sses"))
            set_suffix(4, "ss");
        else if (ends("ies"))
            set_suffix(3, "i");
        else if (ends("ss"))
            ;
        else if (ends("s"))
            w_.pop_back();
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(w_.size() - 3) > 0)
                w_.pop_back();
            return;
        }
        bool stripped = false;
        if (ends("ed") && has_vowel(w_.size() - 2)) {
            w_.erase(w_.size() - 2);
            stripped = true;
        } else if (ends("ing") && has_vowel(w_.size() - 3)) {
            w_.erase(w_.size() - 3);
            stripped = true;
        }
        if (!stripped)
            return;
        if (ends("at") || ends("bl") || ends("iz")) {
            w_ += 'e';
        } else if (double_consonant(w_.size())) {
            char c = w_.back();
            if (c != 'l' && c != 's' && c != 'z')
                w_.pop_back();
        } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
            w_ += 'e';
        }
    }

    void step1c() {
        if (ends("y") && has_vowel(w_.size() - 1))
            w_.back() = 'i';
    }

    struct Rule {
        std::string_view suffix;
        std::string_view repl;
    };

    // The longest matching suffix in the step is located first and only
    // then is the condition on the remaining stem tested; if it fails,
    // the step does nothing.
    void apply_rules(const Rule* rules, size_t n, int min_measure) {
        for (size_t i = 0; i < n; ++i) {
            if (!ends(rules[i].suffix))
                continue;
            if (measure(w_.size() - rules[i].suffix.size()) > min_measure)
                set_suffix(rules[i].suffix.size(), rules[i].repl);
            return;
        }
    }

    void step2() {
        static constexpr std::array<Rule, 21> rules{{
            {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"},
            {"fulness", "ful"}, {"ousness", "ous"}, {"tional", "tion"},
            {"biliti", "ble"},  {"entli", "ent"},   {"ousli", "ous"},
            {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
            {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},
            {"ator", "ate"},    {"logi", "log"},    {"eli", "e"},
        }};
        apply_rules(rules.data(), rules.size(), 0);
    }

    void step3() {
        static constexpr std::array<Rule, 7> rules{{
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ness", ""},  {"ful", ""},
        }};
        apply_rules(rules.data(), rules.size(), 0);
    }

    void step4() {
        static constexpr std::array<Rule, 19> rules{{
            {"ement", ""}, {"ance", ""}, {"ence", ""}, {"able", ""},
            {"ible", ""},  {"ment", ""}, {"ion", ""},  {"ant", ""},
            {"ent", ""},   {"ism", ""},  {"ate", ""},  {"iti", ""},
            {"ous", ""},   {"ive", ""},  {"ize", ""},  {"al", ""},
            {"er", ""},    {"ic", ""},   {"ou", ""},
        }};
        for (const auto& r : rules) {
            if (!ends(r.suffix))
                continue;
            size_t stem_len = w_.size() - r.suffix.size();
            if (measure(stem_len) > 1) {
                // ion only strips after s or t
                if (r.suffix == "ion" && stem_len > 0 &&
                    w_[stem_len - 1] != 's' && w_[stem_len - 1] != 't')
                    return;
                set_suffix(r.suffix.size(), r.repl);
            }
            return;
        }
    }

    void step5a() {
        if (!ends("e"))
            return;
        int m = measure(w_.size() - 1);
        if (m > 1 || (m == 1 && !cvc(w_.size() - 1)))
            w_.pop_back();
    }

    void step5b() {
        if (w_.back() == 'l' && double_consonant(w_.size()) &&
            measure(w_.size()) > 1)
            w_.pop_back();
    }
};

} // namespace

std::string porter_stem_once(std::string_view word) {
    return Stemmer(word).run();
}

std::string porter_stem(std::string_view word) {
    std::string cur(word);
    // Each pass removes or rewrites suffixes; length never grows past the
    // input, so this settles in very few rounds.
    for (int i = 0; i < 8; ++i) {
        std::string next = porter_stem_once(cur);
        if (next == cur)
            return cur;
        cur = std::move(next);
    }
    return cur;
}

} // namespace forktail
