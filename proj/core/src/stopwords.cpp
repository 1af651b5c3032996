#include "forktail/text_pipeline.hpp"

namespace forktail {

// Common English function words: articles, prepositions, conjunctions,
// pronouns and auxiliaries. Override with a stop-list file when a corpus
// needs a different set.
const StopwordSet& default_stopwords() {
    static const StopwordSet set{
        "a",       "about",   "above",   "after",   "again",   "against",
        "all",     "am",      "an",      "and",     "any",     "are",
        "as",      "at",      "be",      "because", "been",    "before",
        "being",   "below",   "between", "both",    "but",     "by",
        "can",     "could",   "did",     "do",      "does",    "doing",
        "down",    "during",  "each",    "else",    "few",     "for",
        "from",    "further", "had",     "has",     "have",    "having",
        "he",      "her",     "here",    "hers",    "him",     "his",
        "how",     "i",       "if",      "in",      "into",    "is",
        "it",      "its",     "itself",  "just",    "me",      "more",
        "most",    "my",      "no",      "nor",     "not",     "now",
        "of",      "off",     "on",      "once",    "only",    "or",
        "other",   "our",     "ours",    "out",     "over",    "own",
        "same",    "she",     "should",  "so",      "some",    "such",
        "than",    "that",    "the",     "their",   "theirs",  "them",
        "then",    "there",   "these",   "they",    "this",    "those",
        "through", "to",      "too",     "under",   "until",   "up",
        "upon",    "very",    "was",     "we",      "were",    "what",
        "when",    "where",   "which",   "while",   "who",     "whom",
        "why",     "will",    "with",    "would",   "you",     "your",
        "yours",
    };
    return set;
}

} // namespace forktail
