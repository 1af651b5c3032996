#pragma once

// Brute-force reference implementations computed from raw stem lists,
// independent of the index internals. Tests compare engine output against
// these, so keep them dumb and literal.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace oracle {

// One corpus item = its stem sequence in order; position = vector index.
using Corpus = std::vector<std::vector<std::string>>;

inline size_t tf(const std::vector<std::string>& item, const std::string& term) {
    return static_cast<size_t>(std::count(item.begin(), item.end(), term));
}

inline size_t df(const Corpus& corpus, const std::string& term) {
    size_t n = 0;
    for (const auto& item : corpus) {
        if (tf(item, term) > 0) {
            ++n;
        }
    }
    return n;
}

inline uint64_t cf(const Corpus& corpus, const std::string& term) {
    uint64_t n = 0;
    for (const auto& item : corpus) {
        n += tf(item, term);
    }
    return n;
}

inline uint64_t total_tokens(const Corpus& corpus) {
    uint64_t n = 0;
    for (const auto& item : corpus) {
        n += item.size();
    }
    return n;
}

inline std::vector<std::string> vocabulary(const Corpus& corpus) {
    std::set<std::string> terms;
    for (const auto& item : corpus) {
        terms.insert(item.begin(), item.end());
    }
    return {terms.begin(), terms.end()};
}

inline std::vector<std::string> distinct(std::span<const std::string> stems) {
    std::vector<std::string> out(stems.begin(), stems.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline size_t unique_terms(const std::vector<std::string>& item) {
    return distinct(item).size();
}

// --- term weighting ---

inline double idf(const Corpus& corpus, const std::string& term, bool second_variant) {
    const size_t d = df(corpus, term);
    if (d == 0) {
        return 0.0;
    }
    if (second_variant) {
        return std::log(static_cast<double>(d));
    }
    return std::log(static_cast<double>(corpus.size()) / static_cast<double>(d));
}

inline double euclidean_norm(const Corpus& corpus, size_t item, bool second_variant) {
    double sumsq = 0.0;
    for (const auto& term : distinct(corpus[item])) {
        const double w =
            static_cast<double>(tf(corpus[item], term)) * idf(corpus, term, second_variant);
        sumsq += w * w;
    }
    return std::sqrt(sumsq);
}

enum class Norm { Cosine, PivotedCosine, PivotedUnique };

struct WeightingParams {
    bool second_idf = false;
    Norm norm = Norm::Cosine;
    double slope = 0.25;
    double pivot = 1.0;
    bool pivot_on_cosine_norm = false;
};

inline double auto_pivot(const Corpus& corpus, const WeightingParams& params) {
    if (corpus.empty()) {
        return 1.0;
    }
    double pivot = 1.0;
    if (params.norm == Norm::PivotedCosine) {
        double sum = 0.0;
        for (size_t i = 0; i < corpus.size(); ++i) {
            sum += params.pivot_on_cosine_norm
                       ? euclidean_norm(corpus, i, params.second_idf)
                       : static_cast<double>(corpus[i].size());
        }
        pivot = sum / static_cast<double>(corpus.size());
    } else if (params.norm == Norm::PivotedUnique) {
        double sum = 0.0;
        for (const auto& item : corpus) {
            sum += static_cast<double>(unique_terms(item));
        }
        pivot = sum / static_cast<double>(corpus.size());
    }
    return pivot > 0.0 ? pivot : 1.0;
}

inline double norm_factor(const Corpus& corpus, size_t item,
                          const WeightingParams& params) {
    switch (params.norm) {
    case Norm::Cosine: {
        const double n = euclidean_norm(corpus, item, params.second_idf);
        return n > 0.0 ? 1.0 / n : 1.0;
    }
    case Norm::PivotedCosine: {
        const double stat = params.pivot_on_cosine_norm
                                ? euclidean_norm(corpus, item, params.second_idf)
                                : static_cast<double>(corpus[item].size());
        return 1.0 / ((1.0 - params.slope) * params.pivot + params.slope * stat);
    }
    case Norm::PivotedUnique: {
        const double stat = static_cast<double>(unique_terms(corpus[item]));
        return 1.0 / ((1.0 - params.slope) * params.pivot + params.slope * stat);
    }
    }
    return 1.0;
}

inline double term_weight(const Corpus& corpus, const std::string& term, size_t item,
                          const WeightingParams& params) {
    const size_t f = tf(corpus[item], term);
    if (f == 0) {
        return 0.0;
    }
    return static_cast<double>(f) * idf(corpus, term, params.second_idf) *
           norm_factor(corpus, item, params);
}

inline double similarity(const Corpus& corpus, std::span<const std::string> query,
                         size_t item, const WeightingParams& params) {
    double sum = 0.0;
    for (const auto& term : distinct(query)) {
        sum += term_weight(corpus, term, item, params);
    }
    return sum;
}

// --- smoothed language models ---

inline double dirichlet(const Corpus& corpus, const std::string& term, size_t item,
                        double mu) {
    const double background =
        total_tokens(corpus) > 0
            ? static_cast<double>(cf(corpus, term)) /
                  static_cast<double>(total_tokens(corpus))
            : 0.0;
    const double denom = static_cast<double>(corpus[item].size()) + mu;
    if (denom <= 0.0) {
        return 0.0;
    }
    return (static_cast<double>(tf(corpus[item], term)) + mu * background) / denom;
}

inline double query_likelihood(const Corpus& corpus,
                               std::span<const std::string> query, size_t item,
                               double mu) {
    double likelihood = 1.0;
    for (const auto& stem : query) {
        if (cf(corpus, stem) == 0) {
            continue;
        }
        likelihood *= dirichlet(corpus, stem, item, mu);
    }
    return likelihood;
}

// Literal double sum: numerator per term, one shared denominator.
inline std::map<std::string, double> relevance_model(
    const Corpus& corpus, std::span<const std::string> query,
    std::span<const size_t> feedback, double mu) {
    const double prior = 1.0 / static_cast<double>(feedback.size());
    std::map<std::string, double> numerators;
    double denominator = 0.0;
    for (const auto& term : vocabulary(corpus)) {
        double num = 0.0;
        for (size_t item : feedback) {
            num += dirichlet(corpus, term, item, mu) *
                   query_likelihood(corpus, query, item, mu) * prior;
        }
        numerators[term] = num;
        denominator += num;
    }
    for (auto& [term, value] : numerators) {
        value /= denominator;
    }
    return numerators;
}

// Literal triple sum over candidate concepts and feedback items of the
// factorized joint.
inline std::map<std::string, double> lce(const Corpus& corpus,
                                         std::span<const std::string> query,
                                         std::span<const size_t> feedback,
                                         double mu) {
    std::map<std::string, double> numerators;
    double denominator = 0.0;
    for (const auto& candidate : vocabulary(corpus)) {
        double num = 0.0;
        for (size_t item : feedback) {
            const double joint = (1.0 / static_cast<double>(feedback.size())) *
                                 query_likelihood(corpus, query, item, mu) *
                                 dirichlet(corpus, candidate, item, mu);
            num += joint;
        }
        numerators[candidate] = num;
        denominator += num;
    }
    for (auto& [candidate, value] : numerators) {
        value /= denominator;
    }
    return numerators;
}

// --- proximity ---

inline double proximity(const std::vector<std::string>& item,
                        std::span<const std::string> query, uint32_t window) {
    const std::vector<std::string> terms = distinct(query);
    if (terms.size() < 2) {
        return 0.0;
    }
    auto is_query_term = [&terms](const std::string& s) {
        return std::binary_search(terms.begin(), terms.end(), s);
    };
    size_t ordered = 0;
    for (size_t i = 0; i + 1 < item.size(); ++i) {
        if (is_query_term(item[i]) && is_query_term(item[i + 1]) &&
            item[i] != item[i + 1]) {
            ++ordered;
        }
    }
    size_t within = 0;
    for (size_t i = 0; i < item.size(); ++i) {
        for (size_t j = i + 1; j < item.size(); ++j) {
            if (is_query_term(item[i]) && is_query_term(item[j]) &&
                item[i] != item[j] && j - i <= window) {
                ++within;
            }
        }
    }
    return static_cast<double>(ordered) + 0.5 * static_cast<double>(within);
}

// --- composite tweet rank ---

inline double recency(int64_t timestamp, int64_t now, double half_life) {
    if (timestamp > now) {
        return 1.0;
    }
    return std::exp2(-static_cast<double>(now - timestamp) / half_life);
}

inline double popularity(uint64_t engagement, uint64_t candidate_max) {
    if (candidate_max == 0) {
        return 0.0;
    }
    return std::log1p(static_cast<double>(engagement)) /
           std::log1p(static_cast<double>(candidate_max));
}

} // namespace oracle
