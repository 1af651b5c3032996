#include "forktail/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "forktail/errors.hpp"

namespace forktail {

const std::array<WeightingScheme, 6>& all_schemes() {
    static const std::array<WeightingScheme, 6> schemes{{
        {IdfVariant::Idf1, NormVariant::Cosine},
        {IdfVariant::Idf1, NormVariant::PivotedCosine},
        {IdfVariant::Idf1, NormVariant::PivotedUnique},
        {IdfVariant::Idf2, NormVariant::Cosine},
        {IdfVariant::Idf2, NormVariant::PivotedCosine},
        {IdfVariant::Idf2, NormVariant::PivotedUnique},
    }};
    return schemes;
}

std::string to_string(const WeightingScheme& s) {
    std::string out = s.idf == IdfVariant::Idf1 ? "idf1" : "idf2";
    out += '+';
    switch (s.norm) {
    case NormVariant::Cosine: out += "cosine"; break;
    case NormVariant::PivotedCosine: out += "pivoted_cosine"; break;
    case NormVariant::PivotedUnique: out += "pivoted_unique"; break;
    }
    return out;
}

double idf1(const Index& index, std::string_view term) {
    auto d = index.document_frequency(term);
    if (d == 0)
        return 0.0;
    return std::log(static_cast<double>(index.stats().item_count) /
                    static_cast<double>(d));
}

double idf2(const Index& index, std::string_view term) {
    auto d = index.document_frequency(term);
    if (d == 0)
        return 0.0;
    return std::log(static_cast<double>(d));
}

double cosine_norm_factor(std::span<const double> weights) {
    double sumsq = 0.0;
    for (double w : weights)
        sumsq += w * w;
    if (sumsq <= 0.0)
        return 1.0;
    return 1.0 / std::sqrt(sumsq);
}

double euclidean_weight_norm(const Index& index, uint32_t item_id,
                             IdfVariant idf) {
    double sumsq = 0.0;
    for (const auto& [term, tf] : index.item_terms(item_id)) {
        double w = tf * (idf == IdfVariant::Idf1 ? idf1(index, term)
                                                 : idf2(index, term));
        sumsq += w * w;
    }
    return std::sqrt(sumsq);
}

double pivoted_factor(double statistic, const PivotParams& params) {
    if (params.slope < 0.0 || params.slope > 1.0)
        throw std::domain_error("slope must lie in [0,1]");
    double denom = (1.0 - params.slope) * params.pivot +
                   params.slope * statistic;
    if (denom <= 0.0)
        throw std::domain_error("pivoted normalization denominator is not positive");
    return 1.0 / denom;
}

double norm_cosine(const Index& index, uint32_t item_id, IdfVariant idf) {
    double n = euclidean_weight_norm(index, item_id, idf);
    if (n <= 0.0)
        return 1.0;
    return 1.0 / n;
}

double norm_pivoted_cosine(const Index& index, uint32_t item_id,
                           const PivotParams& params) {
    return pivoted_factor(index.length(item_id), params);
}

double norm_pivoted_unique(const Index& index, uint32_t item_id,
                           const PivotParams& params) {
    return pivoted_factor(index.unique_terms(item_id), params);
}

Scorer::Scorer(const Index& index, WeightingConfig config)
    : index_(index), config_(config) {
    if (config.slope < 0.0 || config.slope > 1.0)
        throw ConfigError("slope must lie in [0,1]");
    if (config.pivot && *config.pivot <= 0.0)
        throw ConfigError("pivot must be positive");

    params_.slope = config.slope;
    if (config.pivot) {
        params_.pivot = *config.pivot;
        return;
    }
    // "auto": the corpus mean of whichever statistic is pivoted on.
    const auto& stats = index.stats();
    double pivot = 1.0;
    if (stats.item_count > 0) {
        switch (config.scheme.norm) {
        case NormVariant::Cosine:
            break;
        case NormVariant::PivotedCosine:
            if (config.pivot_stat == PivotStat::Length) {
                pivot = stats.avg_length;
            } else {
                double sum = 0.0;
                for (uint32_t id = 0; id < stats.item_count; ++id)
                    sum += euclidean_weight_norm(index, id, config.scheme.idf);
                pivot = sum / static_cast<double>(stats.item_count);
            }
            break;
        case NormVariant::PivotedUnique:
            pivot = stats.avg_unique;
            break;
        }
    }
    params_.pivot = pivot > 0.0 ? pivot : 1.0;
}

uint32_t Scorer::tf(std::string_view term, uint32_t item_id) const {
    // postings are sorted by item id
    if (item_id >= index_.item_count())
        throw std::out_of_range("unknown item id " + std::to_string(item_id));
    const auto& list = index_.postings(term);
    auto it = std::lower_bound(list.begin(), list.end(), item_id,
                               [](const Posting& p, uint32_t id) {
                                   return p.item_id < id;
                               });
    if (it == list.end() || it->item_id != item_id)
        return 0;
    return it->term_frequency;
}

double Scorer::idf(std::string_view term) const {
    return config_.scheme.idf == IdfVariant::Idf1 ? idf1(index_, term)
                                                  : idf2(index_, term);
}

double Scorer::norm(uint32_t item_id) const {
    switch (config_.scheme.norm) {
    case NormVariant::Cosine:
        return norm_cosine(index_, item_id, config_.scheme.idf);
    case NormVariant::PivotedCosine:
        if (config_.pivot_stat == PivotStat::CosineNorm)
            return pivoted_factor(
                euclidean_weight_norm(index_, item_id, config_.scheme.idf),
                params_);
        return norm_pivoted_cosine(index_, item_id, params_);
    case NormVariant::PivotedUnique:
        return norm_pivoted_unique(index_, item_id, params_);
    }
    return 1.0;
}

double Scorer::term_weight(std::string_view term, uint32_t item_id) const {
    uint32_t f = tf(term, item_id);
    if (f == 0)
        return 0.0;
    return static_cast<double>(f) * idf(term) * norm(item_id);
}

double Scorer::similarity(std::span<const std::string> query_stems,
                          uint32_t item_id) const {
    std::vector<std::string_view> distinct(query_stems.begin(),
                                           query_stems.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    double sum = 0.0;
    for (auto term : distinct)
        sum += term_weight(term, item_id);
    return sum;
}

} // namespace forktail
