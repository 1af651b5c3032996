#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forktail/index.hpp"

namespace forktail {

/// The two inverse-document-frequency variants. Idf1 is log(D/d_i); Idf2
/// is log(d_i), implemented exactly as advertised even though it rewards
/// common terms.
enum class IdfVariant { Idf1, Idf2 };

/// The three document-length normalizations: cosine, pivoted cosine and
/// pivoted unique.
enum class NormVariant { Cosine, PivotedCosine, PivotedUnique };

/// One of the six term-weighting methods (2 idf variants x 3
/// normalizations).
struct WeightingScheme {
    IdfVariant idf = IdfVariant::Idf1;
    NormVariant norm = NormVariant::Cosine;

    bool operator==(const WeightingScheme&) const = default;
};

/// All six schemes, in a fixed order.
const std::array<WeightingScheme, 6>& all_schemes();

std::string to_string(const WeightingScheme& s);

/// Parameters of the pivoted normalizations: factor = 1 / ((1-slope)*pivot
/// + slope*statistic). slope must lie in [0,1] and pivot must be positive.
struct PivotParams {
    double slope = 0.25;
    double pivot = 1.0;
};

/// Which per-item statistic the pivoted-cosine normalization pivots on:
/// the token length (default) or the Euclidean norm of the item's tf*idf
/// vector.
enum class PivotStat { Length, CosineNorm };

/// Scheme plus its knobs; pivot == nullopt means "auto" (the corpus mean
/// of the pivoted statistic).
struct WeightingConfig {
    WeightingScheme scheme;
    double slope = 0.25;
    std::optional<double> pivot;
    PivotStat pivot_stat = PivotStat::Length;
};

/// log(D / d_i); 0 when the term occurs nowhere (unseen query terms are
/// routine and contribute nothing).
double idf1(const Index& index, std::string_view term);

/// log(d_i), as printed; 0 when the term occurs nowhere.
double idf2(const Index& index, std::string_view term);

/// 1/sqrt(sum of squares); 1 for an all-zero vector.
double cosine_norm_factor(std::span<const double> weights);

/// Euclidean norm of the item's tf*idf vector under the given idf variant.
double euclidean_weight_norm(const Index& index, uint32_t item_id,
                             IdfVariant idf);

/// 1 / ((1-slope)*pivot + slope*statistic); throws std::domain_error when
/// the denominator is not positive.
double pivoted_factor(double statistic, const PivotParams& params);

/// Cosine normalization factor of an item's tf*idf vector.
double norm_cosine(const Index& index, uint32_t item_id, IdfVariant idf);

/// Pivoted-cosine normalization over the item's token length.
double norm_pivoted_cosine(const Index& index, uint32_t item_id,
                           const PivotParams& params);

/// Pivoted-unique normalization over the item's distinct-term count.
double norm_pivoted_unique(const Index& index, uint32_t item_id,
                           const PivotParams& params);

/// Query-item scoring under one weighting scheme over a frozen index.
/// Pure reads; safe to share across threads.
class Scorer {
public:
    Scorer(const Index& index, WeightingConfig config);

    uint32_t tf(std::string_view term, uint32_t item_id) const;
    double idf(std::string_view term) const;
    double norm(uint32_t item_id) const;

    /// tf * idf * normalization; 0 when the term is absent from the item.
    double term_weight(std::string_view term, uint32_t item_id) const;

    /// Sum of term_weight over the distinct query stems (a dot product
    /// against a binary query vector).
    double similarity(std::span<const std::string> query_stems,
                      uint32_t item_id) const;

    double resolved_pivot() const { return params_.pivot; }
    const WeightingConfig& config() const { return config_; }
    const Index& index() const { return index_; }

private:
    const Index& index_;
    WeightingConfig config_;
    PivotParams params_;
};

} // namespace forktail
