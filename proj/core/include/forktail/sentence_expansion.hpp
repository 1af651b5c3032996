#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "forktail/index.hpp"
#include "forktail/weighting.hpp"

namespace forktail {

/// How expansion-term probabilities are estimated from the feedback set.
enum class ExpansionModel { RelevanceModel, LatentConceptExpansion };

/// Whether pseudo-relevance feedback runs over the sentence repository or
/// over whole documents.
enum class FeedbackGranularity { Sentence, Document };

std::string_view to_string(ExpansionModel model);
std::string_view to_string(FeedbackGranularity granularity);

/// A named topic defined by stemmed keyword tags. Tags are sorted and
/// deduplicated on construction; an empty tag set is a config error.
struct TopicClass {
    std::string name;
    std::vector<std::string> keyword_tags;

    static TopicClass make(std::string name, std::vector<std::string> raw_keywords,
                           const Pipeline& pipeline);
};

struct ExpansionConfig {
    ExpansionModel model = ExpansionModel::RelevanceModel;
    double mu = 10.0;
    size_t n_feedback = 10;
    size_t k_expansion = 10;
    double lambda = 0.5;
    uint32_t proximity_window = 8;
    FeedbackGranularity granularity = FeedbackGranularity::Sentence;
};

/// Names of the topics whose tags intersect the sentence's stem set, in
/// sorted order. A sentence may land in zero, one or many topics.
std::vector<std::string> classify_sentence(std::span<const std::string> stems,
                                           std::span<const TopicClass> topics);

struct SentenceRepository {
    Index index;
    std::vector<std::string> warnings;
};

/// Splits every document of `documents` into sentences and builds a
/// sentence-kind index from them: each sentence is preprocessed,
/// classified against `topics` and recorded with its parent document id
/// and ordinal. Sentences that preprocess to nothing are dropped; a
/// document none of whose sentences survive is skipped with a warning.
SentenceRepository build_sentence_repository(const Index& documents,
                                             const Pipeline& pipeline,
                                             std::span<const TopicClass> topics);

/// Dirichlet-smoothed item language model:
/// (tf + mu * cf/T) / (length + mu), where cf/T is the corpus unigram
/// model. With mu = 0 this degenerates to the maximum-likelihood model.
double dirichlet_probability(const Index& index, std::string_view term,
                             uint32_t item_id, double mu);

/// Product of dirichlet_probability over the query stems that occur
/// somewhere in the corpus (unseen stems are skipped rather than zeroing
/// every item).
double query_likelihood(const Index& index, std::span<const std::string> query_stems,
                        uint32_t item_id, double mu);

/// Term distribution estimated from a feedback set, with the items it was
/// estimated from. Probabilities are non-negative and sum to 1 over the
/// corpus vocabulary.
struct RelevanceDistribution {
    std::map<std::string, double> probabilities;
    std::vector<uint32_t> feedback_set;
};

/// Relevance-model estimate over an explicit feedback set: each item is
/// weighted by its normalized query likelihood (uniform prior), and the
/// result is the mixture of the items' smoothed language models. With a
/// single feedback item the mixture weight is exactly 1, so the output
/// equals that item's smoothed model bit for bit.
/// Throws EmptyFeedbackError when feedback_set is empty or every query
/// likelihood is zero.
RelevanceDistribution relevance_model(const Index& index,
                                      std::span<const std::string> query_stems,
                                      std::span<const uint32_t> feedback_set,
                                      double mu);

/// First-pass retrieval then relevance_model: the feedback set is the top
/// n_feedback items by similarity under `weighting` (ties to the lower
/// item id) among items matching at least one query stem.
/// Throws EmptyFeedbackError when nothing matches.
RelevanceDistribution estimate_relevance_model(const Index& index,
                                               std::span<const std::string> query_stems,
                                               size_t n_feedback, double mu,
                                               const WeightingConfig& weighting);

/// Latent-concept weights over single-term candidates: the joint
/// P(Q,E,D) is factorized as P(D) * prod P(q|D) * P(E|D) with
/// Dirichlet-smoothed models, summed over the feedback set and normalized
/// over all candidate terms (the corpus vocabulary).
std::map<std::string, double> lce_weights(const Index& index,
                                          std::span<const std::string> query_stems,
                                          std::span<const uint32_t> feedback_set,
                                          double mu);

/// Single-candidate view of lce_weights.
double lce_weight(const Index& index, const std::string& expansion_term,
                  std::span<const std::string> query_stems,
                  std::span<const uint32_t> feedback_set, double mu);

/// Mixture of per-document term probabilities under a document posterior:
/// sum of posterior[d] * term_given_doc[d]. The posterior must sum to
/// 1 +- 1e-9 (throws std::domain_error otherwise).
double combine_document_score(std::span<const double> term_given_doc,
                              std::span<const double> doc_posterior);

/// Same mixture with p(term|doc) taken from the index's smoothed models.
/// doc_posterior pairs item ids with posterior mass.
double combine_document_score(const Index& index, std::string_view term,
                              std::span<const std::pair<uint32_t, double>> doc_posterior,
                              double mu);

/// Positional proximity signal: the count of ordered adjacent pairs of
/// distinct query stems, plus 0.5 per unordered occurrence pair of
/// distinct query stems within `window` positions. 0 when the query has
/// fewer than two distinct stems.
double proximity_feature(const Index& index, std::span<const std::string> query_stems,
                         uint32_t item_id, uint32_t window = 8);

/// An original query plus weighted expansion terms. expansion_terms are
/// (stem, weight) sorted by weight descending then stem, never contain an
/// original stem, and number at most the configured k.
struct ExpandedQuery {
    std::vector<std::string> original_stems;
    std::vector<std::pair<std::string, double>> expansion_terms;
    double lambda = 0.5;
    std::vector<uint32_t> feedback_set;
    std::vector<std::string> warnings;
};

/// Pseudo-relevance-feedback expansion over `feedback_index`: candidate
/// items are ranked by similarity + proximity, preferring items that
/// contain every query stem (falling back to partial matches when none
/// does); the configured model is estimated over the top n_feedback of
/// them and the k_expansion most probable non-query terms become
/// expansion terms weighted by their probabilities. When no item matches
/// any query stem the query is returned unexpanded with a warning.
ExpandedQuery expand_query_stems(const Index& feedback_index,
                                 std::span<const std::string> query_stems,
                                 const ExpansionConfig& config,
                                 const WeightingConfig& weighting);

/// Preprocesses the query text first. Throws EmptyQueryError when nothing
/// survives preprocessing.
ExpandedQuery expand_query(const Index& feedback_index, const Pipeline& pipeline,
                           const std::string& query, const ExpansionConfig& config,
                           const WeightingConfig& weighting);

struct SlrsResult {
    uint32_t item_id = 0;
    double score = 0.0;
};

struct SlrsOutcome {
    std::vector<SlrsResult> results;
    ExpandedQuery expansion;
    std::vector<std::string> warnings;
};

/// Sentence-level retrieval scheme over document-kind items:
///   score(d) = lambda * (similarity(original, d) + proximity(original, d))
///            + (1 - lambda) * sum over expansion terms of weight * term_weight
/// Feedback runs over `sentences` when the config says so and a non-empty
/// repository is supplied, else over the documents themselves. Candidates
/// match at least one original stem, or an expansion term when expansion
/// carries weight (lambda < 1). Results are sorted by score descending
/// with the lower item id first on ties, truncated to k_results.
SlrsOutcome slrs_search(const Index& documents, const Index* sentences,
                        const Pipeline& pipeline, const std::string& query,
                        size_t k_results, const ExpansionConfig& config,
                        const WeightingConfig& weighting);

/// Same, over already-preprocessed stems.
SlrsOutcome slrs_search_stems(const Index& documents, const Index* sentences,
                              std::span<const std::string> query_stems,
                              size_t k_results, const ExpansionConfig& config,
                              const WeightingConfig& weighting);

} // namespace forktail
