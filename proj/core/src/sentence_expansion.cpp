#include "forktail/sentence_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "forktail/errors.hpp"

namespace forktail {

namespace {

std::vector<std::string> distinct_sorted(std::span<const std::string> stems) {
    std::vector<std::string> out(stems.begin(), stems.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const Posting* find_posting(const Index& index, std::string_view term,
                            uint32_t item_id) {
    const auto& list = index.postings(term);
    auto it = std::lower_bound(list.begin(), list.end(), item_id,
                               [](const Posting& p, uint32_t id) {
                                   return p.item_id < id;
                               });
    if (it == list.end() || it->item_id != item_id) {
        return nullptr;
    }
    return &*it;
}

std::set<uint32_t> items_matching_any(const Index& index,
                                      const std::vector<std::string>& stems) {
    std::set<uint32_t> out;
    for (const auto& stem : stems) {
        for (const auto& posting : index.postings(stem)) {
            out.insert(posting.item_id);
        }
    }
    return out;
}

} // namespace

std::string_view to_string(ExpansionModel model) {
    switch (model) {
    case ExpansionModel::RelevanceModel: return "rm";
    case ExpansionModel::LatentConceptExpansion: return "lce";
    }
    return "rm";
}

std::string_view to_string(FeedbackGranularity granularity) {
    switch (granularity) {
    case FeedbackGranularity::Sentence: return "sentence";
    case FeedbackGranularity::Document: return "document";
    }
    return "sentence";
}

TopicClass TopicClass::make(std::string name, std::vector<std::string> raw_keywords,
                            const Pipeline& pipeline) {
    TopicClass topic;
    topic.name = std::move(name);
    for (const auto& raw : raw_keywords) {
        for (const auto& token : pipeline.preprocess(raw)) {
            topic.keyword_tags.push_back(token.stem);
        }
    }
    std::sort(topic.keyword_tags.begin(), topic.keyword_tags.end());
    topic.keyword_tags.erase(
        std::unique(topic.keyword_tags.begin(), topic.keyword_tags.end()),
        topic.keyword_tags.end());
    if (topic.keyword_tags.empty()) {
        throw ConfigError("topic '" + topic.name + "' has no usable keyword tags");
    }
    return topic;
}

std::vector<std::string> classify_sentence(std::span<const std::string> stems,
                                           std::span<const TopicClass> topics) {
    const std::vector<std::string> sentence_stems = distinct_sorted(stems);
    std::vector<std::string> assigned;
    for (const auto& topic : topics) {
        const bool overlaps = std::ranges::any_of(
            sentence_stems, [&topic](const std::string& stem) {
                return std::binary_search(topic.keyword_tags.begin(),
                                          topic.keyword_tags.end(), stem);
            });
        if (overlaps) {
            assigned.push_back(topic.name);
        }
    }
    std::sort(assigned.begin(), assigned.end());
    assigned.erase(std::unique(assigned.begin(), assigned.end()), assigned.end());
    return assigned;
}

SentenceRepository build_sentence_repository(const Index& documents,
                                             const Pipeline& pipeline,
                                             std::span<const TopicClass> topics) {
    SentenceRepository repo;
    for (uint32_t doc = 0; doc < documents.item_count(); ++doc) {
        if (documents.kind(doc) != ItemKind::Document) {
            continue;
        }
        const ItemMetadata& doc_meta = documents.metadata(doc);
        size_t kept = 0;
        for (const SentenceSpan& span : split_sentences(doc_meta.text)) {
            const std::vector<Token> tokens = pipeline.preprocess(span.text);
            if (tokens.empty()) {
                continue;
            }
            std::vector<std::string> stems;
            stems.reserve(tokens.size());
            for (const Token& token : tokens) {
                stems.push_back(token.stem);
            }
            ItemMetadata meta;
            meta.external_id =
                doc_meta.external_id + "#" + std::to_string(span.ordinal);
            meta.text = span.text;
            meta.parent_doc = doc;
            meta.ordinal = span.ordinal;
            meta.topics = classify_sentence(stems, topics);
            repo.index.add_item(ItemKind::Sentence, std::move(meta), tokens);
            ++kept;
        }
        if (kept == 0) {
            repo.warnings.push_back("document '" + doc_meta.external_id +
                                    "' yields no sentences after preprocessing");
        }
    }
    repo.index.freeze();
    return repo;
}

double dirichlet_probability(const Index& index, std::string_view term,
                             uint32_t item_id, double mu) {
    if (mu < 0.0) {
        throw ConfigError("mu must be non-negative");
    }
    const uint64_t total = index.total_tokens();
    const double background =
        total > 0 ? static_cast<double>(index.collection_frequency(term)) /
                        static_cast<double>(total)
                  : 0.0;
    const Posting* posting = find_posting(index, term, item_id);
    const double tf = posting != nullptr ? posting->term_frequency : 0.0;
    const double denom = static_cast<double>(index.length(item_id)) + mu;
    if (denom <= 0.0) {
        return 0.0;
    }
    return (tf + mu * background) / denom;
}

double query_likelihood(const Index& index, std::span<const std::string> query_stems,
                        uint32_t item_id, double mu) {
    double likelihood = 1.0;
    for (const auto& stem : query_stems) {
        if (index.collection_frequency(stem) == 0) {
            continue;
        }
        likelihood *= dirichlet_probability(index, stem, item_id, mu);
    }
    return likelihood;
}

RelevanceDistribution relevance_model(const Index& index,
                                      std::span<const std::string> query_stems,
                                      std::span<const uint32_t> feedback_set,
                                      double mu) {
    if (feedback_set.empty()) {
        throw EmptyFeedbackError("feedback set is empty");
    }
    const double prior = 1.0 / static_cast<double>(feedback_set.size());
    std::vector<double> weights(feedback_set.size(), 0.0);
    double weight_sum = 0.0;
    for (size_t i = 0; i < feedback_set.size(); ++i) {
        weights[i] = query_likelihood(index, query_stems, feedback_set[i], mu) * prior;
        weight_sum += weights[i];
    }
    if (weight_sum <= 0.0) {
        throw EmptyFeedbackError("every feedback item has zero query likelihood");
    }
    for (double& w : weights) {
        w /= weight_sum;
    }

    RelevanceDistribution dist;
    dist.feedback_set.assign(feedback_set.begin(), feedback_set.end());
    for (const auto& term : index.vocabulary()) {
        double prob = 0.0;
        for (size_t i = 0; i < feedback_set.size(); ++i) {
            prob += weights[i] * dirichlet_probability(index, term, feedback_set[i], mu);
        }
        dist.probabilities.emplace(term, prob);
    }
    return dist;
}

RelevanceDistribution estimate_relevance_model(const Index& index,
                                               std::span<const std::string> query_stems,
                                               size_t n_feedback, double mu,
                                               const WeightingConfig& weighting) {
    if (n_feedback == 0) {
        throw ConfigError("n_feedback must be positive");
    }
    const std::vector<std::string> distinct = distinct_sorted(query_stems);
    const std::set<uint32_t> matching = items_matching_any(index, distinct);
    if (matching.empty()) {
        throw EmptyFeedbackError("no item matches any query term");
    }

    Scorer scorer(index, weighting);
    std::vector<std::pair<double, uint32_t>> ranked;
    ranked.reserve(matching.size());
    for (uint32_t id : matching) {
        ranked.emplace_back(scorer.similarity(query_stems, id), id);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) {
                      return a.first > b.first;
                  }
                  return a.second < b.second;
              });
    if (ranked.size() > n_feedback) {
        ranked.resize(n_feedback);
    }
    std::vector<uint32_t> feedback;
    feedback.reserve(ranked.size());
    for (const auto& [score, id] : ranked) {
        feedback.push_back(id);
    }
    return relevance_model(index, query_stems, feedback, mu);
}

std::map<std::string, double> lce_weights(const Index& index,
                                          std::span<const std::string> query_stems,
                                          std::span<const uint32_t> feedback_set,
                                          double mu) {
    if (feedback_set.empty()) {
        throw EmptyFeedbackError("feedback set is empty");
    }
    const double prior = 1.0 / static_cast<double>(feedback_set.size());
    std::vector<double> joint_weights(feedback_set.size(), 0.0);
    for (size_t i = 0; i < feedback_set.size(); ++i) {
        joint_weights[i] =
            prior * query_likelihood(index, query_stems, feedback_set[i], mu);
    }

    std::map<std::string, double> numerators;
    double denominator = 0.0;
    for (const auto& term : index.vocabulary()) {
        double joint = 0.0;
        for (size_t i = 0; i < feedback_set.size(); ++i) {
            joint += joint_weights[i] *
                     dirichlet_probability(index, term, feedback_set[i], mu);
        }
        numerators.emplace(term, joint);
        denominator += joint;
    }
    if (denominator <= 0.0) {
        throw EmptyFeedbackError("every candidate concept has zero joint probability");
    }
    for (auto& [term, value] : numerators) {
        value /= denominator;
    }
    return numerators;
}

double lce_weight(const Index& index, const std::string& expansion_term,
                  std::span<const std::string> query_stems,
                  std::span<const uint32_t> feedback_set, double mu) {
    const auto weights = lce_weights(index, query_stems, feedback_set, mu);
    auto it = weights.find(expansion_term);
    return it != weights.end() ? it->second : 0.0;
}

double combine_document_score(std::span<const double> term_given_doc,
                              std::span<const double> doc_posterior) {
    if (term_given_doc.size() != doc_posterior.size()) {
        throw std::domain_error("posterior and probability vectors differ in size");
    }
    double posterior_sum = 0.0;
    for (const double p : doc_posterior) {
        if (p < 0.0) {
            throw std::domain_error("document posterior has a negative entry");
        }
        posterior_sum += p;
    }
    if (std::abs(posterior_sum - 1.0) > 1e-9) {
        throw std::domain_error("document posterior does not sum to 1");
    }
    double mixture = 0.0;
    for (size_t i = 0; i < doc_posterior.size(); ++i) {
        mixture += doc_posterior[i] * term_given_doc[i];
    }
    return mixture;
}

double combine_document_score(const Index& index, std::string_view term,
                              std::span<const std::pair<uint32_t, double>> doc_posterior,
                              double mu) {
    std::vector<double> probs;
    std::vector<double> posterior;
    probs.reserve(doc_posterior.size());
    posterior.reserve(doc_posterior.size());
    for (const auto& [item_id, mass] : doc_posterior) {
        probs.push_back(dirichlet_probability(index, term, item_id, mu));
        posterior.push_back(mass);
    }
    return combine_document_score(probs, posterior);
}

double proximity_feature(const Index& index, std::span<const std::string> query_stems,
                         uint32_t item_id, uint32_t window) {
    const std::vector<std::string> distinct = distinct_sorted(query_stems);
    if (distinct.size() < 2) {
        return 0.0;
    }

    std::vector<std::vector<uint32_t>> positions;
    positions.reserve(distinct.size());
    for (const auto& stem : distinct) {
        const Posting* posting = find_posting(index, stem, item_id);
        if (posting != nullptr) {
            positions.push_back(posting->positions);
        }
    }
    if (positions.size() < 2) {
        return 0.0;
    }

    size_t ordered = 0;
    std::vector<std::pair<uint32_t, size_t>> occurrences;
    for (size_t s = 0; s < positions.size(); ++s) {
        for (uint32_t p : positions[s]) {
            occurrences.emplace_back(p, s);
        }
    }
    std::sort(occurrences.begin(), occurrences.end());
    for (size_t i = 0; i + 1 < occurrences.size(); ++i) {
        if (occurrences[i + 1].first == occurrences[i].first + 1 &&
            occurrences[i + 1].second != occurrences[i].second) {
            ++ordered;
        }
    }

    size_t within_window = 0;
    for (size_t a = 0; a < positions.size(); ++a) {
        for (size_t b = a + 1; b < positions.size(); ++b) {
            for (uint32_t pa : positions[a]) {
                for (uint32_t pb : positions[b]) {
                    const uint32_t lo = std::min(pa, pb);
                    const uint32_t hi = std::max(pa, pb);
                    if (hi - lo <= window) {
                        ++within_window;
                    }
                }
            }
        }
    }

    return static_cast<double>(ordered) + 0.5 * static_cast<double>(within_window);
}

ExpandedQuery expand_query_stems(const Index& feedback_index,
                                 std::span<const std::string> query_stems,
                                 const ExpansionConfig& config,
                                 const WeightingConfig& weighting) {
    if (query_stems.empty()) {
        throw EmptyQueryError("query has no terms after preprocessing");
    }
    if (config.lambda < 0.0 || config.lambda > 1.0) {
        throw ConfigError("lambda must lie in [0, 1]");
    }

    ExpandedQuery out;
    out.original_stems.assign(query_stems.begin(), query_stems.end());
    out.lambda = config.lambda;
    if (config.k_expansion == 0) {
        return out;
    }

    const std::vector<std::string> distinct = distinct_sorted(query_stems);
    const std::set<uint32_t> matching = items_matching_any(feedback_index, distinct);
    if (matching.empty()) {
        out.warnings.push_back(
            "no feedback item matches any query term; query left unexpanded");
        return out;
    }

    std::vector<uint32_t> pool;
    for (uint32_t id : matching) {
        const bool full = std::ranges::all_of(distinct, [&](const std::string& stem) {
            return find_posting(feedback_index, stem, id) != nullptr;
        });
        if (full) {
            pool.push_back(id);
        }
    }
    if (pool.empty()) {
        pool.assign(matching.begin(), matching.end());
    }

    Scorer scorer(feedback_index, weighting);
    std::vector<std::pair<double, uint32_t>> ranked;
    ranked.reserve(pool.size());
    for (uint32_t id : pool) {
        const double score =
            scorer.similarity(query_stems, id) +
            proximity_feature(feedback_index, query_stems, id, config.proximity_window);
        ranked.emplace_back(score, id);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return a.second < b.second;
    });
    if (ranked.size() > config.n_feedback) {
        ranked.resize(config.n_feedback);
    }
    for (const auto& [score, id] : ranked) {
        out.feedback_set.push_back(id);
    }

    std::map<std::string, double> distribution;
    try {
        if (config.model == ExpansionModel::RelevanceModel) {
            distribution = relevance_model(feedback_index, query_stems,
                                           out.feedback_set, config.mu)
                               .probabilities;
        } else {
            distribution =
                lce_weights(feedback_index, query_stems, out.feedback_set, config.mu);
        }
    } catch (const EmptyFeedbackError&) {
        out.warnings.push_back(
            "feedback items carry no probability mass; query left unexpanded");
        return out;
    }

    std::vector<std::pair<std::string, double>> candidates;
    for (const auto& [term, prob] : distribution) {
        if (prob <= 0.0) {
            continue;
        }
        if (std::binary_search(distinct.begin(), distinct.end(), term)) {
            continue;
        }
        candidates.emplace_back(term, prob);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) {
                      return a.second > b.second;
                  }
                  return a.first < b.first;
              });
    if (candidates.size() > config.k_expansion) {
        candidates.resize(config.k_expansion);
    }
    out.expansion_terms = std::move(candidates);
    return out;
}

ExpandedQuery expand_query(const Index& feedback_index, const Pipeline& pipeline,
                           const std::string& query, const ExpansionConfig& config,
                           const WeightingConfig& weighting) {
    const std::vector<std::string> stems = pipeline.stems(query);
    return expand_query_stems(feedback_index, stems, config, weighting);
}

SlrsOutcome slrs_search_stems(const Index& documents, const Index* sentences,
                              std::span<const std::string> query_stems,
                              size_t k_results, const ExpansionConfig& config,
                              const WeightingConfig& weighting) {
    if (query_stems.empty()) {
        throw EmptyQueryError("query has no terms after preprocessing");
    }

    SlrsOutcome out;
    const Index* feedback = &documents;
    if (config.granularity == FeedbackGranularity::Sentence) {
        if (sentences != nullptr && sentences->item_count() > 0) {
            feedback = sentences;
        } else {
            out.warnings.push_back(
                "sentence repository unavailable; using document-level feedback");
        }
    }

    out.expansion = expand_query_stems(*feedback, query_stems, config, weighting);
    out.warnings.insert(out.warnings.end(), out.expansion.warnings.begin(),
                        out.expansion.warnings.end());

    const std::vector<std::string> distinct = distinct_sorted(query_stems);
    std::set<uint32_t> candidates;
    for (const auto& stem : distinct) {
        for (const auto& posting : documents.postings(stem)) {
            if (documents.kind(posting.item_id) == ItemKind::Document) {
                candidates.insert(posting.item_id);
            }
        }
    }
    if (config.lambda < 1.0) {
        for (const auto& [term, weight] : out.expansion.expansion_terms) {
            for (const auto& posting : documents.postings(term)) {
                if (documents.kind(posting.item_id) == ItemKind::Document) {
                    candidates.insert(posting.item_id);
                }
            }
        }
    }
    if (candidates.empty()) {
        return out;
    }

    Scorer scorer(documents, weighting);
    out.results.reserve(candidates.size());
    for (uint32_t id : candidates) {
        const double base =
            scorer.similarity(query_stems, id) +
            proximity_feature(documents, query_stems, id, config.proximity_window);
        double expansion_sum = 0.0;
        for (const auto& [term, weight] : out.expansion.expansion_terms) {
            expansion_sum += weight * scorer.term_weight(term, id);
        }
        SlrsResult result;
        result.item_id = id;
        result.score = config.lambda * base + (1.0 - config.lambda) * expansion_sum;
        out.results.push_back(result);
    }
    std::sort(out.results.begin(), out.results.end(),
              [](const SlrsResult& a, const SlrsResult& b) {
                  if (a.score != b.score) {
                      return a.score > b.score;
                  }
                  return a.item_id < b.item_id;
              });
    if (out.results.size() > k_results) {
        out.results.resize(k_results);
    }
    return out;
}

SlrsOutcome slrs_search(const Index& documents, const Index* sentences,
                        const Pipeline& pipeline, const std::string& query,
                        size_t k_results, const ExpansionConfig& config,
                        const WeightingConfig& weighting) {
    const std::vector<std::string> stems = pipeline.stems(query);
    return slrs_search_stems(documents, sentences, stems, k_results, config,
                             weighting);
}

} // namespace forktail
