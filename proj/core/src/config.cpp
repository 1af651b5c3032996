#include "forktail/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "forktail/errors.hpp"

namespace forktail {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
    throw ConfigError("config key '" + std::string(key) + "': invalid value '" +
                      std::string(value) + "' (expected " + std::string(expected) +
                      ")");
}

double parse_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        bad_value(key, value, "a number");
    }
    return out;
}

uint64_t parse_unsigned(std::string_view key, std::string_view value) {
    uint64_t out = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        bad_value(key, value, "a non-negative integer");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off") {
        return false;
    }
    bad_value(key, value, "true or false");
}

std::vector<double> parse_triple(std::string_view key, std::string_view value) {
    std::string spaced(value);
    for (char& c : spaced) {
        if (c == ',') {
            c = ' ';
        }
    }
    std::istringstream in(spaced);
    std::vector<double> out;
    std::string piece;
    while (in >> piece) {
        out.push_back(parse_double(key, piece));
    }
    if (out.size() != 3) {
        bad_value(key, value, "three numbers");
    }
    return out;
}

void apply(EngineConfig& config, std::string_view key, std::string_view value) {
    if (key == "idf_variant") {
        if (value == "idf1") {
            config.weighting.scheme.idf = IdfVariant::Idf1;
        } else if (value == "idf2") {
            config.weighting.scheme.idf = IdfVariant::Idf2;
        } else {
            bad_value(key, value, "idf1 or idf2");
        }
    } else if (key == "norm_variant") {
        if (value == "cosine") {
            config.weighting.scheme.norm = NormVariant::Cosine;
        } else if (value == "pivoted_cosine") {
            config.weighting.scheme.norm = NormVariant::PivotedCosine;
        } else if (value == "pivoted_unique") {
            config.weighting.scheme.norm = NormVariant::PivotedUnique;
        } else {
            bad_value(key, value, "cosine, pivoted_cosine or pivoted_unique");
        }
    } else if (key == "slope") {
        const double slope = parse_double(key, value);
        if (slope < 0.0 || slope > 1.0) {
            bad_value(key, value, "a number in [0, 1]");
        }
        config.weighting.slope = slope;
    } else if (key == "pivot") {
        if (value == "auto") {
            config.weighting.pivot.reset();
        } else {
            const double pivot = parse_double(key, value);
            if (pivot <= 0.0) {
                bad_value(key, value, "a positive number or auto");
            }
            config.weighting.pivot = pivot;
        }
    } else if (key == "pivot_stat") {
        if (value == "length") {
            config.weighting.pivot_stat = PivotStat::Length;
        } else if (value == "cosine_norm") {
            config.weighting.pivot_stat = PivotStat::CosineNorm;
        } else {
            bad_value(key, value, "length or cosine_norm");
        }
    } else if (key == "half_life_seconds") {
        const double half_life = parse_double(key, value);
        if (half_life <= 0.0) {
            bad_value(key, value, "a positive number");
        }
        config.half_life_seconds = half_life;
    } else if (key == "rank_weights") {
        const auto triple = parse_triple(key, value);
        config.rank_weights = RankWeights::normalized(triple[0], triple[1], triple[2]);
    } else if (key == "expansion_model") {
        if (value == "rm") {
            config.expansion.model = ExpansionModel::RelevanceModel;
        } else if (value == "lce") {
            config.expansion.model = ExpansionModel::LatentConceptExpansion;
        } else {
            bad_value(key, value, "rm or lce");
        }
    } else if (key == "mu") {
        const double mu = parse_double(key, value);
        if (mu < 0.0) {
            bad_value(key, value, "a non-negative number");
        }
        config.expansion.mu = mu;
    } else if (key == "n_feedback") {
        const uint64_t n = parse_unsigned(key, value);
        if (n == 0) {
            bad_value(key, value, "a positive integer");
        }
        config.expansion.n_feedback = static_cast<size_t>(n);
    } else if (key == "k_expansion") {
        config.expansion.k_expansion =
            static_cast<size_t>(parse_unsigned(key, value));
    } else if (key == "lambda") {
        const double lambda = parse_double(key, value);
        if (lambda < 0.0 || lambda > 1.0) {
            bad_value(key, value, "a number in [0, 1]");
        }
        config.expansion.lambda = lambda;
    } else if (key == "proximity_window") {
        config.expansion.proximity_window =
            static_cast<uint32_t>(parse_unsigned(key, value));
    } else if (key == "feedback_granularity") {
        if (value == "sentence") {
            config.expansion.granularity = FeedbackGranularity::Sentence;
        } else if (value == "document") {
            config.expansion.granularity = FeedbackGranularity::Document;
        } else {
            bad_value(key, value, "sentence or document");
        }
    } else if (key == "tweet_length_threshold") {
        const uint64_t threshold = parse_unsigned(key, value);
        if (threshold == 0) {
            bad_value(key, value, "a positive integer");
        }
        config.dispatch.tweet_length_threshold = static_cast<uint32_t>(threshold);
    } else if (key == "dispatch_strict") {
        config.dispatch.strict_less = parse_bool(key, value);
    } else if (key == "stopwords_file") {
        if (value.empty()) {
            bad_value(key, value, "a file path");
        }
        config.stopwords_file = std::filesystem::path(value);
    } else if (key == "k_results") {
        const uint64_t k = parse_unsigned(key, value);
        if (k == 0) {
            bad_value(key, value, "a positive integer");
        }
        config.k_results = static_cast<size_t>(k);
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

} // namespace

EngineConfig parse_config(std::string_view text) {
    EngineConfig config;
    size_t line_number = 0;
    size_t start = 0;
    while (start <= text.size()) {
        const size_t newline = text.find('\n', start);
        std::string_view line = newline == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, newline - start);
        ++line_number;
        if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (!line.empty()) {
            const size_t eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("config line " + std::to_string(line_number) +
                                  ": expected key = value");
            }
            const std::string_view key = trim(line.substr(0, eq));
            const std::string_view value = trim(line.substr(eq + 1));
            if (key.empty()) {
                throw ConfigError("config line " + std::to_string(line_number) +
                                  ": empty key");
            }
            apply(config, key, value);
        }
        if (newline == std::string_view::npos) {
            break;
        }
        start = newline + 1;
    }
    return config;
}

EngineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string render_config(const EngineConfig& config) {
    std::ostringstream out;
    out << "idf_variant = "
        << (config.weighting.scheme.idf == IdfVariant::Idf1 ? "idf1" : "idf2")
        << '\n';
    out << "norm_variant = ";
    switch (config.weighting.scheme.norm) {
    case NormVariant::Cosine: out << "cosine"; break;
    case NormVariant::PivotedCosine: out << "pivoted_cosine"; break;
    case NormVariant::PivotedUnique: out << "pivoted_unique"; break;
    }
    out << '\n';
    out << "slope = " << config.weighting.slope << '\n';
    if (config.weighting.pivot.has_value()) {
        out << "pivot = " << *config.weighting.pivot << '\n';
    } else {
        out << "pivot = auto\n";
    }
    out << "pivot_stat = "
        << (config.weighting.pivot_stat == PivotStat::Length ? "length"
                                                             : "cosine_norm")
        << '\n';
    out << "half_life_seconds = " << config.half_life_seconds << '\n';
    out << "rank_weights = " << config.rank_weights.term << ", "
        << config.rank_weights.time << ", " << config.rank_weights.pop << '\n';
    out << "expansion_model = " << to_string(config.expansion.model) << '\n';
    out << "mu = " << config.expansion.mu << '\n';
    out << "n_feedback = " << config.expansion.n_feedback << '\n';
    out << "k_expansion = " << config.expansion.k_expansion << '\n';
    out << "lambda = " << config.expansion.lambda << '\n';
    out << "proximity_window = " << config.expansion.proximity_window << '\n';
    out << "feedback_granularity = " << to_string(config.expansion.granularity)
        << '\n';
    out << "tweet_length_threshold = " << config.dispatch.tweet_length_threshold
        << '\n';
    out << "dispatch_strict = " << (config.dispatch.strict_less ? "true" : "false")
        << '\n';
    if (config.stopwords_file.has_value()) {
        out << "stopwords_file = " << config.stopwords_file->string() << '\n';
    }
    out << "k_results = " << config.k_results << '\n';
    return out.str();
}

} // namespace forktail
