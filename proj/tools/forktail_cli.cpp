#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "forktail/config.hpp"
#include "forktail/engine.hpp"
#include "forktail/errors.hpp"
#include "forktail/eval.hpp"
#include "forktail/index.hpp"
#include "forktail/ingest.hpp"

namespace {

namespace fs = std::filesystem;
using namespace forktail;

fs::path sentences_sidecar(const fs::path& index_path) {
    fs::path sidecar = index_path;
    sidecar += ".sentences";
    return sidecar;
}

int64_t wall_clock() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

EngineConfig resolve_config(const std::string& config_path) {
    if (config_path.empty()) {
        return EngineConfig{};
    }
    return load_config(config_path);
}

Pipeline resolve_pipeline(const EngineConfig& config) {
    if (config.stopwords_file.has_value()) {
        return Pipeline(load_stopwords(*config.stopwords_file));
    }
    return Pipeline{};
}

void emit_warnings(const std::vector<std::string>& warnings) {
    for (const auto& warning : warnings) {
        std::cerr << "warning: " << warning << '\n';
    }
}

std::string single_line(std::string text) {
    for (char& c : text) {
        if (c == '\t' || c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return text;
}

Engine load_engine(const std::string& index_path, const std::string& config_path) {
    EngineConfig config = resolve_config(config_path);
    Pipeline pipeline = resolve_pipeline(config);
    Index index = Index::load(index_path);
    std::optional<Index> sentences;
    if (const fs::path sidecar = sentences_sidecar(index_path); fs::exists(sidecar)) {
        sentences = Index::load(sidecar);
    }
    return Engine(std::move(index), std::move(sentences), std::move(pipeline),
                  std::move(config));
}

void run_index(const std::string& kind_name, const std::string& input,
               const std::string& topics_path, const std::string& out,
               const std::string& config_path) {
    const CorpusKind kind = corpus_kind_from_string(kind_name);
    const EngineConfig config = resolve_config(config_path);
    const Pipeline pipeline = resolve_pipeline(config);

    std::vector<TopicClass> topics;
    if (!topics_path.empty()) {
        if (kind != CorpusKind::Documents) {
            throw ConfigError("--topics applies only to document corpora");
        }
        topics = load_topics(topics_path, pipeline);
    }

    IngestResult result = ingest_file(input, kind, pipeline, topics);
    emit_warnings(result.report.warnings);

    result.index.save(out);
    std::cout << "indexed " << result.report.items_indexed << ' ' << kind_name
              << " (vocabulary " << result.report.vocabulary_size << ")\n";
    if (result.sentences.has_value()) {
        std::cout << "sentences " << result.report.sentences_indexed << '\n';
    }
    std::cout << "skipped " << result.report.records_skipped << '\n';
    std::cout << "wrote " << out << '\n';
    if (result.sentences.has_value()) {
        const fs::path sidecar = sentences_sidecar(out);
        result.sentences->save(sidecar);
        std::cout << "wrote " << sidecar.string() << '\n';
    }
}

void run_query(const std::string& index_path, const std::string& config_path,
               std::optional<int64_t> now, const std::string& query) {
    const Engine engine = load_engine(index_path, config_path);
    const QueryOutcome outcome = engine.run(query, now.value_or(wall_clock()));
    emit_warnings(outcome.warnings);

    std::cout << "path: " << to_string(outcome.executed_path) << '\n';
    std::cout << std::fixed << std::setprecision(6);
    if (outcome.executed_path == QueryPath::Slrs &&
        !outcome.expansion.expansion_terms.empty()) {
        std::cout << "expansion:";
        for (const auto& [term, weight] : outcome.expansion.expansion_terms) {
            std::cout << ' ' << term << ':' << weight;
        }
        std::cout << '\n';
    }
    size_t rank = 1;
    for (const RankedLine& line : outcome.results) {
        std::cout << rank++ << '\t' << line.external_id << '\t' << line.score
                  << '\t' << single_line(line.display) << '\n';
    }
}

void run_eval(const std::string& index_path, const std::string& queries_path,
              const std::string& judgments_path, const std::string& config_path,
              std::optional<int64_t> now) {
    const Engine engine = load_engine(index_path, config_path);
    const auto queries = load_queries(queries_path);
    const auto judgments = load_judgments(judgments_path);
    const EvalReport report =
        evaluate(engine, queries, judgments, now.value_or(wall_clock()));
    std::cout << report.render();
}

void run_dump(const std::string& index_path, const std::string& term) {
    const Index index = Index::load(index_path);
    std::cout << "term: " << term << '\n';
    std::cout << "df: " << index.document_frequency(term) << '\n';
    std::cout << "cf: " << index.collection_frequency(term) << '\n';
    for (const Posting& posting : index.postings(term)) {
        std::cout << posting.item_id << '\t'
                  << index.metadata(posting.item_id).external_id << '\t'
                  << posting.term_frequency << '\t';
        for (size_t i = 0; i < posting.positions.size(); ++i) {
            std::cout << (i > 0 ? "," : "") << posting.positions[i];
        }
        std::cout << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-mode text retrieval: tweet ranking for short queries, "
                 "expansion-based document ranking for long ones"};
    app.require_subcommand(1);

    std::string kind;
    std::string input;
    std::string topics;
    std::string out;
    std::string config_path;
    std::string index_path;
    std::string query_text;
    std::string queries_path;
    std::string judgments_path;
    std::string term;
    std::optional<int64_t> now;

    auto* cmd_index = app.add_subcommand("index", "build an index from a corpus");
    cmd_index->add_option("--kind", kind, "corpus kind: tweets or documents")
        ->required();
    cmd_index->add_option("--input", input, "line-delimited JSON corpus")
        ->required();
    cmd_index->add_option("--topics", topics, "topic definitions (documents only)");
    cmd_index->add_option("--out", out, "index file to write")->required();
    cmd_index->add_option("--config", config_path, "engine config file");

    auto* cmd_query = app.add_subcommand("query", "run one query against an index");
    cmd_query->add_option("--index", index_path, "index file")->required();
    cmd_query->add_option("--now", now, "fixed clock, epoch seconds");
    cmd_query->add_option("--config", config_path, "engine config file");
    cmd_query->add_option("query", query_text, "query text")->required();

    auto* cmd_eval = app.add_subcommand("eval", "score a query battery");
    cmd_eval->add_option("--index", index_path, "index file")->required();
    cmd_eval->add_option("--queries", queries_path, "one query per line")
        ->required();
    cmd_eval->add_option("--judgments", judgments_path,
                         "relevant ids per query, JSON lines")
        ->required();
    cmd_eval->add_option("--config", config_path, "engine config file");
    cmd_eval->add_option("--now", now, "fixed clock, epoch seconds");

    auto* cmd_dump = app.add_subcommand("dump", "print a term's postings");
    cmd_dump->add_option("--index", index_path, "index file")->required();
    cmd_dump->add_option("--term", term, "stemmed term")->required();

    try {
        app.parse(argc, argv);
        if (cmd_index->parsed()) {
            run_index(kind, input, topics, out, config_path);
        } else if (cmd_query->parsed()) {
            run_query(index_path, config_path, now, query_text);
        } else if (cmd_eval->parsed()) {
            run_eval(index_path, queries_path, judgments_path, config_path, now);
        } else if (cmd_dump->parsed()) {
            run_dump(index_path, term);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
