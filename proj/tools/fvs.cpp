// Command line front end: index construction, baseline search, spectral
// re-ranking, feedback expansion, evaluation, and synthetic corpus output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "fvs/corpus.hpp"
#include "fvs/eval.hpp"
#include "fvs/expansion.hpp"
#include "fvs/index.hpp"
#include "fvs/objective.hpp"
#include "fvs/retrieval.hpp"
#include "fvs/run_format.hpp"
#include "fvs/synth.hpp"
#include "fvs/tokenizer.hpp"

namespace {

int default_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

struct TokenizerFlags {
    std::string stopword_path;
    bool no_stopwords = false;
    int min_token_length = 2;
    bool stem = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--stopwords", stopword_path,
                        "Stopword file, one word per line (default: built-in list, or the "
                        "file named by FVS_STOPWORDS)");
        cmd->add_flag("--no-stopwords", no_stopwords, "Index every token");
        cmd->add_option("--min-token-len", min_token_length, "Shortest indexable token")
            ->default_val(2);
        cmd->add_flag("--stem", stem, "Apply Porter stemming to indexable tokens");
    }

    fvs::Tokenizer build() const {
        fvs::TokenizerConfig config;
        if (no_stopwords) {
            config.stopwords.clear();
        } else if (!stopword_path.empty()) {
            config.stopwords = fvs::load_stopword_file(stopword_path);
        } else if (const char* env = std::getenv("FVS_STOPWORDS"); env && *env) {
            config.stopwords = fvs::load_stopword_file(env);
        } else {
            config.stopwords = fvs::default_stopwords();
        }
        config.min_token_length = min_token_length;
        config.stem = stem;
        return fvs::Tokenizer(std::move(config));
    }
};

struct QueryFlags {
    std::string topics_path;
    std::string query_text;
    int single_topic = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--topics", topics_path, "Topic file with <top> blocks");
        cmd->add_option("--query", query_text, "Single query string");
        cmd->add_option("--topic", single_topic, "Topic number for --query")->default_val(0);
    }

    std::vector<fvs::Topic> load() const {
        if (!topics_path.empty() && !query_text.empty())
            throw std::runtime_error("--topics and --query are mutually exclusive");
        if (!query_text.empty()) return {{single_topic, query_text}};
        if (topics_path.empty()) throw std::runtime_error("need --topics or --query");
        std::ifstream in(topics_path);
        if (!in) throw std::runtime_error("cannot open " + topics_path);
        return fvs::parse_topics(in);
    }
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

// Runs `body(stream)` with --out routed to a file or stdout.
template <typename Fn>
void with_output(const std::string& path, Fn&& body) {
    if (path.empty() || path == "-") {
        body(std::cout);
    } else {
        auto out = open_output(path);
        body(out);
    }
}

std::string to_hex(uint64_t value) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

fvs::Index load_index_checked(const std::string& path, const fvs::Tokenizer& tokenizer) {
    fvs::Index index = fvs::Index::load(path);
    if (index.tokenizer_fingerprint() != tokenizer.fingerprint()) {
        std::cerr << "fvs: warning: tokenizer settings differ from the ones the index was "
                     "built with (fingerprint "
                  << to_hex(tokenizer.fingerprint()) << " vs "
                  << to_hex(index.tokenizer_fingerprint()) << ")\n";
    }
    return index;
}

void append_run_lines(fvs::RunFile& run, const fvs::Index& index, int topic,
                      const fvs::RankedList& ranked, const std::string& tag) {
    int rank = 1;
    for (const auto& entry : ranked.entries) {
        run.lines.push_back({topic, index.doc(entry.doc).docno, rank++, entry.score, tag});
    }
}

std::vector<fvs::RunTopic> group_run_by_topic(const fvs::RunFile& run) {
    std::map<int, std::vector<std::string>> by_topic;
    for (const auto& line : run.lines) by_topic[line.topic].push_back(line.docno);
    std::vector<fvs::RunTopic> grouped;
    grouped.reserve(by_topic.size());
    for (auto& [topic, docnos] : by_topic) grouped.push_back({topic, std::move(docnos)});
    return grouped;
}

struct CorpusFlags {
    std::vector<std::string> trec_files;
    std::vector<std::string> plain_files;
    bool text_only = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--trec", trec_files, "SGML corpus file (repeatable)");
        cmd->add_option("--plain", plain_files, "docno<TAB>text corpus file (repeatable)");
        cmd->add_flag("--text-only", text_only, "Use only <TEXT> content from SGML documents");
    }

    bool empty() const { return trec_files.empty() && plain_files.empty(); }

    fvs::CorpusStore load() const {
        fvs::CorpusStore store;
        fvs::TrecSgmlOptions options;
        options.text_only = text_only;
        for (const auto& path : trec_files) {
            auto in = open_input(path);
            store.add_trec_file(in, options);
        }
        for (const auto& path : plain_files) {
            auto in = open_input(path);
            store.add_plain_file(in);
        }
        return store;
    }

    // Documents in deterministic file order for index construction.
    std::vector<fvs::RawDocument> load_ordered(std::vector<std::string>& warnings) const {
        std::vector<fvs::RawDocument> docs;
        fvs::TrecSgmlOptions options;
        options.text_only = text_only;
        for (const auto& path : trec_files) {
            auto in = open_input(path);
            auto result = fvs::parse_trec_sgml(in, options);
            for (auto& w : result.warnings) warnings.push_back(path + ": " + w);
            for (auto& d : result.documents) docs.push_back(std::move(d));
        }
        for (const auto& path : plain_files) {
            auto in = open_input(path);
            auto parsed = fvs::parse_plain_corpus(in);
            for (auto& d : parsed) docs.push_back(std::move(d));
        }
        return docs;
    }
};

int cmd_index(const CorpusFlags& corpus, const TokenizerFlags& tok, const std::string& out_path,
              int order, int threads, const std::string& export_path) {
    auto tokenizer = tok.build();
    std::vector<std::string> warnings;
    auto docs = corpus.load_ordered(warnings);
    for (const auto& w : warnings) std::cerr << "fvs: warning: " << w << '\n';
    if (docs.empty()) throw std::runtime_error("no documents parsed");

    std::vector<fvs::TokenStream> streams;
    streams.reserve(docs.size());
    for (const auto& d : docs) streams.push_back(tokenizer.run(d));

    auto index = fvs::Index::build(streams, order, tokenizer.fingerprint(), threads);
    index.save(out_path);
    std::cerr << "fvs: indexed " << index.doc_count() << " documents, "
              << index.vocabulary_size() << " terms, order " << index.order() << '\n';
    if (!export_path.empty()) {
        auto out = open_output(export_path);
        index.export_postings(out);
    }
    return 0;
}

int cmd_search(const std::string& index_path, const TokenizerFlags& tok, const QueryFlags& q,
               int top_n, const std::string& tag, const std::string& out_path) {
    auto tokenizer = tok.build();
    auto index = load_index_checked(index_path, tokenizer);
    auto topics = q.load();

    fvs::RunFile run;
    run.metadata = {{"mode", "tfidf"},
                    {"order", std::to_string(index.order())},
                    {"fingerprint", to_hex(index.tokenizer_fingerprint())},
                    {"tag", tag}};
    for (const auto& topic : topics) {
        auto query = fvs::make_query(topic.title, tokenizer);
        auto ranked = fvs::tfidf_search(index, query, top_n);
        append_run_lines(run, index, topic.id, ranked, tag);
    }
    with_output(out_path, [&](std::ostream& out) { fvs::write_run(out, run); });
    return 0;
}

int cmd_rerank(const std::string& index_path, const TokenizerFlags& tok, const QueryFlags& q,
               const std::string& objective_text, int candidates, int top_n, int threads,
               const std::string& tag, const std::string& out_path) {
    auto tokenizer = tok.build();
    auto index = load_index_checked(index_path, tokenizer);
    auto objective = fvs::parse_objective(objective_text);
    auto topics = q.load();

    fvs::RunFile run;
    run.metadata = {{"mode", "rerank"},
                    {"objective", objective.to_string()},
                    {"order", std::to_string(index.order())},
                    {"candidates", std::to_string(candidates)},
                    {"fingerprint", to_hex(index.tokenizer_fingerprint())},
                    {"tag", tag}};
    for (const auto& topic : topics) {
        auto query = fvs::make_query(topic.title, tokenizer);
        auto pool = fvs::tfidf_search(index, query, candidates);
        auto ranked = fvs::fvs_rerank(index, query, objective, pool, top_n, threads);
        append_run_lines(run, index, topic.id, ranked, tag);
    }
    with_output(out_path, [&](std::ostream& out) { fvs::write_run(out, run); });
    return 0;
}

fvs::Aggregator parse_aggregator(const std::string& name) {
    if (name == "sum") return fvs::Aggregator::Sum;
    if (name == "max") return fvs::Aggregator::Max;
    if (name == "mean") return fvs::Aggregator::Mean;
    throw std::runtime_error("unknown aggregator '" + name + "' (sum, max, mean)");
}

int cmd_expand(const std::string& index_path, const TokenizerFlags& tok, const QueryFlags& q,
               const fvs::ExpansionParams& params, const std::string& aggregator_name,
               bool similarity_weights, double w0, int top_n, const std::string& tag,
               const std::string& out_path, const std::string& candidates_path) {
    auto tokenizer = tok.build();
    auto index = load_index_checked(index_path, tokenizer);
    auto topics = q.load();
    fvs::ExpansionParams p = params;
    p.aggregator = parse_aggregator(aggregator_name);
    auto mode = similarity_weights ? fvs::WeightMode::Similarity : fvs::WeightMode::Unit;

    std::ofstream candidates_out;
    if (!candidates_path.empty()) candidates_out = open_output(candidates_path);

    fvs::RunFile run;
    run.metadata = {{"mode", "expand"},
                    {"r", std::to_string(p.r)},
                    {"k", std::to_string(p.k)},
                    {"w0", std::to_string(w0)},
                    {"aggregator", aggregator_name},
                    {"weights", similarity_weights ? "similarity" : "unit"},
                    {"order", std::to_string(index.order())},
                    {"fingerprint", to_hex(index.tokenizer_fingerprint())},
                    {"tag", tag}};
    for (const auto& topic : topics) {
        auto query = fvs::make_query(topic.title, tokenizer);
        if (p.k == 0) {
            append_run_lines(run, index, topic.id, fvs::tfidf_search(index, query, top_n), tag);
            continue;
        }
        auto seed = fvs::tfidf_search(index, query, std::max(p.r, 1));
        auto harvest = fvs::candidate_terms(index, query, seed, p);
        if (candidates_out.is_open()) {
            for (const auto& c : harvest.terms) {
                char score[32];
                std::snprintf(score, sizeof(score), "%.6f", c.score);
                candidates_out << topic.id << '\t' << c.term << '\t' << score << '\n';
            }
        }
        auto expanded = fvs::expand_query(query, harvest, mode, w0);
        append_run_lines(run, index, topic.id, fvs::tfidf_search(index, expanded, top_n), tag);
    }
    with_output(out_path, [&](std::ostream& out) { fvs::write_run(out, run); });
    return 0;
}

int cmd_eval(const std::string& run_path, const std::string& qrels_path,
             const fvs::EvalOptions& options, const std::string& out_path,
             const std::string& diagnostics_path, const CorpusFlags& corpus,
             const TokenizerFlags& tok, const std::string& topics_path,
             const std::string& objective_text) {
    auto run_in = open_input(run_path);
    auto run = fvs::read_run(run_in);
    auto qrels_in = open_input(qrels_path);
    auto qrels = fvs::parse_qrels(qrels_in);
    auto grouped = group_run_by_topic(run);

    auto report = fvs::evaluate(grouped, qrels, options);
    if (auto it = run.metadata.find("tag"); it != run.metadata.end()) report.run_tag = it->second;

    if (!diagnostics_path.empty()) {
        if (corpus.empty() || topics_path.empty() || objective_text.empty())
            throw std::runtime_error(
                "--diagnostics needs --trec/--plain, --topics and --objective");
        auto tokenizer = tok.build();
        if (auto it = run.metadata.find("fingerprint");
            it != run.metadata.end() && it->second != to_hex(tokenizer.fingerprint())) {
            std::cerr << "fvs: warning: run was produced with different tokenizer settings "
                         "(fingerprint "
                      << it->second << "); diagnostics may not match\n";
        }
        auto store = corpus.load();
        auto topics_in = open_input(topics_path);
        auto topics = fvs::parse_topics(topics_in);
        auto objective = fvs::parse_objective(objective_text);
        fvs::add_diagnostics(report, grouped, topics, store, objective, tokenizer, options);
        auto diag_out = open_output(diagnostics_path);
        fvs::write_diagnostics_csv(diag_out, report);
    }

    with_output(out_path, [&](std::ostream& out) { fvs::write_metrics_csv(out, report); });
    return 0;
}

int cmd_gen_synthetic(const std::string& spec_path, const std::string& out_path,
                      const std::string& qrels_path, const std::string& topics_path) {
    auto spec_in = open_input(spec_path);
    std::ostringstream buffer;
    buffer << spec_in.rdbuf();
    auto spec = fvs::synth_spec_from_json(buffer.str());

    auto corpus_out = open_output(out_path);
    std::ofstream qrels_out, topics_out;
    if (!qrels_path.empty()) qrels_out = open_output(qrels_path);
    if (!topics_path.empty()) topics_out = open_output(topics_path);
    fvs::generate_synthetic(spec, corpus_out, qrels_out.is_open() ? &qrels_out : nullptr,
                            topics_out.is_open() ? &topics_out : nullptr);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier vector scoring retrieval engine"};
    app.require_subcommand(1);

    // index
    auto* index_cmd = app.add_subcommand("index", "Build a spectral inverted index");
    CorpusFlags index_corpus;
    index_corpus.attach(index_cmd);
    TokenizerFlags index_tok;
    index_tok.attach(index_cmd);
    std::string index_out;
    int index_order = 3;
    int index_threads = default_threads();
    std::string index_export;
    index_cmd->add_option("--out", index_out, "Index file to write")->required();
    index_cmd->add_option("--order", index_order, "Fourier truncation order (1..32)")
        ->default_val(3)
        ->check(CLI::Range(1, 32));
    index_cmd->add_option("--threads", index_threads, "Worker threads")
        ->default_val(default_threads());
    index_cmd->add_option("--export-postings", index_export,
                          "Also dump postings as readable lines");

    // search
    auto* search_cmd = app.add_subcommand("search", "Baseline tf-idf retrieval");
    TokenizerFlags search_tok;
    search_tok.attach(search_cmd);
    QueryFlags search_q;
    search_q.attach(search_cmd);
    std::string search_index, search_out, search_tag = "fvs-base";
    int search_top = 1000;
    search_cmd->add_option("--index", search_index, "Index file")->required();
    search_cmd->add_option("--top", search_top, "Result depth")->default_val(1000);
    search_cmd->add_option("--tag", search_tag, "Run tag")->default_val("fvs-base");
    search_cmd->add_option("--out", search_out, "Run file (default stdout)");

    // rerank
    auto* rerank_cmd =
        app.add_subcommand("rerank", "Re-rank the baseline by objective-function similarity");
    TokenizerFlags rerank_tok;
    rerank_tok.attach(rerank_cmd);
    QueryFlags rerank_q;
    rerank_q.attach(rerank_cmd);
    std::string rerank_index, rerank_objective, rerank_out, rerank_tag = "fvs";
    int rerank_candidates = 1000, rerank_top = 1000, rerank_threads = default_threads();
    rerank_cmd->add_option("--index", rerank_index, "Index file")->required();
    rerank_cmd->add_option("--objective", rerank_objective, "Objective such as 1|3 or 1|3+3|3")
        ->required();
    rerank_cmd->add_option("--candidates", rerank_candidates, "Baseline pool depth")
        ->default_val(1000);
    rerank_cmd->add_option("--top", rerank_top, "Result depth")->default_val(1000);
    rerank_cmd->add_option("--threads", rerank_threads, "Worker threads")
        ->default_val(default_threads());
    rerank_cmd->add_option("--tag", rerank_tag, "Run tag")->default_val("fvs");
    rerank_cmd->add_option("--out", rerank_out, "Run file (default stdout)");

    // expand
    auto* expand_cmd = app.add_subcommand("expand", "Feedback expansion retrieval");
    TokenizerFlags expand_tok;
    expand_tok.attach(expand_cmd);
    QueryFlags expand_q;
    expand_q.attach(expand_cmd);
    fvs::ExpansionParams expand_params;
    std::string expand_index, expand_out, expand_candidates_out, expand_tag = "fvs-exp";
    std::string expand_aggregator = "sum";
    bool expand_similarity = false;
    double expand_w0 = 2.0;
    int expand_top = 1000;
    expand_cmd->add_option("--index", expand_index, "Index file")->required();
    expand_cmd->add_option("-r,--feedback-docs", expand_params.r, "Feedback depth")
        ->default_val(10);
    expand_cmd->add_option("-k,--expansion-terms", expand_params.k,
                           "Expansion terms kept (0 disables expansion)")
        ->default_val(40);
    expand_cmd->add_option("--w0", expand_w0, "Weight of the original query terms")
        ->default_val(2.0);
    expand_cmd->add_flag("--similarity-weights", expand_similarity,
                         "Weight candidates by aggregated similarity instead of 1");
    expand_cmd->add_option("--aggregator", expand_aggregator, "sum, max or mean")
        ->default_val("sum");
    expand_cmd->add_option("--min-df", expand_params.min_df, "Candidate document frequency floor")
        ->default_val(2);
    expand_cmd->add_option("--top", expand_top, "Result depth")->default_val(1000);
    expand_cmd->add_option("--threads", expand_params.threads, "Worker threads")
        ->default_val(default_threads());
    expand_cmd->add_option("--export-candidates", expand_candidates_out,
                           "Dump scored candidates as topic<TAB>term<TAB>score");
    expand_cmd->add_option("--tag", expand_tag, "Run tag")->default_val("fvs-exp");
    expand_cmd->add_option("--out", expand_out, "Run file (default stdout)");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Score a run against qrels");
    std::string eval_run, eval_qrels, eval_out, eval_diag, eval_topics, eval_objective;
    fvs::EvalOptions eval_options;
    CorpusFlags eval_corpus;
    TokenizerFlags eval_tok;
    eval_cmd->add_option("--run", eval_run, "Run file")->required();
    eval_cmd->add_option("--qrels", eval_qrels, "Relevance judgements")->required();
    eval_cmd->add_option("--cutoff", eval_options.precision_cutoff, "Precision cutoff K")
        ->default_val(10);
    eval_cmd->add_option("--out", eval_out, "Metrics CSV (default stdout)");
    eval_cmd->add_option("--diagnostics", eval_diag, "Positional diagnostics CSV");
    eval_corpus.attach(eval_cmd);
    eval_tok.attach(eval_cmd);
    eval_cmd->add_option("--topics", eval_topics, "Topic file (for diagnostics)");
    eval_cmd->add_option("--objective", eval_objective, "Objective (for diagnostics)");
    eval_cmd->add_option("--depth", eval_options.diagnostic_depth,
                         "Documents pooled per topic for diagnostics")
        ->default_val(10);
    eval_cmd->add_option("--min-hits", eval_options.min_hits,
                         "Minimum hits for a topic to count toward diagnostic means")
        ->default_val(11);

    // gen-synthetic
    auto* gen_cmd = app.add_subcommand("gen-synthetic", "Deterministic synthetic corpus");
    std::string gen_spec, gen_out, gen_qrels, gen_topics;
    gen_cmd->add_option("--spec", gen_spec, "JSON generator spec")->required();
    gen_cmd->add_option("--out", gen_out, "Corpus file (docno<TAB>text)")->required();
    gen_cmd->add_option("--qrels", gen_qrels, "Ground-truth qrels file");
    gen_cmd->add_option("--topics", gen_topics, "Topic file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (index_cmd->parsed())
            return cmd_index(index_corpus, index_tok, index_out, index_order, index_threads,
                             index_export);
        if (search_cmd->parsed())
            return cmd_search(search_index, search_tok, search_q, search_top, search_tag,
                              search_out);
        if (rerank_cmd->parsed())
            return cmd_rerank(rerank_index, rerank_tok, rerank_q, rerank_objective,
                              rerank_candidates, rerank_top, rerank_threads, rerank_tag,
                              rerank_out);
        if (expand_cmd->parsed())
            return cmd_expand(expand_index, expand_tok, expand_q, expand_params,
                              expand_aggregator, expand_similarity, expand_w0, expand_top,
                              expand_tag, expand_out, expand_candidates_out);
        if (eval_cmd->parsed())
            return cmd_eval(eval_run, eval_qrels, eval_options, eval_out, eval_diag, eval_corpus,
                            eval_tok, eval_topics, eval_objective);
        if (gen_cmd->parsed())
            return cmd_gen_synthetic(gen_spec, gen_out, gen_qrels, gen_topics);
    } catch (const std::exception& e) {
        std::cerr << "fvs: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
