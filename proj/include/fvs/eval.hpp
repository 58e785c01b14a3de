#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fvs/corpus.hpp"
#include "fvs/objective.hpp"
#include "fvs/retrieval.hpp"
#include "fvs/tokenizer.hpp"

namespace fvs {

// Precision metrics over a ranked docno list. The topic must exist in the
// qrels; an unknown topic id is an error.
double precision_at_k(const std::vector<std::string>& ranked, const QrelSet& qrels, int topic,
                      int k);
double average_precision(const std::vector<std::string>& ranked, const QrelSet& qrels, int topic);
double r_precision(const std::vector<std::string>& ranked, const QrelSet& qrels, int topic);

// Biased sample skewness g1 = m3 / m2^(3/2). Undefined (nullopt) for fewer
// than 3 values or a degenerate spread.
std::optional<double> sample_skewness(const std::vector<double>& values);

// Relative positions (p - 0.5) / L of every query-term occurrence in the
// given documents, pooled in rank order. Documents are re-tokenized from the
// corpus because the index stores no positions.
std::vector<double> pooled_relative_positions(const CorpusStore& corpus, const Query& query,
                                              const std::vector<std::string>& docnos,
                                              const Tokenizer& tokenizer);

std::optional<double> position_skewness(const CorpusStore& corpus, const Query& query,
                                        const std::vector<std::string>& docnos,
                                        const Tokenizer& tokenizer);

// Fraction of pooled query-term occurrences whose pulse midpoint falls in
// the objective's region. Undefined when there are no occurrences.
std::optional<double> fitting_rate(const CorpusStore& corpus, const Query& query,
                                   const std::vector<std::string>& docnos,
                                   const ObjectiveSpec& objective, const Tokenizer& tokenizer);

struct TopicMetrics {
    int topic = 0;
    size_t retrieved = 0;
    size_t relevant = 0;      // relevant documents in the qrels
    size_t relevant_ret = 0;  // relevant documents retrieved
    double p_at_k = 0.0;
    double average_precision = 0.0;
    double r_precision = 0.0;
};

struct TopicDiagnostics {
    int topic = 0;
    size_t hits = 0;         // retrieved documents
    size_t occurrences = 0;  // pooled query-term occurrences in the top docs
    std::optional<double> skewness;
    std::optional<double> fitting;
    // Topics with too few hits are reported but excluded from the means.
    bool considered = true;
};

struct EvalReport {
    std::vector<TopicMetrics> metrics;          // topic ascending
    std::vector<TopicDiagnostics> diagnostics;  // topic ascending, may be empty
    int precision_cutoff = 10;
    std::string run_tag;
    std::string objective;  // empty when no diagnostics were requested
};

// One ranked retrieval run, keyed by topic.
struct RunTopic {
    int topic = 0;
    std::vector<std::string> docnos;  // rank order
};

struct EvalOptions {
    int precision_cutoff = 10;
    int diagnostic_depth = 10;  // documents pooled for skewness / fitting
    size_t min_hits = 11;       // below this a topic is excluded from means
};

EvalReport evaluate(const std::vector<RunTopic>& run, const QrelSet& qrels,
                    const EvalOptions& options);

// Adds per-topic positional diagnostics to a report; queries come from the
// topic titles tokenized with the supplied tokenizer.
void add_diagnostics(EvalReport& report, const std::vector<RunTopic>& run,
                     const std::vector<Topic>& topics, const CorpusStore& corpus,
                     const ObjectiveSpec& objective, const Tokenizer& tokenizer,
                     const EvalOptions& options);

// column layout documented in the README; a final "mean" row aggregates.
void write_metrics_csv(std::ostream& out, const EvalReport& report);
void write_diagnostics_csv(std::ostream& out, const EvalReport& report);

}  // namespace fvs
