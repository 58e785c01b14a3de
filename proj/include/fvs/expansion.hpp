#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fvs/index.hpp"
#include "fvs/retrieval.hpp"

namespace fvs {

// How per-document similarities are combined across the top-r documents.
enum class Aggregator { Sum, Max, Mean };

enum class WeightMode { Unit, Similarity };

struct ExpansionParams {
    int r = 10;           // feedback depth: documents harvested
    int k = 40;           // candidate cutoff
    Aggregator aggregator = Aggregator::Sum;
    uint64_t min_df = 2;  // hapax filter; set to 1 to disable
    int threads = 1;
};

struct CandidateTerm {
    std::string term;
    double score = 0.0;  // aggregated similarity
};

struct ExpansionCandidates {
    std::vector<CandidateTerm> terms;  // score desc, ties by term asc
    int source_docs = 0;
    int cutoff = 0;
};

// Scores every indexed term of the top-r documents by cosine similarity
// against the query's distribution in the same document, then aggregates
// across documents and keeps the best k. Original query terms never appear;
// stopwords are absent from the index by construction.
ExpansionCandidates candidate_terms(const Index& index, const Query& query,
                                    const RankedList& top_docs, const ExpansionParams& params);

// q_e = { w0 * original terms } + { w_i * candidates }. Unit mode sets all
// w_i = 1; Similarity mode scales by aggregated score relative to the best.
Query expand_query(const Query& query, const ExpansionCandidates& candidates, WeightMode mode,
                   double w0);

// Baseline search, candidate harvest, reformulation, final search.
// k = 0 degenerates to the plain baseline.
RankedList expanded_search(const Index& index, const Query& query, const ExpansionParams& params,
                           WeightMode mode, double w0, int top_n);

}  // namespace fvs
