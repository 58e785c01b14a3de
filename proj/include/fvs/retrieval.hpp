#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fvs/index.hpp"
#include "fvs/objective.hpp"
#include "fvs/spectral.hpp"
#include "fvs/tokenizer.hpp"

namespace fvs {

struct QueryTerm {
    std::string term;
    double weight = 1.0;
};

struct Query {
    std::vector<QueryTerm> terms;
};

// Tokenizes free text with the index's tokenizer configuration; duplicate
// terms are merged with summed weights. May yield an empty query (all
// stopwords), which searches simply answer with an empty result.
Query make_query(std::string_view text, const Tokenizer& tokenizer);

struct RankedEntry {
    uint32_t doc = 0;
    double score = 0.0;
    // Baseline score carried through re-ranking as the tie-break key.
    double baseline = 0.0;
};

struct RankedList {
    std::vector<RankedEntry> entries;

    bool empty() const { return entries.empty(); }
    size_t size() const { return entries.size(); }
};

// score(d) = sum over query terms of  w_t * (1 + ln tf) * ln(1 + N/df).
// Zero-score documents are excluded; ties break by docno ascending.
RankedList tfidf_search(const Index& index, const Query& query, int top_n);

// Weighted sum of the query terms' posting vectors in one document; the
// zero vector when no query term occurs there.
SpectralVector query_spectral(const Index& index, const Query& query, uint32_t doc);

// Rescores candidates as cosine similarity between the document's query
// distribution and the objective built at that document's length, clamped
// at 0. Sorting is deterministic: score desc, baseline desc, docno asc.
RankedList fvs_rerank(const Index& index, const Query& query, const ObjectiveSpec& objective,
                      const RankedList& candidates, int top_n, int threads = 1);

}  // namespace fvs
