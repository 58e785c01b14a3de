#include "fvs/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace fvs {

namespace {

struct DocScores {
    std::vector<std::pair<uint32_t, double>> sims;  // (term id, clamped cosine)
};

}  // namespace

ExpansionCandidates candidate_terms(const Index& index, const Query& query,
                                    const RankedList& top_docs, const ExpansionParams& params) {
    if (params.r < 1 || params.k < 1)
        throw std::invalid_argument("candidate_terms: r and k must be >= 1");

    std::unordered_set<uint32_t> query_ids;
    for (const QueryTerm& qt : query.terms)
        if (auto id = index.term_id(qt.term))
            query_ids.insert(*id);

    const size_t n_docs = std::min<size_t>(params.r, top_docs.entries.size());

    // Per-document scans are independent; the reduction below walks documents
    // in rank order so the aggregate does not depend on the thread count.
    std::vector<DocScores> per_doc(n_docs);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(params.threads, 1))
#endif
    for (int64_t i = 0; i < static_cast<int64_t>(n_docs); ++i) {
        const uint32_t doc = top_docs.entries[i].doc;
        const SpectralVector qv = query_spectral(index, query, doc);
        if (qv.is_zero())
            continue;
        DocScores& out = per_doc[i];
        auto refs = index.doc_terms(doc);
        out.sims.reserve(refs.size());
        for (const DocTermRef& ref : refs) {
            if (query_ids.count(ref.term))
                continue;
            if (index.df(ref.term) < params.min_df)
                continue;
            const double sim = cosine_sim(qv, index.posting_vector(ref.term, ref.posting));
            if (sim > 0.0)
                out.sims.emplace_back(ref.term, sim);
        }
    }

    std::vector<double> aggregate(index.vocabulary_size(), 0.0);
    std::vector<uint32_t> appearances(index.vocabulary_size(), 0);
    std::vector<uint32_t> seen;
    for (const DocScores& ds : per_doc) {
        for (const auto& [term, sim] : ds.sims) {
            if (appearances[term] == 0)
                seen.push_back(term);
            ++appearances[term];
            switch (params.aggregator) {
                case Aggregator::Sum:
                case Aggregator::Mean:
                    aggregate[term] += sim;
                    break;
                case Aggregator::Max:
                    aggregate[term] = std::max(aggregate[term], sim);
                    break;
            }
        }
    }

    ExpansionCandidates out;
    out.source_docs = static_cast<int>(n_docs);
    out.cutoff = params.k;
    out.terms.reserve(seen.size());
    for (uint32_t term : seen) {
        double score = aggregate[term];
        if (params.aggregator == Aggregator::Mean)
            score /= appearances[term];
        out.terms.push_back(CandidateTerm{index.term(term), score});
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const CandidateTerm& a, const CandidateTerm& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return a.term < b.term;
    });
    if (out.terms.size() > static_cast<size_t>(params.k))
        out.terms.resize(static_cast<size_t>(params.k));
    return out;
}

Query expand_query(const Query& query, const ExpansionCandidates& candidates, WeightMode mode,
                   double w0) {
    if (!(w0 > 0.0) || !std::isfinite(w0))
        throw std::invalid_argument("expand_query: w0 must be positive and finite");

    Query expanded;
    expanded.terms.reserve(query.terms.size() + candidates.terms.size());
    for (const QueryTerm& qt : query.terms)
        expanded.terms.push_back(QueryTerm{qt.term, qt.weight * w0});
    if (candidates.terms.empty())
        return expanded;

    const double best = candidates.terms.front().score;
    for (const CandidateTerm& ct : candidates.terms) {
        double w = 1.0;
        if (mode == WeightMode::Similarity)
            w = (best > 0.0) ? ct.score / best : 0.0;
        if (w > 0.0)
            expanded.terms.push_back(QueryTerm{ct.term, w});
    }
    return expanded;
}

RankedList expanded_search(const Index& index, const Query& query, const ExpansionParams& params,
                           WeightMode mode, double w0, int top_n) {
    if (params.k == 0)
        return tfidf_search(index, query, top_n);

    RankedList baseline = tfidf_search(index, query, std::max(params.r, 1));
    if (baseline.empty())
        return baseline;

    ExpansionCandidates candidates = candidate_terms(index, query, baseline, params);
    Query expanded = expand_query(query, candidates, mode, w0);
    return tfidf_search(index, expanded, top_n);
}

}  // namespace fvs
