#include "fvs/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fvs {

Query make_query(std::string_view text, const Tokenizer& tokenizer) {
    TokenStream stream = tokenizer.run("query", text);
    Query query;
    for (const Token& tok : stream.tokens) {
        if (!tok.indexable)
            continue;
        auto it = std::find_if(query.terms.begin(), query.terms.end(),
                               [&](const QueryTerm& qt) { return qt.term == tok.term; });
        if (it == query.terms.end())
            query.terms.push_back(QueryTerm{tok.term, 1.0});
        else
            it->weight += 1.0;
    }
    return query;
}

RankedList tfidf_search(const Index& index, const Query& query, int top_n) {
    if (top_n < 1)
        throw std::invalid_argument("tfidf_search: top_n must be >= 1");

    std::vector<double> scores(index.doc_count(), 0.0);
    std::vector<uint32_t> touched;
    for (const QueryTerm& qt : query.terms) {
        if (!(qt.weight > 0.0) || !std::isfinite(qt.weight))
            throw std::invalid_argument("tfidf_search: query weights must be positive and finite");
        auto id = index.term_id(qt.term);
        if (!id)
            continue;
        const double idf = index.idf(qt.term);
        auto docs = index.term_docs(*id);
        for (uint32_t row = 0; row < docs.size(); ++row) {
            const double tf = index.posting_tf(*id, row);
            const double contribution = qt.weight * (1.0 + std::log(tf)) * idf;
            if (scores[docs[row]] == 0.0)
                touched.push_back(docs[row]);
            scores[docs[row]] += contribution;
        }
    }

    RankedList out;
    out.entries.reserve(touched.size());
    for (uint32_t doc : touched)
        if (scores[doc] > 0.0)
            out.entries.push_back(RankedEntry{doc, scores[doc], scores[doc]});

    std::sort(out.entries.begin(), out.entries.end(),
              [&](const RankedEntry& a, const RankedEntry& b) {
                  if (a.score != b.score)
                      return a.score > b.score;
                  return index.doc(a.doc).docno < index.doc(b.doc).docno;
              });
    if (out.entries.size() > static_cast<size_t>(top_n))
        out.entries.resize(static_cast<size_t>(top_n));
    return out;
}

SpectralVector query_spectral(const Index& index, const Query& query, uint32_t doc) {
    SpectralVector sum = SpectralVector::zero(index.order(),
                                              std::max<double>(index.doc(doc).length, 1.0));
    for (const QueryTerm& qt : query.terms) {
        auto id = index.term_id(qt.term);
        if (!id)
            continue;
        auto row = index.find_posting(*id, doc);
        if (!row)
            continue;
        sum = add(sum, scale(index.posting_vector(*id, *row), qt.weight));
    }
    return sum;
}

RankedList fvs_rerank(const Index& index, const Query& query, const ObjectiveSpec& objective,
                      const RankedList& candidates, int top_n, int threads) {
    if (top_n < 1)
        throw std::invalid_argument("fvs_rerank: top_n must be >= 1");
    if (objective.sections.empty())
        throw std::invalid_argument("fvs_rerank: empty objective");

    RankedList out;
    out.entries = candidates.entries;

    const int64_t n = static_cast<int64_t>(out.entries.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32) num_threads(std::max(threads, 1))
#endif
    for (int64_t i = 0; i < n; ++i) {
        RankedEntry& entry = out.entries[i];
        const double doc_len = index.doc(entry.doc).length;
        double score = 0.0;
        if (doc_len > 0) {
            const SpectralVector qv = query_spectral(index, query, entry.doc);
            const SpectralVector obj = objective_spectral(objective, doc_len, index.order());
            score = std::max(0.0, cosine_sim(qv, obj));
        }
        entry.score = score;
    }

    std::sort(out.entries.begin(), out.entries.end(),
              [&](const RankedEntry& a, const RankedEntry& b) {
                  if (a.score != b.score)
                      return a.score > b.score;
                  if (a.baseline != b.baseline)
                      return a.baseline > b.baseline;
                  return index.doc(a.doc).docno < index.doc(b.doc).docno;
              });
    if (out.entries.size() > static_cast<size_t>(top_n))
        out.entries.resize(static_cast<size_t>(top_n));
    return out;
}

}  // namespace fvs
