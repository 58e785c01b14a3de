// Acceptance gate: ten end-to-end checks over the assembled engine, one
// PASS/FAIL line each. With no arguments every criterion runs in order;
// criterion numbers given on the command line restrict the run. The exit
// status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fvs/corpus.hpp"
#include "fvs/eval.hpp"
#include "fvs/expansion.hpp"
#include "fvs/index.hpp"
#include "fvs/objective.hpp"
#include "fvs/retrieval.hpp"
#include "fvs/spectral.hpp"
#include "fvs/synth.hpp"
#include "fvs/tokenizer.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
    char buf[320];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

fvs::Tokenizer default_tokenizer() {
    return fvs::Tokenizer(fvs::TokenizerConfig{});
}

struct BuiltCorpus {
    std::vector<fvs::RawDocument> docs;
    std::vector<fvs::TokenStream> streams;
    fvs::Index index;
    fvs::QrelSet qrels;
};

BuiltCorpus build_corpus(const fvs::SynthSpec& spec, const fvs::Tokenizer& tok,
                         bool want_qrels = false, int order = 3) {
    std::ostringstream corpus, qrels;
    fvs::generate_synthetic(spec, corpus, want_qrels ? &qrels : nullptr, nullptr);
    BuiltCorpus out;
    std::istringstream in(corpus.str());
    out.docs = fvs::parse_plain_corpus(in);
    for (const auto& d : out.docs)
        out.streams.push_back(tok.run(d));
    out.index = fvs::Index::build(out.streams, order, tok.fingerprint());
    if (want_qrels) {
        std::istringstream q(qrels.str());
        out.qrels = fvs::parse_qrels(q);
    }
    return out;
}

std::vector<std::string> top_docnos(const fvs::Index& index, const fvs::RankedList& list,
                                    size_t depth) {
    std::vector<std::string> out;
    for (size_t i = 0; i < list.entries.size() && i < depth; ++i)
        out.push_back(index.doc(list.entries[i].doc).docno);
    return out;
}

// --- 1. dot products against trapezoidal quadrature of the reconstructions.

Outcome criterion_1() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(20240901);
    double worst = 0.0;
    int cases = 0;
    for (int i = 0; i < 104; ++i) {
        const uint32_t L = 10 + static_cast<uint32_t>(rng() % 491);
        const int n = 1 + static_cast<int>(rng() % 16);
        auto draw = [&](size_t count) {
            std::set<uint32_t> s;
            while (s.size() < count)
                s.insert(1 + static_cast<uint32_t>(rng() % L));
            return std::vector<uint32_t>(s.begin(), s.end());
        };
        const size_t cap = std::max<size_t>(1, L / 5);
        size_t ca = 1 + rng() % cap;
        size_t cb = (i % 26 == 25) ? 0 : 1 + rng() % cap;  // a few empty sets
        auto f = fvs::compute_spectral({draw(ca), L}, n);
        auto g = fvs::compute_spectral({draw(cb), L}, n);
        const double d = fvs::dot(f, g);

        const int panels = 10000;
        const double len = static_cast<double>(L);
        const double h = len / panels;
        double sum = 0.5 * (fvs::reconstruct(f, 0.0) * fvs::reconstruct(g, 0.0) +
                            fvs::reconstruct(f, len) * fvs::reconstruct(g, len));
        for (int j = 1; j < panels; ++j) {
            const double x = h * j;
            sum += fvs::reconstruct(f, x) * fvs::reconstruct(g, x);
        }
        const double quad = sum * h;
        worst = std::max(worst, std::abs(d - quad) / std::max(1.0, std::abs(d)));
        ++cases;
    }
    const double secs = seconds_since(t0);
    const bool pass = cases >= 100 && worst < 1e-4 && secs < 10.0;
    return {pass, fmt("%d cases, max rel err %.1e, %.2f s", cases, worst, secs)};
}

// --- 2. a0 = tf / sqrt(L) and exact tf recovery on a 1k-doc corpus.

Outcome criterion_2() {
    fvs::SynthSpec spec;
    spec.seed = 42;
    spec.vocabulary = 800;
    fvs::SynthGroup g;
    g.prefix = "C2";
    g.docs = 1000;
    g.length_min = 80;
    g.length_max = 160;
    fvs::PlantRule plant;
    plant.term = "anchor";
    plant.count_min = 2;
    plant.count_max = 6;
    plant.region = fvs::parse_objective("1|3");
    plant.spill = 0.1;
    plant.fraction = 0.7;
    g.plants.push_back(plant);
    spec.groups.push_back(g);

    auto tok = default_tokenizer();
    auto built = build_corpus(spec, tok);

    // Ground truth recounted from the token streams.
    std::vector<std::map<std::string, uint32_t>> truth(built.streams.size());
    for (size_t d = 0; d < built.streams.size(); ++d)
        for (const auto& t : built.streams[d].tokens)
            if (t.indexable)
                ++truth[d][t.term];

    double worst = 0.0;
    uint64_t postings = 0;
    bool tf_exact = true;
    const auto& index = built.index;
    for (uint32_t t = 0; t < index.vocabulary_size(); ++t) {
        auto docs = index.term_docs(t);
        for (uint32_t row = 0; row < docs.size(); ++row) {
            const uint32_t d = docs[row];
            const double L = static_cast<double>(index.doc(d).length);
            const uint32_t tf = truth[d].at(index.term(t));
            const double a0 = index.posting_coeffs(t, row)[0];
            worst = std::max(worst, std::abs(a0 - tf / std::sqrt(L)));
            tf_exact = tf_exact && index.posting_tf(t, row) == tf;
            ++postings;
        }
    }
    const bool pass = built.docs.size() == 1000 && worst <= 1e-12 && tf_exact;
    return {pass, fmt("%llu postings, max |a0 - tf/sqrt(L)| %.1e, tf %s",
                      static_cast<unsigned long long>(postings), worst,
                      tf_exact ? "exact" : "DRIFTED")};
}

// --- 3. a term on every position reduces to the constant function.

Outcome criterion_3() {
    double worst_resid = 0.0;
    double worst_cos = 0.0;
    const auto full = fvs::parse_objective("1|1");
    for (uint32_t L : {10u, 37u, 200u}) {
        std::vector<uint32_t> everywhere(L);
        std::iota(everywhere.begin(), everywhere.end(), 1u);
        for (int n : {1, 3, 8, 16}) {
            auto sv = fvs::compute_spectral({everywhere, L}, n);
            worst_resid = std::max(worst_resid,
                                   std::abs(sv.coeffs[0] - std::sqrt(static_cast<double>(L))));
            for (size_t i = 1; i < sv.coeffs.size(); ++i)
                worst_resid = std::max(worst_resid, std::abs(sv.coeffs[i]));
            auto obj = fvs::objective_spectral(full, static_cast<double>(L), n);
            worst_cos = std::max(worst_cos, std::abs(fvs::cosine_sim(sv, obj) - 1.0));
        }
    }
    const bool pass = worst_resid < 1e-9 && worst_cos < 1e-9;
    return {pass, fmt("max residual %.1e, max |cos - 1| %.1e", worst_resid, worst_cos)};
}

// --- 4. planted front/back regions separate perfectly under re-ranking.

Outcome criterion_4() {
    auto t0 = Clock::now();
    fvs::SynthSpec spec;
    spec.seed = 41;
    spec.vocabulary = 600;
    for (const char* setup : {"A:1|3", "B:3|3"}) {
        fvs::SynthGroup g;
        g.prefix = std::string(1, setup[0]);
        g.docs = 100;
        g.length_min = 90;
        g.length_max = 150;
        fvs::PlantRule p;
        p.term = "signal";
        p.count_min = p.count_max = 5;
        p.region = fvs::parse_objective(setup + 2);
        g.plants.push_back(p);
        spec.groups.push_back(g);
    }
    auto tok = default_tokenizer();
    auto built = build_corpus(spec, tok);
    auto query = fvs::make_query("signal", tok);
    auto base = fvs::tfidf_search(built.index, query, 200);

    // Inversions: documents of the favoured group ranked below the other.
    auto inversions = [&](const fvs::RankedList& list, char favoured) {
        int other_seen = 0, inv = 0;
        for (const auto& e : list.entries) {
            if (built.index.doc(e.doc).docno[0] == favoured)
                inv += other_seen;
            else
                ++other_seen;
        }
        return inv;
    };
    auto front = fvs::fvs_rerank(built.index, query, fvs::parse_objective("1|3"), base, 200);
    auto back = fvs::fvs_rerank(built.index, query, fvs::parse_objective("3|3"), base, 200);
    const int inv_front = inversions(front, 'A');
    const int inv_back = inversions(back, 'B');
    const double secs = seconds_since(t0);
    const bool pass = base.size() == 200 && inv_front == 0 && inv_back == 0 && secs < 5.0;
    return {pass, fmt("inversions 1|3: %d, 3|3: %d over 100x100 pairs, %.2f s", inv_front,
                      inv_back, secs)};
}

// --- shared corpus for 5 and 6: per topic, 30 uniformly planted docs (docno
// prefix AU, so baseline ties rank them first), 30 front-planted (MF) and 30
// back-planted (ZK); equal tf everywhere keeps the baseline order purely
// lexicographic.

struct SkewFixture {
    BuiltCorpus corpus;
    fvs::CorpusStore store;
    fvs::Tokenizer tok = default_tokenizer();
    std::vector<fvs::Query> queries;
    std::vector<fvs::RankedList> baselines;
};

const SkewFixture& skew_fixture() {
    static SkewFixture fx = [] {
        SkewFixture f;
        fvs::SynthSpec spec;
        spec.seed = 77;
        spec.vocabulary = 700;
        for (int i = 1; i <= 8; ++i) {
            const std::string term = "qq" + std::to_string(i);
            auto plant = [&](const char* region, double spill) {
                fvs::PlantRule p;
                p.term = term;
                p.count_min = p.count_max = 8;
                if (region) {
                    p.region = fvs::parse_objective(region);
                    p.spill = spill;
                }
                return p;
            };
            auto group = [&](const char* prefix, fvs::PlantRule p) {
                fvs::SynthGroup g;
                g.prefix = prefix + std::to_string(i);
                g.docs = 30;
                g.plants.push_back(std::move(p));
                spec.groups.push_back(std::move(g));
            };
            group("AU", plant(nullptr, 0.0));
            group("MF", plant("1|3", 0.2));
            group("ZK", plant("3|3", 0.2));
        }
        f.corpus = build_corpus(spec, f.tok);
        for (const auto& d : f.corpus.docs)
            f.store.add(d);
        for (int i = 1; i <= 8; ++i) {
            f.queries.push_back(fvs::make_query("qq" + std::to_string(i), f.tok));
            f.baselines.push_back(fvs::tfidf_search(f.corpus.index, f.queries.back(), 200));
        }
        return f;
    }();
    return fx;
}

// --- 5. pooled skewness: positive under 1|3, negative under 3|3, near zero
// for the baseline over uniform placements.

Outcome criterion_5() {
    const auto& fx = skew_fixture();
    const auto front_obj = fvs::parse_objective("1|3");
    const auto back_obj = fvs::parse_objective("3|3");
    double base_sum = 0.0, front_sum = 0.0, back_sum = 0.0;
    bool defined = true;
    for (size_t i = 0; i < fx.queries.size(); ++i) {
        const auto& q = fx.queries[i];
        auto skew_of = [&](const std::vector<std::string>& docnos) {
            auto s = fvs::position_skewness(fx.store, q, docnos, fx.tok);
            defined = defined && s.has_value();
            return s.value_or(0.0);
        };
        base_sum += skew_of(top_docnos(fx.corpus.index, fx.baselines[i], 10));
        auto front = fvs::fvs_rerank(fx.corpus.index, q, front_obj, fx.baselines[i], 10);
        front_sum += skew_of(top_docnos(fx.corpus.index, front, 10));
        auto back = fvs::fvs_rerank(fx.corpus.index, q, back_obj, fx.baselines[i], 10);
        back_sum += skew_of(top_docnos(fx.corpus.index, back, 10));
    }
    const double topics = static_cast<double>(fx.queries.size());
    const double base_mean = base_sum / topics;
    const double front_mean = front_sum / topics;
    const double back_mean = back_sum / topics;
    const bool pass = defined && front_mean > 0.3 && back_mean < -0.3 &&
                      std::abs(base_mean) <= 0.2;
    return {pass, fmt("mean skew baseline %+.3f, 1|3 %+.3f, 3|3 %+.3f", base_mean, front_mean,
                      back_mean)};
}

// --- 6. fitting rate: ~1/3 for the uniform baseline, >= 0.60 re-ranked.

Outcome criterion_6() {
    const auto& fx = skew_fixture();
    const auto front_obj = fvs::parse_objective("1|3");
    double base_sum = 0.0, rerank_sum = 0.0;
    bool defined = true;
    for (size_t i = 0; i < fx.queries.size(); ++i) {
        const auto& q = fx.queries[i];
        auto fit_of = [&](const std::vector<std::string>& docnos) {
            auto r = fvs::fitting_rate(fx.store, q, docnos, front_obj, fx.tok);
            defined = defined && r.has_value();
            return r.value_or(0.0);
        };
        base_sum += fit_of(top_docnos(fx.corpus.index, fx.baselines[i], 10));
        auto front = fvs::fvs_rerank(fx.corpus.index, q, front_obj, fx.baselines[i], 10);
        rerank_sum += fit_of(top_docnos(fx.corpus.index, front, 10));
    }
    const double topics = static_cast<double>(fx.queries.size());
    const double base_mean = base_sum / topics;
    const double rerank_mean = rerank_sum / topics;
    const bool pass = defined && std::abs(base_mean - 1.0 / 3.0) <= 0.05 && rerank_mean >= 0.60;
    return {pass, fmt("fitting baseline %.3f (target 1/3), re-ranked %.3f", base_mean,
                      rerank_mean)};
}

// --- 7. co-located plants dominate the candidate harvest across 20 seeds.

Outcome criterion_7() {
    auto tok = default_tokenizer();
    int top3_hits = 0;
    double alpha_total = 0.0, beta_total = 0.0;
    for (int s = 1; s <= 20; ++s) {
        fvs::SynthSpec spec;
        spec.seed = 1000 + static_cast<uint64_t>(s);
        spec.vocabulary = 300;
        fvs::SynthGroup g;
        g.prefix = "R";
        g.docs = 40;
        fvs::PlantRule anchor;
        anchor.term = "qterm";
        anchor.count_min = anchor.count_max = 3;
        anchor.region = fvs::parse_objective("1|4");
        fvs::PlantRule buddy;
        buddy.term = "alpha";
        buddy.near_term = "qterm";
        buddy.near_offset = 3;
        fvs::PlantRule far;
        far.term = "beta";
        far.count_min = far.count_max = 3;
        far.region = fvs::parse_objective("4|4");
        far.spill = 0.35;  // keeps beta present among the candidates
        g.plants = {anchor, buddy, far};
        spec.groups.push_back(g);

        auto built = build_corpus(spec, tok);
        auto query = fvs::make_query("qterm", tok);
        auto base = fvs::tfidf_search(built.index, query, 10);
        auto cands = fvs::candidate_terms(built.index, query, base, fvs::ExpansionParams{});

        double alpha_score = 0.0, beta_score = 0.0;
        size_t alpha_rank = cands.terms.size();
        for (size_t i = 0; i < cands.terms.size(); ++i) {
            if (cands.terms[i].term == "alpha") {
                alpha_rank = i;
                alpha_score = cands.terms[i].score;
            } else if (cands.terms[i].term == "beta") {
                beta_score = cands.terms[i].score;
            }
        }
        top3_hits += alpha_rank < 3 ? 1 : 0;
        alpha_total += alpha_score;
        beta_total += beta_score;
    }
    const double ratio = alpha_total / std::max(beta_total, 1e-12);
    const bool pass = top3_hits >= 19 && ratio >= 5.0;
    return {pass, fmt("alpha in top-3: %d/20 seeds, aggregated sim ratio %.1f", top3_hits,
                      ratio)};
}

// --- 8. expansion recovers synonym-only relevant documents.

Outcome criterion_8() {
    fvs::SynthSpec spec;
    spec.seed = 88;
    spec.vocabulary = 400;
    for (int i = 1; i <= 10; ++i) {
        const std::string q = "q" + std::to_string(i);
        const std::string syn = "s" + std::to_string(i);

        // Six docs carry the query term with the synonym right beside it;
        // four tokens total, so the feedback pool is pure signal.
        fvs::SynthGroup a;
        a.prefix = fmt("T%02dA", i);
        a.docs = 6;
        a.length_min = a.length_max = 4;
        a.topic = i;
        a.topic_title = q;
        fvs::PlantRule anchor;
        anchor.term = q;
        anchor.count_min = anchor.count_max = 2;
        fvs::PlantRule buddy;
        buddy.term = syn;
        buddy.near_term = q;
        buddy.near_offset = 2;
        a.plants = {anchor, buddy};
        spec.groups.push_back(a);

        // Twenty-four relevant docs mention only the synonym.
        fvs::SynthGroup b;
        b.prefix = fmt("T%02dB", i);
        b.docs = 24;
        b.length_min = 30;
        b.length_max = 60;
        b.topic = i;
        fvs::PlantRule only_syn;
        only_syn.term = syn;
        only_syn.count_min = only_syn.count_max = 2;
        b.plants = {only_syn};
        spec.groups.push_back(b);
    }
    auto tok = default_tokenizer();
    auto built = build_corpus(spec, tok, /*want_qrels=*/true);

    double base_sum = 0.0, expanded_sum = 0.0;
    fvs::ExpansionParams params;  // r = 10, k = 40
    for (int i = 1; i <= 10; ++i) {
        auto query = fvs::make_query("q" + std::to_string(i), tok);
        auto base = fvs::tfidf_search(built.index, query, 1000);
        base_sum += fvs::precision_at_k(top_docnos(built.index, base, 1000), built.qrels, i, 10);
        auto expanded = fvs::expanded_search(built.index, query, params, fvs::WeightMode::Unit,
                                             2.0, 1000);
        expanded_sum +=
            fvs::precision_at_k(top_docnos(built.index, expanded, 1000), built.qrels, i, 10);
    }
    const double base_mean = base_sum / 10.0;
    const double expanded_mean = expanded_sum / 10.0;
    const double uplift = (expanded_mean - base_mean) / base_mean;
    const bool pass = uplift >= 0.10;
    return {pass, fmt("mean P@10 %.2f -> %.2f, uplift %.0f%%", base_mean, expanded_mean,
                      100.0 * uplift)};
}

// --- 9. runtime scaling: doubling n, quadrupling r, and a 10k-doc build.

Outcome criterion_9() {
    double sink = 0.0;

    // Coefficient computation: time grows with tf * n.
    std::mt19937_64 rng(555);
    std::vector<fvs::TermPositions> sets;
    for (int i = 0; i < 1200; ++i) {
        std::set<uint32_t> s;
        while (s.size() < 40)
            s.insert(1 + static_cast<uint32_t>(rng() % 400));
        sets.push_back({std::vector<uint32_t>(s.begin(), s.end()), 400});
    }
    auto spectral_pass = [&](int n, int sweeps) {
        auto t0 = Clock::now();
        for (int s = 0; s < sweeps; ++s)
            for (const auto& tp : sets) {
                auto sv = fvs::compute_spectral(tp, n);
                sink += sv.coeffs.back();
            }
        return seconds_since(t0) / sweeps;
    };
    // Equal-duration interleaved passes after a warm-up: every sample spans
    // about the same wall-clock window, so bursts of machine-speed drift
    // hit both sides of the ratio alike; min-of-9 drops the slow windows.
    spectral_pass(8, 2);
    spectral_pass(16, 1);
    double order_8 = 1e99, order_16 = 1e99;
    for (int rep = 0; rep < 9; ++rep) {
        order_8 = std::min(order_8, spectral_pass(8, 2));
        order_16 = std::min(order_16, spectral_pass(16, 1));
    }
    const double order_ratio = order_16 / order_8;

    // Candidate generation: time linear in the feedback depth r. Long
    // documents over a small vocabulary keep the per-document scan dominant.
    fvs::SynthSpec spec;
    spec.seed = 99;
    spec.vocabulary = 500;
    fvs::SynthGroup g;
    g.prefix = "D";
    g.docs = 200;
    g.length_min = 1200;
    g.length_max = 1600;
    fvs::PlantRule p;
    p.term = "signal";
    p.count_min = p.count_max = 4;
    g.plants.push_back(p);
    spec.groups.push_back(g);
    auto tok = default_tokenizer();
    auto built = build_corpus(spec, tok);
    auto query = fvs::make_query("signal", tok);
    auto base = fvs::tfidf_search(built.index, query, 64);
    auto harvest_pass = [&](int r, int iters) {
        fvs::ExpansionParams params;
        params.r = r;
        auto t0 = Clock::now();
        for (int it = 0; it < iters; ++it) {
            auto c = fvs::candidate_terms(built.index, query, base, params);
            sink += c.terms.empty() ? 0.0 : c.terms[0].score;
        }
        return seconds_since(t0) / iters;
    };
    harvest_pass(8, 44);
    harvest_pass(32, 11);
    double depth_8 = 1e99, depth_32 = 1e99;
    for (int rep = 0; rep < 9; ++rep) {
        depth_8 = std::min(depth_8, harvest_pass(8, 44));
        depth_32 = std::min(depth_32, harvest_pass(32, 11));
    }
    const double depth_ratio = depth_32 / depth_8;

    // Indexing 10k synthetic documents.
    fvs::SynthSpec big;
    big.seed = 10;
    big.vocabulary = 5000;
    fvs::SynthGroup k;
    k.prefix = "K";
    k.docs = 10000;
    big.groups.push_back(k);
    std::ostringstream corpus;
    fvs::generate_synthetic(big, corpus, nullptr, nullptr);
    std::istringstream in(corpus.str());
    auto docs = fvs::parse_plain_corpus(in);
    auto t0 = Clock::now();
    std::vector<fvs::TokenStream> streams;
    streams.reserve(docs.size());
    for (const auto& d : docs)
        streams.push_back(tok.run(d));
    auto index = fvs::Index::build(streams, 3, tok.fingerprint());
    const double build_secs = seconds_since(t0);
    sink += index.doc_count();

    const bool pass = order_ratio >= 1.5 && order_ratio <= 2.5 && depth_ratio >= 3.0 &&
                      depth_ratio <= 5.0 && build_secs < 60.0 && sink != 0.0;
    return {pass, fmt("n x2 ratio %.2f, r x4 ratio %.2f, 10k-doc build %.1f s", order_ratio,
                      depth_ratio, build_secs)};
}

// --- 10. byte-identical persistence and brute-force metric equality.

Outcome criterion_10() {
    fvs::SynthSpec spec;
    spec.seed = 7;
    spec.vocabulary = 500;
    fvs::SynthGroup g;
    g.prefix = "P";
    g.docs = 300;
    fvs::PlantRule p;
    p.term = "signal";
    p.count_min = 1;
    p.count_max = 4;
    p.region = fvs::parse_objective("1|3");
    p.spill = 0.25;
    p.fraction = 0.8;
    g.plants.push_back(p);
    spec.groups.push_back(g);
    auto tok = default_tokenizer();
    auto built = build_corpus(spec, tok);

    const std::string path_a = "acceptance_persist_a.fvsi";
    const std::string path_b = "acceptance_persist_b.fvsi";
    built.index.save(path_a);
    auto loaded = fvs::Index::load(path_a);
    loaded.save(path_b);
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string bytes_a = slurp(path_a);
    const std::string bytes_b = slurp(path_b);
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
    const bool identical = !bytes_a.empty() && bytes_a == bytes_b;

    // Metrics against straight-line recomputation on random qrels and runs.
    std::mt19937_64 rng(2468);
    int checked = 0;
    bool metrics_ok = true;
    for (int c = 0; c < 50 && metrics_ok; ++c) {
        const int topic = 1 + c % 7;
        fvs::QrelSet qrels;
        std::vector<std::string> universe;
        std::set<std::string> relevant;
        for (int d = 0; d < 40; ++d) {
            universe.push_back(fmt("D%02d", d));
            const int roll = static_cast<int>(rng() % 4);
            if (roll == 0) {
                qrels.insert(topic, universe.back(), 1);
                relevant.insert(universe.back());
            } else if (roll == 1) {
                qrels.insert(topic, universe.back(), 0);  // judged, not relevant
            }
        }
        if (!qrels.has_topic(topic))
            qrels.insert(topic, universe[0], 0);
        std::shuffle(universe.begin(), universe.end(), rng);
        std::vector<std::string> ranked(universe.begin(),
                                        universe.begin() + rng() % (universe.size() + 1));

        for (int k : {1, 5, 10}) {
            size_t hits = 0;
            for (size_t i = 0; i < ranked.size() && i < static_cast<size_t>(k); ++i)
                hits += relevant.count(ranked[i]);
            const double expect = static_cast<double>(hits) / static_cast<double>(k);
            metrics_ok =
                metrics_ok && fvs::precision_at_k(ranked, qrels, topic, k) == expect;
        }
        {
            double sum = 0.0;
            size_t hits = 0;
            for (size_t i = 0; i < ranked.size(); ++i)
                if (relevant.count(ranked[i])) {
                    ++hits;
                    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
                }
            const double expect =
                relevant.empty() ? 0.0 : sum / static_cast<double>(relevant.size());
            metrics_ok = metrics_ok && fvs::average_precision(ranked, qrels, topic) == expect;
        }
        {
            size_t hits = 0;
            for (size_t i = 0; i < ranked.size() && i < relevant.size(); ++i)
                hits += relevant.count(ranked[i]);
            const double expect =
                relevant.empty() ? 0.0
                                 : static_cast<double>(hits) / static_cast<double>(relevant.size());
            metrics_ok = metrics_ok && fvs::r_precision(ranked, qrels, topic) == expect;
        }
        ++checked;
    }
    const bool pass = identical && metrics_ok;
    return {pass, fmt("round-trip %s, %d qrels cases %s", identical ? "byte-identical" : "DIFFERS",
                      checked, metrics_ok ? "exact" : "MISMATCH")};
}

struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {1, "spectral dot equals quadrature of reconstructions", criterion_1},
    {2, "a0 recovers tf/sqrt(L) on every posting", criterion_2},
    {3, "full-coverage term matches the 1|1 objective", criterion_3},
    {4, "re-ranking orders planted regions without inversions", criterion_4},
    {5, "pooled skewness tracks the objective sign", criterion_5},
    {6, "fitting rate lifts from 1/3 to >= 0.60", criterion_6},
    {7, "co-located terms dominate expansion candidates", criterion_7},
    {8, "expansion lifts mean P@10 by >= 10 percent", criterion_8},
    {9, "runtime scales with order, depth, and corpus size", criterion_9},
    {10, "persistence round-trips; metrics match brute force", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i)
        wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (!wanted.empty() && wanted.count(c.id) == 0)
            continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%2d] %s  %-55s %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures;
}
