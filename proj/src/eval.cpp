#include "fvs/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace fvs {

namespace {

void require_topic(const QrelSet& qrels, int topic) {
    if (!qrels.has_topic(topic))
        throw std::invalid_argument("unknown topic " + std::to_string(topic) + " in qrels");
}

void write_cell(std::ostream& out, std::optional<double> v) {
    if (v)
        out << *v;
    else
        out << "NA";
}

}  // namespace

double precision_at_k(const std::vector<std::string>& ranked, const QrelSet& qrels, int topic,
                      int k) {
    if (k < 1)
        throw std::invalid_argument("precision_at_k: k must be >= 1");
    require_topic(qrels, topic);
    size_t hits = 0;
    const size_t depth = std::min<size_t>(k, ranked.size());
    for (size_t i = 0; i < depth; ++i)
        if (qrels.relevant(topic, ranked[i]))
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(k);
}

double average_precision(const std::vector<std::string>& ranked, const QrelSet& qrels, int topic) {
    require_topic(qrels, topic);
    const size_t total_relevant = qrels.relevant_count(topic);
    if (total_relevant == 0)
        return 0.0;
    double sum = 0.0;
    size_t hits = 0;
    for (size_t i = 0; i < ranked.size(); ++i) {
        if (qrels.relevant(topic, ranked[i])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(i + 1);
        }
    }
    return sum / static_cast<double>(total_relevant);
}

double r_precision(const std::vector<std::string>& ranked, const QrelSet& qrels, int topic) {
    require_topic(qrels, topic);
    const size_t r = qrels.relevant_count(topic);
    if (r == 0)
        return 0.0;
    size_t hits = 0;
    const size_t depth = std::min(r, ranked.size());
    for (size_t i = 0; i < depth; ++i)
        if (qrels.relevant(topic, ranked[i]))
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(r);
}

std::optional<double> sample_skewness(const std::vector<double>& values) {
    if (values.size() < 3)
        return std::nullopt;
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    if (m2 <= 0.0)
        return std::nullopt;
    return m3 / std::pow(m2, 1.5);
}

std::vector<double> pooled_relative_positions(const CorpusStore& corpus, const Query& query,
                                              const std::vector<std::string>& docnos,
                                              const Tokenizer& tokenizer) {
    std::vector<double> pooled;
    for (const std::string& docno : docnos) {
        const RawDocument* doc = corpus.find(docno);
        if (!doc)
            throw std::runtime_error("document " + docno + " not present in the corpus");
        TokenStream stream = tokenizer.run(*doc);
        const double L = stream.length();
        if (L == 0)
            continue;
        for (const Token& tok : stream.tokens) {
            if (!tok.indexable)
                continue;
            for (const QueryTerm& qt : query.terms) {
                if (qt.term == tok.term) {
                    pooled.push_back((static_cast<double>(tok.position) - 0.5) / L);
                    break;
                }
            }
        }
    }
    return pooled;
}

std::optional<double> position_skewness(const CorpusStore& corpus, const Query& query,
                                        const std::vector<std::string>& docnos,
                                        const Tokenizer& tokenizer) {
    return sample_skewness(pooled_relative_positions(corpus, query, docnos, tokenizer));
}

std::optional<double> fitting_rate(const CorpusStore& corpus, const Query& query,
                                   const std::vector<std::string>& docnos,
                                   const ObjectiveSpec& objective, const Tokenizer& tokenizer) {
    size_t total = 0;
    size_t inside = 0;
    for (const std::string& docno : docnos) {
        const RawDocument* doc = corpus.find(docno);
        if (!doc)
            throw std::runtime_error("document " + docno + " not present in the corpus");
        TokenStream stream = tokenizer.run(*doc);
        if (stream.length() == 0)
            continue;
        for (const Token& tok : stream.tokens) {
            if (!tok.indexable)
                continue;
            for (const QueryTerm& qt : query.terms) {
                if (qt.term == tok.term) {
                    ++total;
                    if (in_region(tok.position, objective, stream.length()))
                        ++inside;
                    break;
                }
            }
        }
    }
    if (total == 0)
        return std::nullopt;
    return static_cast<double>(inside) / static_cast<double>(total);
}

EvalReport evaluate(const std::vector<RunTopic>& run, const QrelSet& qrels,
                    const EvalOptions& options) {
    EvalReport report;
    report.precision_cutoff = options.precision_cutoff;

    std::map<int, const RunTopic*> by_topic;
    for (const RunTopic& rt : run)
        by_topic[rt.topic] = &rt;

    for (const auto& [topic, rt] : by_topic) {
        TopicMetrics m;
        m.topic = topic;
        m.retrieved = rt->docnos.size();
        m.relevant = qrels.relevant_count(topic);
        for (const std::string& docno : rt->docnos)
            if (qrels.relevant(topic, docno))
                ++m.relevant_ret;
        m.p_at_k = precision_at_k(rt->docnos, qrels, topic, options.precision_cutoff);
        m.average_precision = average_precision(rt->docnos, qrels, topic);
        m.r_precision = r_precision(rt->docnos, qrels, topic);
        report.metrics.push_back(m);
    }
    return report;
}

void add_diagnostics(EvalReport& report, const std::vector<RunTopic>& run,
                     const std::vector<Topic>& topics, const CorpusStore& corpus,
                     const ObjectiveSpec& objective, const Tokenizer& tokenizer,
                     const EvalOptions& options) {
    report.objective = objective.to_string();

    std::map<int, std::string> titles;
    for (const Topic& t : topics)
        titles[t.id] = t.title;

    std::map<int, const RunTopic*> by_topic;
    for (const RunTopic& rt : run)
        by_topic[rt.topic] = &rt;

    for (const auto& [topic, rt] : by_topic) {
        auto title = titles.find(topic);
        if (title == titles.end())
            throw std::invalid_argument("no topic title for topic " + std::to_string(topic));
        Query query = make_query(title->second, tokenizer);

        TopicDiagnostics d;
        d.topic = topic;
        d.hits = rt->docnos.size();
        std::vector<std::string> top(rt->docnos.begin(),
                                     rt->docnos.begin() +
                                         std::min<size_t>(options.diagnostic_depth,
                                                          rt->docnos.size()));
        std::vector<double> pooled = pooled_relative_positions(corpus, query, top, tokenizer);
        d.occurrences = pooled.size();
        d.skewness = sample_skewness(pooled);
        d.fitting = fitting_rate(corpus, query, top, objective, tokenizer);
        d.considered = d.hits >= options.min_hits && d.skewness.has_value();
        report.diagnostics.push_back(d);
    }
}

void write_metrics_csv(std::ostream& out, const EvalReport& report) {
    out << "topic,retrieved,relevant,relevant_ret,p_at_" << report.precision_cutoff
        << ",average_precision,r_precision\n";
    double sum_p = 0.0, sum_ap = 0.0, sum_rp = 0.0;
    for (const TopicMetrics& m : report.metrics) {
        out << m.topic << ',' << m.retrieved << ',' << m.relevant << ',' << m.relevant_ret << ','
            << m.p_at_k << ',' << m.average_precision << ',' << m.r_precision << '\n';
        sum_p += m.p_at_k;
        sum_ap += m.average_precision;
        sum_rp += m.r_precision;
    }
    if (!report.metrics.empty()) {
        const double n = static_cast<double>(report.metrics.size());
        out << "mean,,," << ',' << sum_p / n << ',' << sum_ap / n << ',' << sum_rp / n << '\n';
    }
}

void write_diagnostics_csv(std::ostream& out, const EvalReport& report) {
    out << "topic,hits,occurrences,skewness,fitting_rate,considered\n";
    double sum_skew = 0.0, sum_fit = 0.0;
    size_t n_skew = 0, n_fit = 0;
    for (const TopicDiagnostics& d : report.diagnostics) {
        out << d.topic << ',' << d.hits << ',' << d.occurrences << ',';
        write_cell(out, d.skewness);
        out << ',';
        write_cell(out, d.fitting);
        out << ',' << (d.considered ? 1 : 0) << '\n';
        if (d.considered && d.skewness) {
            sum_skew += *d.skewness;
            ++n_skew;
        }
        if (d.considered && d.fitting) {
            sum_fit += *d.fitting;
            ++n_fit;
        }
    }
    out << "mean,,,";
    if (n_skew > 0)
        out << sum_skew / static_cast<double>(n_skew);
    else
        out << "NA";
    out << ',';
    if (n_fit > 0)
        out << sum_fit / static_cast<double>(n_fit);
    else
        out << "NA";
    out << ",\n";
}

}  // namespace fvs
