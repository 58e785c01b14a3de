#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "fvs/tokenizer.hpp"

namespace fvs {

struct SgmlParseResult {
    std::vector<RawDocument> documents;
    std::vector<std::string> warnings;  // skipped or truncated blocks
};

struct TrecSgmlOptions {
    // When set, only character data inside <TEXT> elements becomes the body;
    // headline and header fields are dropped. Default keeps everything.
    bool text_only = false;
};

// Scans a concatenation of <DOC>...</DOC> blocks. Documents without a
// <DOCNO> are skipped with a warning; an unterminated block is recovered by
// scanning to the next <DOC>.
SgmlParseResult parse_trec_sgml(std::istream& in, const TrecSgmlOptions& options = {});

// Line-delimited records: docno<TAB>text.
std::vector<RawDocument> parse_plain_corpus(std::istream& in);

struct Topic {
    int id = 0;
    std::string title;
};

// <top> blocks carrying <num> and <title> fields.
std::vector<Topic> parse_topics(std::istream& in);

class QrelSet {
  public:
    void insert(int topic, const std::string& docno, int grade);

    bool has_topic(int topic) const { return grades_.count(topic) > 0; }
    // Grade for a (topic, docno) pair; unjudged pairs score 0.
    int grade(int topic, const std::string& docno) const;
    bool relevant(int topic, const std::string& docno) const { return grade(topic, docno) > 0; }
    size_t relevant_count(int topic) const;
    std::vector<int> topics() const;
    bool empty() const { return grades_.empty(); }

  private:
    std::map<int, std::unordered_map<std::string, int>> grades_;
};

// Whitespace-separated lines: topic 0 docno grade. Malformed lines and
// duplicate (topic, docno) pairs raise an error naming the line number.
QrelSet parse_qrels(std::istream& in);

// In-memory docno -> body map used by the positional diagnostics, which
// re-tokenize top-ranked documents on demand.
class CorpusStore {
  public:
    void add(RawDocument doc);
    void add_trec_file(std::istream& in, const TrecSgmlOptions& options = {});
    void add_plain_file(std::istream& in);

    const RawDocument* find(const std::string& docno) const;
    size_t size() const { return docs_.size(); }

  private:
    std::unordered_map<std::string, RawDocument> docs_;
};

}  // namespace fvs
