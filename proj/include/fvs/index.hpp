#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fvs/spectral.hpp"
#include "fvs/tokenizer.hpp"

namespace fvs {

// One inverted-list entry: the document ordinal plus the term's spectral
// vector in that document. a0 encodes the term frequency (tf = a0 * sqrt(L)).
struct Posting {
    uint32_t doc = 0;
    SpectralVector coeffs;
};

struct DocEntry {
    std::string docno;
    uint32_t length = 0;  // token count, stopwords included
};

// Forward-view entry: term id plus the row inside that term's postings list.
struct DocTermRef {
    uint32_t term = 0;
    uint32_t posting = 0;
};

// Raised by load() with a message naming the failing file section.
struct IndexFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Index {
  public:
    Index() = default;

    // Computes one spectral vector per indexable (term, document) pair.
    // Documents are processed in parallel when threads > 1; the merge is
    // ordered, so the result is identical for any thread count.
    static Index build(const std::vector<TokenStream>& streams, int order,
                       uint64_t tokenizer_fingerprint, int threads = 1);

    void save(const std::string& path) const;
    static Index load(const std::string& path);

    int order() const { return order_; }
    uint32_t doc_count() const { return static_cast<uint32_t>(docs_.size()); }
    uint64_t tokenizer_fingerprint() const { return fingerprint_; }
    uint32_t vocabulary_size() const { return static_cast<uint32_t>(terms_.size()); }

    const DocEntry& doc(uint32_t ordinal) const { return docs_[ordinal]; }
    std::optional<uint32_t> doc_ordinal(std::string_view docno) const;

    std::optional<uint32_t> term_id(std::string_view term) const;
    const std::string& term(uint32_t id) const { return terms_[id].term; }
    uint64_t df(uint32_t id) const { return terms_[id].docs.size(); }
    std::span<const uint32_t> term_docs(uint32_t id) const { return terms_[id].docs; }

    std::span<const double> posting_coeffs(uint32_t id, uint32_t row) const;
    SpectralVector posting_vector(uint32_t id, uint32_t row) const;
    uint32_t posting_tf(uint32_t id, uint32_t row) const;
    // Row of the posting for `doc` in term `id`, if present (binary search).
    std::optional<uint32_t> find_posting(uint32_t id, uint32_t doc) const;

    // Materialized postings list; empty for unknown terms.
    std::vector<Posting> postings(std::string_view term) const;
    // ln(1 + N/df); 0 for unknown terms.
    double idf(std::string_view term) const;

    // Terms of one document, ascending by term id (transpose of the
    // inverted lists, rebuilt in memory; not part of the file format).
    std::span<const DocTermRef> doc_terms(uint32_t ordinal) const;

    // Line-delimited diagnostic dump: term docno tf coefficients.
    void export_postings(std::ostream& out) const;

  private:
    struct TermData {
        std::string term;
        std::vector<uint32_t> docs;
        std::vector<double> coeffs;  // docs.size() * (2 order + 1), row-major
    };

    size_t row_width() const { return 2 * static_cast<size_t>(order_) + 1; }
    void rebuild_lookups();

    int order_ = 0;
    uint64_t fingerprint_ = 0;
    std::vector<DocEntry> docs_;
    std::vector<TermData> terms_;  // sorted by term string
    std::unordered_map<std::string, uint32_t> docno_ids_;
    std::vector<uint64_t> fwd_offsets_;
    std::vector<DocTermRef> fwd_;
};

}  // namespace fvs
