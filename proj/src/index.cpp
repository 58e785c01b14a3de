#include "fvs/index.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fvs {

namespace {

constexpr char kMagic[4] = {'F', 'V', 'S', 'I'};
constexpr uint32_t kFormatVersion = 1;

// All integers and doubles are serialized little-endian with fixed widths.
void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(out, bits);
}

struct Reader {
    std::istream& in;
    const char* section;

    void fail(const std::string& what) const {
        throw IndexFormatError(std::string("index load: ") + section + ": " + what);
    }

    void bytes(char* dst, size_t n) {
        in.read(dst, static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in.gcount()) != n)
            fail("unexpected end of file");
    }

    uint32_t u32() {
        unsigned char buf[4];
        bytes(reinterpret_cast<char*>(buf), 4);
        uint32_t v = 0;
        for (int i = 3; i >= 0; --i)
            v = (v << 8) | buf[i];
        return v;
    }

    uint64_t u64() {
        unsigned char buf[8];
        bytes(reinterpret_cast<char*>(buf), 8);
        uint64_t v = 0;
        for (int i = 7; i >= 0; --i)
            v = (v << 8) | buf[i];
        return v;
    }

    double f64() {
        uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }

    std::string str(uint32_t max_len = 1 << 20) {
        uint32_t len = u32();
        if (len > max_len)
            fail("string length out of range");
        std::string s(len, '\0');
        if (len > 0)
            bytes(s.data(), len);
        return s;
    }
};

}  // namespace

std::optional<uint32_t> Index::doc_ordinal(std::string_view docno) const {
    auto it = docno_ids_.find(std::string(docno));
    if (it == docno_ids_.end())
        return std::nullopt;
    return it->second;
}

std::optional<uint32_t> Index::term_id(std::string_view term) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term,
                               [](const TermData& td, std::string_view t) { return td.term < t; });
    if (it == terms_.end() || it->term != term)
        return std::nullopt;
    return static_cast<uint32_t>(it - terms_.begin());
}

std::span<const double> Index::posting_coeffs(uint32_t id, uint32_t row) const {
    const TermData& td = terms_[id];
    return std::span<const double>(td.coeffs.data() + static_cast<size_t>(row) * row_width(),
                                   row_width());
}

SpectralVector Index::posting_vector(uint32_t id, uint32_t row) const {
    auto span = posting_coeffs(id, row);
    SpectralVector sv;
    sv.coeffs.assign(span.begin(), span.end());
    sv.length = static_cast<double>(docs_[terms_[id].docs[row]].length);
    return sv;
}

uint32_t Index::posting_tf(uint32_t id, uint32_t row) const {
    const double a0 = terms_[id].coeffs[static_cast<size_t>(row) * row_width()];
    const double L = static_cast<double>(docs_[terms_[id].docs[row]].length);
    return static_cast<uint32_t>(std::llround(a0 * std::sqrt(L)));
}

std::optional<uint32_t> Index::find_posting(uint32_t id, uint32_t doc) const {
    const auto& docs = terms_[id].docs;
    auto it = std::lower_bound(docs.begin(), docs.end(), doc);
    if (it == docs.end() || *it != doc)
        return std::nullopt;
    return static_cast<uint32_t>(it - docs.begin());
}

std::vector<Posting> Index::postings(std::string_view term) const {
    std::vector<Posting> out;
    auto id = term_id(term);
    if (!id)
        return out;
    const TermData& td = terms_[*id];
    out.reserve(td.docs.size());
    for (uint32_t row = 0; row < td.docs.size(); ++row)
        out.push_back(Posting{td.docs[row], posting_vector(*id, row)});
    return out;
}

double Index::idf(std::string_view term) const {
    auto id = term_id(term);
    if (!id)
        return 0.0;
    return std::log(1.0 + static_cast<double>(doc_count()) / static_cast<double>(df(*id)));
}

std::span<const DocTermRef> Index::doc_terms(uint32_t ordinal) const {
    return std::span<const DocTermRef>(fwd_.data() + fwd_offsets_[ordinal],
                                       fwd_offsets_[ordinal + 1] - fwd_offsets_[ordinal]);
}

void Index::rebuild_lookups() {
    docno_ids_.clear();
    docno_ids_.reserve(docs_.size());
    for (uint32_t i = 0; i < docs_.size(); ++i)
        docno_ids_.emplace(docs_[i].docno, i);

    // Transpose the inverted lists into per-document term references.
    std::vector<uint64_t> counts(docs_.size() + 1, 0);
    for (const TermData& td : terms_)
        for (uint32_t doc : td.docs)
            ++counts[doc + 1];
    fwd_offsets_.assign(docs_.size() + 1, 0);
    for (size_t i = 1; i < counts.size(); ++i)
        fwd_offsets_[i] = fwd_offsets_[i - 1] + counts[i];
    fwd_.assign(fwd_offsets_.back(), DocTermRef{});
    std::vector<uint64_t> cursor(fwd_offsets_.begin(), fwd_offsets_.end() - 1);
    for (uint32_t t = 0; t < terms_.size(); ++t) {
        const TermData& td = terms_[t];
        for (uint32_t row = 0; row < td.docs.size(); ++row)
            fwd_[cursor[td.docs[row]]++] = DocTermRef{t, row};
    }
}

Index Index::build(const std::vector<TokenStream>& streams, int order,
                   uint64_t tokenizer_fingerprint, int threads) {
    if (order < 1)
        throw std::invalid_argument("index build: order must be >= 1");

    Index index;
    index.order_ = order;
    index.fingerprint_ = tokenizer_fingerprint;

    index.docs_.reserve(streams.size());
    std::unordered_set<std::string> seen;
    seen.reserve(streams.size());
    for (const TokenStream& s : streams) {
        if (s.docno.empty())
            throw std::invalid_argument("index build: empty docno");
        if (!seen.insert(s.docno).second)
            throw std::invalid_argument("index build: duplicate docno " + s.docno);
        index.docs_.push_back(DocEntry{s.docno, s.length()});
    }

    // Per-document coefficient rows, computed independently (parallel part).
    using DocTerms = std::vector<std::pair<std::string, std::vector<double>>>;
    std::vector<DocTerms> per_doc(streams.size());

    const int64_t n_docs = static_cast<int64_t>(streams.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(threads, 1))
#endif
    for (int64_t d = 0; d < n_docs; ++d) {
        const TokenStream& stream = streams[d];
        std::map<std::string, std::vector<uint32_t>> positions;
        for (const Token& tok : stream.tokens)
            if (tok.indexable)
                positions[tok.term].push_back(tok.position);
        DocTerms& rows = per_doc[d];
        rows.reserve(positions.size());
        for (auto& [term, pos] : positions) {
            TermPositions tp{std::move(pos), stream.length()};
            SpectralVector sv = compute_spectral(tp, order);
            rows.emplace_back(term, std::move(sv.coeffs));
        }
    }

    // Ordered merge: documents in ordinal order keep postings sorted by doc.
    std::unordered_map<std::string, uint32_t> slot;
    for (uint32_t d = 0; d < per_doc.size(); ++d) {
        for (auto& [term, coeffs] : per_doc[d]) {
            auto [it, inserted] = slot.emplace(term, static_cast<uint32_t>(index.terms_.size()));
            if (inserted) {
                index.terms_.push_back(TermData{term, {}, {}});
            }
            TermData& td = index.terms_[it->second];
            td.docs.push_back(d);
            td.coeffs.insert(td.coeffs.end(), coeffs.begin(), coeffs.end());
        }
        per_doc[d].clear();
    }
    std::sort(index.terms_.begin(), index.terms_.end(),
              [](const TermData& a, const TermData& b) { return a.term < b.term; });

    index.rebuild_lookups();
    return index;
}

void Index::save(const std::string& path) const {
    std::string out;
    out.append(kMagic, 4);
    put_u32(out, kFormatVersion);
    put_u32(out, static_cast<uint32_t>(order_));
    put_u32(out, 0);  // reserved
    put_u64(out, docs_.size());
    put_u64(out, fingerprint_);

    for (const DocEntry& d : docs_) {
        put_u32(out, static_cast<uint32_t>(d.docno.size()));
        out.append(d.docno);
        put_u64(out, d.length);
    }

    put_u64(out, terms_.size());
    const uint64_t record = 4 + 8 * static_cast<uint64_t>(row_width());
    uint64_t offset = 0;
    for (const TermData& td : terms_) {
        put_u32(out, static_cast<uint32_t>(td.term.size()));
        out.append(td.term);
        put_u64(out, td.docs.size());
        put_u64(out, offset);
        offset += record * td.docs.size();
    }

    put_u64(out, offset);  // postings blob size
    for (const TermData& td : terms_) {
        for (uint32_t row = 0; row < td.docs.size(); ++row) {
            put_u32(out, td.docs[row]);
            const double* c = td.coeffs.data() + static_cast<size_t>(row) * row_width();
            for (size_t i = 0; i < row_width(); ++i)
                put_f64(out, c[i]);
        }
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("index save: cannot open " + path);
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file)
        throw std::runtime_error("index save: write failed for " + path);
}

Index Index::load(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw IndexFormatError("index load: cannot open " + path);

    Index index;
    {
        Reader r{file, "header"};
        char magic[4];
        r.bytes(magic, 4);
        if (std::memcmp(magic, kMagic, 4) != 0)
            r.fail("bad magic");
        uint32_t version = r.u32();
        if (version != kFormatVersion)
            r.fail("unsupported format version " + std::to_string(version));
        uint32_t order = r.u32();
        if (order < 1 || order > 4096)
            r.fail("order out of range");
        index.order_ = static_cast<int>(order);
        r.u32();  // reserved
        uint64_t n = r.u64();
        index.fingerprint_ = r.u64();
        if (n > (1ull << 32))
            r.fail("document count out of range");
        index.docs_.reserve(n);
        Reader dt{file, "doc table"};
        for (uint64_t i = 0; i < n; ++i) {
            DocEntry d;
            d.docno = dt.str();
            uint64_t len = dt.u64();
            if (len > 0xFFFFFFFFull)
                dt.fail("document length out of range");
            d.length = static_cast<uint32_t>(len);
            index.docs_.push_back(std::move(d));
        }
    }

    const uint64_t record = 4 + 8 * static_cast<uint64_t>(index.row_width());
    {
        Reader r{file, "vocabulary"};
        uint64_t v = r.u64();
        index.terms_.reserve(v);
        uint64_t expected_offset = 0;
        std::string prev;
        for (uint64_t t = 0; t < v; ++t) {
            TermData td;
            td.term = r.str();
            if (t > 0 && td.term <= prev)
                r.fail("terms not sorted at \"" + td.term + "\"");
            prev = td.term;
            uint64_t df = r.u64();
            if (df == 0)
                r.fail("zero document frequency for \"" + td.term + "\"");
            uint64_t offset = r.u64();
            if (offset != expected_offset)
                r.fail("document frequency and postings offset disagree at \"" + td.term + "\"");
            expected_offset += record * df;
            td.docs.resize(df);
            index.terms_.push_back(std::move(td));
        }
        uint64_t blob = r.u64();
        if (blob != expected_offset)
            r.fail("postings blob size mismatch");
    }

    {
        Reader r{file, "postings"};
        for (TermData& td : index.terms_) {
            uint32_t prev_doc = 0;
            bool first = true;
            td.coeffs.resize(td.docs.size() * index.row_width());
            for (size_t row = 0; row < td.docs.size(); ++row) {
                uint32_t doc = r.u32();
                if (doc >= index.docs_.size())
                    r.fail("document ordinal out of range in \"" + td.term + "\"");
                if (!first && doc <= prev_doc)
                    r.fail("postings not sorted in \"" + td.term + "\"");
                first = false;
                prev_doc = doc;
                td.docs[row] = doc;
                for (size_t i = 0; i < index.row_width(); ++i)
                    td.coeffs[row * index.row_width() + i] = r.f64();
            }
        }
        char extra;
        if (file.read(&extra, 1))
            r.fail("trailing bytes after postings");
    }

    index.rebuild_lookups();
    return index;
}

void Index::export_postings(std::ostream& out) const {
    char buf[64];
    for (uint32_t t = 0; t < terms_.size(); ++t) {
        const TermData& td = terms_[t];
        for (uint32_t row = 0; row < td.docs.size(); ++row) {
            out << td.term << '\t' << docs_[td.docs[row]].docno << '\t' << posting_tf(t, row);
            auto coeffs = posting_coeffs(t, row);
            for (double c : coeffs) {
                std::snprintf(buf, sizeof buf, "%.17g", c);
                out << '\t' << buf;
            }
            out << '\n';
        }
    }
}

}  // namespace fvs
