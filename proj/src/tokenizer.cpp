#include "fvs/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

namespace fvs {

namespace {

constexpr const char* kReplacement = "\xEF\xBF\xBD";  // U+FFFD

// Length of a valid UTF-8 sequence starting at s[i], or 0 if invalid.
size_t utf8_sequence(std::string_view s, size_t i) {
    const unsigned char c0 = s[i];
    if (c0 < 0x80) return 1;
    size_t len;
    uint32_t cp;
    if ((c0 & 0xE0) == 0xC0) { len = 2; cp = c0 & 0x1F; }
    else if ((c0 & 0xF0) == 0xE0) { len = 3; cp = c0 & 0x0F; }
    else if ((c0 & 0xF8) == 0xF0) { len = 4; cp = c0 & 0x07; }
    else return 0;
    if (i + len > s.size()) return 0;
    for (size_t j = 1; j < len; ++j) {
        const unsigned char c = s[i + j];
        if ((c & 0xC0) != 0x80) return 0;
        cp = (cp << 6) | (c & 0x3F);
    }
    if (len == 2 && cp < 0x80) return 0;       // overlong
    if (len == 3 && cp < 0x800) return 0;
    if (len == 4 && cp < 0x10000) return 0;
    if (cp >= 0xD800 && cp <= 0xDFFF) return 0;  // surrogate
    if (cp > 0x10FFFF) return 0;
    return len;
}

uint32_t decode_codepoint(std::string_view s, size_t i, size_t len) {
    const unsigned char c0 = s[i];
    uint32_t cp = len == 2 ? (c0 & 0x1F) : len == 3 ? (c0 & 0x0F) : (c0 & 0x07);
    for (size_t j = 1; j < len; ++j)
        cp = (cp << 6) | (static_cast<unsigned char>(s[i + j]) & 0x3F);
    return cp;
}

uint64_t fnv1a(uint64_t h, std::string_view data) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace

std::string sanitize_utf8(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        const size_t len = utf8_sequence(text, i);
        if (len == 0) {
            out += kReplacement;
            ++i;
        } else {
            out.append(text.substr(i, len));
            i += len;
        }
    }
    return out;
}

TokenizerConfig default_tokenizer_config() {
    TokenizerConfig cfg;
    cfg.stopwords = default_stopwords();
    return cfg;
}

std::vector<std::string> load_stopword_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open stopword file: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
            ++start;
        if (start > 0)
            line.erase(0, start);
        if (line.empty())
            continue;
        std::transform(line.begin(), line.end(), line.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        words.push_back(line);
    }
    return words;
}

Tokenizer::Tokenizer(TokenizerConfig config) : config_(std::move(config)) {
    stop_.insert(config_.stopwords.begin(), config_.stopwords.end());

    std::vector<std::string> sorted(stop_.begin(), stop_.end());
    std::sort(sorted.begin(), sorted.end());
    uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a offset basis
    h = fnv1a(h, "min=" + std::to_string(config_.min_token_length));
    h = fnv1a(h, config_.stem ? ";stem=1;" : ";stem=0;");
    for (const auto& w : sorted) {
        h = fnv1a(h, w);
        h = fnv1a(h, "\n");
    }
    fingerprint_ = h;
}

TokenStream Tokenizer::run(const RawDocument& doc) const {
    return run(doc.docno, doc.text);
}

TokenStream Tokenizer::run(std::string_view docno, std::string_view text) const {
    TokenStream stream;
    stream.docno = std::string(docno);

    const std::string clean = sanitize_utf8(text);
    std::string current;
    auto flush = [&] {
        if (current.empty())
            return;
        Token tok;
        tok.position = static_cast<uint32_t>(stream.tokens.size() + 1);
        tok.indexable = static_cast<int>(current.size()) >= config_.min_token_length &&
                        !is_stopword(current);
        if (tok.indexable && config_.stem)
            tok.term = porter_stem(current);
        else
            tok.term = current;
        stream.tokens.push_back(std::move(tok));
        current.clear();
    };

    size_t i = 0;
    while (i < clean.size()) {
        const unsigned char c = clean[i];
        if (c < 0x80) {
            if (std::isalnum(c))
                current.push_back(static_cast<char>(std::tolower(c)));
            else
                flush();
            ++i;
        } else {
            // Valid multi-byte sequences count as word characters, except the
            // replacement character, which marks byte garbage and splits.
            const size_t len = utf8_sequence(clean, i);
            const uint32_t cp = decode_codepoint(clean, i, len);
            if (cp == 0xFFFD)
                flush();
            else
                current.append(clean.substr(i, len));
            i += len;
        }
    }
    flush();
    return stream;
}

}  // namespace fvs
