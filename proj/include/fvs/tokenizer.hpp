#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace fvs {

struct RawDocument {
    std::string docno;
    std::string text;
};

struct Token {
    uint32_t position = 0;  // 1-based
    std::string term;
    bool indexable = true;
};

// Every surviving token consumes a position, stopwords included, so that
// region arithmetic sees the document's real extent.
struct TokenStream {
    std::string docno;
    std::vector<Token> tokens;

    uint32_t length() const { return static_cast<uint32_t>(tokens.size()); }
};

struct TokenizerConfig {
    std::vector<std::string> stopwords;  // lowercase
    int min_token_length = 2;
    bool stem = false;
};

// The 300-word English list shipped in data/stopwords.txt.
std::vector<std::string> default_stopwords();

TokenizerConfig default_tokenizer_config();

// Reads one stopword per line; blank lines ignored, entries lowercased.
std::vector<std::string> load_stopword_file(const std::string& path);

// Classic Porter (1980) suffix-stripping stemmer. Expects a lowercase word.
std::string porter_stem(std::string_view word);

// Replaces bytes that do not form valid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view text);

class Tokenizer {
  public:
    explicit Tokenizer(TokenizerConfig config);

    TokenStream run(const RawDocument& doc) const;
    TokenStream run(std::string_view docno, std::string_view text) const;

    bool is_stopword(const std::string& term) const { return stop_.count(term) > 0; }
    const TokenizerConfig& config() const { return config_; }

    // Stable 64-bit digest of the full configuration (stopword list, minimum
    // token length, stemming switch). Stored in the index header.
    uint64_t fingerprint() const { return fingerprint_; }

  private:
    TokenizerConfig config_;
    std::unordered_set<std::string> stop_;
    uint64_t fingerprint_ = 0;
};

}  // namespace fvs
