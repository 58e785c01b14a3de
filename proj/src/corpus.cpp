#include "fvs/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace fvs {

namespace {

std::string read_all(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string_view s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// Case-insensitive search for an SGML tag like "<docno>".
size_t find_tag(std::string_view hay, std::string_view tag, size_t from) {
    if (tag.empty() || hay.size() < tag.size()) return std::string_view::npos;
    for (size_t i = from; i + tag.size() <= hay.size(); ++i) {
        size_t j = 0;
        while (j < tag.size() &&
               std::tolower(static_cast<unsigned char>(hay[i + j])) ==
                   std::tolower(static_cast<unsigned char>(tag[j])))
            ++j;
        if (j == tag.size()) return i;
    }
    return std::string_view::npos;
}

void append_entity_decoded(std::string& out, std::string_view text) {
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '&') {
            static constexpr std::pair<const char*, char> kEntities[] = {
                {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
            bool matched = false;
            for (const auto& [name, ch] : kEntities) {
                const size_t len = std::char_traits<char>::length(name);
                if (text.compare(i, len, name) == 0) {
                    out.push_back(ch);
                    i += len;
                    matched = true;
                    break;
                }
            }
            if (matched) continue;
        }
        out.push_back(text[i]);
        ++i;
    }
}

// Collects character data inside one <DOC> block, tags removed. When
// text_only is set, only data inside <TEXT> elements is kept.
std::string extract_body(std::string_view block, bool text_only) {
    std::string body;
    int text_depth = 0;
    size_t i = 0;
    while (i < block.size()) {
        if (block[i] == '<') {
            size_t close = block.find('>', i);
            if (close == std::string_view::npos)
                break;  // unterminated tag; drop the rest
            std::string_view tag = block.substr(i, close - i + 1);
            if (find_tag(tag, "<text>", 0) == 0)
                ++text_depth;
            else if (find_tag(tag, "</text>", 0) == 0 && text_depth > 0)
                --text_depth;
            i = close + 1;
            continue;
        }
        size_t next = block.find('<', i);
        if (next == std::string_view::npos)
            next = block.size();
        if (!text_only || text_depth > 0)
            append_entity_decoded(body, block.substr(i, next - i));
        i = next;
    }
    return body;
}

}  // namespace

SgmlParseResult parse_trec_sgml(std::istream& in, const TrecSgmlOptions& options) {
    SgmlParseResult result;
    const std::string data = sanitize_utf8(read_all(in));

    size_t pos = 0;
    size_t block_no = 0;
    while (true) {
        size_t open = find_tag(data, "<doc>", pos);
        if (open == std::string_view::npos)
            break;
        ++block_no;
        size_t body_start = open + 5;
        size_t close = find_tag(data, "</doc>", body_start);
        size_t next_open = find_tag(data, "<doc>", body_start);
        size_t block_end;
        if (close != std::string_view::npos &&
            (next_open == std::string_view::npos || close < next_open)) {
            block_end = close;
            pos = close + 6;
        } else {
            // Missing </DOC>: recover by scanning to the next <DOC> (or EOF).
            result.warnings.push_back("document block " + std::to_string(block_no) +
                                      ": missing </DOC>, recovered at next block");
            block_end = (next_open == std::string_view::npos) ? data.size() : next_open;
            pos = block_end;
        }
        std::string_view block(data.data() + body_start, block_end - body_start);

        size_t no_open = find_tag(block, "<docno>", 0);
        size_t no_close = find_tag(block, "</docno>", 0);
        if (no_open == std::string_view::npos || no_close == std::string_view::npos ||
            no_close < no_open) {
            result.warnings.push_back("document block " + std::to_string(block_no) +
                                      ": missing <DOCNO>, skipped");
            continue;
        }
        std::string docno = trim(block.substr(no_open + 7, no_close - (no_open + 7)));
        if (docno.empty()) {
            result.warnings.push_back("document block " + std::to_string(block_no) +
                                      ": empty <DOCNO>, skipped");
            continue;
        }

        RawDocument doc;
        doc.docno = std::move(docno);
        doc.text = extract_body(block, options.text_only);
        result.documents.push_back(std::move(doc));
    }
    return result;
}

std::vector<RawDocument> parse_plain_corpus(std::istream& in) {
    std::vector<RawDocument> docs;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw std::runtime_error("plain corpus line " + std::to_string(line_no) +
                                     ": expected docno<TAB>text");
        RawDocument doc;
        doc.docno = line.substr(0, tab);
        doc.text = sanitize_utf8(std::string_view(line).substr(tab + 1));
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<Topic> parse_topics(std::istream& in) {
    const std::string data = sanitize_utf8(read_all(in));
    std::vector<Topic> topics;

    size_t pos = 0;
    size_t block_no = 0;
    while (true) {
        size_t open = find_tag(data, "<top>", pos);
        if (open == std::string_view::npos)
            break;
        ++block_no;
        size_t close = find_tag(data, "</top>", open);
        size_t end = (close == std::string_view::npos) ? data.size() : close;
        std::string_view block(data.data() + open, end - open);
        pos = (close == std::string_view::npos) ? data.size() : close + 6;

        size_t num = find_tag(block, "<num>", 0);
        size_t title = find_tag(block, "<title>", 0);
        if (num == std::string_view::npos || title == std::string_view::npos)
            throw std::runtime_error("topics block " + std::to_string(block_no) +
                                     ": missing <num> or <title>");

        std::string_view num_text = block.substr(num + 5);
        num_text = num_text.substr(0, num_text.find('<'));
        std::string num_str = trim(num_text);
        if (num_str.rfind("Number:", 0) == 0)
            num_str = trim(num_str.substr(7));
        int id = 0;
        try {
            id = std::stoi(num_str);
        } catch (const std::exception&) {
            throw std::runtime_error("topics block " + std::to_string(block_no) +
                                     ": bad topic number \"" + num_str + "\"");
        }
        if (id <= 0)
            throw std::runtime_error("topics block " + std::to_string(block_no) +
                                     ": topic number must be positive");

        std::string_view title_text = block.substr(title + 7);
        title_text = title_text.substr(0, title_text.find('<'));
        std::string title_str = trim(title_text);
        if (title_str.rfind("Topic:", 0) == 0)
            title_str = trim(title_str.substr(6));
        if (title_str.empty())
            throw std::runtime_error("topics block " + std::to_string(block_no) +
                                     ": empty title");

        topics.push_back(Topic{id, title_str});
    }
    return topics;
}

void QrelSet::insert(int topic, const std::string& docno, int grade) {
    if (grade < 0)
        throw std::invalid_argument("qrels: negative relevance grade");
    auto [it, inserted] = grades_[topic].emplace(docno, grade);
    if (!inserted)
        throw std::invalid_argument("qrels: duplicate entry for topic " + std::to_string(topic) +
                                    ", document " + docno);
}

int QrelSet::grade(int topic, const std::string& docno) const {
    auto t = grades_.find(topic);
    if (t == grades_.end())
        return 0;
    auto d = t->second.find(docno);
    return d == t->second.end() ? 0 : d->second;
}

size_t QrelSet::relevant_count(int topic) const {
    auto t = grades_.find(topic);
    if (t == grades_.end())
        return 0;
    size_t n = 0;
    for (const auto& [docno, grade] : t->second)
        if (grade > 0)
            ++n;
    return n;
}

std::vector<int> QrelSet::topics() const {
    std::vector<int> out;
    out.reserve(grades_.size());
    for (const auto& [topic, docs] : grades_)
        out.push_back(topic);
    return out;
}

QrelSet parse_qrels(std::istream& in) {
    QrelSet qrels;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;
        std::istringstream fields(line);
        std::string topic_str, iter, docno, grade_str;
        if (!(fields >> topic_str >> iter >> docno >> grade_str))
            throw std::runtime_error("qrels line " + std::to_string(line_no) +
                                     ": expected \"topic iter docno grade\"");
        std::string extra;
        if (fields >> extra)
            throw std::runtime_error("qrels line " + std::to_string(line_no) +
                                     ": trailing fields");
        int topic = 0;
        int grade = 0;
        try {
            topic = std::stoi(topic_str);
            grade = std::stoi(grade_str);
        } catch (const std::exception&) {
            throw std::runtime_error("qrels line " + std::to_string(line_no) +
                                     ": non-numeric topic or grade");
        }
        try {
            qrels.insert(topic, docno, grade);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("qrels line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return qrels;
}

void CorpusStore::add(RawDocument doc) {
    docs_.emplace(doc.docno, std::move(doc));
}

void CorpusStore::add_trec_file(std::istream& in, const TrecSgmlOptions& options) {
    for (auto& doc : parse_trec_sgml(in, options).documents)
        add(std::move(doc));
}

void CorpusStore::add_plain_file(std::istream& in) {
    for (auto& doc : parse_plain_corpus(in))
        add(std::move(doc));
}

const RawDocument* CorpusStore::find(const std::string& docno) const {
    auto it = docs_.find(docno);
    return it == docs_.end() ? nullptr : &it->second;
}

}  // namespace fvs
