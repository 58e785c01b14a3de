#include "fvs/objective.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace fvs {

namespace {

void skip_ws(std::string_view s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
}

long parse_int(std::string_view s, size_t& i, std::string_view term) {
    skip_ws(s, i);
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
    if (i == start)
        throw std::invalid_argument("objective term \"" + std::string(term) +
                                    "\": expected a positive integer");
    long value = 0;
    for (size_t j = start; j < i; ++j) {
        value = value * 10 + (s[j] - '0');
        if (value > 1'000'000)
            throw std::invalid_argument("objective term \"" + std::string(term) +
                                        "\": integer out of range");
    }
    return value;
}

}  // namespace

std::string ObjectiveSpec::to_string() const {
    std::string out;
    for (const auto& sec : sections) {
        if (!out.empty())
            out += "+";
        out += std::to_string(sec.x) + "|" + std::to_string(sec.y);
    }
    return out;
}

ObjectiveSpec parse_objective(std::string_view text) {
    ObjectiveSpec spec;
    size_t i = 0;
    skip_ws(text, i);
    if (i >= text.size())
        throw std::invalid_argument("objective: empty specification");

    while (true) {
        // Slice out the raw term text for error messages.
        size_t term_start = i;
        size_t term_end = text.find('+', i);
        std::string_view term = text.substr(
            term_start, (term_end == std::string_view::npos ? text.size() : term_end) - term_start);
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back())))
            term.remove_suffix(1);

        long x = parse_int(text, i, term);
        skip_ws(text, i);
        if (i >= text.size() || text[i] != '|')
            throw std::invalid_argument("objective term \"" + std::string(term) +
                                        "\": expected '|' between section index and count");
        ++i;
        long y = parse_int(text, i, term);
        if (x < 1 || y < 1)
            throw std::invalid_argument("objective term \"" + std::string(term) +
                                        "\": section numbers must be >= 1");
        if (x > y)
            throw std::invalid_argument("objective term \"" + std::string(term) +
                                        "\": section index exceeds section count");
        ObjectiveSection sec{static_cast<int>(x), static_cast<int>(y)};
        if (std::find(spec.sections.begin(), spec.sections.end(), sec) != spec.sections.end())
            throw std::invalid_argument("objective term \"" + std::string(term) +
                                        "\": duplicate section selector");
        spec.sections.push_back(sec);

        skip_ws(text, i);
        if (i >= text.size())
            break;
        if (text[i] != '+')
            throw std::invalid_argument(std::string("objective: unexpected character '") +
                                        text[i] + "'");
        ++i;
        skip_ws(text, i);
        if (i >= text.size())
            throw std::invalid_argument("objective: trailing '+' without a term");
    }
    return spec;
}

SpectralVector objective_spectral(const ObjectiveSpec& spec, double L, int order) {
    if (spec.sections.empty())
        throw std::invalid_argument("objective_spectral: empty objective");
    if (!(L > 0.0))
        throw std::invalid_argument("objective_spectral: length must be positive");
    SpectralVector sum = SpectralVector::zero(order, L);
    for (const auto& sec : spec.sections) {
        const double lo = (sec.x - 1) * L / sec.y;
        const double hi = sec.x * L / sec.y;
        sum = add(sum, rect_spectral(lo, hi, L, order));
    }
    return sum;
}

bool in_region(uint32_t p, const ObjectiveSpec& spec, uint32_t L) {
    if (p < 1 || p > L)
        throw std::invalid_argument("in_region: position outside [1, L]");
    const double mid = static_cast<double>(p) - 0.5;
    const double len = static_cast<double>(L);
    for (const auto& sec : spec.sections) {
        const double lo = (sec.x - 1) * len / sec.y;
        const double hi = sec.x * len / sec.y;
        if (mid >= lo && mid <= hi)
            return true;
    }
    return false;
}

}  // namespace fvs
