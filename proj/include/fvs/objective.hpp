#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fvs/spectral.hpp"

namespace fvs {

// One "X|Y" region selector: the X-th of Y equally sized document sections.
struct ObjectiveSection {
    int x = 0;
    int y = 0;

    bool operator==(const ObjectiveSection&) const = default;
};

// A sum of region selectors, e.g. "1|3+3|3".
struct ObjectiveSpec {
    std::vector<ObjectiveSection> sections;

    std::string to_string() const;
};

// Parses the grammar  spec := term ("+" term)* ; term := INT "|" INT  with
// whitespace tolerated. Throws std::invalid_argument naming the bad term.
ObjectiveSpec parse_objective(std::string_view text);

// Sum of unit-height rectangles over the selected sections of [0, L].
// Section boundaries are real-valued; nothing is rounded to the token grid.
SpectralVector objective_spectral(const ObjectiveSpec& spec, double L, int order);

// True iff the pulse midpoint p - 0.5 falls inside some selected section.
bool in_region(uint32_t p, const ObjectiveSpec& spec, uint32_t L);

}  // namespace fvs
