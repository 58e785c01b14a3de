#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fvs/objective.hpp"

namespace fvs {

// Deterministic 64-bit linear congruential generator. The constants and the
// derived draws are pinned (see README) so that a given SynthSpec produces
// byte-identical corpora everywhere.
class SynthRng {
  public:
    explicit SynthRng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
        return state_;
    }
    // Uniform integer in [0, bound); bound must be positive.
    uint64_t uniform(uint64_t bound) { return (next() >> 33) % bound; }
    uint64_t uniform_range(uint64_t lo, uint64_t hi) { return lo + uniform(hi - lo + 1); }
    // Uniform double in [0, 1) with 53 random bits.
    double u53() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }

  private:
    uint64_t state_;
};

struct PlantRule {
    std::string term;
    int count_min = 1;
    int count_max = 1;
    // In-region placement; empty sections mean anywhere.
    std::optional<ObjectiveSpec> region;
    // Fraction of this plant's occurrences placed anywhere in the document
    // instead of inside the region (gives realistic off-region tails).
    double spill = 0.0;
    // Co-location: one occurrence next to each occurrence of the anchor
    // term, at a free offset within +/- near_offset. Overrides count/region.
    std::string near_term;
    int near_offset = 3;
    // Fraction of the group's documents that receive this plant.
    double fraction = 1.0;
};

struct SynthGroup {
    std::string prefix;  // docno prefix; docnos are prefix + 5-digit counter
    int docs = 0;
    int length_min = 100;
    int length_max = 200;
    int topic = 0;  // > 0 marks every document of the group relevant
    std::string topic_title;
    std::vector<PlantRule> plants;
};

struct SynthSpec {
    uint64_t seed = 1;
    int vocabulary = 500;  // background terms t0000 .. t(V-1), max 10000
    std::vector<SynthGroup> groups;
};

// Writes the corpus as docno<TAB>text lines; optionally a qrels-format
// ground-truth file and a topics file for the labeled groups. Throws on
// contradictory plants (e.g. a region too small for the requested count).
void generate_synthetic(const SynthSpec& spec, std::ostream& corpus, std::ostream* qrels,
                        std::ostream* topics);

// JSON spec reader used by the command line tool (schema in the README).
SynthSpec synth_spec_from_json(const std::string& json_text);

}  // namespace fvs
