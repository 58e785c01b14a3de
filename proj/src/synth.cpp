#include "fvs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace fvs {

namespace {

std::string zero_pad(uint64_t value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

bool looks_like_background(const std::string& term) {
    if (term.size() != 5 || term[0] != 't') return false;
    for (size_t i = 1; i < term.size(); ++i)
        if (term[i] < '0' || term[i] > '9') return false;
    return true;
}

void validate(const SynthSpec& spec) {
    if (spec.vocabulary < 1 || spec.vocabulary > 10000)
        throw std::runtime_error("synth: vocabulary must be between 1 and 10000");
    if (spec.groups.empty()) throw std::runtime_error("synth: no groups");
    std::unordered_map<std::string, bool> prefixes;
    for (const auto& g : spec.groups) {
        if (g.prefix.empty()) throw std::runtime_error("synth: group prefix must not be empty");
        if (!prefixes.emplace(g.prefix, true).second)
            throw std::runtime_error("synth: duplicate group prefix '" + g.prefix + "'");
        if (g.docs < 0) throw std::runtime_error("synth: negative document count");
        if (g.length_min < 1 || g.length_max < g.length_min)
            throw std::runtime_error("synth: bad length range in group '" + g.prefix + "'");
        if (g.topic < 0) throw std::runtime_error("synth: negative topic number");
        for (const auto& p : g.plants) {
            if (p.term.empty()) throw std::runtime_error("synth: empty plant term");
            if (looks_like_background(p.term))
                throw std::runtime_error("synth: plant term '" + p.term +
                                         "' collides with the background vocabulary");
            if (p.fraction <= 0.0 || p.fraction > 1.0)
                throw std::runtime_error("synth: plant fraction must be in (0,1]");
            if (p.near_term.empty()) {
                if (p.count_min < 1 || p.count_max < p.count_min)
                    throw std::runtime_error("synth: bad count range for plant '" + p.term + "'");
                if (p.spill < 0.0 || p.spill > 1.0)
                    throw std::runtime_error("synth: plant spill must be in [0,1]");
            } else {
                if (p.near_offset < 1)
                    throw std::runtime_error("synth: near offset must be at least 1");
            }
        }
    }
}

// Draws one element from `candidates` by swapping the chosen slot with the
// last element and popping; candidate order therefore matters and is pinned.
size_t draw_position(SynthRng& rng, std::vector<size_t>& candidates) {
    size_t i = static_cast<size_t>(rng.uniform(candidates.size()));
    size_t chosen = candidates[i];
    candidates[i] = candidates.back();
    candidates.pop_back();
    return chosen;
}

void plant_in_doc(SynthRng& rng, const PlantRule& rule, std::vector<std::string>& slots,
                  const std::string& docno) {
    const size_t len = slots.size();
    if (rule.fraction < 1.0 && rng.u53() >= rule.fraction) return;

    if (!rule.near_term.empty()) {
        // One occurrence beside each anchor occurrence already in the slots.
        std::vector<size_t> anchors;
        for (size_t i = 0; i < len; ++i)
            if (slots[i] == rule.near_term) anchors.push_back(i);
        for (size_t a : anchors) {
            std::vector<size_t> nearby;
            size_t lo = a > static_cast<size_t>(rule.near_offset)
                            ? a - static_cast<size_t>(rule.near_offset)
                            : 0;
            size_t hi = std::min(len - 1, a + static_cast<size_t>(rule.near_offset));
            for (size_t i = lo; i <= hi; ++i)
                if (i != a && slots[i].empty()) nearby.push_back(i);
            if (nearby.empty()) continue;  // crowded neighbourhood, drop this one
            slots[draw_position(rng, nearby)] = rule.term;
        }
        return;
    }

    long count = static_cast<long>(
        rng.uniform_range(static_cast<uint64_t>(rule.count_min),
                          static_cast<uint64_t>(rule.count_max)));
    long spill_count = std::lround(static_cast<double>(count) * rule.spill);
    long target_count = count - spill_count;

    std::vector<size_t> in_area;
    for (size_t i = 0; i < len; ++i) {
        if (!slots[i].empty()) continue;
        if (rule.region &&
            !in_region(static_cast<uint32_t>(i + 1), *rule.region, static_cast<uint32_t>(len)))
            continue;
        in_area.push_back(i);
    }
    if (rule.region && in_area.empty() && target_count > 0)
        throw std::runtime_error("synth: region " + rule.region->to_string() + " for plant '" +
                                 rule.term + "' has no room in document " + docno);
    for (long c = 0; c < target_count; ++c) {
        if (in_area.empty())
            throw std::runtime_error("synth: plant '" + rule.term + "' does not fit in region " +
                                     (rule.region ? rule.region->to_string() : "1|1") +
                                     " of document " + docno);
        slots[draw_position(rng, in_area)] = rule.term;
    }

    if (spill_count > 0) {
        std::vector<size_t> anywhere;
        for (size_t i = 0; i < len; ++i)
            if (slots[i].empty()) anywhere.push_back(i);
        for (long c = 0; c < spill_count; ++c) {
            if (anywhere.empty())
                throw std::runtime_error("synth: document " + docno +
                                         " is too short for plant '" + rule.term + "'");
            slots[draw_position(rng, anywhere)] = rule.term;
        }
    }
}

}  // namespace

void generate_synthetic(const SynthSpec& spec, std::ostream& corpus, std::ostream* qrels,
                        std::ostream* topics) {
    validate(spec);
    SynthRng rng(spec.seed);
    const double vocab = static_cast<double>(spec.vocabulary);

    std::map<int, std::string> titles;
    for (const auto& g : spec.groups) {
        if (g.topic <= 0) continue;
        auto it = titles.find(g.topic);
        if (it == titles.end()) {
            titles.emplace(g.topic, g.topic_title);
        } else if (!g.topic_title.empty()) {
            if (it->second.empty())
                it->second = g.topic_title;
            else if (it->second != g.topic_title)
                throw std::runtime_error("synth: topic " + std::to_string(g.topic) +
                                         " has conflicting titles");
        }
    }
    for (const auto& [topic, title] : titles)
        if (title.empty())
            throw std::runtime_error("synth: topic " + std::to_string(topic) + " has no title");

    for (const auto& g : spec.groups) {
        for (int d = 0; d < g.docs; ++d) {
            std::string docno = g.prefix + zero_pad(static_cast<uint64_t>(d) + 1, 5);
            size_t len = static_cast<size_t>(rng.uniform_range(
                static_cast<uint64_t>(g.length_min), static_cast<uint64_t>(g.length_max)));
            std::vector<std::string> slots(len);
            for (const auto& rule : g.plants) plant_in_doc(rng, rule, slots, docno);
            for (size_t i = 0; i < len; ++i) {
                if (!slots[i].empty()) continue;
                double u = rng.u53();
                auto rank = static_cast<uint64_t>(u * u * vocab);
                if (rank >= static_cast<uint64_t>(spec.vocabulary))
                    rank = static_cast<uint64_t>(spec.vocabulary) - 1;
                slots[i] = "t" + zero_pad(rank, 4);
            }
            corpus << docno << '\t';
            for (size_t i = 0; i < len; ++i) {
                if (i) corpus << ' ';
                corpus << slots[i];
            }
            corpus << '\n';
            if (qrels && g.topic > 0)
                *qrels << g.topic << " 0 " << docno << " 1\n";
        }
    }

    if (topics) {
        for (const auto& [topic, title] : titles) {
            *topics << "<top>\n<num> Number: " << topic << "\n<title> " << title
                    << "\n</top>\n\n";
        }
    }
}

SynthSpec synth_spec_from_json(const std::string& json_text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("synth spec: ") + e.what());
    }

    auto int_pair = [](const json& v, int& lo, int& hi, const char* what) {
        if (v.is_number_integer()) {
            lo = hi = v.get<int>();
        } else if (v.is_array() && v.size() == 2) {
            lo = v[0].get<int>();
            hi = v[1].get<int>();
        } else {
            throw std::runtime_error(std::string("synth spec: ") + what +
                                     " must be an integer or a [min,max] pair");
        }
    };

    SynthSpec spec;
    spec.seed = j.value("seed", static_cast<uint64_t>(1));
    spec.vocabulary = j.value("vocabulary", 500);
    if (!j.contains("groups") || !j["groups"].is_array())
        throw std::runtime_error("synth spec: missing groups array");
    for (const auto& gj : j["groups"]) {
        SynthGroup g;
        g.prefix = gj.value("prefix", std::string());
        g.docs = gj.value("docs", 0);
        if (gj.contains("length")) int_pair(gj["length"], g.length_min, g.length_max, "length");
        g.topic = gj.value("topic", 0);
        g.topic_title = gj.value("title", std::string());
        if (gj.contains("plants")) {
            for (const auto& pj : gj["plants"]) {
                PlantRule p;
                p.term = pj.value("term", std::string());
                if (pj.contains("count")) int_pair(pj["count"], p.count_min, p.count_max, "count");
                if (pj.contains("region") && !pj["region"].get<std::string>().empty())
                    p.region = parse_objective(pj["region"].get<std::string>());
                p.spill = pj.value("spill", 0.0);
                p.near_term = pj.value("near", std::string());
                p.near_offset = pj.value("offset", 3);
                p.fraction = pj.value("fraction", 1.0);
                g.plants.push_back(std::move(p));
            }
        }
        spec.groups.push_back(std::move(g));
    }
    return spec;
}

}  // namespace fvs
