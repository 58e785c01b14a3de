#include "fvs/run_format.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fvs {

void write_run(std::ostream& out, const RunFile& run) {
    if (!run.metadata.empty()) {
        nlohmann::json j;
        for (const auto& [k, v] : run.metadata) j[k] = v;
        out << "# fvs-run " << j.dump() << '\n';
    }
    char score[32];
    for (const auto& line : run.lines) {
        std::snprintf(score, sizeof(score), "%.6f", line.score);
        out << line.topic << " Q0 " << line.docno << ' ' << line.rank << ' ' << score << ' '
            << line.tag << '\n';
    }
}

RunFile read_run(std::istream& in) {
    RunFile run;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string marker = "# fvs-run ";
            if (line.rfind(marker, 0) == 0) {
                try {
                    auto j = nlohmann::json::parse(line.substr(marker.size()));
                    for (const auto& [k, v] : j.items())
                        run.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
                } catch (const nlohmann::json::parse_error&) {
                    throw std::runtime_error("run file line " + std::to_string(lineno) +
                                             ": bad metadata header");
                }
            }
            continue;
        }
        std::istringstream fields(line);
        RunLine r;
        std::string q0turn;
        if (!(fields >> r.topic >> q0turn >> r.docno >> r.rank >> r.score))
            throw std::runtime_error("run file line " + std::to_string(lineno) +
                                     ": expected `topic Q0 docno rank score tag`");
        if (!(fields >> r.tag)) r.tag = "fvs";
        run.lines.push_back(std::move(r));
    }
    return run;
}

}  // namespace fvs
