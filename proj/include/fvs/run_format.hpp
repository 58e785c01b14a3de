#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace fvs {

struct RunLine {
    int topic = 0;
    std::string docno;
    int rank = 0;
    double score = 0.0;
    std::string tag;
};

// A run in the usual six-column evaluation format:
//   topic Q0 docno rank score tag
// preceded by optional `# fvs-run {...}` comment lines carrying the settings
// that produced it (JSON object, free-form keys).
struct RunFile {
    std::map<std::string, std::string> metadata;
    std::vector<RunLine> lines;
};

void write_run(std::ostream& out, const RunFile& run);
RunFile read_run(std::istream& in);

}  // namespace fvs
