#pragma once

#include <string>
#include <vector>

#include "feq/cli/config.hpp"
#include "feq/cli/table.hpp"

namespace feq::cli {

struct ReproRow {
    std::string id;
    std::string quantity;
    std::string unit;
    double reference;  // published value
    double computed;
    double lower;      // acceptance band
    double upper;
    std::string tolerance;  // e.g. "3%", "2 nV", "[115, 132]"
    [[nodiscard]] bool pass() const { return computed >= lower && computed <= upper; }
};

/// Recomputes every published headline number from the configured
/// substrates, grid and constants.
std::vector<ReproRow> reproduce_paper(const RunConfig& config);

ResultTable reproduce_table(const std::vector<ReproRow>& rows);

}  // namespace feq::cli
