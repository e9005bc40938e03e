#pragma once

#include <string>
#include <vector>

#include "feq/cli/config.hpp"
#include "feq/cli/table.hpp"

namespace feq::cli {

struct OutputFile {
    std::string path;
    ResultTable table;
};

struct CommandResult {
    std::vector<OutputFile> files;
    std::vector<std::string> messages;  // human summary lines for stdout
    int exit_code = 0;
};

/// Runs the configured command without touching the filesystem.
CommandResult execute(const RunConfig& config);

/// Writes every table of `result`.
void write_outputs(const CommandResult& result);

/// Standard metadata header: tool version, command, resolved config, timestamp.
void add_provenance(ResultTable& table, const RunConfig& config);

struct ConvergenceRow {
    double step;   // m
    double z_max;  // m
    double f12;    // Hz
    double e1;     // J
    double e2;     // J
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;  // steps 0.4, 0.2, 0.1, 0.05 nm, then z_max doubled
    double observed_order = 0.0;        // f12, finest three steps
    double observed_order_coarse = 0.0; // f12, coarsest three steps
    double halving_change = 0.0;        // |f12(h/2) - f12(h)| / f12(h) at the base step
    double zmax_change_e1 = 0.0;        // relative E1 change, z_max -> 2 z_max
    double zmax_change_e2 = 0.0;
};

/// Grid study around `base` (base step must be 0.1 nm-like: steps are 4h, 2h, h, h/2).
ConvergenceStudy convergence_study(const SubstrateParams& substrate, const Grid1D& base,
                                   unsigned threads = 1,
                                   const PhysicalConstants& pc = PhysicalConstants::si());

/// Richardson observed order from three solutions at steps 4h/2h/h style ratio 2.
double observed_order(double coarse, double medium, double fine);

}  // namespace feq::cli
