#pragma once

#include "kgrank/centrality.hpp"
#include "kgrank/sweep.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace kgrank::cli {

/// A sweep config file may name several sources and metrics; `--out` needs
/// exactly one of each, `--plot-dir` takes the full cross product.
struct SweepPlan {
    SweepConfig base;  // source and metric unset
    std::vector<SweepConfig> runs;
    bool seed_given = false;
    bool graph_seed_given = false;  // otherwise the generator uses the master seed
};

/// Parses the line-oriented `key = value` sweep config. Throws ParseError on
/// unknown keys or bad values.
SweepPlan parse_sweep_config(std::string_view text, const std::string& base_dir = ".");

/// Runs one command line. Returns 0 on success, 1 on module errors and 2 on
/// usage errors; errors are reported on `err` as a single
/// `error kind=<kind> message="<text>"` line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kgrank::cli
