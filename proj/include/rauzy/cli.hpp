#pragma once

#include <iosfwd>
#include <string>

#include "rauzy/options.hpp"

namespace rauzy::cli {

enum class OutputFormat { Text, Json, Dot };

struct Config {
    std::size_t node_budget = 10'000'000;
    std::string cache_dir; // empty: no cache
    OutputFormat output = OutputFormat::Text;
    std::size_t workers = 1;

    SearchOptions search() const { return {node_budget, workers}; }
};

/// Exit status: 0 on success, 1 when a check fails (verify, same-class
/// disagreement), 2 on errors. Environment variables RAUZY_BUDGET,
/// RAUZY_WORKERS, RAUZY_CACHE_DIR and RAUZY_OUTPUT mirror the global flags.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace rauzy::cli
