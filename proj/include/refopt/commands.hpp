#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "refopt/data_ingest.hpp"
#include "refopt/errors.hpp"
#include "refopt/simulate.hpp"

namespace refopt {

struct RunConfig {
    // Input: either one wide panel file, or a reference file plus accepted files.
    std::string panel_path;
    std::string reference_path;
    std::vector<std::string> accepted_paths;
    CsvOptions csv;

    std::optional<double> split;      // estimation fraction; backtest defaults to 0.5
    double alpha = 0.05;
    double monitoring_cost = 0.0;
    std::string out_path;             // report file; always echoed to the stream too

    std::string spec_path;            // simulate: MarketSpec JSON
    std::optional<std::uint64_t> seed; // simulate: overrides the spec's seed
    std::string weights_path;         // test: JSON array or {"weights": [...]}
};

// Exit codes: 0 ok, 2 parse/config, 3 data, 4 singular/degenerate,
// 5 Sharpe test degenerate on an otherwise clean run.
int exit_code_for(ErrorKind kind);

/// Estimate on the full panel, solve, and report weights, multipliers,
/// in-sample moments, estimation-window S, and solver diagnostics.
int cmd_optimize(const RunConfig& config, std::ostream& out);

/// Estimate and solve on the first split window, evaluate S and both
/// hypothesis tests out of sample on the second.
int cmd_backtest(const RunConfig& config, std::ostream& out);

/// Generate a panel CSV from a MarketSpec JSON file, deterministic per seed.
int cmd_simulate(const RunConfig& config, std::ostream& out);

/// Evaluate user-supplied weights: with --split, mu_rs comes from the first
/// window and the tests run on the second; otherwise both use the full panel.
int cmd_test(const RunConfig& config, std::ostream& out);

/// Parses the MarketSpec JSON format used by cmd_simulate.
MarketSpec load_market_spec(const std::string& path);

} // namespace refopt
