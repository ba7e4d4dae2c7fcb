#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "refopt/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Minimum-variance portfolio tracking a reference security's expected "
                 "return, with similarity tests"};
    app.require_subcommand(1);

    refopt::RunConfig config;
    std::string delimiter = ",";
    double split_value = 0.0;
    std::uint64_t seed_value = 0;

    auto add_data_flags = [&](CLI::App* cmd) {
        cmd->add_option("--panel", config.panel_path, "Wide CSV: period, reference, one column per security");
        cmd->add_option("--reference", config.reference_path, "CSV with the reference security's returns");
        cmd->add_option("--accepted", config.accepted_paths, "CSVs with accepted securities' returns");
        cmd->add_option("--period-column", config.csv.period_column, "Period column name")
            ->capture_default_str();
        cmd->add_option("--reference-column", config.csv.reference_column,
                        "Reference column name in a wide panel")
            ->capture_default_str();
        cmd->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
    };
    auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", config.alpha, "Two-sided significance level")
            ->capture_default_str();
        cmd->add_option("--monitoring-cost", config.monitoring_cost,
                        "Per-period cost deducted from the reference mean")
            ->capture_default_str();
    };

    CLI::App* optimize = app.add_subcommand("optimize", "Estimate moments and solve for the optimal weights");
    add_data_flags(optimize);
    add_model_flags(optimize);
    optimize->add_option("--out", config.out_path, "Report file (JSON)");

    CLI::App* backtest = app.add_subcommand("backtest", "Fit on the first window, test similarity on the second");
    add_data_flags(backtest);
    add_model_flags(backtest);
    CLI::Option* backtest_split =
        backtest->add_option("--split", split_value, "Estimation fraction of periods (default 0.5)");
    backtest->add_option("--out", config.out_path, "Report file (JSON)");

    CLI::App* simulate = app.add_subcommand("simulate", "Generate a correlated normal panel CSV");
    simulate->add_option("--spec", config.spec_path, "MarketSpec JSON file")->required();
    CLI::Option* simulate_seed =
        simulate->add_option("--seed", seed_value, "Override the spec's seed");
    simulate->add_option("--out", config.out_path, "Panel CSV path")->required();
    simulate->add_option("--period-column", config.csv.period_column, "Period column name")
        ->capture_default_str();
    simulate->add_option("--reference-column", config.csv.reference_column, "Reference column name")
        ->capture_default_str();
    simulate->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();

    CLI::App* test = app.add_subcommand("test", "Run the similarity tests on user-supplied weights");
    add_data_flags(test);
    add_model_flags(test);
    test->add_option("--weights", config.weights_path, "JSON array or {\"weights\": [...]}")
        ->required();
    CLI::Option* test_split = test->add_option(
        "--split", split_value, "Estimate mu_rs on the first window, evaluate on the second");
    test->add_option("--out", config.out_path, "Report file (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (delimiter.size() != 1) {
        std::cerr << "refopt: --delimiter must be a single character\n";
        return 2;
    }
    config.csv.delimiter = delimiter[0];
    if (backtest_split->count() > 0 || test_split->count() > 0) config.split = split_value;
    if (simulate_seed->count() > 0) config.seed = seed_value;

    if (optimize->parsed()) return refopt::cmd_optimize(config, std::cout);
    if (backtest->parsed()) return refopt::cmd_backtest(config, std::cout);
    if (simulate->parsed()) return refopt::cmd_simulate(config, std::cout);
    if (test->parsed()) return refopt::cmd_test(config, std::cout);
    return 2;
}
