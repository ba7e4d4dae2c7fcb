#include "refopt/commands.hpp"

#include <fstream>
#include <json.hpp>

#include "refopt/estimation.hpp"
#include "refopt/optimizer.hpp"
#include "refopt/similarity.hpp"

namespace refopt {

using ordered_json = nlohmann::ordered_json;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
            return 2;
        case ErrorKind::DuplicatePeriod:
        case ErrorKind::EmptySeries:
        case ErrorKind::InsufficientOverlap:
        case ErrorKind::TooFewSecurities:
        case ErrorKind::LengthMismatch:
            return 3;
        case ErrorKind::ZeroVariance:
        case ErrorKind::SingularSystem:
        case ErrorKind::DegenerateCovariance:
        case ErrorKind::ResidualTooLarge:
        case ErrorKind::NotPositiveDefinite:
            return 4;
    }
    return 1;
}

namespace {

void emit(const ordered_json& doc, const RunConfig& config, std::ostream& out) {
    const std::string text = doc.dump(2) + "\n";
    if (!config.out_path.empty()) {
        std::ofstream file(config.out_path);
        if (!file) throw Error(ErrorKind::ParseError, "cannot write '" + config.out_path + "'");
        file << text;
    }
    out << text;
}

int run_guarded(std::ostream& out, const auto& body) {
    try {
        return body();
    } catch (const Error& e) {
        const ordered_json doc = {
            {"error", {{"kind", e.kind_name()}, {"message", e.what()}}}};
        out << doc.dump(2) << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        const ordered_json doc = {
            {"error", {{"kind", "ConfigError"}, {"message", e.what()}}}};
        out << doc.dump(2) << "\n";
        return 2;
    }
}

AlignedPanel load_inputs(const RunConfig& config) {
    const bool have_panel = !config.panel_path.empty();
    const bool have_files = !config.reference_path.empty();
    if (have_panel == have_files) {
        throw Error(ErrorKind::ParseError,
                    "provide either --panel or --reference with --accepted files");
    }
    if (have_panel) {
        auto [reference, accepted] = load_panel(config.panel_path, config.csv);
        return align(reference, accepted);
    }
    const ReturnSeries reference = load_series(config.reference_path, "", config.csv);
    std::vector<ReturnSeries> accepted;
    accepted.reserve(config.accepted_paths.size());
    for (const auto& path : config.accepted_paths) {
        accepted.push_back(load_series(path, "", config.csv));
    }
    return align(reference, accepted);
}

void validate_common(const RunConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
        throw Error(ErrorKind::ParseError, "--alpha must lie in (0, 1)");
    }
    if (config.monitoring_cost < 0.0) {
        throw Error(ErrorKind::ParseError, "--monitoring-cost must be >= 0");
    }
    if (config.split && !(*config.split > 0.0 && *config.split < 1.0)) {
        throw Error(ErrorKind::ParseError, "--split must lie in (0, 1)");
    }
}

ordered_json json_inputs(const RunConfig& config, const AlignedPanel& panel) {
    ordered_json j;
    if (!config.panel_path.empty()) {
        j["panel"] = config.panel_path;
    } else {
        j["reference"] = config.reference_path;
        j["accepted"] = config.accepted_paths;
    }
    j["labels"] = panel.labels;
    j["periods"] = panel.periods();
    j["alpha"] = config.alpha;
    j["monitoring_cost"] = config.monitoring_cost;
    if (config.split) j["split"] = *config.split;
    return j;
}

ordered_json json_estimates(const MomentEstimates& est, const AlignedPanel& panel) {
    ordered_json sigma = ordered_json::array();
    for (Eigen::Index i = 0; i < est.securities(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < est.securities(); ++j) row.push_back(est.sigma(i, j));
        sigma.push_back(std::move(row));
    }
    return {{"labels", panel.labels},
            {"mu", std::vector<double>(est.mu.begin(), est.mu.end())},
            {"sigma", std::move(sigma)},
            {"mu_rs", est.mu_rs},
            {"var_rs", est.var_rs},
            {"mu_rs_ci", {est.mu_rs_ci_lo, est.mu_rs_ci_hi}},
            {"T", est.sample_size}};
}

ordered_json json_test_result(const TestResult& r) {
    return {{"statistic", r.statistic}, {"df", r.df},          {"p_value", r.p_value},
            {"ci", {r.ci_lo, r.ci_hi}}, {"reject", r.reject},  {"alpha", r.alpha}};
}

ordered_json json_similarity(const SimilarityReport& report) {
    ordered_json j;
    j["S_value"] = report.s_value;
    if (report.sharpe_test.degenerate) {
        j["sharpe_ratio"] = nullptr;
    } else {
        j["sharpe_ratio"] = report.sharpe_test.sharpe_ratio;
    }
    j["T_eval"] = report.sample_size;
    j["mean_test"] = json_test_result(report.mean_test);
    if (report.sharpe_test.degenerate) {
        j["sharpe_test"] = {{"exceptional_degenerate", true},
                            {"all_zero", report.sharpe_test.all_zero}};
    } else {
        j["sharpe_test"] = json_test_result(*report.sharpe_test.test);
    }
    return j;
}

ordered_json json_portfolio(const OptimalPortfolio& portfolio, const AlignedPanel& panel,
                            double s_estimation_window) {
    return {{"labels", panel.labels},
            {"weights",
             std::vector<double>(portfolio.weights.begin(), portfolio.weights.end())},
            {"lambda1", portfolio.lambda1},
            {"lambda2", portfolio.lambda2},
            {"in_sample_mean", portfolio.in_sample_mean},
            {"in_sample_variance", portfolio.in_sample_variance},
            {"S_estimation_window", s_estimation_window}};
}

ordered_json json_diagnostics(const OptimalPortfolio& portfolio, const HessianCheck& hessian) {
    return {{"hessian_pd", portfolio.hessian_pd},
            {"smallest_pivot", hessian.smallest_pivot},
            {"condition_estimate", portfolio.condition_estimate},
            {"residual_inf_norm", portfolio.residual_inf_norm}};
}

ordered_json report_header() {
    return {{"tool", "refopt"}, {"report_format", 1}};
}

Eigen::VectorXd load_weights_file(const std::string& path, Eigen::Index expected) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    const ordered_json* array = nullptr;
    if (doc.is_array()) {
        array = &doc;
    } else if (doc.is_object() && doc.contains("weights") && doc["weights"].is_array()) {
        array = &doc["weights"];
    } else {
        throw Error(ErrorKind::ParseError,
                    path + ": expected a JSON array or an object with a \"weights\" array");
    }
    if (static_cast<Eigen::Index>(array->size()) != expected) {
        throw Error(ErrorKind::LengthMismatch,
                    path + ": got " + std::to_string(array->size()) + " weights for " +
                        std::to_string(expected) + " securities");
    }
    Eigen::VectorXd weights(expected);
    for (Eigen::Index i = 0; i < expected; ++i) {
        const auto& v = (*array)[static_cast<std::size_t>(i)];
        if (!v.is_number()) throw Error(ErrorKind::ParseError, path + ": weights must be numbers");
        weights[i] = v.get<double>();
    }
    return weights;
}

} // namespace

MarketSpec load_market_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }

    auto require = [&](const char* key) -> const ordered_json& {
        if (!doc.contains(key)) {
            throw Error(ErrorKind::ParseError, path + ": missing field \"" + key + "\"");
        }
        return doc[key];
    };

    MarketSpec spec;
    try {
        const auto mu = require("mu").get<std::vector<double>>();
        spec.mu = Eigen::Map<const Eigen::VectorXd>(mu.data(),
                                                    static_cast<Eigen::Index>(mu.size()));
        const auto rows = require("sigma").get<std::vector<std::vector<double>>>();
        spec.sigma.resize(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(rows.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size()) {
                throw Error(ErrorKind::ParseError, path + ": sigma must be square");
            }
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                spec.sigma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    rows[i][j];
            }
        }
        spec.mu_rs = require("mu_rs").get<double>();
        spec.var_rs = require("var_rs").get<double>();
        const auto corr = require("corr_rs").get<std::vector<double>>();
        spec.corr_rs = Eigen::Map<const Eigen::VectorXd>(corr.data(),
                                                         static_cast<Eigen::Index>(corr.size()));
        spec.periods = require("T").get<Eigen::Index>();
        spec.seed = require("seed").get<std::uint64_t>();
        if (doc.contains("labels")) spec.labels = doc["labels"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
    return spec;
}

int cmd_optimize(const RunConfig& config, std::ostream& out) {
    return run_guarded(out, [&] {
        validate_common(config);
        const AlignedPanel panel = load_inputs(config);
        const MomentEstimates est = estimate_moments(panel, config.alpha, config.monitoring_cost);
        const LinearSystem sys = build_linear_system(est);
        const OptimalPortfolio portfolio = solve_optimal_weights(sys, est);
        const HessianCheck hessian = check_hessian(est);
        const double s_window = compute_s(portfolio_returns(portfolio.weights, panel), est.mu_rs);

        ordered_json doc;
        doc["meta"] = report_header();
        doc["inputs"] = json_inputs(config, panel);
        doc["estimates"] = json_estimates(est, panel);
        doc["portfolio"] = json_portfolio(portfolio, panel, s_window);
        doc["diagnostics"] = json_diagnostics(portfolio, hessian);
        emit(doc, config, out);
        return 0;
    });
}

int cmd_backtest(const RunConfig& config, std::ostream& out) {
    return run_guarded(out, [&] {
        validate_common(config);
        RunConfig cfg = config;
        if (!cfg.split) cfg.split = 0.5;

        const AlignedPanel panel = load_inputs(cfg);
        const auto [estimation, evaluation] = split_panel(panel, *cfg.split);

        const MomentEstimates est = estimate_moments(estimation, cfg.alpha, cfg.monitoring_cost);
        const LinearSystem sys = build_linear_system(est);
        const OptimalPortfolio portfolio = solve_optimal_weights(sys, est);
        const HessianCheck hessian = check_hessian(est);
        const double s_window =
            compute_s(portfolio_returns(portfolio.weights, estimation), est.mu_rs);

        const ReturnSeries po_eval = portfolio_returns(portfolio.weights, evaluation);
        ReturnSeries rs_eval;
        rs_eval.label = "reference";
        rs_eval.periods = evaluation.period_keys;
        rs_eval.values = evaluation.reference;
        const SimilarityReport similarity =
            evaluate_similarity(rs_eval, po_eval, est.mu_rs, cfg.alpha);

        ordered_json doc;
        doc["meta"] = report_header();
        doc["inputs"] = json_inputs(cfg, panel);
        doc["estimates"] = json_estimates(est, estimation);
        doc["portfolio"] = json_portfolio(portfolio, estimation, s_window);
        doc["similarity"] = json_similarity(similarity);
        doc["diagnostics"] = json_diagnostics(portfolio, hessian);
        emit(doc, cfg, out);
        return similarity.sharpe_test.degenerate ? 5 : 0;
    });
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
    return run_guarded(out, [&] {
        if (config.spec_path.empty()) {
            throw Error(ErrorKind::ParseError, "simulate requires --spec");
        }
        MarketSpec spec = load_market_spec(config.spec_path);
        if (config.seed) spec.seed = *config.seed;

        AlignedPanel panel;
        try {
            panel = generate_panel(spec);
        } catch (const std::invalid_argument& e) {
            throw Error(ErrorKind::ParseError, config.spec_path + ": " + e.what());
        }

        if (config.out_path.empty()) {
            throw Error(ErrorKind::ParseError, "simulate requires --out for the panel CSV");
        }
        write_panel_csv(panel, config.out_path, config.csv);
        out << "wrote " << panel.periods() << " periods x " << panel.securities()
            << " securities to " << config.out_path << "\n";
        return 0;
    });
}

int cmd_test(const RunConfig& config, std::ostream& out) {
    return run_guarded(out, [&] {
        validate_common(config);
        if (config.weights_path.empty()) {
            throw Error(ErrorKind::ParseError, "test requires --weights");
        }
        const AlignedPanel panel = load_inputs(config);

        AlignedPanel estimation = panel;
        AlignedPanel evaluation = panel;
        if (config.split) {
            std::tie(estimation, evaluation) = split_panel(panel, *config.split);
        }

        const MomentEstimates est = estimate_moments(estimation, config.alpha, config.monitoring_cost);
        const Eigen::VectorXd weights = load_weights_file(config.weights_path, panel.securities());

        const double s_window =
            compute_s(portfolio_returns(weights, estimation), est.mu_rs);
        const ReturnSeries po_eval = portfolio_returns(weights, evaluation);
        ReturnSeries rs_eval;
        rs_eval.label = "reference";
        rs_eval.periods = evaluation.period_keys;
        rs_eval.values = evaluation.reference;
        const SimilarityReport similarity =
            evaluate_similarity(rs_eval, po_eval, est.mu_rs, config.alpha);

        ordered_json doc;
        doc["meta"] = report_header();
        doc["inputs"] = json_inputs(config, panel);
        doc["estimates"] = json_estimates(est, estimation);
        doc["portfolio"] = {
            {"labels", panel.labels},
            {"weights", std::vector<double>(weights.begin(), weights.end())},
            {"in_sample_mean", weights.dot(est.mu)},
            {"in_sample_variance", weights.dot(est.sigma * weights)},
            {"S_estimation_window", s_window}};
        doc["similarity"] = json_similarity(similarity);
        emit(doc, config, out);
        return similarity.sharpe_test.degenerate ? 5 : 0;
    });
}

} // namespace refopt
