#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include "refopt/errors.hpp"
#include "refopt/series.hpp"

namespace test_util {

inline std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "refopt_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string write_temp_file(const std::string& name, const std::string& content) {
    const auto path = temp_dir() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

inline std::optional<refopt::ErrorKind> thrown_kind(const std::function<void()>& body) {
    try {
        body();
    } catch (const refopt::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

inline refopt::AlignedPanel panel_from(const Eigen::VectorXd& reference,
                                       const Eigen::MatrixXd& accepted) {
    refopt::AlignedPanel panel;
    panel.reference = reference;
    panel.accepted = accepted;
    char key[24];
    for (Eigen::Index t = 0; t < accepted.rows(); ++t) {
        std::snprintf(key, sizeof(key), "t%08lld", static_cast<long long>(t + 1));
        panel.period_keys.emplace_back(key);
    }
    for (Eigen::Index i = 0; i < accepted.cols(); ++i) {
        panel.labels.push_back("sec" + std::to_string(i + 1));
    }
    return panel;
}

} // namespace test_util
