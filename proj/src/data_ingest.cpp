#include "refopt/data_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "refopt/errors.hpp"

namespace refopt {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, delimiter)) fields.push_back(trim(field));
    if (!line.empty() && line.back() == delimiter) fields.emplace_back();
    return fields;
}

// Locale-independent; accepts only a full numeric token.
double parse_value(const std::string& token, const std::string& path, std::size_t row) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || token.empty()) {
        throw Error(ErrorKind::ParseError,
                    path + ": row " + std::to_string(row) + ": non-numeric value '" + token + "'");
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::ParseError,
                    path + ": row " + std::to_string(row) + ": non-finite value '" + token + "'");
    }
    return value;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_table(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");

    CsvTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split_line(line, delimiter);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw Error(ErrorKind::ParseError, path + ": row " + std::to_string(lineno) +
                                                   ": expected " + std::to_string(table.header.size()) +
                                                   " fields, got " + std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (table.header.empty()) throw Error(ErrorKind::ParseError, path + ": missing header row");
    return table;
}

std::size_t column_index(const CsvTable& table, const std::string& name, const std::string& path) {
    const auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
        throw Error(ErrorKind::ParseError, path + ": no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - table.header.begin());
}

ReturnSeries build_series(std::string label, std::vector<std::pair<std::string, double>> rows,
                          const std::string& path) {
    if (rows.empty()) throw Error(ErrorKind::EmptySeries, path + ": series '" + label + "' has no rows");
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].first == rows[i - 1].first) {
            throw Error(ErrorKind::DuplicatePeriod,
                        path + ": duplicate period key '" + rows[i].first + "' in '" + label + "'");
        }
    }
    ReturnSeries series;
    series.label = std::move(label);
    series.periods.reserve(rows.size());
    series.values.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        series.periods.push_back(rows[i].first);
        series.values[static_cast<Eigen::Index>(i)] = rows[i].second;
    }
    return series;
}

} // namespace

ReturnSeries load_series(const std::string& path, const std::string& value_column,
                         const CsvOptions& opts) {
    const CsvTable table = read_table(path, opts.delimiter);
    const std::size_t period_idx = column_index(table, opts.period_column, path);

    std::size_t value_idx = 0;
    if (!value_column.empty()) {
        value_idx = column_index(table, value_column, path);
    } else {
        if (table.header.size() != 2) {
            throw Error(ErrorKind::ParseError,
                        path + ": expected exactly one value column next to '" +
                            opts.period_column + "'; name the column explicitly");
        }
        value_idx = 1 - period_idx;
    }
    if (value_idx == period_idx) {
        throw Error(ErrorKind::ParseError, path + ": value column equals the period column");
    }

    std::vector<std::pair<std::string, double>> rows;
    rows.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        rows.emplace_back(table.rows[r][period_idx],
                          parse_value(table.rows[r][value_idx], path, r + 2));
    }
    return build_series(table.header[value_idx], std::move(rows), path);
}

std::pair<ReturnSeries, std::vector<ReturnSeries>> load_panel(const std::string& path,
                                                              const CsvOptions& opts) {
    const CsvTable table = read_table(path, opts.delimiter);
    const std::size_t period_idx = column_index(table, opts.period_column, path);
    const std::size_t reference_idx = column_index(table, opts.reference_column, path);

    auto read_column = [&](std::size_t col) {
        std::vector<std::pair<std::string, double>> rows;
        rows.reserve(table.rows.size());
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            rows.emplace_back(table.rows[r][period_idx],
                              parse_value(table.rows[r][col], path, r + 2));
        }
        return build_series(table.header[col], std::move(rows), path);
    };

    ReturnSeries reference = read_column(reference_idx);
    std::vector<ReturnSeries> accepted;
    for (std::size_t col = 0; col < table.header.size(); ++col) {
        if (col == period_idx || col == reference_idx) continue;
        accepted.push_back(read_column(col));
    }
    return {std::move(reference), std::move(accepted)};
}

AlignedPanel align(const ReturnSeries& reference, const std::vector<ReturnSeries>& accepted) {
    if (accepted.size() < 2) {
        throw Error(ErrorKind::TooFewSecurities,
                    "need at least 2 accepted securities, got " + std::to_string(accepted.size()));
    }

    // Intersection of period keys over all inputs.
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& key : reference.periods) counts[key] = 1;
    for (const auto& series : accepted) {
        for (const auto& key : series.periods) {
            const auto it = counts.find(key);
            if (it != counts.end()) ++it->second;
        }
    }
    std::vector<std::string> keys;
    for (const auto& [key, count] : counts) {
        if (count == accepted.size() + 1) keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());

    if (keys.size() < 3) {
        throw Error(ErrorKind::InsufficientOverlap,
                    "common periods: " + std::to_string(keys.size()) + ", need at least 3");
    }

    const auto t_count = static_cast<Eigen::Index>(keys.size());
    AlignedPanel panel;
    panel.period_keys = keys;
    panel.reference.resize(t_count);
    panel.accepted.resize(t_count, static_cast<Eigen::Index>(accepted.size()));

    auto fill = [&](const ReturnSeries& series, auto&& assign) {
        std::unordered_map<std::string, Eigen::Index> pos;
        pos.reserve(series.periods.size());
        for (std::size_t i = 0; i < series.periods.size(); ++i) {
            pos[series.periods[i]] = static_cast<Eigen::Index>(i);
        }
        for (Eigen::Index t = 0; t < t_count; ++t) assign(t, series.values[pos.at(keys[t])]);
    };

    fill(reference, [&](Eigen::Index t, double v) { panel.reference[t] = v; });
    for (std::size_t i = 0; i < accepted.size(); ++i) {
        panel.labels.push_back(accepted[i].label);
        fill(accepted[i], [&](Eigen::Index t, double v) {
            panel.accepted(t, static_cast<Eigen::Index>(i)) = v;
        });
    }
    return panel;
}

void write_panel_csv(const AlignedPanel& panel, const std::string& path, const CsvOptions& opts) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");

    out << opts.period_column << opts.delimiter << opts.reference_column;
    for (const auto& label : panel.labels) out << opts.delimiter << label;
    out << '\n';

    char buf[64];
    auto write_value = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    for (Eigen::Index t = 0; t < panel.periods(); ++t) {
        out << panel.period_keys[static_cast<std::size_t>(t)] << opts.delimiter;
        write_value(panel.reference[t]);
        for (Eigen::Index i = 0; i < panel.securities(); ++i) {
            out << opts.delimiter;
            write_value(panel.accepted(t, i));
        }
        out << '\n';
    }
    if (!out) throw Error(ErrorKind::ParseError, "failed writing '" + path + "'");
}

std::pair<AlignedPanel, AlignedPanel> split_panel(const AlignedPanel& panel, double split) {
    if (!(split > 0.0 && split < 1.0)) {
        throw Error(ErrorKind::ParseError, "split must lie in (0, 1)");
    }
    const auto t_total = panel.periods();
    const auto t_est = static_cast<Eigen::Index>(
        std::ceil(split * static_cast<double>(t_total)));
    const auto t_eval = t_total - t_est;
    if (t_est < 3 || t_eval < 3) {
        throw Error(ErrorKind::InsufficientOverlap,
                    "split " + std::to_string(split) + " leaves windows of " +
                        std::to_string(t_est) + " and " + std::to_string(t_eval) +
                        " periods; both need at least 3");
    }

    auto window = [&](Eigen::Index begin, Eigen::Index count) {
        AlignedPanel w;
        w.period_keys.assign(panel.period_keys.begin() + begin,
                             panel.period_keys.begin() + begin + count);
        w.reference = panel.reference.segment(begin, count);
        w.accepted = panel.accepted.middleRows(begin, count);
        w.labels = panel.labels;
        return w;
    };
    return {window(0, t_est), window(t_est, t_eval)};
}

} // namespace refopt
