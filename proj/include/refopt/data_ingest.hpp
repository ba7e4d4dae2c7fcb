#pragma once

#include <string>
#include <vector>

#include "refopt/series.hpp"

namespace refopt {

struct CsvOptions {
    char delimiter = ',';
    std::string period_column = "period";
    std::string reference_column = "reference";
};

/// Reads one series from a delimited file with a header row.
/// value_column selects the column to read; if empty, the file must contain
/// exactly one column besides the period column. Rows are sorted by period
/// key; duplicate keys and non-numeric values are errors.
ReturnSeries load_series(const std::string& path, const std::string& value_column = "",
                         const CsvOptions& opts = {});

/// Reads a wide panel file: period column, reference column, and one column
/// per accepted security (in file order).
std::pair<ReturnSeries, std::vector<ReturnSeries>> load_panel(const std::string& path,
                                                              const CsvOptions& opts = {});

/// Intersects the period keys of all inputs and assembles the panel.
/// The panel contains exactly the periods present in every series.
AlignedPanel align(const ReturnSeries& reference, const std::vector<ReturnSeries>& accepted);

/// Writes a panel in the wide format load_panel reads. Values carry 17
/// significant digits so a round-trip is lossless.
void write_panel_csv(const AlignedPanel& panel, const std::string& path,
                     const CsvOptions& opts = {});

/// First ceil(split * T) periods, and the remainder. Both windows must keep
/// at least 3 periods.
std::pair<AlignedPanel, AlignedPanel> split_panel(const AlignedPanel& panel, double split);

} // namespace refopt
