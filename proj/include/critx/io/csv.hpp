#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "critx/fss.hpp"

namespace critx::io {

/// Shortest decimal that parses back to the same double ("nan", "inf", "-inf" for the rest).
std::string format_number(double x);
double parse_number(std::string_view s);

/// One CSV row: family,L,param,param_value,observable,r,value
struct SeriesRecord {
    std::string family;
    int L = 0;
    std::string param;
    double param_value = 0.0;
    std::string observable;
    int r = 0;
    double value = 0.0;  ///< nan marks a point whose computation failed
};

struct SeriesFile {
    std::vector<std::pair<std::string, std::string>> meta;  ///< "# key=value" lines, in order
    std::vector<SeriesRecord> rows;

    const std::string* find_meta(std::string_view key) const;
};

inline constexpr std::string_view kCsvHeader = "family,L,param,param_value,observable,r,value";

void write_series(std::ostream& os, const SeriesFile& file);
SeriesFile read_series(std::istream& is, std::string_view source = "<input>");

SeriesFile read_series_file(const std::filesystem::path& path);

/// Writes to a sibling temporary and renames it over `path`, so readers never see a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Groups rows by L (ascending), each sorted by parameter value. Rows with a nan value
/// are dropped. All rows must share family, param and observable.
std::vector<fss::ObservableSeries> to_series(const SeriesFile& file);

}  // namespace critx::io
