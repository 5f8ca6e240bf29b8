#include "critx/io/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <istream>
#include <system_error>

#include "critx/error.hpp"

namespace critx::io {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf, p);
}

double parse_number(std::string_view s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    const auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
        throw Error("'" + std::string(s) + "' is not a number");
    return v;
}

const std::string* SeriesFile::find_meta(std::string_view key) const {
    for (const auto& [k, v] : meta)
        if (k == key) return &v;
    return nullptr;
}

void write_series(std::ostream& os, const SeriesFile& file) {
    for (const auto& [k, v] : file.meta) os << "# " << k << "=" << v << "\n";
    os << kCsvHeader << "\n";
    for (const auto& r : file.rows)
        os << r.family << "," << r.L << "," << r.param << "," << format_number(r.param_value) << ","
           << r.observable << "," << r.r << "," << format_number(r.value) << "\n";
}

SeriesFile read_series(std::istream& is, std::string_view source) {
    SeriesFile file;
    std::string line;
    int line_no = 0;
    bool header = false;
    const auto fail = [&](const std::string& msg) {
        throw Error(std::string(source) + ":" + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (header) fail("comment after the header");
            std::string_view body(line);
            body.remove_prefix(1);
            if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
            const auto eq = body.find('=');
            if (eq == std::string_view::npos) fail("comment lines must read '# key=value'");
            file.meta.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
            continue;
        }
        if (!header) {
            if (line != kCsvHeader) fail("expected header '" + std::string(kCsvHeader) + "'");
            header = true;
            continue;
        }
        std::vector<std::string_view> f;
        std::string_view rest(line);
        for (;;) {
            const auto c = rest.find(',');
            f.push_back(rest.substr(0, c));
            if (c == std::string_view::npos) break;
            rest.remove_prefix(c + 1);
        }
        if (f.size() != 7) fail("expected 7 fields, got " + std::to_string(f.size()));
        SeriesRecord r;
        try {
            r.family = f[0];
            r.L = static_cast<int>(parse_number(f[1]));
            r.param = f[2];
            r.param_value = parse_number(f[3]);
            r.observable = f[4];
            r.r = static_cast<int>(parse_number(f[5]));
            r.value = parse_number(f[6]);
        } catch (const Error& e) {
            fail(e.what());
        }
        if (std::to_string(r.L) != f[1] || std::to_string(r.r) != f[5]) fail("L and r must be integers");
        file.rows.push_back(std::move(r));
    }
    if (!header) throw Error(std::string(source) + ": no CSV header found (empty input?)");
    return file;
}

SeriesFile read_series_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return read_series(in, path.string());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

std::vector<fss::ObservableSeries> to_series(const SeriesFile& file) {
    if (file.rows.empty()) throw Error("series file has no data rows");
    const auto& first = file.rows.front();
    std::map<int, std::vector<std::pair<double, double>>> by_L;
    for (const auto& r : file.rows) {
        if (r.family != first.family || r.param != first.param || r.observable != first.observable ||
            r.r != first.r)
            throw Error("series file mixes different models, parameters or observables");
        if (std::isnan(r.value)) continue;
        by_L[r.L].emplace_back(r.param_value, r.value);
    }
    std::vector<fss::ObservableSeries> out;
    for (auto& [L, pts] : by_L) {
        std::sort(pts.begin(), pts.end());
        fss::ObservableSeries s;
        s.model_tag = first.family;
        s.L = L;
        s.param_name = first.param;
        for (const auto& [g, v] : pts) {
            s.grid.push_back(g);
            s.values.push_back(v);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace critx::io
