#include "critx/io/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "critx/error.hpp"

namespace critx::io {

namespace {

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                               "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

std::string fmt(double v, int digits = 2) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
    return s;
}

std::string tick_label(double v, double step) {
    const int digits = std::clamp(static_cast<int>(std::ceil(-std::log10(step) + 1e-9)), 0, 8);
    return fmt(std::abs(v) < 1e-12 * step ? 0.0 : v, digits);
}

double nice_step(double span, int target) {
    const double raw = span / target;
    const double p = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (m * p >= raw) return m * p;
    return 10.0 * p;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad(double frac) {
        if (!(hi > lo)) {
            const double d = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
            lo -= d;
            hi += d;
            return;
        }
        const double d = frac * (hi - lo);
        lo -= d;
        hi += d;
    }
};

struct Panel {
    double x0, y0, w, h;  // pixel box
    Range xr, yr;

    double px(double x) const { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * w; }
    double py(double y) const { return y0 + h - (y - yr.lo) / (yr.hi - yr.lo) * h; }
};

void axes(std::ostringstream& os, const Panel& p, int font, int n_ticks, const std::string& xlabel,
          const std::string& ylabel) {
    os << "<rect x=\"" << fmt(p.x0) << "\" y=\"" << fmt(p.y0) << "\" width=\"" << fmt(p.w) << "\" height=\""
       << fmt(p.h) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
    const double xs = nice_step(p.xr.hi - p.xr.lo, n_ticks);
    for (double t = std::ceil(p.xr.lo / xs) * xs; t <= p.xr.hi + 1e-9 * xs; t += xs) {
        const double x = p.px(t);
        os << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(p.y0 + p.h) << "\" x2=\"" << fmt(x) << "\" y2=\""
           << fmt(p.y0 + p.h - 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(p.y0 + p.h + font + 3) << "\" font-size=\"" << font
           << "\" text-anchor=\"middle\">" << tick_label(t, xs) << "</text>\n";
    }
    const double ys = nice_step(p.yr.hi - p.yr.lo, n_ticks);
    for (double t = std::ceil(p.yr.lo / ys) * ys; t <= p.yr.hi + 1e-9 * ys; t += ys) {
        const double y = p.py(t);
        os << "<line x1=\"" << fmt(p.x0) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(p.x0 + 5) << "\" y2=\""
           << fmt(y) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(p.x0 - 4) << "\" y=\"" << fmt(y + font / 3.0) << "\" font-size=\"" << font
           << "\" text-anchor=\"end\">" << tick_label(t, ys) << "</text>\n";
    }
    os << "<text x=\"" << fmt(p.x0 + p.w / 2) << "\" y=\"" << fmt(p.y0 + p.h + 2.4 * font + 4)
       << "\" font-size=\"" << font + 2 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
    const double lx = p.x0 - 3.6 * font, ly = p.y0 + p.h / 2;
    os << "<text x=\"" << fmt(lx) << "\" y=\"" << fmt(ly) << "\" font-size=\"" << font + 2
       << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt(lx) << " " << fmt(ly) << ")\">" << ylabel
       << "</text>\n";
}

void polyline(std::ostringstream& os, const Panel& p, const std::vector<double>& x,
              const std::vector<double>& y, const char* colour, double width) {
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << fmt(width, 1)
       << "\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? " " : "") << fmt(p.px(x[i])) << "," << fmt(p.py(y[i]));
    os << "\"/>\n";
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

PlotStyle parse_plot_style(std::string_view s) {
    if (s == "fig1") return PlotStyle::fig1;
    if (s == "fig2") return PlotStyle::fig2;
    if (s == "generic") return PlotStyle::generic;
    throw Error("unknown plot style '" + std::string(s) + "' (fig1, fig2, generic)");
}

std::string render_svg(const SeriesFile& file, PlotStyle style) {
    const auto series = to_series(file);
    if (series.empty()) throw Error("nothing to plot: every point is invalid");
    const std::string param = escape(series.front().param_name);
    const std::string observable = escape(file.rows.front().observable);

    constexpr double W = 720, H = 500;
    Panel main{90, 30, 600, 400, {}, {}};
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.grid.size(); ++i) {
            main.xr.add(s.grid[i]);
            main.yr.add(s.values[i]);
        }
    main.xr.pad(0.0);
    main.yr.pad(0.05);

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\" font-family=\"sans-serif\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    axes(os, main, 12, 6, param, observable);
    for (std::size_t k = 0; k < series.size(); ++k)
        polyline(os, main, series[k].grid, series[k].values, kPalette[k % kPalette.size()], 1.5);

    // legend
    const bool decreasing = series.front().values.front() > series.front().values.back();
    const bool inset = style != PlotStyle::generic;
    const bool inset_right = style == PlotStyle::fig2 ? true : !decreasing;
    const double leg_x = inset ? (inset_right ? main.x0 + 20 : main.x0 + main.w - 80)
                               : (decreasing ? main.x0 + main.w - 80 : main.x0 + 20);
    const double leg_y = inset ? main.y0 + main.h - 16.0 * series.size() - 10 : main.y0 + 20;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double y = leg_y + 16.0 * k;
        os << "<line x1=\"" << fmt(leg_x) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(leg_x + 20) << "\" y2=\""
           << fmt(y) << "\" stroke=\"" << kPalette[k % kPalette.size()] << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fmt(leg_x + 26) << "\" y=\"" << fmt(y + 4) << "\" font-size=\"11\">L="
           << series[k].L << "</text>\n";
    }

    if (inset) {
        Panel in{inset_right ? main.x0 + main.w - 230 : main.x0 + 60, main.y0 + 15, 210, 140, {}, {}};
        std::vector<std::vector<double>> dx(series.size()), dy(series.size());
        for (std::size_t k = 0; k < series.size(); ++k) {
            const auto& s = series[k];
            if (s.grid.size() < 3) continue;
            const fss::MonotoneCubic f(s.grid, s.values);
            constexpr int n = 120;
            for (int i = 0; i <= n; ++i) {
                const double g = s.grid.front() + (s.grid.back() - s.grid.front()) * i / n;
                dx[k].push_back(g);
                dy[k].push_back(f.derivative(g));
                in.xr.add(g);
                in.yr.add(dy[k].back());
            }
        }
        if (std::isfinite(in.xr.lo)) {
            in.xr.pad(0.0);
            in.yr.pad(0.05);
            axes(os, in, 9, 3, param, "d/d" + param);
            for (std::size_t k = 0; k < series.size(); ++k)
                if (!dx[k].empty()) polyline(os, in, dx[k], dy[k], kPalette[k % kPalette.size()], 1.0);
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace critx::io
