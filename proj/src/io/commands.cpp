#include "critx/io/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "critx/io/config.hpp"
#include "critx/io/csv.hpp"
#include "critx/io/sweep.hpp"

namespace critx::io {

namespace {

// Sizes below this are "desk scale": exponent estimates are only indicative.
constexpr int kSmallSize = 50;

std::vector<double> parse_doubles(std::string_view text, std::size_t expected, const char* what) {
    std::vector<double> out;
    while (true) {
        const auto c = text.find(',');
        out.push_back(parse_number(text.substr(0, c)));
        if (c == std::string_view::npos) break;
        text.remove_prefix(c + 1);
    }
    if (out.size() != expected)
        throw Error(std::string(what) + " needs " + std::to_string(expected) + " comma-separated numbers");
    return out;
}

std::string num(double v) { return format_number(v); }

int report(std::ostream& err, const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
}

}  // namespace

fss::Bracket parse_bracket(std::string_view text) {
    const auto v = parse_doubles(text, 2, "bracket");
    if (!(v[0] < v[1])) throw Error("bracket must read lo,hi with lo < hi");
    return {v[0], v[1]};
}

ParamRange parse_range(std::string_view text) {
    const auto v = parse_doubles(text, 3, "range");
    (void)make_grid(v[0], v[1], v[2]);
    return {v[0], v[1], v[2]};
}

std::vector<ed::QuantumNumbers> parse_sectors(std::string_view text) {
    std::vector<ed::QuantumNumbers> out;
    while (!text.empty()) {
        const auto c = text.find(',');
        const auto item = text.substr(0, c);
        if (item == "even" || item == "+1" || item == "1")
            out.push_back(ed::QuantumNumbers::ising_parity(1));
        else if (item == "odd" || item == "-1")
            out.push_back(ed::QuantumNumbers::ising_parity(-1));
        else if (item.starts_with("sz="))
            out.push_back(ed::QuantumNumbers::magnetization(static_cast<int>(parse_number(item.substr(3)))));
        else
            throw Error("unknown sector '" + std::string(item) + "' (even, odd, sz=<m>)");
        if (c == std::string_view::npos) break;
        text.remove_prefix(c + 1);
    }
    if (out.empty()) throw Error("empty sector list");
    return out;
}

int cmd_sweep(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& output,
              std::ostream& out, std::ostream& err) {
    try {
        auto cfg = parse_config(config_path);
        if (output) cfg.output = *output;
        if (cfg.output.empty()) throw Error("no output path: set output in [sweep] or pass --out");
        const auto res = run_sweep(cfg, err);
        if (res.cache_hit)
            out << cfg.output.string() << ": up to date (config hash matches), 0 new rows\n";
        else
            out << cfg.output.string() << ": wrote " << res.rows_written << " rows\n";
        if (res.invalid_points > 0) {
            err << "error: " << res.invalid_points << " point(s) did not converge and are stored as nan\n";
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        return report(err, e);
    }
}

int cmd_cross(const CrossOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const auto series = to_series(read_series_file(opts.input));
        if (series.size() < 2)
            throw Error("crossings need at least two distinct sizes, found " + std::to_string(series.size()));

        int status = 0;
        std::vector<fss::CrossingPoint> points;
        out << "# crossings of " << series.front().param_name << " curves, consecutive sizes\n";
        out << std::setw(8) << "L" << std::setw(8) << "L'" << std::setw(26) << "g*" << std::setw(26)
            << "value" << "\n";
        for (std::size_t i = 0; i + 1 < series.size(); ++i) {
            try {
                const auto c = fss::crossing(series[i], series[i + 1], opts.bracket);
                points.push_back(c);
                out << std::setw(8) << c.L_small << std::setw(8) << c.L_large << std::setw(26) << num(c.g_star)
                    << std::setw(26) << num(c.value_at_crossing) << "\n";
            } catch (const Error& e) {
                err << "error: pair (" << series[i].L << ", " << series[i + 1].L << "): " << e.what() << "\n";
                status = 1;
            }
        }
        if (points.size() >= 2) {
            bool up = true, down = true;
            for (std::size_t i = 1; i < points.size(); ++i) {
                up = up && points[i].g_star > points[i - 1].g_star;
                down = down && points[i].g_star < points[i - 1].g_star;
            }
            out << "drift: " << (up ? "increasing with L" : down ? "decreasing with L" : "not monotone") << "\n";
        }

        std::optional<fss::PowerLawFit> fit;
        if (opts.extrapolate) {
            try {
                fit = fss::extrapolate_crossings(points);
                out << "fit g* = g_c + a * L_eff^-omega  (L_eff = (L + L') / 2)\n"
                    << "  g_c   = " << num(fit->g_c) << " +- " << num(fit->g_c_stderr()) << "\n"
                    << "  a     = " << num(fit->amplitude) << " +- " << num(fit->amplitude_stderr()) << "\n"
                    << "  omega = " << num(fit->exponent) << " +- " << num(fit->exponent_stderr()) << "\n";
            } catch (const Error& e) {
                err << "error: extrapolation: " << e.what() << "\n";
                status = 1;
            }
        }

        out << "begin cross\n";
        for (const auto& c : points)
            out << "crossing L_small=" << c.L_small << " L_large=" << c.L_large << " g_star=" << num(c.g_star)
                << " value=" << num(c.value_at_crossing) << "\n";
        if (fit)
            out << "fit g_c=" << num(fit->g_c) << " g_c_stderr=" << num(fit->g_c_stderr())
                << " a=" << num(fit->amplitude) << " a_stderr=" << num(fit->amplitude_stderr())
                << " omega=" << num(fit->exponent) << " omega_stderr=" << num(fit->exponent_stderr()) << "\n";
        out << "end cross\n";
        return status;
    } catch (const std::exception& e) {
        return report(err, e);
    }
}

int cmd_exponent(const ExponentOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const auto series = to_series(read_series_file(opts.input));
        std::vector<fss::SizePoint> pts;
        out << "# d/d" << series.front().param_name << " at g_c = " << num(opts.g_c) << "\n";
        int max_L = 0;
        for (const auto& s : series) {
            const double d = fss::derivative(s, 1, opts.g_c);
            out << std::setw(8) << s.L << std::setw(26) << num(d) << "\n";
            pts.push_back({static_cast<double>(s.L), d});
            max_L = std::max(max_L, s.L);
        }
        if (opts.mode == ExponentMode::log) {
            const auto f = fss::fit_log_slope(pts);
            out << "fit d/dg = slope * ln L + c\n"
                << "  slope = " << num(f.slope) << " +- " << num(f.slope_stderr) << "\n"
                << "  c     = " << num(f.intercept) << "\n";
            return 0;
        }
        const double s0 = pts.front().y;
        for (auto& p : pts) {
            if (p.y == 0.0 || (p.y > 0) != (s0 > 0))
                throw Error("derivative changes sign or vanishes across sizes; no power law");
            p.y = std::abs(p.y);
        }
        const auto f = fss::fit_power_slope(pts);
        const double K = fss::K_from_derivative_exponent(f.exponent);
        const double K_err = 0.5 * f.exponent_stderr;
        out << "fit |d/dg| = A * L^b\n"
            << "  b = " << num(f.exponent) << " +- " << num(f.exponent_stderr) << "\n"
            << "  A = " << num(f.amplitude) << "\n"
            << "  K = (2 - b) / 2 = " << num(K) << " +- " << num(K_err) << "\n";
        if (max_L < kSmallSize)
            err << "warning: largest size is L=" << max_L
                << "; at these sizes K carries large finite-size corrections and is only indicative\n";
        if (K >= 2.0 || K <= 0.0) {
            err << "error: K = " << num(K) << " lies outside (0, 2); no exponent set\n";
            return 1;
        }
        if (fss::near_bkt(K)) err << "warning: K is close to 2 (BKT end point); crossings converge slowly\n";
        const auto ex = fss::exponent_set_from_K(K);
        out << "exponents (d = zeta = 1): nu = " << num(ex.nu) << ", rho = " << num(ex.rho)
            << ", rho/nu = " << num(ex.rho_over_nu()) << "\n";
        return 0;
    } catch (const std::exception& e) {
        return report(err, e);
    }
}

int cmd_prg(const PrgOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.sizes.size() < 2) throw Error("PRG needs at least two sizes");
        const auto grid = make_grid(opts.range.start, opts.range.stop, opts.range.step);
        const auto sectors = opts.sectors.empty() ? default_gap_sectors(opts.model.family()) : opts.sectors;
        const auto gaps =
            gap_series(opts.model, opts.param, grid, opts.sizes, sectors, opts.lanczos, worker_threads());
        int status = 0;
        out << "# crossings of L * gap(" << opts.param << "), consecutive sizes\n";
        for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
            try {
                const auto roots = fss::prg_crossing(gaps[i], gaps[i + 1], opts.bracket);
                out << "pair (" << gaps[i].L << ", " << gaps[i + 1].L << "): " << roots.size() << " root(s)";
                for (const auto& c : roots) out << "  " << num(c.g_star);
                out << "\n";
            } catch (const Error& e) {
                err << "error: pair (" << gaps[i].L << ", " << gaps[i + 1].L << "): " << e.what() << "\n";
                status = 1;
            }
        }
        return status;
    } catch (const std::exception& e) {
        return report(err, e);
    }
}

int cmd_plot(const PlotOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const auto file = read_series_file(opts.input);
        if (file.rows.empty()) throw Error(opts.input.string() + ": no data rows");
        const auto svg = render_svg(file, opts.style);
        write_file_atomic(opts.output, svg);
        out << "wrote " << opts.output.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        return report(err, e);
    }
}

int cmd_entangle(const EntangleOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.bits && opts.measure != EntangleMeasure::entropy1)
            throw Error("--bits applies to entropies only");
        SweepConfig cfg;
        cfg.model = opts.model;
        cfg.param_name = opts.param;
        cfg.start = opts.range.start;
        cfg.stop = opts.range.stop;
        cfg.step = opts.range.step;
        cfg.L_list = {opts.model.L()};
        cfg.observable = opts.measure == EntangleMeasure::entropy1
                             ? ObservableSpec{ObservableKind::entropy_1site, 0}
                             : ObservableSpec{ObservableKind::concurrence, opts.r};
        const bool exact_ok = opts.model.family() == Family::tfim && opts.model.boundary() == Boundary::periodic;
        cfg.engine = opts.engine.value_or(exact_ok ? Engine::exact : Engine::ed);
        cfg.symmetry_broken = opts.symmetry_broken;
        cfg.output = opts.output.value_or("");

        const auto file = compute_sweep(cfg, worker_threads(), err);
        if (opts.output) {
            std::ostringstream os;
            write_series(os, file);
            write_file_atomic(*opts.output, os.str());
        }

        const std::string label =
            opts.measure == EntangleMeasure::entropy1 ? "S1" : "C(" + std::to_string(opts.r) + ")";
        const double unit = opts.bits ? 1.0 / std::log(2.0) : 1.0;
        out << "# " << label << (opts.bits ? " [bits]" : "") << " versus " << opts.param << ", L=" << opts.model.L()
            << "\n";
        std::size_t best = 0, steep = 0;
        double steep_slope = -1.0;
        bool invalid = false;
        const auto& rows = file.rows;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << std::setw(26) << num(rows[i].param_value) << std::setw(26) << num(rows[i].value * unit) << "\n";
            if (std::isnan(rows[i].value)) {
                invalid = true;
                continue;
            }
            if (std::isnan(rows[best].value) || rows[i].value > rows[best].value) best = i;
            if (i > 0 && !std::isnan(rows[i - 1].value)) {
                const double s = std::abs((rows[i].value - rows[i - 1].value) /
                                          (rows[i].param_value - rows[i - 1].param_value));
                if (s > steep_slope) {
                    steep_slope = s;
                    steep = i;
                }
            }
        }
        out << "maximum " << label << " = " << num(rows[best].value * unit) << " at " << opts.param << " = "
            << num(rows[best].param_value) << "\n";
        if (steep_slope >= 0.0)
            out << "steepest |d" << label << "/d" << opts.param << "| = " << num(steep_slope * unit) << " near "
                << opts.param << " = " << num(0.5 * (rows[steep].param_value + rows[steep - 1].param_value))
                << "\n";
        if (invalid) {
            err << "error: some points did not converge and are shown as nan\n";
            return 1;
        }
        return 0;
    } catch (const std::exception& e) {
        return report(err, e);
    }
}

}  // namespace critx::io
