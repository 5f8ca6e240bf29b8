// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "critx/ed.hpp"
#include "critx/entanglement.hpp"
#include "critx/fss.hpp"
#include "critx/io/config.hpp"
#include "critx/io/sweep.hpp"
#include "critx/models.hpp"
#include "critx/observables.hpp"
#include "critx/tfim_exact.hpp"

using namespace critx;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<fss::CrossingPoint> ising_crossings(int L_first, int L_last, int step, fss::Bracket bracket) {
    std::vector<fss::CrossingPoint> out;
    for (int L = L_first; L <= L_last; L += step)
        out.push_back(fss::crossing([L](double h) { return tfim::magnetization_z(h, L); }, L,
                                    [L](double h) { return tfim::magnetization_z(h, L + 2); }, L + 2,
                                    bracket));
    return out;
}

Outcome crossing_law() {
    const auto t0 = Clock::now();
    const auto pts = ising_crossings(20, 96, 4, {0.99, 1.02});
    const auto fit = fss::extrapolate_crossings(pts);
    const double a_ref = pi * pi / 6;
    const double t = seconds_since(t0);
    const bool ok = std::abs(fit.g_c - 1) <= 1e-4 && fit.exponent >= 1.95 && fit.exponent <= 2.05 &&
                    std::abs(fit.amplitude / a_ref - 1) <= 0.05 && t < 60;
    return {ok, fmt("g_c=%.8f omega=%.4f a=%.4f (pi^2/6=%.4f) pairs=%zu time=%.1fs", fit.g_c, fit.exponent,
                    fit.amplitude, a_ref, pts.size(), t)};
}

Outcome critical_magnetization() {
    const double m = tfim::magnetization_z(1.0, 100000);
    double worst = 0;
    for (int i = -50; i <= 50; ++i) {
        const double h = 1 + i * 0.001;
        worst = std::max(worst, std::abs(tfim::magnetization_z(h, tfim::thermodynamic_limit) -
                                         tfim::mz_critical_expansion(h)));
    }
    const bool ok = std::abs(m - 2 / pi) <= 1e-4 && worst <= 5e-3;
    return {ok, fmt("|m(1,1e5)-2/pi|=%.2e  max|m-expansion| over |h-1|<=0.05: %.2e", std::abs(m - 2 / pi), worst)};
}

Outcome finite_size_form() {
    double worst = 0;
    int worst_L = 0;
    std::vector<int> sizes;
    for (int L = 50; L <= 400; L += 2) sizes.push_back(L);
    for (int L : {1000, 10000, 100000}) sizes.push_back(L);
    for (int L : sizes) {
        const double d = std::abs(tfim::magnetization_z(1.0, L) - 2 / pi - pi / (12.0 * L * L));
        if (d > worst) {
            worst = d;
            worst_L = L;
        }
    }
    // slope of dm/dh at h = 1 through the toolkit's interpolated derivative
    std::vector<fss::SizePoint> pts;
    for (int L = 20; L <= 100; L += 10) {
        fss::ObservableSeries s{"tfim", L, "h", {}, {}};
        for (int i = 0; i <= 40; ++i) {
            s.grid.push_back(0.98 + 0.001 * i);
            s.values.push_back(tfim::magnetization_z(s.grid.back(), L));
        }
        pts.push_back({double(L), fss::derivative(s, 1, 1.0)});
    }
    const auto f = fss::fit_log_slope(pts);
    const double rel = std::abs(f.slope * pi - 1);
    const bool ok = worst <= 1e-4 && rel <= 0.02;
    return {ok, fmt("max|m_L(1)-2/pi-pi/12L^2| (L>=50)=%.2e at L=%d  log slope=%.6f (1/pi=%.6f, %.2f%%)", worst,
                    worst_L, f.slope, 1 / pi, 100 * rel)};
}

Outcome energy_tail() {
    const double h = 1.3;
    const double xi = tfim::correlation_length(h);
    const auto even = [](double x) { return 2 * static_cast<int>(std::lround(x / 2)); };
    double lo = 1e300, hi = -1e300;
    const int L0 = even(8 * xi), L1 = even(20 * xi);
    for (int L = L0; L <= L1; L += 2) {
        const double r = tfim::energy_tail_ratio(h, L);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo >= 0.95 && hi <= 1.05, fmt("xi=%.4f L=%d..%d ratio in [%.4f, %.4f]", xi, L0, L1, lo, hi)};
}

Outcome engine_cross_validation() {
    const auto t0 = Clock::now();
    double de = 0, dc = 0;
    for (int L = 2; L <= 14; L += 2)
        for (double h : {0.5, 0.9, 1.0, 1.1, 2.0}) {
            const auto m = ModelSpec::tfim(L, h);
            const auto b = ed::build_sector_basis(m, ed::QuantumNumbers::ising_parity(1));
            ed::LanczosOptions o;
            o.tol = 1e-12;
            const auto g = ed::lanczos_lowest(m, b, o);
            de = std::max(de, std::abs(g.energies[0] / L - tfim::energy_density(h, L)));
            for (int r = 1; r <= L / 2; ++r) {
                const std::pair<ObservableKind, tfim::Axis> axes[] = {{ObservableKind::correlator_xx, tfim::Axis::x},
                                                                      {ObservableKind::correlator_yy, tfim::Axis::y},
                                                                      {ObservableKind::correlator_zz, tfim::Axis::z}};
                for (const auto& [kind, axis] : axes) {
                    const double v = ed::expectation_local(g.vectors[0], b, {kind, r}, 0);
                    dc = std::max(dc, std::abs(v - tfim::correlator(axis, r, h, L)));
                }
            }
        }
    const double t = seconds_since(t0);
    return {de <= 1e-10 && dc <= 1e-8 && t < 300,
            fmt("max|de|=%.2e max|dcorr|=%.2e time=%.1fs", de, dc, t)};
}

double concurrence_exact(int r, double h, int L) {
    const tfim::ContractionTable G(h, L, r + 1);
    return concurrence_from_correlators(tfim::correlator(tfim::Axis::x, r, G), tfim::correlator(tfim::Axis::y, r, G),
                                        tfim::correlator(tfim::Axis::z, r, G));
}

Outcome concurrence_singularity() {
    const double step = 1e-5;
    const auto slope = [&](int r, double h, int L) {
        return (concurrence_exact(r, h + step, L) - concurrence_exact(r, h - step, L)) / (2 * step);
    };
    std::vector<double> peak1, at1_c2, peak2;
    std::string detail;
    for (int L : {20, 40, 80}) {
        double best = 0;
        double best2 = 0;
        for (int i = 0; i <= 400; ++i) {
            best = std::max(best, std::abs(slope(1, 0.8 + 0.001 * i, L)));
            best2 = std::max(best2, std::abs(slope(2, 0.8 + 0.001 * i, L)));
        }
        peak1.push_back(best);
        peak2.push_back(best2);
        at1_c2.push_back(std::abs(slope(2, 1.0, L)));
        detail += fmt("L=%d max|dC1|=%.5f |dC2(1)|=%.2e max|dC2|=%.5f  ", L, best, at1_c2.back(), best2);
    }
    const bool grows = peak1[0] < peak1[1] && peak1[1] < peak1[2];
    const auto [lo, hi] = std::minmax_element(at1_c2.begin(), at1_c2.end());
    // C(2) is stationary at h = 1, so this compares values at the level of rounding
    const double spread = (*hi - *lo) / *lo;
    detail += fmt("spread(C2)=%.1f%%", 100 * spread);
    return {grows && spread < 0.2, detail};
}

Outcome spin1_crossings() {
    const auto t0 = Clock::now();
    const std::vector<int> sizes{6, 8, 10, 12};
    const auto grid = io::make_grid(1.6, 3.0, 0.02);
    const ObservableSpec obs{ObservableKind::sz_squared, 0};
    std::vector<fss::ObservableSeries> series;
    double worst_residual = 0;
    double t12 = 0;
    for (int L : sizes) {
        const auto tL = Clock::now();
        const auto base = ModelSpec::spin1_xxzd(L, 2.59, grid.front());
        const auto basis = ed::build_sector_basis(base, ed::QuantumNumbers::magnetization(0));
        fss::ObservableSeries s{"spin1_xxzd", L, "D", grid, std::vector<double>(grid.size())};
        std::vector<double> res(grid.size());
        io::parallel_for(grid.size(), io::worker_threads(), [&](std::size_t i) {
            const auto m = base.with_coupling("D", grid[i]);
            ed::LanczosOptions o;
            o.tol = 1e-10;
            const auto g = ed::lanczos_lowest(m, basis, o);
            s.values[i] = measure_ground_state(basis, g, obs);
            res[i] = g.residuals[0];
        });
        worst_residual = std::max(worst_residual, *std::max_element(res.begin(), res.end()));
        series.push_back(std::move(s));
        if (L == 12) t12 = seconds_since(tL);
    }
    std::vector<double> g;
    std::string detail = "crossings:";
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        const auto c = fss::crossing(series[i], series[i + 1], {1.6, 3.0});
        g.push_back(c.g_star);
        detail += fmt(" (%d,%d)=%.5f", c.L_small, c.L_large, c.g_star);
    }
    bool ok = true;
    for (double x : g) ok = ok && x >= 1.8 && x <= 2.7;
    bool toward = true;
    for (std::size_t i = 1; i < g.size(); ++i) {
        toward = toward && std::abs(g[i] - 2.294) < std::abs(g[i - 1] - 2.294);
        toward = toward && (g[i] - g[i - 1]) * (g[1] - g[0]) > 0;
    }
    ok = ok && toward && worst_residual <= 1e-10 && t12 <= 900;
    detail += fmt("  monotone toward 2.294: %s  max residual=%.2e  L=12 sweep %.1fs (total %.1fs)",
                  toward ? "yes" : "no", worst_residual, t12, seconds_since(t0));
    return {ok, detail};
}

Outcome entropy_landmarks() {
    const int n = 1000000;
    double best = -1, arg = -1;
    for (int i = 0; i <= n; ++i) {
        const double o = double(i) / n;
        const double s = single_site_entropy_spin1(o);
        if (s > best) {
            best = s;
            arg = o;
        }
    }
    double ib = -1, ih = -1;
    for (int i = 0; i <= 200; ++i) {
        const double h = i * 0.01;
        const double s = von_neumann_entropy(rho1_spin_half({0, 0, tfim::magnetization_z(h, tfim::thermodynamic_limit)}));
        if (s > ib) {
            ib = s;
            ih = h;
        }
    }
    const bool ok = std::abs(arg - 2.0 / 3) <= 1e-6 && std::abs(best - std::log(3.0)) <= 1e-12 && ih == 0.0;
    return {ok, fmt("spin-1: max %.12f (ln3=%.12f) at O_D=%.7f; Ising S1 max at h=%.2f", best, std::log(3.0), arg, ih)};
}

Outcome prg_baseline() {
    const std::vector<int> sizes{4, 6, 8, 10, 12};
    const auto grid = io::make_grid(0.5, 1.5, 0.01);
    ed::LanczosOptions o;
    o.tol = 1e-10;
    const auto gaps = io::gap_series(ModelSpec::tfim(4, 1.0), "h", grid, sizes,
                                     io::default_gap_sectors(Family::tfim), o, io::worker_threads());
    bool two_each = true;
    std::string detail;
    std::vector<std::vector<double>> roots;
    for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
        std::vector<double> r;
        try {
            for (const auto& c : fss::prg_crossing(gaps[i], gaps[i + 1], {0.5, 1.5})) r.push_back(c.g_star);
        } catch (const fss::NoCrossingError&) {
        }
        two_each = two_each && r.size() == 2;
        detail += fmt("(%d,%d):", gaps[i].L, gaps[i + 1].L);
        for (double x : r) detail += fmt(" %.5f", x);
        if (r.empty()) detail += " none";
        detail += "  ";
        roots.push_back(r);
    }
    // judged on the roots that exist, so a single converging root still reads as converging
    bool converging = !roots.empty() && !roots[0].empty();
    for (std::size_t i = 1; converging && i < roots.size(); ++i) {
        const std::size_t n = std::min(roots[i].size(), roots[i - 1].size());
        converging = n > 0;
        for (std::size_t k = 0; k < n; ++k)
            converging = converging && std::abs(roots[i][k] - 1) < std::abs(roots[i - 1][k] - 1);
    }
    // observable crossings at the same sizes
    bool faster = true;
    const auto obs = ising_crossings(4, 10, 2, {0.8, 1.5});
    for (std::size_t i = 0; i < obs.size() && i < roots.size(); ++i) {
        double prg_err = 0;
        for (double x : roots[i]) prg_err = std::max(prg_err, std::abs(x - 1));
        if (roots[i].empty()) prg_err = INFINITY;
        faster = faster && std::abs(obs[i].g_star - 1) <= prg_err;
    }
    detail += fmt("two roots per pair: %s, converging: %s, m^z crossings at least as close: %s",
                  two_each ? "yes" : "no", converging ? "yes" : "no", faster ? "yes" : "no");
    return {two_each && converging && faster, detail};
}

Outcome exponent_algebra() {
    double worst = 0;
    for (double K : {0.5, 0.76, 1.0, 1.5}) {
        const auto a = fss::exponent_set_from_K(K);
        const auto b = fss::exponent_set_from_nu(1, 1, a.nu);
        worst = std::max({worst, std::abs(a.rho - b.rho), std::abs(a.nu - b.nu), std::abs(*a.K - b.K.value_or(NAN))});
    }
    bool bkt = false;
    try {
        fss::exponent_set_from_K(2.0);
    } catch (const fss::BktBoundaryError&) {
        bkt = true;
    }
    return {worst <= 1e-12 && bkt, fmt("max difference %.2e; K=2 raises BKT error: %s", worst, bkt ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Ising crossing law", crossing_law},
        {"critical magnetization", critical_magnetization},
        {"finite-size critical form", finite_size_form},
        {"off-critical energy tail", energy_tail},
        {"ED vs free fermions", engine_cross_validation},
        {"concurrence singularities", concurrence_singularity},
        {"spin-1 crossings", spin1_crossings},
        {"entropy landmarks", entropy_landmarks},
        {"PRG scaled-gap crossings", prg_baseline},
        {"exponent algebra", exponent_algebra},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        if (!r.pass) ++failed;
        std::printf("criterion %zu (%s): %s  %s\n", i + 1, criteria[i].first, r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
