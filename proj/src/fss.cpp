#include "critx/fss.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

namespace critx::fss {

namespace {

constexpr double kRootTolerance = 1e-12;

void check_abscissae(const std::vector<double>& x, const std::vector<double>& y, std::size_t min_n) {
    if (x.size() != y.size()) throw Error("abscissae and ordinates differ in length");
    if (x.size() < min_n)
        throw Error("need at least " + std::to_string(min_n) + " points, got " + std::to_string(x.size()));
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i + 1] > x[i])) throw Error("grid must be strictly increasing (duplicate or unsorted points)");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw Error("non-finite sample in series");
}

std::size_t find_segment(const std::vector<double>& x, double t) {
    if (!(t >= x.front() && t <= x.back()))
        throw Error("evaluation point " + std::to_string(t) + " outside [" + std::to_string(x.front()) +
                    ", " + std::to_string(x.back()) + "]");
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t k = static_cast<std::size_t>(it - x.begin());
    if (k == 0) k = 1;
    if (k >= x.size()) k = x.size() - 1;
    return k - 1;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

struct RootCandidate {
    Bracket bracket;
    std::optional<double> exact;  // sample that evaluated to exactly zero
};

// Sign changes of f over sorted sample points; exact zeros count once.
std::vector<RootCandidate> scan_roots(const Curve& f, const std::vector<double>& xs) {
    std::vector<double> fx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
    std::vector<RootCandidate> out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (fx[i] == 0.0) {
            const double step = xs.size() > 1 ? (i + 1 < xs.size() ? xs[i + 1] - xs[i] : xs[i] - xs[i - 1]) : 1.0;
            const double lo = i > 0 ? xs[i - 1] : xs[i] - step;
            const double hi = i + 1 < xs.size() ? xs[i + 1] : xs[i] + step;
            out.push_back({{lo, hi}, xs[i]});
            continue;
        }
        if (i + 1 < xs.size() && fx[i + 1] != 0.0 && sign(fx[i]) != sign(fx[i + 1]))
            out.push_back({{xs[i], xs[i + 1]}, std::nullopt});
    }
    return out;
}

double refine_root(const Curve& f, const RootCandidate& c) {
    if (c.exact) return *c.exact;
    std::uintmax_t max_iter = 200;
    const auto tol = [](double a, double b) { return std::abs(b - a) <= kRootTolerance; };
    const auto [a, b] = boost::math::tools::toms748_solve(f, c.bracket.lo, c.bracket.hi, tol, max_iter);
    return 0.5 * (a + b);
}

std::vector<double> series_scan_points(const ObservableSeries& a, const ObservableSeries& b,
                                       Bracket bracket) {
    std::vector<double> nodes{bracket.lo, bracket.hi};
    for (const auto* s : {&a, &b})
        for (double g : s->grid)
            if (g > bracket.lo && g < bracket.hi) nodes.push_back(g);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<double> pts;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        pts.push_back(nodes[i]);
        if (i + 1 < nodes.size()) pts.push_back(0.5 * (nodes[i] + nodes[i + 1]));
    }
    return pts;
}

void check_bracket(Bracket bracket) {
    if (!(bracket.lo < bracket.hi)) throw Error("empty bracket");
}

void check_coverage(const ObservableSeries& s, Bracket bracket) {
    if (bracket.lo < s.grid.front() || bracket.hi > s.grid.back())
        throw Error("bracket [" + std::to_string(bracket.lo) + ", " + std::to_string(bracket.hi) +
                    "] is not covered by the grid of L=" + std::to_string(s.L));
}

std::string describe(const std::vector<RootCandidate>& roots) {
    std::ostringstream os;
    for (const auto& r : roots) os << " [" << r.bracket.lo << ", " << r.bracket.hi << "]";
    return os.str();
}

std::vector<Bracket> brackets_of(const std::vector<RootCandidate>& roots) {
    std::vector<Bracket> out;
    for (const auto& r : roots) out.push_back(r.bracket);
    return out;
}

struct LinearFit {
    double slope, intercept, slope_stderr;
};

LinearFit linear_least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error("degenerate sizes: all L are equal");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - slope * x[i] - intercept;
        rss += r * r;
    }
    const double dof = n - 2.0;
    const double se = dof > 0.0 ? std::sqrt(rss / dof / sxx) : 0.0;
    return {slope, intercept, se};
}

void check_size_points(std::span<const SizePoint> points) {
    if (points.size() < 3) throw Error("need at least 3 sizes, got " + std::to_string(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].L > 0.0)) throw Error("sizes must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (points[j].L == points[i].L) throw Error("degenerate sizes: L values must be distinct");
    }
}

}  // namespace

// ---------------------------------------------------------------------------

void ObservableSeries::validate() const {
    check_abscissae(grid, values, 4);
    if (L < 1) throw Error("series size must be positive");
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    check_abscissae(x_, y_, 2);
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = x_[k + 1] - x_[k];
        delta[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    d_.assign(n, 0.0);
    if (n == 2) {
        d_[0] = d_[1] = delta[0];
        return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0) continue;
        const double w1 = 2.0 * h[k] + h[k - 1];
        const double w2 = h[k] + 2.0 * h[k - 1];
        d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    // one-sided three-point end slopes, limited to keep the shape
    const auto end_slope = [](double h0, double h1, double d0, double d1) {
        double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (sign(d) != sign(d0)) return 0.0;
        if (sign(d0) != sign(d1) && std::abs(d) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return d;
    };
    d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const { return find_segment(x_, x); }

double MonotoneCubic::operator()(double x) const {
    const std::size_t k = segment(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[k] + (t3 - 2 * t2 + t) * h * d_[k] + (-2 * t3 + 3 * t2) * y_[k + 1] +
           (t3 - t2) * h * d_[k + 1];
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t k = segment(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y_[k] + (-6 * t2 + 6 * t) * y_[k + 1]) / h +
           (3 * t2 - 4 * t + 1) * d_[k] + (3 * t2 - 2 * t) * d_[k + 1];
}

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    check_abscissae(x_, y_, 3);
    const std::size_t n = x_.size();
    m_.assign(n, 0.0);
    // Thomas algorithm on the interior equations
    std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        if (i > 1) {
            const double w = h0 / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
        if (i == 1) break;
    }
}

std::size_t NaturalCubicSpline::segment(double x) const { return find_segment(x_, x); }

double NaturalCubicSpline::operator()(double x) const {
    const std::size_t k = segment(x);
    const double h = x_[k + 1] - x_[k];
    const double a = (x_[k + 1] - x) / h;
    const double b = (x - x_[k]) / h;
    return a * y_[k] + b * y_[k + 1] + ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[k + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::second_derivative(double x) const {
    const std::size_t k = segment(x);
    const double t = (x - x_[k]) / (x_[k + 1] - x_[k]);
    return (1.0 - t) * m_[k] + t * m_[k + 1];
}

MonotoneCubic interpolate(const ObservableSeries& series) {
    series.validate();
    return MonotoneCubic(series.grid, series.values);
}

// ---------------------------------------------------------------------------
// Crossings

CrossingPoint crossing(const ObservableSeries& a, const ObservableSeries& b, Bracket bracket) {
    check_bracket(bracket);
    if (a.L == b.L) throw Error("crossing needs two different sizes");
    const auto ia = interpolate(a);
    const auto ib = interpolate(b);
    check_coverage(a, bracket);
    check_coverage(b, bracket);

    const Curve diff = [&](double g) { return ia(g) - ib(g); };
    const auto roots = scan_roots(diff, series_scan_points(a, b, bracket));
    if (roots.empty())
        throw NoCrossingError("no sign change between L=" + std::to_string(a.L) + " and L=" +
                              std::to_string(b.L) + " in the bracket");
    if (roots.size() > 1)
        throw MultipleCrossingsError("multiple sign changes between L=" + std::to_string(a.L) + " and L=" +
                                         std::to_string(b.L) + ":" + describe(roots),
                                     brackets_of(roots));
    const double g = refine_root(diff, roots.front());
    return {std::min(a.L, b.L), std::max(a.L, b.L), g, ia(g), roots.front().bracket};
}

CrossingPoint crossing(const Curve& a, int L_a, const Curve& b, int L_b, Bracket bracket,
                       int scan_points) {
    check_bracket(bracket);
    if (L_a == L_b) throw Error("crossing needs two different sizes");
    if (scan_points < 2) throw Error("need at least two scan points");
    std::vector<double> xs(static_cast<std::size_t>(scan_points));
    for (int i = 0; i < scan_points; ++i)
        xs[i] = bracket.lo + (bracket.hi - bracket.lo) * i / (scan_points - 1);
    const Curve diff = [&](double g) { return a(g) - b(g); };
    const auto roots = scan_roots(diff, xs);
    if (roots.empty())
        throw NoCrossingError("no sign change between L=" + std::to_string(L_a) + " and L=" +
                              std::to_string(L_b) + " in the bracket");
    if (roots.size() > 1)
        throw MultipleCrossingsError("multiple sign changes:" + describe(roots), brackets_of(roots));
    const double g = refine_root(diff, roots.front());
    return {std::min(L_a, L_b), std::max(L_a, L_b), g, a(g), roots.front().bracket};
}

// ---------------------------------------------------------------------------
// Power-law extrapolation

PowerLawFit fit_power_law(std::span<const double> sizes, std::span<const double> values) {
    const std::size_t n = sizes.size();
    if (n != values.size()) throw Error("sizes and values differ in length");
    if (n < 4) throw Error("power-law extrapolation needs at least 4 points, got " + std::to_string(n));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return sizes[i] < sizes[j]; });
    std::vector<double> L(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        L[i] = sizes[order[i]];
        y[i] = values[order[i]];
        if (!(L[i] > 0.0) || !std::isfinite(y[i])) throw Error("invalid point in power-law fit");
        if (i > 0 && L[i] == L[i - 1]) throw Error("power-law fit needs distinct sizes");
    }

    // Start: ln|dy/dL| = ln|a omega| - (omega + 1) ln L over consecutive pairs.
    double omega = 1.0;
    {
        std::vector<double> lx, ly;
        int s = 0;
        bool consistent = true;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double dy = (y[i + 1] - y[i]) / (L[i + 1] - L[i]);
            if (dy == 0.0 || (s != 0 && sign(dy) != s)) {
                consistent = false;
                break;
            }
            s = sign(dy);
            lx.push_back(std::log(std::sqrt(L[i] * L[i + 1])));
            ly.push_back(std::log(std::abs(dy)));
        }
        if (consistent) {
            const auto lf = linear_least_squares(lx, ly);
            if (std::isfinite(lf.slope) && -lf.slope - 1.0 > 0.05) omega = -lf.slope - 1.0;
        }
    }
    // Given omega the model is linear in (g_c, a).
    Eigen::Vector3d p;
    {
        Eigen::MatrixXd A(n, 2);
        Eigen::VectorXd b(n);
        for (std::size_t i = 0; i < n; ++i) {
            A(i, 0) = 1.0;
            A(i, 1) = std::pow(L[i], -omega);
            b(i) = y[i];
        }
        const Eigen::Vector2d ga = A.colPivHouseholderQr().solve(b);
        p << ga(0), ga(1), omega;
    }

    const auto residuals = [&](const Eigen::Vector3d& q, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
        for (std::size_t i = 0; i < n; ++i) {
            const double pw = std::pow(L[i], -q(2));
            r(i) = y[i] - (q(0) + q(1) * pw);
            if (J) {
                (*J)(i, 0) = 1.0;
                (*J)(i, 1) = pw;
                (*J)(i, 2) = -q(1) * pw * std::log(L[i]);
            }
        }
        return r.squaredNorm();
    };

    Eigen::VectorXd r(n), r_trial(n);
    Eigen::MatrixXd J(n, 3);
    double rss = residuals(p, r, &J);
    double lambda = 1e-3;
    bool converged = false;
    for (int it = 0; it < 1000 && !converged; ++it) {
        const Eigen::Matrix3d JtJ = J.transpose() * J;
        const Eigen::Vector3d Jtr = J.transpose() * r;
        bool improved = false;
        while (lambda < 1e20) {
            Eigen::Matrix3d A = JtJ;
            for (int k = 0; k < 3; ++k) A(k, k) += lambda * std::max(JtJ(k, k), 1e-300);
            const Eigen::Vector3d step = A.ldlt().solve(Jtr);
            if (!step.allFinite()) break;
            const Eigen::Vector3d trial = p + step;
            const double rss_trial = residuals(trial, r_trial, nullptr);
            if (std::isfinite(rss_trial) && rss_trial <= rss) {
                const bool tiny = (step.array().abs() <= 1e-14 * (p.array().abs() + 1e-14)).all();
                const bool flat = rss - rss_trial <= 1e-15 * rss;
                p = trial;
                rss = residuals(p, r, &J);
                lambda = std::max(lambda / 10.0, 1e-15);
                improved = true;
                if (tiny || flat || rss == 0.0) converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved) converged = true;  // no downhill step left: at the minimum
        if (!p.allFinite()) break;
    }
    if (!converged || !p.allFinite() || !std::isfinite(rss))
        throw ConvergenceError("power-law fit diverged", std::sqrt(rss));

    PowerLawFit fit;
    fit.g_c = p(0);
    fit.amplitude = p(1);
    fit.exponent = p(2);
    fit.residual_norm = std::sqrt(rss);
    residuals(p, r, &J);
    const Eigen::Matrix3d JtJ = J.transpose() * J;
    const double s2 = rss / static_cast<double>(n - 3);
    Eigen::Matrix3d cov = s2 * JtJ.completeOrthogonalDecomposition().pseudoInverse();
    fit.covariance = 0.5 * (cov + cov.transpose());
    return fit;
}

PowerLawFit extrapolate_crossings(std::span<const CrossingPoint> points) {
    std::vector<double> sizes, values;
    for (const auto& c : points) {
        sizes.push_back(c.effective_size());
        values.push_back(c.g_star);
    }
    return fit_power_law(sizes, values);
}

// ---------------------------------------------------------------------------
// Derivatives and size fits

double derivative(const ObservableSeries& series, int order, double g) {
    if (order != 1 && order != 2) throw Error("derivative order must be 1 or 2");
    series.validate();
    if (!(g > series.grid.front() && g < series.grid.back()))
        throw Error("derivative point " + std::to_string(g) + " is not interior to the grid");
    if (order == 1) return MonotoneCubic(series.grid, series.values).derivative(g);
    return NaturalCubicSpline(series.grid, series.values).second_derivative(g);
}

LogSlopeFit fit_log_slope(std::span<const SizePoint> points) {
    check_size_points(points);
    std::vector<double> x, y;
    for (const auto& p : points) {
        x.push_back(std::log(p.L));
        y.push_back(p.y);
    }
    const auto f = linear_least_squares(x, y);
    return {f.slope, f.intercept, f.slope_stderr};
}

PowerSlopeFit fit_power_slope(std::span<const SizePoint> points) {
    check_size_points(points);
    std::vector<double> x, y;
    for (const auto& p : points) {
        if (!(p.y > 0.0)) throw Error("power-slope fit needs positive values, got " + std::to_string(p.y));
        x.push_back(std::log(p.L));
        y.push_back(std::log(p.y));
    }
    const auto f = linear_least_squares(x, y);
    return {f.slope, std::exp(f.intercept), f.slope_stderr};
}

// ---------------------------------------------------------------------------
// Exponents

ExponentSet ExponentSet::make(double d, double zeta, double nu, double rho, std::optional<double> K) {
    if (!(nu > 0.0) || !std::isfinite(nu)) throw Error("nu must be positive");
    if (!(d > 0.0) || !(zeta > 0.0)) throw Error("d and zeta must be positive");
    constexpr double tol = 1e-12;
    if (std::abs(rho - ((d + zeta) * nu - 1.0)) > tol * std::max(1.0, std::abs(rho)))
        throw Error("rho violates rho = (d + zeta) nu - 1");
    if (K) {
        if (std::abs(rho - *K / (2.0 - *K)) > tol * std::max(1.0, std::abs(rho)))
            throw Error("rho violates rho = K / (2 - K)");
        if (std::abs(nu - 1.0 / (2.0 - *K)) > tol * std::max(1.0, nu))
            throw Error("nu violates nu = 1 / (2 - K)");
    }
    return ExponentSet{d, zeta, nu, rho, K};
}

ExponentSet exponent_set_from_K(double K) {
    if (K >= 2.0)
        throw BktBoundaryError("K = " + std::to_string(K) +
                               " is at or beyond the BKT point (K -> 2): power-law exponents do not exist there");
    if (!(K > 0.0)) throw Error("K must be positive");
    const double nu = 1.0 / (2.0 - K);
    return ExponentSet::make(1.0, 1.0, nu, K / (2.0 - K), K);
}

ExponentSet exponent_set_from_nu(double d, double zeta, double nu) {
    if (!(nu > 0.0)) throw Error("nu must be positive");
    const double rho = (d + zeta) * nu - 1.0;
    std::optional<double> K;
    if (d == 1.0 && zeta == 1.0 && nu > 0.5) K = 2.0 - 1.0 / nu;
    return ExponentSet::make(d, zeta, nu, rho, K);
}

double K_from_derivative_exponent(double b) { return (2.0 - b) / 2.0; }

// ---------------------------------------------------------------------------
// Scaling collapse

double scaling_collapse(std::span<const ObservableSeries> series, double g_c, double rho_over_nu,
                        double nu) {
    if (series.size() < 3) throw Error("scaling collapse needs at least 3 series");
    if (!(nu > 0.0)) throw Error("nu must be positive");
    struct Rescaled {
        std::vector<double> x, y;
    };
    std::vector<Rescaled> rs;
    std::vector<MonotoneCubic> interp;
    for (const auto& s : series) {
        s.validate();
        if (!(g_c >= s.grid.front() && g_c <= s.grid.back()))
            throw Error("g_c lies outside the grid of L=" + std::to_string(s.L));
        Rescaled r;
        const double sx = std::pow(static_cast<double>(s.L), 1.0 / nu);
        const double sy = std::pow(static_cast<double>(s.L), rho_over_nu);
        for (std::size_t i = 0; i < s.grid.size(); ++i) {
            r.x.push_back(sx * (s.grid[i] - g_c));
            r.y.push_back(sy * s.values[i]);
        }
        interp.emplace_back(r.x, r.y);
        rs.push_back(std::move(r));
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < rs.size(); ++j) {
            if (i == j) continue;
            for (std::size_t k = 0; k < rs[i].x.size(); ++k) {
                const double x = rs[i].x[k];
                if (x < interp[j].x_min() || x > interp[j].x_max()) continue;
                const double d = rs[i].y[k] - interp[j](x);
                sum += d * d;
                ++count;
            }
        }
    if (count == 0) throw Error("rescaled series do not overlap");
    return sum / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Phenomenological renormalization

std::vector<CrossingPoint> prg_crossing(const ObservableSeries& gap_a, const ObservableSeries& gap_b,
                                        Bracket bracket) {
    check_bracket(bracket);
    if (gap_a.L == gap_b.L) throw Error("PRG needs two different sizes");
    const auto ia = interpolate(gap_a);
    const auto ib = interpolate(gap_b);
    check_coverage(gap_a, bracket);
    check_coverage(gap_b, bracket);
    for (const auto* s : {&gap_a, &gap_b})
        for (double v : s->values)
            if (v < 0.0) throw Error("gap series must be non-negative");

    const double La = gap_a.L, Lb = gap_b.L;
    const Curve diff = [&](double g) { return La * ia(g) - Lb * ib(g); };
    const auto roots = scan_roots(diff, series_scan_points(gap_a, gap_b, bracket));
    if (roots.empty()) throw NoCrossingError("scaled gaps do not cross in the bracket");
    if (roots.size() > 2)
        throw MultipleCrossingsError("scaled gaps cross more than twice:" + describe(roots), brackets_of(roots));

    std::vector<CrossingPoint> out;
    for (const auto& c : roots) {
        const double g = refine_root(diff, c);
        out.push_back({std::min(gap_a.L, gap_b.L), std::max(gap_a.L, gap_b.L), g, La * ia(g), c.bracket});
    }
    return out;
}

}  // namespace critx::fss
