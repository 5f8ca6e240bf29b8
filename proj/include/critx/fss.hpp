#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "critx/error.hpp"

namespace critx::fss {

/// A local observable sampled on a grid of the driving parameter at fixed L.
struct ObservableSeries {
    std::string model_tag;
    int L = 0;
    std::string param_name;
    std::vector<double> grid;    ///< strictly increasing
    std::vector<double> values;

    /// At least 4 points, strictly increasing grid, finite values.
    void validate() const;
};

/// Piecewise-cubic Hermite interpolant with Fritsch-Butland slopes: reproduces
/// the data at the nodes and never overshoots between them.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    double x_min() const noexcept { return x_.front(); }
    double x_max() const noexcept { return x_.back(); }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> d_;
};

/// C2 cubic spline with vanishing second derivative at both ends.
class NaturalCubicSpline {
public:
    NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double second_derivative(double x) const;

private:
    std::size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at the nodes
};

MonotoneCubic interpolate(const ObservableSeries& series);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct CrossingPoint {
    int L_small = 0;
    int L_large = 0;
    double g_star = 0.0;
    double value_at_crossing = 0.0;
    Bracket bracket;

    /// Size attributed to the pair in extrapolations: (L_small + L_large) / 2.
    double effective_size() const noexcept { return 0.5 * (L_small + L_large); }
};

class NoCrossingError : public Error {
public:
    using Error::Error;
};

class MultipleCrossingsError : public Error {
public:
    MultipleCrossingsError(const std::string& what, std::vector<Bracket> brackets)
        : Error(what), brackets_(std::move(brackets)) {}
    const std::vector<Bracket>& brackets() const noexcept { return brackets_; }

private:
    std::vector<Bracket> brackets_;
};

using Curve = std::function<double(double)>;

/// Unique crossing of two interpolated series inside the bracket, located to 1e-10.
CrossingPoint crossing(const ObservableSeries& a, const ObservableSeries& b, Bracket bracket);

/// Same for curves that can be evaluated anywhere; the bracket is scanned on
/// `scan_points` equally spaced abscissae before refinement.
CrossingPoint crossing(const Curve& a, int L_a, const Curve& b, int L_b, Bracket bracket,
                       int scan_points = 65);

struct PowerLawFit {
    double g_c = 0.0;
    double amplitude = 0.0;
    double exponent = 0.0;
    Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();  ///< order (g_c, amplitude, exponent)
    double residual_norm = 0.0;

    double g_c_stderr() const { return std::sqrt(std::max(covariance(0, 0), 0.0)); }
    double amplitude_stderr() const { return std::sqrt(std::max(covariance(1, 1), 0.0)); }
    double exponent_stderr() const { return std::sqrt(std::max(covariance(2, 2), 0.0)); }
};

/// Least-squares fit of y = g_c + a * size^{-omega} (Levenberg-Marquardt, started
/// from a log-log fit of consecutive differences). Needs >= 4 distinct sizes.
PowerLawFit fit_power_law(std::span<const double> sizes, std::span<const double> values);

/// fit_power_law on (effective_size, g_star) of a crossing sequence.
PowerLawFit extrapolate_crossings(std::span<const CrossingPoint> points);

/// First derivative of the monotone interpolant (order 1) or second derivative of the
/// natural spline (order 2) at an interior abscissa.
double derivative(const ObservableSeries& series, int order, double g);

struct SizePoint {
    double L = 0.0;
    double y = 0.0;
};

struct LogSlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// y = slope * ln L + intercept.
LogSlopeFit fit_log_slope(std::span<const SizePoint> points);

struct PowerSlopeFit {
    double exponent = 0.0;
    double amplitude = 0.0;
    double exponent_stderr = 0.0;
};

/// ln y = exponent * ln L + ln amplitude; y must be positive.
PowerSlopeFit fit_power_slope(std::span<const SizePoint> points);

/// Critical exponents with the consistency relations
///   rho = (d + zeta) nu - 1,   and for the c=1 line  rho = K/(2-K),  nu = 1/(2-K).
struct ExponentSet {
    double d = 1.0;
    double zeta = 1.0;
    double nu = 0.0;
    double rho = 0.0;
    std::optional<double> K;

    /// Validates the relations; throws on any inconsistency beyond 1e-12.
    static ExponentSet make(double d, double zeta, double nu, double rho, std::optional<double> K);

    double rho_over_nu() const noexcept { return rho / nu; }
};

class BktBoundaryError : public Error {
public:
    using Error::Error;
};

ExponentSet exponent_set_from_K(double K);
ExponentSet exponent_set_from_nu(double d, double zeta, double nu);

/// K from the exponent b of dO/dg|_{g_c} ~ L^b on the c=1 line, b = 2 - 2K.
double K_from_derivative_exponent(double b);

/// Crossing-based estimates lose reliability close to the BKT end point.
inline bool near_bkt(double K) { return K >= 1.9; }

/// Mean squared spread between series rescaled to
///   x = L^{1/nu} (g - g_c),  y = L^{rho/nu} O,
/// taken over the overlapping parts of every ordered pair. Lower is better.
double scaling_collapse(std::span<const ObservableSeries> series, double g_c, double rho_over_nu,
                        double nu);

/// All roots of L_a * gap_a(g) - L_b * gap_b(g) in the bracket (at most two expected).
std::vector<CrossingPoint> prg_crossing(const ObservableSeries& gap_a,
                                        const ObservableSeries& gap_b, Bracket bracket);

}  // namespace critx::fss
