#include "critx/tfim_exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "critx/error.hpp"

namespace critx::tfim {

namespace {

using std::numbers::pi;

constexpr double kQuadratureTolerance = 1e-9;
constexpr int kMaxToeplitzOrder = 64;

// eps^2 written as (h-1)^2 + 4h sin^2(k/2): no cancellation near h = 1, k = 0.
template <typename Real>
Real dispersion_stable(Real h, Real k) {
    const Real s = std::sin(k / 2);
    const Real e2 = (h - 1) * (h - 1) + 4 * h * s * s;
    return std::sqrt(std::max(e2, Real(0)));
}

// (h - cos k) / eps(k); bounded by 1 in magnitude, equal to sin(k/2) at h = 1.
double transverse_weight(double h, double k) {
    const double s = std::sin(k / 2);
    const double num = h - 1 + 2 * s * s;
    const double den = dispersion_stable(h, k);
    if (den == 0.0) return 0.0;
    return num / den;
}

// The integrands turn over on the scale k ~ |h - 1|; splitting there keeps the
// adaptive rule from stalling close to the critical point.
template <typename F>
double integrate_over_half_zone(F f, double h, const char* what) {
    std::vector<double> cuts{0.0};
    const double scale = std::abs(h - 1.0);
    for (double c : {0.1 * scale, scale, 10.0 * scale})
        if (c > 1e-300 && c < pi) cuts.push_back(c);
    cuts.push_back(pi);
    double value = 0.0, total_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double error = 0.0;
        value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 15,
                                                                              1e-11, &error);
        total_error += error;
    }
    if (!(total_error <= kQuadratureTolerance) || !std::isfinite(value))
        throw ConvergenceError(std::string("quadrature for ") + what + " did not converge", total_error);
    return value;
}

void require_even_size(int L) {
    if (L < 2 || L % 2 != 0)
        throw Error("free-fermion chain length must be even and >= 2, got " + std::to_string(L));
}

template <typename Real>
Real antiperiodic_energy(Real h, long L) {
    constexpr Real p = std::numbers::pi_v<Real>;
    Real sum = 0;
    // k and 2pi - k carry the same energy
    for (long j = 0; j < L / 2; ++j) sum += dispersion_stable(h, (2 * j + 1) * p / L);
    return -2 * sum / L;
}

}  // namespace

MomentumGrid momenta(int L) {
    require_even_size(L);
    MomentumGrid grid{L, std::vector<double>(static_cast<std::size_t>(L))};
    for (int j = 0; j < L; ++j) grid.k[j] = (2 * j + 1) * pi / L;
    return grid;
}

double dispersion(double h, double k) { return dispersion_stable(h, k); }

double energy_density(double h, int L) {
    require_even_size(L);
    return antiperiodic_energy<double>(h, L);
}

double energy_density(double h, ThermodynamicLimit) {
    return -integrate_over_half_zone([h](double k) { return dispersion_stable(h, k); }, h,
                                     "energy density") /
           pi;
}

double magnetization_z(double h, int L) {
    require_even_size(L);
    double sum = 0.0;
    for (int j = 0; j < L / 2; ++j) sum += transverse_weight(h, (2 * j + 1) * pi / L);
    return 2.0 * sum / L;
}

double magnetization_z(double h, ThermodynamicLimit) {
    return integrate_over_half_zone([h](double k) { return transverse_weight(h, k); }, h,
                                    "transverse magnetization") /
           pi;
}

double contraction(double h, int L, int n) {
    require_even_size(L);
    if (std::abs(n) > L) throw Error("contraction distance exceeds chain length");
    double sum = 0.0;
    for (int j = 0; j < L; ++j) {
        const double k = (2 * j + 1) * pi / L;
        const double e = dispersion_stable(h, k);
        const double s = std::sin(k / 2);
        const double c = h - 1 + 2 * s * s;  // h - cos k
        sum += (c * std::cos(k * n) - std::sin(k) * std::sin(k * n)) / e;
    }
    return sum / L;
}

ContractionTable::ContractionTable(double h, int L, int r_max) : h_(h), L_(L), r_max_(r_max) {
    require_even_size(L);
    if (r_max < 0 || r_max > L) throw Error("contraction table range out of bounds");
    values_.resize(2 * static_cast<std::size_t>(r_max) + 1);
    for (int n = -r_max; n <= r_max; ++n) values_[n + r_max] = contraction(h, L, n);
}

double ContractionTable::operator()(int n) const {
    if (std::abs(n) > r_max_) throw Error("contraction index outside table");
    return values_[n + r_max_];
}

double correlator(Axis axis, int r, const ContractionTable& G) {
    if (r < 1 || r > G.L() / 2) throw Error("correlator separation must satisfy 1 <= r <= L/2");
    if (r > kMaxToeplitzOrder) throw Error("correlator separation above 64 is not supported");
    if (G.r_max() < r + 1 && axis != Axis::z)
        throw Error("contraction table too short for requested separation");

    if (axis == Axis::z) return G(0) * G(0) - G(r) * G(-r);

    const int shift = axis == Axis::x ? 1 : -1;
    Eigen::MatrixXd m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = -G(j - i + shift);
    return m.partialPivLu().determinant();
}

double correlator(Axis axis, int r, double h, int L) {
    require_even_size(L);
    if (r < 1 || r > L / 2) throw Error("correlator separation must satisfy 1 <= r <= L/2");
    return correlator(axis, r, ContractionTable(h, L, std::min(r + 1, L)));
}

double correlation_length(double h) {
    if (!(h > 0.0)) throw Error("correlation length is defined for h > 0 only");
    if (h == 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (2.0 * std::asinh(std::abs(1.0 - h) / (2.0 * std::sqrt(h))));
}

double energy_tail_ratio(double h, int L) {
    require_even_size(L);
    if (h == 1.0) throw Error("energy tail ratio is undefined at the critical point");
    const double xi = correlation_length(h);
    if (L / xi > 700.0)
        throw Error("energy tail ratio overflows: L/xi = " + std::to_string(L / xi) + " > 700");

    // e_inf from an antiperiodic sum long enough that its own e^{-M/xi} error is negligible.
    const double m = std::ceil((L + 40.0 * xi) / 2.0) * 2.0;
    if (m > 5e7) throw Error("energy tail ratio: correlation length too large for reference sum");
    const long M = static_cast<long>(m);

    using Real = long double;
    const Real hl = h;
    const Real diff = antiperiodic_energy<Real>(hl, M) - antiperiodic_energy<Real>(hl, L);
    const Real prefactor = std::sqrt(std::numbers::pi_v<Real>) * std::pow(Real(L), Real(1.5)) *
                           std::exp(Real(L) / Real(xi)) / std::sqrt(std::abs(hl * hl - 1));
    return static_cast<double>(diff * prefactor);
}

double mz_critical_expansion(double h) {
    const double t = h - 1.0;
    if (t == 0.0) return 2.0 / pi;
    return 2.0 / pi - t / pi * (std::log(std::abs(t)) + 1.0 - std::log(8.0));
}

double mz_finite_size_critical(double h, int L) {
    const double slope =
        (std::log(static_cast<double>(L)) + std::log(8.0 / pi) + std::numbers::egamma - 1.0) / pi;
    return 2.0 / pi + slope * (h - 1.0) + pi / (12.0 * L * static_cast<double>(L));
}

}  // namespace critx::tfim
