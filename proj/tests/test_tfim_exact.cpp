#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "critx/error.hpp"
#include "critx/fss.hpp"
#include "critx/tfim_exact.hpp"
#include "oracle.hpp"

using namespace critx;
using std::numbers::pi;

TEST_CASE("momentum grid") {
    auto g = tfim::momenta(2);
    REQUIRE(g.k.size() == 2);
    CHECK(g.k[0] == doctest::Approx(pi / 2));
    CHECK(g.k[1] == doctest::Approx(3 * pi / 2));
    g = tfim::momenta(4);
    CHECK(g.k[0] == doctest::Approx(pi / 4));
    CHECK(g.k[3] == doctest::Approx(7 * pi / 4));
    CHECK_THROWS_AS(tfim::momenta(3), Error);
    CHECK_THROWS_AS(tfim::momenta(0), Error);

    g = tfim::momenta(26);
    for (std::size_t j = 0; j < g.k.size(); ++j) {
        CHECK(g.k[j] > 0.0);
        CHECK(g.k[j] < 2 * pi);
        CHECK(g.k[j] + g.k[g.k.size() - 1 - j] == doctest::Approx(2 * pi));
    }
}

TEST_CASE("dispersion") {
    CHECK(tfim::dispersion(1.0, pi) == doctest::Approx(2.0));
    CHECK(tfim::dispersion(0.0, 0.7) == doctest::Approx(1.0));
    CHECK(tfim::dispersion(1.0, 0.0) == 0.0);
    // spectrum duality eps_h(k) = h eps_{1/h}(k)
    for (double h : {0.3, 1.7, 4.0})
        for (double k : {0.1, 1.0, 2.5})
            CHECK(tfim::dispersion(h, k) == doctest::Approx(h * tfim::dispersion(1 / h, k)).epsilon(1e-13));
}

TEST_CASE("energy density and magnetization: closed values") {
    CHECK(tfim::energy_density(0.0, 2) == doctest::Approx(-1.0));
    CHECK(tfim::energy_density(1.0, 2) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(tfim::energy_density(1.0, tfim::thermodynamic_limit) == doctest::Approx(-4 / pi).epsilon(1e-13));
    CHECK(tfim::magnetization_z(0.0, 10) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(tfim::magnetization_z(1.0, tfim::thermodynamic_limit) == doctest::Approx(2 / pi).epsilon(1e-13));
    CHECK(tfim::magnetization_z(1.0, 2) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));

    // L=2 brute force: E0 = -2 sqrt 2 with the doubled bond
    Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::tfim(2, 1.0));
    CHECK(es.eigenvalues()(0) == doctest::Approx(-2 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("magnetization is minus the h-derivative of the energy") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> hd(0.05, 3.0);
    std::uniform_int_distribution<int> Ld(1, 40);
    for (int i = 0; i < 50; ++i) {
        const double h = hd(rng);
        const int L = 2 * Ld(rng);
        const double step = 1e-6;
        const double fd = -(tfim::energy_density(h + step, L) - tfim::energy_density(h - step, L)) / (2 * step);
        CAPTURE(h);
        CAPTURE(L);
        CHECK(std::abs(fd - tfim::magnetization_z(h, L)) <= 1e-8);
    }
    for (double h : {0.5, 0.99, 1.0, 1.01, 2.0}) {
        const double step = 1e-5;
        const double fd = -(tfim::energy_density(h + step, tfim::thermodynamic_limit) -
                            tfim::energy_density(h - step, tfim::thermodynamic_limit)) /
                          (2 * step);
        CHECK(std::abs(fd - tfim::magnetization_z(h, tfim::thermodynamic_limit)) <= 1e-7);
    }
}

TEST_CASE("contraction table") {
    CHECK(tfim::contraction(1e6, 20, 0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(tfim::contraction(1e6, 20, 0) < 1.0);
    for (double h : {0.3, 1.0, 1.4}) {
        const tfim::ContractionTable G(h, 16, 8);
        CHECK(std::abs(G(0) - tfim::magnetization_z(h, 16)) <= 1e-12);
        for (int n = -8; n <= 8; ++n) {
            CHECK(std::abs(G(n)) <= 1 + 1e-12);
            CHECK(G(n) == doctest::Approx(tfim::contraction(h, 16, n)).epsilon(1e-13));
        }
        CHECK_THROWS_AS(G(9), Error);
    }
    CHECK_THROWS_AS(tfim::contraction(1.0, 8, 9), Error);
}

TEST_CASE("correlator limits and ranges") {
    CHECK(tfim::correlator(tfim::Axis::z, 3, 1e6, 20) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(tfim::correlator(tfim::Axis::x, 1, 0.0, 20) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(tfim::correlator(tfim::Axis::x, 7, 0.0, 20) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(tfim::correlator(tfim::Axis::x, 0, 1.0, 20), Error);
    CHECK_THROWS_AS(tfim::correlator(tfim::Axis::x, 11, 1.0, 20), Error);
    CHECK_NOTHROW(tfim::correlator(tfim::Axis::x, 64, 1.0, 200));
    CHECK_THROWS_AS(tfim::correlator(tfim::Axis::x, 65, 1.0, 200), Error);
}

TEST_CASE("free fermions reproduce brute-force diagonalization in the even sector") {
    for (int L : {2, 4, 6, 8, 10}) {
        const auto idx = oracle::even_parity_states(L);
        for (double h : {0.5, 0.9, 1.0, 1.1, 2.0}) {
            CAPTURE(L);
            CAPTURE(h);
            const auto H = oracle::tfim(L, h);
            const auto g = oracle::ground(H, idx);
            CHECK(std::abs(g.energy / L - tfim::energy_density(h, L)) <= 1e-10);
            CHECK(std::abs(oracle::expect(g.vector, oracle::site_op(oracle::sz(), 0, L)) -
                           tfim::magnetization_z(h, L)) <= 1e-8);
            for (int r = 1; r <= L / 2; ++r) {
                CAPTURE(r);
                CHECK(std::abs(oracle::corr_xx(g.vector, r, L) - tfim::correlator(tfim::Axis::x, r, h, L)) <= 1e-8);
                CHECK(std::abs(oracle::corr_yy(g.vector, r, L) - tfim::correlator(tfim::Axis::y, r, h, L)) <= 1e-8);
                CHECK(std::abs(oracle::corr_zz(g.vector, r, L) - tfim::correlator(tfim::Axis::z, r, h, L)) <= 1e-8);
            }
        }
    }
    // the nearest-neighbour contraction at L=8, h=1 against the brute-force <sx sx>
    const auto g = oracle::ground(oracle::tfim(8, 1.0), oracle::even_parity_states(8));
    CHECK(std::abs(-tfim::contraction(1.0, 8, 1) - oracle::corr_xx(g.vector, 1, 8)) <= 1e-10);
    const auto g2 = oracle::ground(oracle::tfim(8, 1.05), oracle::even_parity_states(8));
    CHECK(std::abs(tfim::correlator(tfim::Axis::x, 2, 1.05, 8) - oracle::corr_xx(g2.vector, 2, 8)) <= 1e-8);
}

TEST_CASE("correlation length") {
    CHECK(std::isinf(tfim::correlation_length(1.0)));
    // |1-h| / (2 sqrt h) = sinh(1/2) at h = e
    CHECK(tfim::correlation_length(std::numbers::e) == doctest::Approx(1.0).epsilon(1e-13));
    for (double dh : {1e-3, -1e-3, 1e-5})
        CHECK(tfim::correlation_length(1 + dh) * std::abs(dh) == doctest::Approx(1.0).epsilon(2 * std::abs(dh)));
    CHECK_THROWS_AS(tfim::correlation_length(0.0), Error);
    CHECK_THROWS_AS(tfim::correlation_length(-1.0), Error);
}

TEST_CASE("energy tail ratio") {
    const double h = 1.3;
    const double xi = tfim::correlation_length(h);
    const int L = 20 * static_cast<int>(std::ceil(xi));
    CHECK(std::abs(tfim::energy_tail_ratio(h, L) - 1.0) <= 0.05);
    CHECK(std::abs(tfim::energy_tail_ratio(h, 2) - 1.0) > 0.1);
    CHECK(tfim::energy_tail_ratio(0.7, 40) > 0.0);
    CHECK_THROWS_AS(tfim::energy_tail_ratio(h, 2 * static_cast<int>(std::ceil(360 * xi))), Error);
    CHECK_THROWS_AS(tfim::energy_tail_ratio(1.0, 20), Error);
}

TEST_CASE("critical expansions") {
    CHECK(tfim::mz_critical_expansion(1.0) == doctest::Approx(2 / pi).epsilon(1e-15));
    for (int L : {10, 50, 100})
        CHECK(tfim::mz_finite_size_critical(1.0, L) == doctest::Approx(2 / pi + pi / (12.0 * L * L)).epsilon(1e-15));
    const double step = 1e-6;
    const double slope =
        (tfim::mz_finite_size_critical(1 + step, 100) - tfim::mz_finite_size_critical(1 - step, 100)) / (2 * step);
    CHECK(slope == doctest::Approx((std::log(100.0) + std::log(8 / pi) + 0.5772156649 - 1) / pi).epsilon(1e-8));
    // the expansion tracks the exact value closely near h = 1
    for (double h : {0.95, 0.99, 1.01, 1.05})
        CHECK(std::abs(tfim::mz_critical_expansion(h) - tfim::magnetization_z(h, tfim::thermodynamic_limit)) <= 5e-3);
}

TEST_CASE("crossings of neighbouring sizes approach h = 1 as pi^2/6 L^-2") {
    for (int L = 20; L <= 60; L += 8) {
        const auto c = fss::crossing([L](double h) { return tfim::magnetization_z(h, L); }, L,
                                     [L](double h) { return tfim::magnetization_z(h, L + 2); }, L + 2,
                                     {0.99, 1.02});
        const double rest = (c.g_star - 1 - pi * pi / 6 / (double(L) * L)) * std::pow(L, 3);
        CAPTURE(L);
        CAPTURE(c.g_star);
        CHECK(std::abs(rest) <= 10.0);
    }
    const auto c20 = fss::crossing([](double h) { return tfim::magnetization_z(h, 20); }, 20,
                                   [](double h) { return tfim::magnetization_z(h, 22); }, 22, {0.99, 1.02});
    CHECK(c20.g_star == doctest::Approx(1.0041).epsilon(2e-4));
}
