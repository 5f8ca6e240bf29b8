#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "critx/ed.hpp"
#include "critx/entanglement.hpp"
#include "critx/error.hpp"
#include "critx/observables.hpp"
#include "critx/tfim_exact.hpp"

using namespace critx;
using Cx = std::complex<double>;

namespace {

Eigen::MatrixXcd random_state(int dim, std::mt19937_64& rng, int rank) {
    std::normal_distribution<double> nd;
    Eigen::MatrixXcd A(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) A(i, j) = Cx(nd(rng), nd(rng));
    Eigen::MatrixXcd rho = A * A.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Eigen::Matrix2cd A;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) A(i, j) = Cx(nd(rng), nd(rng));
    return Eigen::HouseholderQR<Eigen::Matrix2cd>(A).householderQ();
}

}  // namespace

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix(Eigen::MatrixXcd::Identity(3, 3) / 3.0));
    CHECK_THROWS_AS(DensityMatrix(Eigen::MatrixXcd::Identity(5, 5) / 5.0), Error);
    CHECK_THROWS_AS(DensityMatrix(Eigen::MatrixXcd::Identity(2, 2)), Error);  // trace 2
    Eigen::MatrixXcd nh = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    nh(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix{nh}, Error);
    Eigen::MatrixXcd neg(2, 2);
    neg << 1.2, 0, 0, -0.2;
    CHECK_THROWS_AS(DensityMatrix{neg}, Error);
    Eigen::MatrixXcd tiny_neg(2, 2);
    tiny_neg << 1.0 + 5e-11, 0, 0, -5e-11;
    const DensityMatrix ok(tiny_neg);
    CHECK(ok.eigenvalues().minCoeff() == 0.0);
}

TEST_CASE("entropies") {
    const DensityMatrix half(Eigen::MatrixXcd::Identity(2, 2) / 2.0);
    const DensityMatrix third(Eigen::MatrixXcd::Identity(3, 3) / 3.0);
    CHECK(von_neumann_entropy(half) == doctest::Approx(std::log(2.0)));
    CHECK(von_neumann_entropy(third) == doctest::Approx(std::log(3.0)));
    const auto pure = rho1_spin_half({0.6, 0.0, 0.8});
    CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(linear_entropy(pure) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(linear_entropy(half) == doctest::Approx(0.5));
    CHECK(linear_entropy(third) == doctest::Approx(2.0 / 3.0));
    CHECK(purity(third) == doctest::Approx(1.0 / 3.0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 30; ++i) {
        const auto a = random_state(4, rng, 1 + i % 4);
        const auto b = random_state(4, rng, 1 + (i + 2) % 4);
        const double p = u(rng);
        const double mixed = von_neumann_entropy(DensityMatrix(p * a + (1 - p) * b));
        CHECK(mixed >= p * von_neumann_entropy(DensityMatrix(a)) + (1 - p) * von_neumann_entropy(DensityMatrix(b)) - 1e-10);
        CHECK(mixed <= std::log(4.0) + 1e-12);
    }
}

TEST_CASE("single-site spin-1/2 state") {
    const auto r0 = rho1_spin_half({0, 0, 0});
    CHECK((r0.matrix() - Eigen::MatrixXcd::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-15);
    const auto r1 = rho1_spin_half({0, 1, 0});
    CHECK(purity(r1) == doctest::Approx(1.0));
    CHECK(r1.matrix()(1, 0) == Cx(0.0, 0.5));
    CHECK_THROWS_AS(rho1_spin_half({0, 0, 1.2}), Error);

    CHECK(mx_spontaneous(0.0) == 1.0);
    CHECK(mx_spontaneous(1.0) == 0.0);
    CHECK(mx_spontaneous(2.0) == 0.0);
    CHECK(mx_spontaneous(0.6) == doctest::Approx(std::pow(0.64, 0.125)));
    CHECK_THROWS_AS(mx_spontaneous(-0.1), Error);
}

TEST_CASE("Wootters concurrence") {
    Eigen::MatrixXcd bell = Eigen::MatrixXcd::Zero(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    CHECK(concurrence(DensityMatrix(bell)) == doctest::Approx(1.0));
    CHECK(concurrence(DensityMatrix(Eigen::MatrixXcd::Identity(4, 4) / 4.0)) == doctest::Approx(0.0));
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        const Eigen::MatrixXcd w = p * bell + (1 - p) * Eigen::MatrixXcd::Identity(4, 4) / 4.0;
        CHECK(concurrence(DensityMatrix(w)) == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(concurrence(DensityMatrix(Eigen::MatrixXcd::Identity(2, 2) / 2.0)), Error);

    // local unitaries leave it unchanged
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const auto rho = random_state(4, rng, 1 + i % 3);
        const Eigen::Matrix2cd a = random_unitary(rng), b = random_unitary(rng);
        Eigen::Matrix4cd U;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) U.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
        Eigen::MatrixXcd rotated = U * rho * U.adjoint();
        rotated = 0.5 * (rotated + rotated.adjoint()).eval();
        CHECK(concurrence(DensityMatrix(rotated)) == doctest::Approx(concurrence(DensityMatrix(rho))).epsilon(1e-8));
    }
}

TEST_CASE("concurrence from correlators") {
    CHECK(concurrence_from_correlators(0, 0, 1) == 0.0);
    CHECK(concurrence_from_correlators(1, -1, 1) == 1.0);

    // agrees with the Wootters form on the ED two-site state
    const int L = 8;
    const double h = 1.1;
    const auto m = ModelSpec::tfim(L, h);
    const auto b = ed::build_sector_basis(m, ed::ground_sector(m));
    ed::LanczosOptions o;
    o.tol = 1e-11;
    const auto g = ed::lanczos_lowest(m, b, o);
    const double c_ed = concurrence(ed::two_site_rdm(g.vectors[0], b, 0, 2));
    const double c_corr = concurrence_from_correlators(tfim::correlator(tfim::Axis::x, 2, h, L),
                                                       tfim::correlator(tfim::Axis::y, 2, h, L),
                                                       tfim::correlator(tfim::Axis::z, 2, h, L));
    CHECK(std::abs(c_ed - c_corr) <= 1e-8);
    CHECK(std::abs(c_ed - concurrence(tfim_two_site_rdm(h, L, 2))) <= 1e-8);

    // the assembled two-site matrix equals the ED one entry by entry
    const auto rho_ed = ed::two_site_rdm(g.vectors[0], b, 0, 1).matrix();
    const auto rho_ff = tfim_two_site_rdm(h, L, 1).matrix();
    CHECK((rho_ed - rho_ff).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("spin-1 single-site entropy") {
    CHECK(single_site_entropy_spin1(2.0 / 3.0) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(single_site_entropy_spin1(0.0) == 0.0);
    CHECK(single_site_entropy_spin1(1.0) == doctest::Approx(std::log(2.0)));
    CHECK_THROWS_AS(single_site_entropy_spin1(-0.01), Error);
    CHECK_THROWS_AS(single_site_entropy_spin1(1.01), Error);

    // it equals the von Neumann entropy of diag(O/2, 1-O, O/2)
    for (double o : {0.1, 0.5, 0.9}) {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3, 3);
        rho(0, 0) = rho(2, 2) = o / 2;
        rho(1, 1) = 1 - o;
        CHECK(single_site_entropy_spin1(o) == doctest::Approx(von_neumann_entropy(DensityMatrix(rho))));
    }

    // unique interior maximum: the slope changes sign once, at 2/3
    int sign_changes = 0;
    double where = 0;
    for (int i = 1; i < 1000; ++i) {
        const double a = (i - 0.5) / 1000, b = (i + 0.5) / 1000;
        const double d0 = single_site_entropy_spin1(a + 1e-4) - single_site_entropy_spin1(a);
        const double d1 = single_site_entropy_spin1(b + 1e-4) - single_site_entropy_spin1(b);
        if ((d0 > 0) != (d1 > 0)) {
            ++sign_changes;
            where = i / 1000.0;
        }
    }
    CHECK(sign_changes == 1);
    CHECK(where == doctest::Approx(2.0 / 3.0).epsilon(2e-3));
}

TEST_CASE("Ising one-site entropy without symmetry breaking peaks at h = 0") {
    double best = -1, best_h = -1;
    for (int i = 0; i <= 200; ++i) {
        const double h = i / 100.0;
        const double s = von_neumann_entropy(rho1_spin_half({0, 0, tfim::magnetization_z(h, tfim::thermodynamic_limit)}));
        if (s > best) {
            best = s;
            best_h = h;
        }
    }
    CHECK(best_h == 0.0);
    CHECK(best == doctest::Approx(std::log(2.0)));
}
