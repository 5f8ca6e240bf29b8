#include "critx/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "critx/error.hpp"

namespace critx {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kNegativityTol = 1e-10;

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

int factor_dim(int dim) {
    if (dim == 4) return 2;
    if (dim == 9) return 3;
    throw Error("partial trace needs a two-site density matrix");
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    const auto n = rho_.rows();
    if (rho_.cols() != n || (n != 2 && n != 3 && n != 4 && n != 9))
        throw Error("density matrix must be square with dimension 2, 3, 4 or 9");
    const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol)
        throw Error("density matrix is not Hermitian (deviation " + std::to_string(asym) + ")");
    const auto tr = rho_.trace();
    if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol)
        throw Error("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");

    rho_ = (0.5 * (rho_ + rho_.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    eigenvalues_ = es.eigenvalues();
    if (eigenvalues_.minCoeff() < -kNegativityTol)
        throw Error("density matrix has eigenvalue " + std::to_string(eigenvalues_.minCoeff()));
    eigenvalues_ = eigenvalues_.cwiseMax(0.0).cwiseMin(1.0);
}

DensityMatrix DensityMatrix::partial_trace_second() const {
    const int d = factor_dim(dim());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) out(a, b) += rho_(a * d + c, b * d + c);
    return DensityMatrix(std::move(out));
}

DensityMatrix DensityMatrix::partial_trace_first() const {
    const int d = factor_dim(dim());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) out(a, b) += rho_(c * d + a, c * d + b);
    return DensityMatrix(std::move(out));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double p : rho.eigenvalues()) s -= xlogx(p);
    return std::max(s, 0.0);
}

double purity(const DensityMatrix& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

double linear_entropy(const DensityMatrix& rho) { return std::max(0.0, 1.0 - purity(rho)); }

DensityMatrix rho1_spin_half(const MagnetizationVector& m) {
    const double norm2 = m.m_x * m.m_x + m.m_y * m.m_y + m.m_z * m.m_z;
    if (norm2 > 1.0 + 1e-10)
        throw Error("magnetization vector of length " + std::to_string(std::sqrt(norm2)) +
                    " is not a state");
    using C = std::complex<double>;
    Eigen::Matrix2cd rho;
    rho << C(1.0 + m.m_z, 0.0), C(m.m_x, -m.m_y),
           C(m.m_x, m.m_y),     C(1.0 - m.m_z, 0.0);
    return DensityMatrix(0.5 * rho);
}

double mx_spontaneous(double h) {
    if (h < 0.0) throw Error("spontaneous magnetization needs h >= 0");
    return h < 1.0 ? std::pow(1.0 - h * h, 0.125) : 0.0;
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw Error("concurrence needs a two-qubit (4x4) density matrix");

    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    // sigma_y (x) sigma_y is real: +-1 on the anti-diagonal
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const Eigen::Matrix4cd& r = rho.matrix();
    const Eigen::Matrix4cd tilde = flip * r.conjugate() * flip;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(r);
    const Eigen::Vector4d sq = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd root = es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::Matrix4cd m = root * tilde * root;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ms(0.5 * (m + m.adjoint()),
                                                       Eigen::EigenvaluesOnly);

    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) lambda[i] = std::sqrt(std::max(ms.eigenvalues()(i), 0.0));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

double concurrence_from_correlators(double xx, double yy, double zz) {
    return std::max(0.0, (xx - yy + zz - 1.0) / 2.0);
}

double single_site_entropy_spin1(double o_d) {
    if (!(o_d >= 0.0 && o_d <= 1.0))
        throw Error("<(Sz)^2> must lie in [0, 1], got " + std::to_string(o_d));
    return -o_d * std::log(o_d > 0.0 ? o_d / 2.0 : 1.0) - xlogx(1.0 - o_d);
}

}  // namespace critx
