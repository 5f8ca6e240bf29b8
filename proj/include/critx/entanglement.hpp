#pragma once

#include <Eigen/Dense>

namespace critx {

/// Reduced density matrix of one or two sites (dimension 2, 3, 4 or 9).
///
/// Construction checks Hermiticity (1e-12), unit trace (1e-10) and positivity
/// (eigenvalues >= -1e-10). Eigenvalues in [-1e-10, 0) are reported as 0.
class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd rho);

    int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }

    /// Ascending, clamped to [0, 1].
    const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

    /// Trace over the second factor of a (d x d) two-site matrix.
    DensityMatrix partial_trace_second() const;
    DensityMatrix partial_trace_first() const;

private:
    Eigen::MatrixXcd rho_;
    Eigen::VectorXd eigenvalues_;
};

struct MagnetizationVector {
    double m_x = 0.0;
    double m_y = 0.0;
    double m_z = 0.0;
};

/// -Tr rho ln rho, in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// 1 - Tr rho^2.
double linear_entropy(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);

/// (1 + m . sigma) / 2; throws when |m| > 1.
DensityMatrix rho1_spin_half(const MagnetizationVector& m);

/// Spontaneous order parameter of the Ising chain, (1 - h^2)^{1/8} below h = 1.
double mx_spontaneous(double h);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state.
double concurrence(const DensityMatrix& rho);

/// max(0, (xx - yy + zz - 1) / 2).
double concurrence_from_correlators(double xx, double yy, double zz);

/// Spin-1 single-site entropy when rho_1 = diag(O/2, 1-O, O/2).
double single_site_entropy_spin1(double o_d);

}  // namespace critx
