#pragma once

#include <vector>

namespace critx::tfim {

// Free-fermion solution of the periodic transverse-field Ising chain
//     H = -sum_i [ sx_i sx_{i+1} + h sz_i ]
// in the even-parity (antiperiodic fermion) sector. All energies are per site.

struct ThermodynamicLimit {};
inline constexpr ThermodynamicLimit thermodynamic_limit{};

struct MomentumGrid {
    int L = 0;
    std::vector<double> k;  ///< (2j+1) pi / L, j = 0..L-1
};

MomentumGrid momenta(int L);

/// Single-particle energy sqrt(1 + h^2 - 2h cos k); half the fermion excitation energy.
double dispersion(double h, double k);

double energy_density(double h, int L);
double energy_density(double h, ThermodynamicLimit);

/// <sz> = -d e / d h.
double magnetization_z(double h, int L);
double magnetization_z(double h, ThermodynamicLimit);

/// Fermionic contraction G(n) = (1/L) sum_k [(h - cos k) cos kn - sin k sin kn] / eps(k).
/// G(0) is the transverse magnetization.
double contraction(double h, int L, int n);

/// G(n) tabulated for |n| <= r_max at fixed (h, L).
class ContractionTable {
public:
    ContractionTable(double h, int L, int r_max);

    double h() const noexcept { return h_; }
    int L() const noexcept { return L_; }
    int r_max() const noexcept { return r_max_; }

    double operator()(int n) const;

private:
    double h_;
    int L_;
    int r_max_;
    std::vector<double> values_;  // index n + r_max
};

enum class Axis { x, y, z };

/// <s^a_i s^a_{i+r}> for 1 <= r <= L/2 (r <= 64).
/// xx and yy are r x r Toeplitz determinants of -G, zz is G(0)^2 - G(r) G(-r).
double correlator(Axis axis, int r, double h, int L);
double correlator(Axis axis, int r, const ContractionTable& table);

/// Correlation length from sinh(1/(2 xi)) = |1-h| / (2 sqrt(h)); +inf at h = 1.
double correlation_length(double h);

/// (e_inf - e_L) sqrt(pi) L^{3/2} e^{L/xi} / |h^2 - 1|^{1/2}.
/// The even-sector ground-state energy approaches e_inf from below, so the ratio is
/// positive and tends to 1 + O(1/L). The difference is resolved in extended precision,
/// which covers L/xi up to about 35; L/xi > 700 is rejected outright.
double energy_tail_ratio(double h, int L);

/// 2/pi - (h-1)/pi (ln|h-1| + 1 - ln 8). Intended for |h-1| <= 0.1.
double mz_critical_expansion(double h);

/// 2/pi + (ln L + ln(8/pi) + gamma_E - 1)/pi (h-1) + pi/(12 L^2).
double mz_finite_size_critical(double h, int L);

}  // namespace critx::tfim
