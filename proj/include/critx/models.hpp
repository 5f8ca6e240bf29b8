#pragma once

#include <map>
#include <string>
#include <string_view>

namespace critx {

enum class Family { tfim, spin1_xxzd };
enum class Boundary { periodic, open };

std::string_view to_string(Family f);
std::string_view to_string(Boundary b);
Family parse_family(std::string_view s);
Boundary parse_boundary(std::string_view s);

/// A 1D chain: which Hamiltonian, how many sites, boundary condition, couplings.
///
/// Transverse-field Ising:  H = -sum_i [ sx_i sx_{i+1} + h sz_i ]           couplings {h}
/// Spin-1 XXZ + single-ion: H =  sum_i [ Sx Sx + Sy Sy + lambda Sz Sz + D (Sz_i)^2 ]
///                                                                      couplings {lambda, D}
///
/// Periodic bonds run over i = 0..L-1 with i+1 taken mod L, so a periodic L=2 chain
/// carries the single bond twice. The free-fermion formulas use that convention,
/// the ED engine follows it, and the spin-1 model refuses periodic L < 4.
class ModelSpec {
public:
    ModelSpec(Family family, int L, Boundary boundary, std::map<std::string, double> couplings);

    static ModelSpec tfim(int L, double h, Boundary boundary = Boundary::periodic);
    static ModelSpec spin1_xxzd(int L, double lambda, double D,
                                Boundary boundary = Boundary::periodic);

    Family family() const noexcept { return family_; }
    int L() const noexcept { return L_; }
    Boundary boundary() const noexcept { return boundary_; }
    const std::map<std::string, double>& couplings() const noexcept { return couplings_; }

    bool has_coupling(std::string_view name) const;
    double coupling(std::string_view name) const;

    ModelSpec with_coupling(std::string_view name, double value) const;
    ModelSpec with_size(int L) const;

    /// Local Hilbert-space dimension: 2 for spin-1/2, 3 for spin-1.
    int local_dim() const noexcept { return family_ == Family::tfim ? 2 : 3; }

    /// Number of bond terms in the Hamiltonian sum (periodic L=2 counts the bond twice).
    int bond_count() const noexcept { return boundary_ == Boundary::periodic ? L_ : L_ - 1; }

    bool operator==(const ModelSpec&) const = default;

private:
    Family family_;
    int L_;
    Boundary boundary_;
    std::map<std::string, double> couplings_;
};

/// The coupling that drives the transition, and its current value.
struct DrivingParameter {
    std::string name;
    double value = 0.0;

    void validate(const ModelSpec& model) const;
};

enum class ObservableKind {
    energy_density,
    magnetization_z,
    sz_squared,
    szsz_nn,
    correlator_xx,
    correlator_yy,
    correlator_zz,
    entropy_1site,
    concurrence,
};

std::string_view to_string(ObservableKind k);
ObservableKind parse_observable(std::string_view s);

struct ObservableSpec {
    ObservableKind kind = ObservableKind::energy_density;
    int r = 0;  ///< separation for correlators and concurrence

    bool operator==(const ObservableSpec&) const = default;

    bool needs_separation() const noexcept;

    /// Throws if the separation is out of range for the model.
    void validate(const ModelSpec& model) const;
};

/// Per-site operator conjugate to a coupling: de/dg = sign * <observable>.
struct DrivingTerm {
    ObservableSpec observable;
    double sign = 1.0;
};

/// Hellmann-Feynman partner of a coupling.
///   tfim/h        -> magnetization_z, sign -1
///   spin1/D       -> sz_squared,      sign +1
///   spin1/lambda  -> szsz_nn,         sign +1
DrivingTerm driving_term(const ModelSpec& model, std::string_view name);

}  // namespace critx
