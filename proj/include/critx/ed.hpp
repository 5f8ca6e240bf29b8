#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "critx/entanglement.hpp"
#include "critx/models.hpp"

namespace critx::ed {

// Configurations are packed little-endian, one field per site (1 bit for spin-1/2,
// 2 bits for spin-1). A field holds the local index s = 0..d-1 with S^z = S - s,
// so s = 0 is spin up (sz = +1) for the Ising chain and m = +1 for spin-1.

struct QuantumNumbers {
    std::optional<int> total_sz;  ///< spin-1 only; sum of m_i
    std::optional<int> parity;    ///< Ising only; prod_i sz_i = +-1

    static QuantumNumbers magnetization(int sz) { return {sz, std::nullopt}; }
    static QuantumNumbers ising_parity(int p) { return {std::nullopt, p}; }
};

class SectorBasis {
public:
    SectorBasis(const ModelSpec& model, QuantumNumbers qn);

    const ModelSpec& model() const noexcept { return model_; }
    const QuantumNumbers& quantum_numbers() const noexcept { return qn_; }
    std::size_t dim() const noexcept { return states_.size(); }
    std::span<const std::uint64_t> states() const noexcept { return states_; }
    std::uint64_t state(std::size_t i) const { return states_[i]; }

    /// Position of a packed configuration, or nullopt when it lies outside the sector.
    std::optional<std::size_t> index_of(std::uint64_t config) const;

    int bits_per_site() const noexcept { return bits_; }
    int local_state(std::uint64_t config, int site) const noexcept {
        return static_cast<int>((config >> (bits_ * site)) & mask_);
    }
    std::uint64_t with_local_state(std::uint64_t config, int site, int s) const noexcept {
        const int shift = bits_ * site;
        return (config & ~(mask_ << shift)) | (static_cast<std::uint64_t>(s) << shift);
    }

    /// Checks that `other` has the same family, size and boundary as the basis.
    void check_compatible(const ModelSpec& other) const;

private:
    ModelSpec model_;
    QuantumNumbers qn_;
    int bits_;
    std::uint64_t mask_;
    std::vector<std::uint64_t> states_;
};

SectorBasis build_sector_basis(const ModelSpec& model, QuantumNumbers qn);

/// w = H v, evaluated matrix-free from the bond terms.
std::vector<double> apply_hamiltonian(const ModelSpec& model, const SectorBasis& basis,
                                      std::span<const double> v);

/// H tabulated once per (model, basis) for repeated application. Every row is
/// accumulated on its own, so the product does not depend on how rows are split
/// across threads.
class HamiltonianOperator {
public:
    HamiltonianOperator(const ModelSpec& model, const SectorBasis& basis);

    std::size_t dim() const noexcept { return diagonal_.size(); }
    void apply(std::span<const double> v, std::span<double> w, int threads = 1) const;

private:
    void apply_rows(std::span<const double> v, std::span<double> w, std::size_t begin,
                    std::size_t end) const;

    std::vector<double> diagonal_;
    std::vector<std::size_t> row_start_;
    std::vector<std::uint32_t> columns_;
    std::vector<double> values_;
};

struct LanczosOptions {
    int n_eigs = 1;
    int max_iter = 500;
    double tol = 1e-10;
    bool reorthogonalize = true;
    std::uint64_t seed = 12345;
    int threads = 1;

    void validate() const;
};

struct GroundStateResult {
    std::vector<double> energies;             ///< ascending
    std::vector<std::vector<double>> vectors;  ///< unit norm, one per energy
    std::vector<double> residuals;            ///< ||H v - E v||
    std::vector<double> ritz_history;         ///< lowest Ritz value after each step
    int iterations = 0;
};

/// Lowest n_eigs eigenpairs of H in the sector. Exactly degenerate levels are resolved
/// only once; a single Krylov space cannot see multiplicities.
GroundStateResult lanczos_lowest(const ModelSpec& model, const SectorBasis& basis,
                                 const LanczosOptions& opts = {});

/// <v| O_site |v> for site-local and two-site observables
/// (magnetization_z, sz_squared, szsz_nn, correlator_xx/yy/zz).
double expectation_local(std::span<const double> v, const SectorBasis& basis,
                         const ObservableSpec& observable, int site);

DensityMatrix one_site_rdm(std::span<const double> v, const SectorBasis& basis, int site);
DensityMatrix two_site_rdm(std::span<const double> v, const SectorBasis& basis, int site_i,
                           int site_j);

/// Second-lowest minus lowest energy over the union of the listed sectors.
double gap(const ModelSpec& model, const std::vector<QuantumNumbers>& sectors,
           const LanczosOptions& opts = {});

/// Default sector holding the ground state: parity +1 (Ising) or total S^z = 0 (spin-1).
QuantumNumbers ground_sector(const ModelSpec& model);

}  // namespace critx::ed
