#include "critx/ed.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

#include "critx/error.hpp"

namespace critx::ed {

namespace {

using cplx = std::complex<double>;

int local_sz_times_two(Family family, int s) {
    // spin-1/2: s=0 -> +1, s=1 -> -1 (in units of sigma); spin-1: m = 1 - s
    return family == Family::tfim ? 1 - 2 * s : 1 - s;
}

struct Bond {
    int i;
    int j;
};

std::vector<Bond> bonds_of(const ModelSpec& model) {
    std::vector<Bond> bonds;
    const int L = model.L();
    for (int i = 0; i < L - 1; ++i) bonds.push_back({i, i + 1});
    if (model.boundary() == Boundary::periodic) bonds.push_back({L - 1, 0});
    return bonds;
}

// Calls emit(target_config, amplitude) for every off-diagonal element <target|H|config>
// and returns the diagonal element.
template <typename Emit>
double hamiltonian_row(const ModelSpec& model, const SectorBasis& basis,
                       const std::vector<Bond>& bonds, std::uint64_t config, Emit&& emit) {
    double diag = 0.0;
    if (model.family() == Family::tfim) {
        const double h = model.coupling("h");
        for (int i = 0; i < model.L(); ++i)
            diag -= h * local_sz_times_two(Family::tfim, basis.local_state(config, i));
        for (const auto& b : bonds) {
            const std::uint64_t flipped = config ^ (std::uint64_t{1} << b.i) ^ (std::uint64_t{1} << b.j);
            emit(flipped, -1.0);
        }
        return diag;
    }

    const double lambda = model.coupling("lambda");
    const double D = model.coupling("D");
    for (int i = 0; i < model.L(); ++i) {
        const int m = local_sz_times_two(Family::spin1_xxzd, basis.local_state(config, i));
        diag += D * m * m;
    }
    for (const auto& b : bonds) {
        const int si = basis.local_state(config, b.i);
        const int sj = basis.local_state(config, b.j);
        diag += lambda * (1 - si) * (1 - sj);
        // (S+_i S-_j + S-_i S+_j) / 2 has unit matrix elements for spin 1.
        if (si > 0 && sj < 2)
            emit(basis.with_local_state(basis.with_local_state(config, b.i, si - 1), b.j, sj + 1), 1.0);
        if (si < 2 && sj > 0)
            emit(basis.with_local_state(basis.with_local_state(config, b.i, si + 1), b.j, sj - 1), 1.0);
    }
    return diag;
}

using LocalOp = Eigen::MatrixXcd;

LocalOp local_operator(Family family, char axis) {
    if (family == Family::tfim) {
        LocalOp op(2, 2);
        switch (axis) {
            case 'x': op << 0, 1, 1, 0; break;
            case 'y': op << 0, cplx(0, -1), cplx(0, 1), 0; break;
            default: op << 1, 0, 0, -1; break;
        }
        return op;
    }
    const double r = 1.0 / std::sqrt(2.0);
    LocalOp op = LocalOp::Zero(3, 3);
    switch (axis) {
        case 'x':
            op(0, 1) = op(1, 0) = op(1, 2) = op(2, 1) = r;
            break;
        case 'y':
            op(0, 1) = cplx(0, -r);
            op(1, 0) = cplx(0, r);
            op(1, 2) = cplx(0, -r);
            op(2, 1) = cplx(0, r);
            break;
        default:
            op(0, 0) = 1;
            op(2, 2) = -1;
            break;
    }
    return op;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double squared_norm(std::span<const double> v) {
    return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void check_site(const SectorBasis& basis, int site) {
    if (site < 0 || site >= basis.model().L())
        throw Error("site index " + std::to_string(site) + " out of range");
}

int partner_site(const SectorBasis& basis, int site, int r) {
    const int L = basis.model().L();
    if (basis.model().boundary() == Boundary::periodic) return (site + r) % L;
    if (site + r >= L) throw Error("two-site observable runs past the open chain end");
    return site + r;
}

Eigen::MatrixXcd raw_two_site(std::span<const double> v, const SectorBasis& basis, int si, int sj) {
    const int d = basis.model().local_dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (std::size_t n = 0; n < basis.dim(); ++n) {
        if (v[n] == 0.0) continue;
        const std::uint64_t c = basis.state(n);
        const int row = basis.local_state(c, si) * d + basis.local_state(c, sj);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const auto idx = basis.index_of(basis.with_local_state(basis.with_local_state(c, si, a), sj, b));
                if (idx) rho(row, a * d + b) += v[n] * v[*idx];
            }
    }
    return rho / squared_norm(v);
}

Eigen::MatrixXcd raw_one_site(std::span<const double> v, const SectorBasis& basis, int site) {
    const int d = basis.model().local_dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t n = 0; n < basis.dim(); ++n) {
        if (v[n] == 0.0) continue;
        const std::uint64_t c = basis.state(n);
        const int row = basis.local_state(c, site);
        for (int a = 0; a < d; ++a) {
            const auto idx = basis.index_of(basis.with_local_state(c, site, a));
            if (idx) rho(row, a) += v[n] * v[*idx];
        }
    }
    return rho / squared_norm(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// SectorBasis

SectorBasis::SectorBasis(const ModelSpec& model, QuantumNumbers qn)
    : model_(model), qn_(qn), bits_(model.family() == Family::tfim ? 1 : 2),
      mask_(model.family() == Family::tfim ? 1u : 3u) {
    const int L = model.L();
    if (model.family() == Family::tfim) {
        if (qn.total_sz) throw Error("the Ising chain does not conserve total S^z");
        if (qn.parity && *qn.parity != 1 && *qn.parity != -1)
            throw Error("Ising parity must be +1 or -1");
        if (L > 30) throw Error("Ising ED limited to L <= 30");
        const std::uint64_t n = std::uint64_t{1} << L;
        for (std::uint64_t c = 0; c < n; ++c) {
            if (qn.parity) {
                const int p = (std::popcount(c) % 2 == 0) ? 1 : -1;
                if (p != *qn.parity) continue;
            }
            states_.push_back(c);
        }
    } else {
        if (qn.parity) throw Error("the spin-1 chain has no Ising parity quantum number");
        if (L > 16) throw Error("spin-1 ED limited to L <= 16");
        std::uint64_t n = 1;
        for (int i = 0; i < L; ++i) n *= 3;
        // Base-3 counting order coincides with packed order (most significant site last).
        for (std::uint64_t x = 0; x < n; ++x) {
            std::uint64_t packed = 0;
            int sz = 0;
            std::uint64_t y = x;
            for (int i = 0; i < L; ++i) {
                const int s = static_cast<int>(y % 3);
                y /= 3;
                packed |= static_cast<std::uint64_t>(s) << (2 * i);
                sz += 1 - s;
            }
            if (qn.total_sz && sz != *qn.total_sz) continue;
            states_.push_back(packed);
        }
    }
    if (states_.empty()) throw Error("empty symmetry sector");
}

std::optional<std::size_t> SectorBasis::index_of(std::uint64_t config) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), config);
    if (it == states_.end() || *it != config) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
}

void SectorBasis::check_compatible(const ModelSpec& other) const {
    if (other.family() != model_.family() || other.L() != model_.L() ||
        other.boundary() != model_.boundary())
        throw Error("model does not match the sector basis (family, L or boundary differ)");
}

SectorBasis build_sector_basis(const ModelSpec& model, QuantumNumbers qn) {
    return SectorBasis(model, qn);
}

QuantumNumbers ground_sector(const ModelSpec& model) {
    return model.family() == Family::tfim ? QuantumNumbers::ising_parity(1)
                                          : QuantumNumbers::magnetization(0);
}

// ---------------------------------------------------------------------------
// Hamiltonian action

std::vector<double> apply_hamiltonian(const ModelSpec& model, const SectorBasis& basis,
                                      std::span<const double> v) {
    basis.check_compatible(model);
    if (v.size() != basis.dim())
        throw Error("vector length " + std::to_string(v.size()) + " does not match sector dimension " +
                    std::to_string(basis.dim()));
    const auto bonds = bonds_of(model);
    std::vector<double> w(basis.dim());
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        double acc = 0.0;
        const double diag = hamiltonian_row(model, basis, bonds, basis.state(i),
                                            [&](std::uint64_t target, double amp) {
                                                if (auto j = basis.index_of(target)) acc += amp * v[*j];
                                            });
        w[i] = diag * v[i] + acc;
    }
    return w;
}

HamiltonianOperator::HamiltonianOperator(const ModelSpec& model, const SectorBasis& basis) {
    basis.check_compatible(model);
    if (basis.dim() > std::numeric_limits<std::uint32_t>::max())
        throw Error("sector too large for the tabulated operator");
    const auto bonds = bonds_of(model);
    diagonal_.resize(basis.dim());
    row_start_.reserve(basis.dim() + 1);
    row_start_.push_back(0);
    std::vector<std::pair<std::uint32_t, double>> row;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        row.clear();
        diagonal_[i] = hamiltonian_row(model, basis, bonds, basis.state(i),
                                       [&](std::uint64_t target, double amp) {
                                           if (auto j = basis.index_of(target))
                                               row.emplace_back(static_cast<std::uint32_t>(*j), amp);
                                       });
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!columns_.empty() && columns_.size() > row_start_.back() &&
                columns_.back() == row[k].first) {
                values_.back() += row[k].second;  // periodic L=2: the bond appears twice
            } else {
                columns_.push_back(row[k].first);
                values_.push_back(row[k].second);
            }
        }
        row_start_.push_back(columns_.size());
    }
}

void HamiltonianOperator::apply_rows(std::span<const double> v, std::span<double> w,
                                     std::size_t begin, std::size_t end) const {
    for (std::size_t i = begin; i < end; ++i) {
        double acc = diagonal_[i] * v[i];
        for (std::size_t k = row_start_[i]; k < row_start_[i + 1]; ++k) acc += values_[k] * v[columns_[k]];
        w[i] = acc;
    }
}

void HamiltonianOperator::apply(std::span<const double> v, std::span<double> w, int threads) const {
    if (v.size() != dim() || w.size() != dim()) throw Error("dimension mismatch in operator apply");
    const std::size_t n = dim();
    const std::size_t t = static_cast<std::size_t>(std::clamp(threads, 1, 64));
    if (t == 1 || n < 4096) {
        apply_rows(v, w, 0, n);
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + t - 1) / t;
    for (std::size_t k = 0; k < t; ++k) {
        const std::size_t b = k * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([this, v, w, b, e] { apply_rows(v, w, b, e); });
    }
}

// ---------------------------------------------------------------------------
// Lanczos

void LanczosOptions::validate() const {
    if (n_eigs < 1 || n_eigs > 4) throw Error("n_eigs must be between 1 and 4");
    if (max_iter < 1) throw Error("max_iter must be positive");
    if (!(tol > 0.0)) throw Error("Lanczos tolerance must be positive");
}

GroundStateResult lanczos_lowest(const ModelSpec& model, const SectorBasis& basis,
                                 const LanczosOptions& opts) {
    opts.validate();
    const HamiltonianOperator H(model, basis);
    const std::size_t n = basis.dim();
    if (n < static_cast<std::size_t>(opts.n_eigs))
        throw Error("sector dimension " + std::to_string(n) + " is smaller than n_eigs");

    GroundStateResult result;
    std::vector<double> w(n);

    if (n == 1) {
        const std::vector<double> one{1.0};
        H.apply(one, w);
        result.energies = {w[0]};
        result.vectors = {one};
        result.residuals = {0.0};
        return result;
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<std::vector<double>> V;
    V.emplace_back(n);
    for (auto& x : V[0]) x = dist(rng);
    {
        const double nrm = std::sqrt(squared_norm(V[0]));
        for (auto& x : V[0]) x /= nrm;
    }

    std::vector<double> alpha, beta;
    const std::size_t krylov_max = std::min<std::size_t>(opts.max_iter, n);
    const auto k = static_cast<std::size_t>(opts.n_eigs);
    double best_residual = std::numeric_limits<double>::infinity();

    for (std::size_t j = 0; j < krylov_max; ++j) {
        H.apply(V[j], w, opts.threads);
        const double a = dot(V[j], w);
        alpha.push_back(a);
        for (std::size_t i = 0; i < n; ++i) w[i] -= a * V[j][i];
        if (j > 0)
            for (std::size_t i = 0; i < n; ++i) w[i] -= beta[j - 1] * V[j - 1][i];
        if (opts.reorthogonalize) {
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : V) {
                    const double c = dot(q, w);
                    for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
                }
        }
        const double b = std::sqrt(squared_norm(w));
        const std::size_t m = j + 1;

        Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1))
                                    : Eigen::VectorXd();
        const bool breakdown_candidate = b <= 1e-13 * std::max(1.0, std::abs(a));
        const bool exhausted = m == krylov_max;
        const bool check = m >= k && (m < 24 || m % 4 == 0 || breakdown_candidate || exhausted);

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub,
                                   check ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        result.ritz_history.push_back(tri.eigenvalues()(0));

        const double scale = std::max(1.0, tri.eigenvalues().cwiseAbs().maxCoeff());
        const bool breakdown = b <= 1e-13 * scale;

        if (check) {
            double worst_estimate = 0.0;
            for (std::size_t e = 0; e < k; ++e)
                worst_estimate = std::max(worst_estimate, std::abs(b * tri.eigenvectors()(m - 1, e)));

            if (worst_estimate <= 0.1 * opts.tol || breakdown || exhausted) {
                GroundStateResult candidate;
                candidate.ritz_history = result.ritz_history;
                candidate.iterations = static_cast<int>(m);
                double worst = 0.0;
                for (std::size_t e = 0; e < k; ++e) {
                    std::vector<double> x(n, 0.0);
                    for (std::size_t q = 0; q < m; ++q) {
                        const double s = tri.eigenvectors()(q, e);
                        for (std::size_t i = 0; i < n; ++i) x[i] += s * V[q][i];
                    }
                    const double nrm = std::sqrt(squared_norm(x));
                    for (auto& xi : x) xi /= nrm;
                    H.apply(x, w, opts.threads);
                    const double energy = dot(x, w);
                    double res2 = 0.0;
                    for (std::size_t i = 0; i < n; ++i) res2 += (w[i] - energy * x[i]) * (w[i] - energy * x[i]);
                    const double res = std::sqrt(res2);
                    worst = std::max(worst, res);
                    candidate.energies.push_back(energy);
                    candidate.vectors.push_back(std::move(x));
                    candidate.residuals.push_back(res);
                }
                best_residual = std::min(best_residual, worst);
                if (worst <= opts.tol) return candidate;
                if (breakdown || exhausted) break;
            }
        }
        if (breakdown) break;

        beta.push_back(b);
        V.emplace_back(n);
        for (std::size_t i = 0; i < n; ++i) V.back()[i] = w[i] / b;
    }
    throw ConvergenceError("Lanczos did not converge within " + std::to_string(krylov_max) +
                               " iterations (best residual " + std::to_string(best_residual) + ")",
                           best_residual);
}

// ---------------------------------------------------------------------------
// Measurements

DensityMatrix one_site_rdm(std::span<const double> v, const SectorBasis& basis, int site) {
    if (v.size() != basis.dim()) throw Error("vector length does not match sector dimension");
    check_site(basis, site);
    return DensityMatrix(raw_one_site(v, basis, site));
}

DensityMatrix two_site_rdm(std::span<const double> v, const SectorBasis& basis, int site_i,
                           int site_j) {
    if (v.size() != basis.dim()) throw Error("vector length does not match sector dimension");
    check_site(basis, site_i);
    check_site(basis, site_j);
    if (site_i == site_j) throw Error("two-site density matrix needs distinct sites");
    return DensityMatrix(raw_two_site(v, basis, site_i, site_j));
}

double expectation_local(std::span<const double> v, const SectorBasis& basis,
                         const ObservableSpec& observable, int site) {
    if (v.size() != basis.dim()) throw Error("vector length does not match sector dimension");
    check_site(basis, site);
    const Family family = basis.model().family();

    const auto diagonal_mean = [&](auto&& value_of) {
        double acc = 0.0;
        for (std::size_t n = 0; n < basis.dim(); ++n) acc += v[n] * v[n] * value_of(basis.state(n));
        return acc / squared_norm(v);
    };
    const auto sz = [&](std::uint64_t c, int s) {
        return static_cast<double>(local_sz_times_two(family, basis.local_state(c, s)));
    };
    const auto two_site = [&](char axis, int r) {
        const int other = partner_site(basis, site, r);
        const LocalOp op = local_operator(family, axis);
        const Eigen::MatrixXcd pair = kron(op, op);
        return (raw_two_site(v, basis, site, other) * pair).trace().real();
    };

    switch (observable.kind) {
        case ObservableKind::magnetization_z:
            return diagonal_mean([&](std::uint64_t c) { return sz(c, site); });
        case ObservableKind::sz_squared:
            return diagonal_mean([&](std::uint64_t c) { return sz(c, site) * sz(c, site); });
        case ObservableKind::szsz_nn: {
            const int other = partner_site(basis, site, 1);
            return diagonal_mean([&](std::uint64_t c) { return sz(c, site) * sz(c, other); });
        }
        case ObservableKind::correlator_zz: {
            observable.validate(basis.model());
            const int other = partner_site(basis, site, observable.r);
            return diagonal_mean([&](std::uint64_t c) { return sz(c, site) * sz(c, other); });
        }
        case ObservableKind::correlator_xx:
            observable.validate(basis.model());
            return two_site('x', observable.r);
        case ObservableKind::correlator_yy:
            observable.validate(basis.model());
            return two_site('y', observable.r);
        default:
            throw Error("observable " + std::string(to_string(observable.kind)) +
                        " is not a local expectation value");
    }
}

double gap(const ModelSpec& model, const std::vector<QuantumNumbers>& sectors,
           const LanczosOptions& opts) {
    if (sectors.empty()) throw Error("gap needs at least one sector");
    std::vector<double> levels;
    for (const auto& qn : sectors) {
        const SectorBasis basis(model, qn);
        LanczosOptions o = opts;
        o.n_eigs = static_cast<int>(std::min<std::size_t>(2, basis.dim()));
        const auto res = lanczos_lowest(model, basis, o);
        levels.insert(levels.end(), res.energies.begin(), res.energies.end());
    }
    if (levels.size() < 2) throw Error("gap needs at least two levels across the sectors");
    std::sort(levels.begin(), levels.end());
    return std::max(0.0, levels[1] - levels[0]);
}

}  // namespace critx::ed
