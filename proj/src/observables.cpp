#include "critx/observables.hpp"

#include <string>

#include "critx/error.hpp"
#include "critx/tfim_exact.hpp"

namespace critx {

std::string_view to_string(Engine e) { return e == Engine::exact ? "exact" : "ed"; }

Engine parse_engine(std::string_view s) {
    if (s == "exact") return Engine::exact;
    if (s == "ed") return Engine::ed;
    throw Error("unknown engine '" + std::string(s) + "'");
}

DensityMatrix tfim_two_site_rdm(double h, int L, int r) {
    const tfim::ContractionTable G(h, L, std::min(r + 1, L));
    const double mz = G(0);
    const double xx = tfim::correlator(tfim::Axis::x, r, G);
    const double yy = tfim::correlator(tfim::Axis::y, r, G);
    const double zz = tfim::correlator(tfim::Axis::z, r, G);
    // rho = (1/4)[1 + mz (z1 + 1z) + xx XX + yy YY + zz ZZ]; basis |uu>,|ud>,|du>,|dd>
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 1.0 + 2.0 * mz + zz;
    rho(1, 1) = 1.0 - zz;
    rho(2, 2) = 1.0 - zz;
    rho(3, 3) = 1.0 - 2.0 * mz + zz;
    rho(0, 3) = rho(3, 0) = xx - yy;
    rho(1, 2) = rho(2, 1) = xx + yy;
    return DensityMatrix(0.25 * rho);
}

double measure_exact(const ModelSpec& model, const ObservableSpec& observable,
                     bool symmetry_broken) {
    if (model.family() != Family::tfim || model.boundary() != Boundary::periodic)
        throw Error("the exact engine covers the periodic Ising chain only");
    observable.validate(model);
    const double h = model.coupling("h");
    const int L = model.L();

    switch (observable.kind) {
        case ObservableKind::energy_density:
            return tfim::energy_density(h, L);
        case ObservableKind::magnetization_z:
            return tfim::magnetization_z(h, L);
        case ObservableKind::sz_squared:
            return 1.0;
        case ObservableKind::szsz_nn:
            return tfim::correlator(tfim::Axis::z, 1, h, L);
        case ObservableKind::correlator_xx:
            return tfim::correlator(tfim::Axis::x, observable.r, h, L);
        case ObservableKind::correlator_yy:
            return tfim::correlator(tfim::Axis::y, observable.r, h, L);
        case ObservableKind::correlator_zz:
            return tfim::correlator(tfim::Axis::z, observable.r, h, L);
        case ObservableKind::entropy_1site: {
            MagnetizationVector m{0.0, 0.0, tfim::magnetization_z(h, L)};
            if (symmetry_broken) m.m_x = mx_spontaneous(std::abs(h));
            return von_neumann_entropy(rho1_spin_half(m));
        }
        case ObservableKind::concurrence:
            return concurrence(tfim_two_site_rdm(h, L, observable.r));
    }
    throw Error("unsupported observable");
}

double measure_ground_state(const ed::SectorBasis& basis, const ed::GroundStateResult& gs,
                            const ObservableSpec& observable) {
    const ModelSpec& model = basis.model();
    observable.validate(model);
    const auto& v = gs.vectors.at(0);
    const int L = model.L();
    const bool periodic = model.boundary() == Boundary::periodic;
    const int span = observable.needs_separation() ? observable.r
                     : observable.kind == ObservableKind::szsz_nn ? 1
                                                                   : 0;
    const int site = periodic ? 0 : (L - 1 - span) / 2;

    switch (observable.kind) {
        case ObservableKind::energy_density:
            return gs.energies.at(0) / L;
        case ObservableKind::entropy_1site:
            return von_neumann_entropy(ed::one_site_rdm(v, basis, site));
        case ObservableKind::concurrence:
            if (model.family() != Family::tfim)
                throw Error("concurrence is defined for spin-1/2 chains only");
            return concurrence(ed::two_site_rdm(v, basis, site, (site + observable.r) % L));
        default:
            return ed::expectation_local(v, basis, observable, site);
    }
}

}  // namespace critx
