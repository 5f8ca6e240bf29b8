#pragma once

#include <string_view>

#include "critx/ed.hpp"
#include "critx/entanglement.hpp"
#include "critx/models.hpp"

namespace critx {

enum class Engine { exact, ed };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view s);

/// Observable on the free-fermion ground state (periodic Ising chain only).
/// With `symmetry_broken`, entropy_1site uses the spontaneous m_x below h = 1.
double measure_exact(const ModelSpec& model, const ObservableSpec& observable,
                     bool symmetry_broken = false);

/// Two-site density matrix of the periodic Ising ground state at separation r,
/// assembled from <sz> and the three correlators.
DensityMatrix tfim_two_site_rdm(double h, int L, int r);

/// Observable on an ED ground state. Periodic chains are measured at site 0,
/// open chains at the sites closest to the centre.
double measure_ground_state(const ed::SectorBasis& basis, const ed::GroundStateResult& gs,
                            const ObservableSpec& observable);

}  // namespace critx
