#include "critx/models.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "critx/error.hpp"

namespace critx {

namespace {

constexpr std::array<std::pair<ObservableKind, std::string_view>, 9> kObservableNames{{
    {ObservableKind::energy_density, "energy_density"},
    {ObservableKind::magnetization_z, "magnetization_z"},
    {ObservableKind::sz_squared, "sz_squared"},
    {ObservableKind::szsz_nn, "szsz_nn"},
    {ObservableKind::correlator_xx, "correlator_xx"},
    {ObservableKind::correlator_yy, "correlator_yy"},
    {ObservableKind::correlator_zz, "correlator_zz"},
    {ObservableKind::entropy_1site, "entropy_1site"},
    {ObservableKind::concurrence, "concurrence"},
}};

}  // namespace

std::string_view to_string(Family f) {
    return f == Family::tfim ? "tfim" : "spin1_xxzd";
}

std::string_view to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "open";
}

Family parse_family(std::string_view s) {
    if (s == "tfim") return Family::tfim;
    if (s == "spin1_xxzd" || s == "spin1") return Family::spin1_xxzd;
    throw Error("unknown model family '" + std::string(s) + "'");
}

Boundary parse_boundary(std::string_view s) {
    if (s == "periodic" || s == "pbc") return Boundary::periodic;
    if (s == "open" || s == "obc") return Boundary::open;
    throw Error("unknown boundary condition '" + std::string(s) + "'");
}

std::string_view to_string(ObservableKind k) {
    for (const auto& [kind, name] : kObservableNames)
        if (kind == k) return name;
    return "?";
}

ObservableKind parse_observable(std::string_view s) {
    for (const auto& [kind, name] : kObservableNames)
        if (name == s) return kind;
    throw Error("unknown observable '" + std::string(s) + "'");
}

ModelSpec::ModelSpec(Family family, int L, Boundary boundary,
                     std::map<std::string, double> couplings)
    : family_(family), L_(L), boundary_(boundary), couplings_(std::move(couplings)) {
    if (L_ < 2) throw Error("chain length must be at least 2, got " + std::to_string(L_));
    if (family_ == Family::spin1_xxzd && boundary_ == Boundary::periodic &&
        (L_ < 4 || L_ % 2 != 0))
        throw Error("periodic spin-1 chains need even L >= 4, got " + std::to_string(L_));

    const auto expect = [&](std::initializer_list<std::string_view> names) {
        if (couplings_.size() != names.size())
            throw Error("model " + std::string(to_string(family_)) + " takes " +
                        std::to_string(names.size()) + " coupling(s)");
        for (auto n : names)
            if (!couplings_.contains(std::string(n)))
                throw Error("model " + std::string(to_string(family_)) + " is missing coupling '" +
                            std::string(n) + "'");
    };
    if (family_ == Family::tfim)
        expect({"h"});
    else
        expect({"lambda", "D"});

    for (const auto& [name, value] : couplings_)
        if (!std::isfinite(value)) throw Error("coupling '" + name + "' is not finite");
}

ModelSpec ModelSpec::tfim(int L, double h, Boundary boundary) {
    return ModelSpec(Family::tfim, L, boundary, {{"h", h}});
}

ModelSpec ModelSpec::spin1_xxzd(int L, double lambda, double D, Boundary boundary) {
    return ModelSpec(Family::spin1_xxzd, L, boundary, {{"lambda", lambda}, {"D", D}});
}

bool ModelSpec::has_coupling(std::string_view name) const {
    return couplings_.find(std::string(name)) != couplings_.end();
}

double ModelSpec::coupling(std::string_view name) const {
    auto it = couplings_.find(std::string(name));
    if (it == couplings_.end())
        throw Error("unknown coupling '" + std::string(name) + "' for model " +
                    std::string(to_string(family_)));
    return it->second;
}

ModelSpec ModelSpec::with_coupling(std::string_view name, double value) const {
    auto c = couplings_;
    auto it = c.find(std::string(name));
    if (it == c.end())
        throw Error("unknown coupling '" + std::string(name) + "' for model " +
                    std::string(to_string(family_)));
    it->second = value;
    return ModelSpec(family_, L_, boundary_, std::move(c));
}

ModelSpec ModelSpec::with_size(int L) const {
    return ModelSpec(family_, L, boundary_, couplings_);
}

void DrivingParameter::validate(const ModelSpec& model) const {
    if (!model.has_coupling(name))
        throw Error("driving parameter '" + name + "' is not a coupling of model " +
                    std::string(to_string(model.family())));
    if (!std::isfinite(value)) throw Error("driving parameter '" + name + "' is not finite");
}

bool ObservableSpec::needs_separation() const noexcept {
    switch (kind) {
        case ObservableKind::correlator_xx:
        case ObservableKind::correlator_yy:
        case ObservableKind::correlator_zz:
        case ObservableKind::concurrence:
            return true;
        default:
            return false;
    }
}

void ObservableSpec::validate(const ModelSpec& model) const {
    if (r < 0) throw Error("separation must be non-negative");
    if (!needs_separation()) return;
    if (r < 1) throw Error(std::string(to_string(kind)) + " needs a separation r >= 1");
    const int r_max = model.boundary() == Boundary::periodic ? model.L() / 2 : model.L() - 1;
    if (r > r_max)
        throw Error("separation r=" + std::to_string(r) + " exceeds " + std::to_string(r_max) +
                    " for L=" + std::to_string(model.L()));
}

DrivingTerm driving_term(const ModelSpec& model, std::string_view name) {
    if (model.family() == Family::tfim) {
        if (name == "h") return {{ObservableKind::magnetization_z, 0}, -1.0};
    } else {
        if (name == "D") return {{ObservableKind::sz_squared, 0}, 1.0};
        if (name == "lambda") return {{ObservableKind::szsz_nn, 0}, 1.0};
    }
    throw Error("unknown coupling '" + std::string(name) + "' for model " +
                std::string(to_string(model.family())));
}

}  // namespace critx
