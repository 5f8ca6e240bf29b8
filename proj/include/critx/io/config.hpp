#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "critx/ed.hpp"
#include "critx/error.hpp"
#include "critx/models.hpp"
#include "critx/observables.hpp"

namespace critx::io {

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Inclusive grid start, start + step, ... up to stop (a final point within 1e-9 step of
/// stop is kept). Each point is computed as start + i * step.
std::vector<double> make_grid(double start, double stop, double step);

struct SweepConfig {
    ModelSpec model = ModelSpec::tfim(2, 1.0);  ///< template; size and swept coupling are overridden
    std::string param_name = "h";
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    std::vector<int> L_list;
    ObservableSpec observable;
    Engine engine = Engine::exact;
    bool symmetry_broken = false;  ///< exact engine, entropy_1site only
    ed::LanczosOptions lanczos;
    std::filesystem::path output;

    void validate() const;
    std::vector<double> grid() const { return make_grid(start, stop, step); }

    /// Model at one sweep point.
    ModelSpec model_at(int L, double g) const;

    /// One-line description of every field that influences the values (not the output path).
    std::string canonical() const;
    std::uint64_t hash() const;
};

/// INI-style file with sections [model], [sweep] and optionally [ed]:
///
///   [model]
///   family = tfim            # or spin1_xxzd
///   boundary = periodic
///   lambda = 2.59            # fixed couplings; the swept one may be omitted
///   [sweep]
///   param = h
///   start = 0.95
///   stop = 1.05
///   step = 0.005
///   L = 20:100:10            # or a comma list
///   observable = magnetization_z
///   r = 0
///   engine = exact
///   output = tfim.csv
///   [ed]
///   tol = 1e-10
///
/// Unknown or repeated keys and malformed values are errors that carry the line number.
SweepConfig parse_config(const std::filesystem::path& path);
SweepConfig parse_config_text(std::string_view text, std::string_view source = "<config>");

std::vector<int> parse_size_list(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace critx::io
