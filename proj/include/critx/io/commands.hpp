#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "critx/ed.hpp"
#include "critx/fss.hpp"
#include "critx/io/plot.hpp"
#include "critx/models.hpp"
#include "critx/observables.hpp"

// Each command writes its report to `out`, diagnostics to `err`, and returns the process
// exit code: 0 on success, 1 when any error was surfaced.
namespace critx::io {

fss::Bracket parse_bracket(std::string_view text);

struct ParamRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
};

/// "start,stop,step"
ParamRange parse_range(std::string_view text);

/// "even,odd" or "+1,-1" for parities, "sz=0,sz=1" for magnetization sectors.
std::vector<ed::QuantumNumbers> parse_sectors(std::string_view text);

int cmd_sweep(const std::filesystem::path& config, const std::optional<std::filesystem::path>& output,
              std::ostream& out, std::ostream& err);

struct CrossOptions {
    std::filesystem::path input;
    fss::Bracket bracket;
    bool extrapolate = false;
};

/// Crossings of consecutive sizes; with `extrapolate`, the power-law fit of g*.
/// The report ends with a key=value block between "begin cross" and "end cross".
int cmd_cross(const CrossOptions& opts, std::ostream& out, std::ostream& err);

enum class ExponentMode { log, power };

struct ExponentOptions {
    std::filesystem::path input;
    double g_c = 0.0;
    ExponentMode mode = ExponentMode::log;
};

int cmd_exponent(const ExponentOptions& opts, std::ostream& out, std::ostream& err);

struct PrgOptions {
    ModelSpec model = ModelSpec::tfim(2, 1.0);
    std::string param = "h";
    ParamRange range;
    std::vector<int> sizes;
    std::vector<ed::QuantumNumbers> sectors;
    fss::Bracket bracket;
    ed::LanczosOptions lanczos;
};

/// Crossings of L * gap for consecutive sizes.
int cmd_prg(const PrgOptions& opts, std::ostream& out, std::ostream& err);

struct PlotOptions {
    std::filesystem::path input;
    PlotStyle style = PlotStyle::generic;
    std::filesystem::path output;
};

int cmd_plot(const PlotOptions& opts, std::ostream& out, std::ostream& err);

enum class EntangleMeasure { entropy1, concurrence };

struct EntangleOptions {
    ModelSpec model = ModelSpec::tfim(2, 1.0);
    std::string param = "h";
    ParamRange range;
    EntangleMeasure measure = EntangleMeasure::entropy1;
    int r = 1;
    std::optional<Engine> engine;  ///< exact for the periodic Ising chain, else ed
    bool symmetry_broken = false;
    std::optional<std::filesystem::path> output;  ///< CSV of the scan
    bool bits = false;  ///< report entropies in bits; the CSV stays in nats
};

/// Scan of one-site entropy or concurrence C(r) versus the parameter: table, position of
/// the maximum and of the steepest slope.
int cmd_entangle(const EntangleOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace critx::io
