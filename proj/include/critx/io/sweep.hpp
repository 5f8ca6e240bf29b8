#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "critx/fss.hpp"
#include "critx/io/config.hpp"
#include "critx/io/csv.hpp"

namespace critx::io {

/// Worker count from CRITX_THREADS, else the number of hardware threads (at least 1).
int worker_threads();

/// Runs `task(i)` for i in [0, n) on up to `threads` workers. Exceptions escaping a task
/// are rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task);

/// All rows of a sweep, L ascending then parameter ascending. A point whose ground
/// state does not converge is reported on `log` and stored as nan.
SeriesFile compute_sweep(const SweepConfig& config, int threads, std::ostream& log);

struct SweepOutcome {
    std::size_t rows_written = 0;
    std::size_t invalid_points = 0;
    bool cache_hit = false;
};

/// compute_sweep into config.output. An existing file carrying the same config hash is
/// left untouched; any other file at that path is replaced.
SweepOutcome run_sweep(const SweepConfig& config, std::ostream& log, int threads = worker_threads());

/// gap(g) of the ED spectrum over the union of `sectors`, on `grid`, for each size.
std::vector<fss::ObservableSeries> gap_series(const ModelSpec& model, const std::string& param,
                                                     const std::vector<double>& grid,
                                                     const std::vector<int>& sizes,
                                                     const std::vector<ed::QuantumNumbers>& sectors,
                                                     const ed::LanczosOptions& opts, int threads);

/// Sectors used for gaps when none are given: both parities for the Ising chain,
/// S^z = 0 and 1 for spin-1.
std::vector<ed::QuantumNumbers> default_gap_sectors(Family family);

}  // namespace critx::io
