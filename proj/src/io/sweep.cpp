#include "critx/io/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace critx::io {

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

int worker_threads() {
    if (const char* env = std::getenv("CRITX_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
        throw Error("CRITX_THREADS must be an integer between 1 and 1024");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& task) {
    const auto workers = static_cast<std::size_t>(std::clamp<long long>(threads, 1, static_cast<long long>(std::max<std::size_t>(n, 1))));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
            }
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    }
    if (error) std::rethrow_exception(error);
}

SeriesFile compute_sweep(const SweepConfig& config, int threads, std::ostream& log) {
    config.validate();
    const auto grid = config.grid();
    const std::size_t n_g = grid.size();

    SeriesFile file;
    file.meta = {{"config_hash", hex64(config.hash())}, {"config", config.canonical()}};
    file.rows.resize(config.L_list.size() * n_g);

    std::mutex log_mutex;
    for (std::size_t li = 0; li < config.L_list.size(); ++li) {
        const int L = config.L_list[li];
        std::unique_ptr<ed::SectorBasis> basis;
        if (config.engine == Engine::ed) {
            const auto m = config.model_at(L, grid.front());
            basis = std::make_unique<ed::SectorBasis>(m, ed::ground_sector(m));
        }
        parallel_for(n_g, threads, [&](std::size_t gi) {
            const double g = grid[gi];
            const ModelSpec model = config.model_at(L, g);
            double value = std::numeric_limits<double>::quiet_NaN();
            if (config.engine == Engine::exact) {
                value = measure_exact(model, config.observable, config.symmetry_broken);
            } else {
                ed::LanczosOptions opts = config.lanczos;
                opts.threads = 1;
                try {
                    const auto gs = ed::lanczos_lowest(model, *basis, opts);
                    value = measure_ground_state(*basis, gs, config.observable);
                } catch (const ConvergenceError& e) {
                    std::lock_guard lock(log_mutex);
                    log << "warning: L=" << L << " " << config.param_name << "=" << format_number(g)
                        << ": " << e.what() << " (best residual " << e.best_residual()
                        << "); point marked invalid\n";
                }
            }
            auto& row = file.rows[li * n_g + gi];
            row.family = std::string(to_string(config.model.family()));
            row.L = L;
            row.param = config.param_name;
            row.param_value = g;
            row.observable = std::string(to_string(config.observable.kind));
            row.r = config.observable.r;
            row.value = value;
        });
    }
    return file;
}

SweepOutcome run_sweep(const SweepConfig& config, std::ostream& log, int threads) {
    if (config.output.empty()) throw Error("sweep has no output path");
    config.validate();
    SweepOutcome out;
    if (std::filesystem::exists(config.output)) {
        try {
            const auto existing = read_series_file(config.output);
            const auto* h = existing.find_meta("config_hash");
            if (h && *h == hex64(config.hash())) {
                out.cache_hit = true;
                for (const auto& r : existing.rows)
                    if (std::isnan(r.value)) ++out.invalid_points;
                return out;
            }
        } catch (const Error&) {
            // unreadable or foreign file: recompute and replace
        }
        log << "note: replacing " << config.output.string() << " (different configuration)\n";
    }
    const auto file = compute_sweep(config, threads, log);
    std::ostringstream os;
    write_series(os, file);
    write_file_atomic(config.output, os.str());
    out.rows_written = file.rows.size();
    for (const auto& r : file.rows)
        if (std::isnan(r.value)) ++out.invalid_points;
    return out;
}

std::vector<ed::QuantumNumbers> default_gap_sectors(Family family) {
    if (family == Family::tfim) return {ed::QuantumNumbers::ising_parity(1), ed::QuantumNumbers::ising_parity(-1)};
    return {ed::QuantumNumbers::magnetization(0), ed::QuantumNumbers::magnetization(1)};
}

std::vector<fss::ObservableSeries> gap_series(const ModelSpec& model, const std::string& param,
                                                     const std::vector<double>& grid,
                                                     const std::vector<int>& sizes,
                                                     const std::vector<ed::QuantumNumbers>& sectors,
                                                     const ed::LanczosOptions& opts, int threads) {
    DrivingParameter{param, grid.empty() ? 0.0 : grid.front()}.validate(model);
    if (sectors.empty()) throw Error("no sectors given for the gap");
    std::vector<fss::ObservableSeries> out;
    for (int L : sizes) {
        fss::ObservableSeries s;
        s.model_tag = std::string(to_string(model.family()));
        s.L = L;
        s.param_name = param;
        s.grid = grid;
        s.values.assign(grid.size(), 0.0);
        ed::LanczosOptions o = opts;
        o.threads = 1;
        parallel_for(grid.size(), threads, [&](std::size_t i) {
            const auto m = model.with_size(L).with_coupling(param, grid[i]);
            s.values[i] = ed::gap(m, sectors, o);
        });
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace critx::io
