// critx: sweeps, crossing analyses, PRG, entanglement scans and SVG plots.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "critx/io/commands.hpp"
#include "critx/io/config.hpp"
#include "critx/io/csv.hpp"

using namespace critx;

namespace {

struct ModelArgs {
    std::string family = "tfim";
    std::string boundary = "periodic";
    std::vector<std::string> couplings;  // name=value
    std::string param = "h";

    void add_to(CLI::App* app) {
        app->add_option("--model", family, "tfim or spin1_xxzd")->required();
        app->add_option("--boundary", boundary, "periodic or open");
        app->add_option("--set", couplings, "fixed coupling, e.g. --set lambda=2.59 (repeatable)");
        app->add_option("--param", param, "swept coupling")->required();
    }

    // The swept coupling starts at `g0`; every other coupling must come from --set.
    ModelSpec build(int L, double g0) const {
        const Family f = parse_family(family);
        std::map<std::string, double> c;
        for (const auto& kv : couplings) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error("--set expects name=value, got '" + kv + "'");
            c[kv.substr(0, eq)] = io::parse_number(kv.substr(eq + 1));
        }
        c[param] = g0;
        return ModelSpec(f, L, parse_boundary(boundary), c);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"critx: finite-size analysis of quantum critical chains"};
    app.require_subcommand(1);
    int status = 0;

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep described by a config file");
    std::string sweep_config;
    std::string sweep_out;
    sweep->add_option("--config", sweep_config, "INI config file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_out, "override the output path of the config");
    sweep->callback([&] {
        std::optional<std::filesystem::path> out;
        if (!sweep_out.empty()) out = sweep_out;
        status = io::cmd_sweep(sweep_config, out, std::cout, std::cerr);
    });

    // cross
    auto* cross = app.add_subcommand("cross", "crossings of consecutive-size curves");
    io::CrossOptions cross_opts;
    std::string cross_input, cross_bracket;
    cross->add_option("--input", cross_input, "sweep CSV")->required()->check(CLI::ExistingFile);
    cross->add_option("--bracket", cross_bracket, "lo,hi")->required();
    cross->add_flag("--extrapolate", cross_opts.extrapolate, "fit g* = g_c + a L^-omega");
    cross->callback([&] {
        cross_opts.input = cross_input;
        try {
            cross_opts.bracket = io::parse_bracket(cross_bracket);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            status = 1;
            return;
        }
        status = io::cmd_cross(cross_opts, std::cout, std::cerr);
    });

    // exponent
    auto* exponent = app.add_subcommand("exponent", "size scaling of the slope at g_c");
    io::ExponentOptions exp_opts;
    std::string exp_input;
    std::string exp_mode = "log";
    exponent->add_option("--input", exp_input, "sweep CSV")->required()->check(CLI::ExistingFile);
    exponent->add_option("--gc", exp_opts.g_c, "critical coupling")->required();
    exponent->add_option("--mode", exp_mode, "log or power")->check(CLI::IsMember({"log", "power"}));
    exponent->callback([&] {
        exp_opts.input = exp_input;
        exp_opts.mode = exp_mode == "log" ? io::ExponentMode::log : io::ExponentMode::power;
        status = io::cmd_exponent(exp_opts, std::cout, std::cerr);
    });

    // prg
    auto* prg = app.add_subcommand("prg", "crossings of scaled gaps L * gap (ED)");
    ModelArgs prg_model;
    prg_model.add_to(prg);
    std::string prg_sizes, prg_range, prg_bracket, prg_sectors;
    prg->add_option("--L", prg_sizes, "sizes, e.g. 4,6,8 or 4:12:2")->required();
    prg->add_option("--range", prg_range, "start,stop,step")->required();
    prg->add_option("--bracket", prg_bracket, "lo,hi")->required();
    prg->add_option("--sectors", prg_sectors, "even,odd or sz=0,sz=1 (default depends on the model)");
    prg->callback([&] {
        try {
            io::PrgOptions o;
            o.sizes = io::parse_size_list(prg_sizes);
            o.range = io::parse_range(prg_range);
            o.bracket = io::parse_bracket(prg_bracket);
            o.param = prg_model.param;
            o.model = prg_model.build(o.sizes.front(), o.range.start);
            if (!prg_sectors.empty()) o.sectors = io::parse_sectors(prg_sectors);
            status = io::cmd_prg(o, std::cout, std::cerr);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            status = 1;
        }
    });

    // plot
    auto* plot = app.add_subcommand("plot", "SVG of a sweep");
    std::string plot_input, plot_style = "generic", plot_out;
    plot->add_option("--input", plot_input, "sweep CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--style", plot_style, "fig1, fig2 or generic")
        ->check(CLI::IsMember({"fig1", "fig2", "generic"}));
    plot->add_option("--out", plot_out, "SVG path")->required();
    plot->callback([&] {
        status = io::cmd_plot({plot_input, io::parse_plot_style(plot_style), plot_out}, std::cout, std::cerr);
    });

    // entangle
    auto* entangle = app.add_subcommand("entangle", "one-site entropy or concurrence versus the coupling");
    ModelArgs ent_model;
    ent_model.add_to(entangle);
    int ent_L = 0;
    std::string ent_range, ent_measure = "entropy1", ent_engine, ent_out;
    int ent_r = 1;
    bool ent_broken = false, ent_bits = false;
    entangle->add_option("--L", ent_L, "chain length")->required();
    entangle->add_option("--range", ent_range, "start,stop,step")->required();
    entangle->add_option("--measure", ent_measure, "entropy1 or concurrence")
        ->check(CLI::IsMember({"entropy1", "concurrence"}));
    entangle->add_option("--r", ent_r, "separation for concurrence");
    entangle->add_option("--engine", ent_engine, "exact or ed")->check(CLI::IsMember({"exact", "ed"}));
    entangle->add_flag("--broken", ent_broken, "Ising entropy on the symmetry-broken branch");
    entangle->add_option("--out", ent_out, "also write the scan as CSV");
    entangle->add_flag("--bits", ent_bits, "print entropies in bits (the CSV stays in nats)");
    entangle->callback([&] {
        try {
            io::EntangleOptions o;
            o.range = io::parse_range(ent_range);
            o.param = ent_model.param;
            o.model = ent_model.build(ent_L, o.range.start);
            o.measure = ent_measure == "entropy1" ? io::EntangleMeasure::entropy1 : io::EntangleMeasure::concurrence;
            o.r = ent_r;
            if (!ent_engine.empty()) o.engine = parse_engine(ent_engine);
            o.symmetry_broken = ent_broken;
            if (!ent_out.empty()) o.output = ent_out;
            o.bits = ent_bits;
            status = io::cmd_entangle(o, std::cout, std::cerr);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            status = 1;
        }
    });

    CLI11_PARSE(app, argc, argv);
    return status;
}
