#include <cstdio>
#include <fstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "srg/errors.hpp"

// srg: simulate and analyze edge-addition random graph processes whose
// components stay trees and unicycles, alongside the classical baseline.
//
// Exit codes: 0 ok, 1 comparison FAIL, 2 usage/config error, 3 I/O error.

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw srg::io_error("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw srg::invalid_params(std::string("config parse error: ") + e.what());
    }
    if (!cfg.is_object()) throw srg::invalid_params("config root must be a JSON object");
    return cfg;
}

// config supplies values only for flags not given on the command line
template <class T>
void merge_option(const CLI::App* cmd, const std::string& flag, const json& section,
                  const std::string& key, T& value) {
    if (cmd->count(flag) > 0) return;
    if (!section.is_object() || !section.contains(key)) return;
    try {
        value = section.at(key).get<T>();
    } catch (const json::exception& e) {
        throw srg::invalid_params("config key '" + key + "': " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simple-random-graph process simulator and analytics"};
    app.require_subcommand(1);

    std::string config_path;
    srg::cli::GlobalOptions global;
    std::string out_dir = ".";
    app.add_option("--config", config_path, "JSON config file; command-line flags win");
    app.add_option("--seed", global.seed, "master seed for per-run seed derivation");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--threads", global.threads, "worker threads (0 = hardware)");
    app.add_option("--format", global.format, "table output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));

    srg::cli::SimulateOptions sim;
    auto* c_sim = app.add_subcommand("simulate", "ensemble snapshots on a time grid");
    c_sim->add_option("--n", sim.n, "number of vertices");
    c_sim->add_option("--p", sim.p, "gluing probability");
    c_sim->add_option("--model", sim.model, "simple | classical");
    c_sim->add_option("--sampler", sim.sampler, "naive | event");
    c_sim->add_option("--runs", sim.runs, "independent runs");
    c_sim->add_option("--grid", sim.grid, "snapshot times, comma separated")->delimiter(',');
    c_sim->add_flag("--track-cycles", sim.track_cycles, "record cycle lengths at birth");
    c_sim->add_flag("--histograms", sim.histograms, "emit per-size histogram files");
    c_sim->add_flag("--rate-mode", sim.rate_mode, "allow p > 1 (event sampler)");
    c_sim->add_option("--out-name", sim.out_name, "output base name");

    srg::cli::JamScanOptions jam;
    auto* c_jam = app.add_subcommand("jam-scan", "run to the jammed state across sizes");
    c_jam->add_option("--p", jam.p, "gluing probability");
    c_jam->add_option("--n-list", jam.n_list, "sizes, comma separated")->delimiter(',');
    c_jam->add_option("--runs", jam.runs, "runs per size");
    c_jam->add_option("--kappa-bin-width", jam.kappa_bin_width, "K/N histogram bin width");
    c_jam->add_flag("--track-cycles", jam.track_cycles, "record cycle lengths");
    c_jam->add_flag("--rate-mode", jam.rate_mode, "allow p > 1");
    c_jam->add_option("--out-name", jam.out_name, "output base name");

    srg::cli::TheoryOptions thy;
    auto* c_thy = app.add_subcommand("theory", "analytic predictions on a time grid");
    c_thy->add_option("--p", thy.p, "gluing probability");
    c_thy->add_option("--model", thy.model, "simple | classical");
    c_thy->add_option("--grid", thy.grid, "times, comma separated")->delimiter(',');
    c_thy->add_option("--out-name", thy.out_name, "output base name");

    srg::cli::OracleOptions orc;
    auto* c_orc = app.add_subcommand("oracle", "kinetic-hierarchy error tables");
    c_orc->add_option("--kind", orc.kind, "trees | unicycles");
    c_orc->add_option("--model", orc.model,
                      "trees: classical|simple; unicycles: classical|simple-sub|p0|p1-super");
    c_orc->add_option("--p", orc.p, "gluing probability");
    c_orc->add_option("--kmax", orc.kmax, "truncation cutoff");
    c_orc->add_option("--dt", orc.dt, "RK4 step (<= 1e-3)");
    c_orc->add_option("--t-end", orc.t_end, "integration horizon");
    c_orc->add_option("--k-check", orc.k_check, "sizes to tabulate against closed forms");
    c_orc->add_option("--out-name", orc.out_name, "output base name");

    srg::cli::CompareOptions cmp;
    auto* c_cmp = app.add_subcommand("compare", "z-scores of simulation vs theory tables");
    c_cmp->add_option("--sim", cmp.sim_csv, "simulate CSV")->required();
    c_cmp->add_option("--theory", cmp.theory_csv, "theory CSV")->required();
    c_cmp->add_option("--z-threshold", cmp.z_threshold, "|z| beyond which a cell fails");
    c_cmp->add_option("--out-name", cmp.out_name, "verdict base name");

    srg::cli::FluctOptions flc;
    auto* c_flc = app.add_subcommand("fluct", "tree-count fluctuation table");
    c_flc->add_option("--n", flc.n, "number of vertices");
    c_flc->add_option("--p", flc.p, "gluing probability");
    c_flc->add_option("--model", flc.model, "simple | classical");
    c_flc->add_option("--sampler", flc.sampler, "naive | event");
    c_flc->add_option("--runs", flc.runs, "independent runs (>= 100)");
    c_flc->add_option("--grid", flc.grid, "times, comma separated")->delimiter(',');
    c_flc->add_flag("--rate-mode", flc.rate_mode, "allow p > 1");
    c_flc->add_option("--out-name", flc.out_name, "output base name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const json cfg = load_config(config_path);
        if (app.count("--seed") == 0 && cfg.contains("seed")) global.seed = cfg.at("seed");
        if (app.count("--out-dir") == 0 && cfg.contains("out_dir"))
            out_dir = cfg.at("out_dir").get<std::string>();
        if (app.count("--threads") == 0 && cfg.contains("threads")) global.threads = cfg.at("threads");
        if (app.count("--format") == 0 && cfg.contains("format"))
            global.format = cfg.at("format").get<std::string>();
        global.out_dir = out_dir;

        if (c_sim->parsed()) {
            const json s = cfg.value("simulate", json::object());
            merge_option(c_sim, "--n", s, "n", sim.n);
            merge_option(c_sim, "--p", s, "p", sim.p);
            merge_option(c_sim, "--model", s, "model", sim.model);
            merge_option(c_sim, "--sampler", s, "sampler", sim.sampler);
            merge_option(c_sim, "--runs", s, "runs", sim.runs);
            merge_option(c_sim, "--grid", s, "grid", sim.grid);
            merge_option(c_sim, "--track-cycles", s, "track_cycles", sim.track_cycles);
            merge_option(c_sim, "--histograms", s, "histograms", sim.histograms);
            merge_option(c_sim, "--rate-mode", s, "rate_mode", sim.rate_mode);
            merge_option(c_sim, "--out-name", s, "out_name", sim.out_name);
            return srg::cli::cmd_simulate(global, sim);
        }
        if (c_jam->parsed()) {
            const json s = cfg.value("jam_scan", json::object());
            merge_option(c_jam, "--p", s, "p", jam.p);
            merge_option(c_jam, "--n-list", s, "n_list", jam.n_list);
            merge_option(c_jam, "--runs", s, "runs", jam.runs);
            merge_option(c_jam, "--kappa-bin-width", s, "kappa_bin_width", jam.kappa_bin_width);
            merge_option(c_jam, "--track-cycles", s, "track_cycles", jam.track_cycles);
            merge_option(c_jam, "--rate-mode", s, "rate_mode", jam.rate_mode);
            merge_option(c_jam, "--out-name", s, "out_name", jam.out_name);
            return srg::cli::cmd_jam_scan(global, jam);
        }
        if (c_thy->parsed()) {
            const json s = cfg.value("theory", json::object());
            merge_option(c_thy, "--p", s, "p", thy.p);
            merge_option(c_thy, "--model", s, "model", thy.model);
            merge_option(c_thy, "--grid", s, "grid", thy.grid);
            merge_option(c_thy, "--out-name", s, "out_name", thy.out_name);
            return srg::cli::cmd_theory(global, thy);
        }
        if (c_orc->parsed()) {
            const json s = cfg.value("oracle", json::object());
            merge_option(c_orc, "--kind", s, "kind", orc.kind);
            merge_option(c_orc, "--model", s, "model", orc.model);
            merge_option(c_orc, "--p", s, "p", orc.p);
            merge_option(c_orc, "--kmax", s, "kmax", orc.kmax);
            merge_option(c_orc, "--dt", s, "dt", orc.dt);
            merge_option(c_orc, "--t-end", s, "t_end", orc.t_end);
            merge_option(c_orc, "--k-check", s, "k_check", orc.k_check);
            merge_option(c_orc, "--out-name", s, "out_name", orc.out_name);
            return srg::cli::cmd_oracle(global, orc);
        }
        if (c_cmp->parsed()) {
            const json s = cfg.value("compare", json::object());
            merge_option(c_cmp, "--z-threshold", s, "z_threshold", cmp.z_threshold);
            merge_option(c_cmp, "--out-name", s, "out_name", cmp.out_name);
            return srg::cli::cmd_compare(global, cmp);
        }
        if (c_flc->parsed()) {
            const json s = cfg.value("fluct", json::object());
            merge_option(c_flc, "--n", s, "n", flc.n);
            merge_option(c_flc, "--p", s, "p", flc.p);
            merge_option(c_flc, "--model", s, "model", flc.model);
            merge_option(c_flc, "--sampler", s, "sampler", flc.sampler);
            merge_option(c_flc, "--runs", s, "runs", flc.runs);
            merge_option(c_flc, "--grid", s, "grid", flc.grid);
            merge_option(c_flc, "--rate-mode", s, "rate_mode", flc.rate_mode);
            merge_option(c_flc, "--out-name", s, "out_name", flc.out_name);
            return srg::cli::cmd_fluct(global, flc);
        }
    } catch (const srg::io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const srg::invalid_params& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const srg::schema_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const srg::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
