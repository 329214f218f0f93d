#pragma once
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

// Subcommand implementations behind the srg binary. Kept in a library so the
// test suites can drive them without spawning processes. Every command
// writes CSV (or JSON) with a .meta.json sidecar and returns a process exit
// code: 0 ok, 1 comparison failure, 2 usage/config error, 3 I/O error.

namespace srg::cli {

struct GlobalOptions {
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency
    std::string format = "csv";
};

struct SimulateOptions {
    std::uint32_t n = 1000;
    double p = 0.5;
    std::string model = "simple";    // simple | classical
    std::string sampler = "naive";   // naive | event
    std::uint64_t runs = 10;
    std::vector<double> grid;        // strictly increasing snapshot times
    bool track_cycles = false;
    bool histograms = false;
    bool rate_mode = false;
    std::string out_name = "simulate";
};

struct JamScanOptions {
    double p = 0.5;
    std::vector<std::uint64_t> n_list;
    std::uint64_t runs = 100;
    double kappa_bin_width = 0.01;
    bool track_cycles = false;  // off by default: long p = 0 runs
    bool rate_mode = false;
    std::string out_name = "jam_scan";
};

struct TheoryOptions {
    double p = 0.5;
    std::string model = "simple";
    std::vector<double> grid;
    std::string out_name = "theory";
};

struct OracleOptions {
    std::string kind = "trees";       // trees | unicycles
    std::string model = "classical";  // trees: classical|simple; unicycles: classical|simple-sub|p0|p1-super
    double p = 0.5;
    unsigned kmax = 400;
    double dt = 1e-4;
    double t_end = 0.9;
    unsigned k_check = 30;
    std::string out_name = "oracle";
};

struct CompareOptions {
    std::filesystem::path sim_csv;
    std::filesystem::path theory_csv;
    double z_threshold = 3.0;
    std::string out_name = "verdict";
};

struct FluctOptions {
    std::uint32_t n = 1000;
    double p = 0.5;
    std::string model = "simple";
    std::string sampler = "naive";
    std::uint64_t runs = 100;  // >= 100 enforced
    std::vector<double> grid;
    bool rate_mode = false;
    std::string out_name = "fluct";
};

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& opt);
int cmd_jam_scan(const GlobalOptions& g, const JamScanOptions& opt);
int cmd_theory(const GlobalOptions& g, const TheoryOptions& opt);
int cmd_oracle(const GlobalOptions& g, const OracleOptions& opt);
int cmd_compare(const GlobalOptions& g, const CompareOptions& opt);
int cmd_fluct(const GlobalOptions& g, const FluctOptions& opt);

// Writes <base>.meta.json next to the table file: command, options,
// master seed, and FNV-1a hashes of the options dump and file contents.
// No timestamps; reruns with the same seed are bit-identical.
void write_sidecar(const std::filesystem::path& table_path, const std::string& command,
                   const nlohmann::json& options, const GlobalOptions& g,
                   const std::string& table_bytes);

}  // namespace srg::cli
