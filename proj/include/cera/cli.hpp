#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "cera/simulator.hpp"

namespace cera {

/// A full experiment description as assembled from flags and the optional
/// key=value config file. Defaults are the evaluation configuration:
/// q = 64, n = 2, R = 100, both schemes, K in {50,100,150,200}.
struct ExperimentConfig {
    SweepSpec spec;
    std::string out_path;      // empty writes the CSV to stdout
    std::string gnuplot_path;  // empty disables the companion data file
};

/// Prints the construction listing: one line per codeword index t with its
/// base-q digit tuple and the mapped codeword, tab-separated.
void cmd_code_table(std::ostream& out, int n, int q, int k);

/// Builds the scheme's code, observes the given transmitted codeword
/// indices, decodes, and reports the detected sets and inferred codewords.
void cmd_decode_demo(std::ostream& out, Scheme scheme, int n, int q, int factor,
                     std::span<const std::int64_t> transmitted);

/// Runs the grid and writes the CSV (and optional gnuplot blocks). The CSV
/// goes to `out` when no output path is set; warnings about skipped cells go
/// to `diagnostics`.
void cmd_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& diagnostics);

void write_csv(std::ostream& out, std::span<const MetricsRow> rows);

/// One data block per K value, blocks separated by two blank lines so
/// gnuplot's `index` selects a load level.
void write_gnuplot(std::ostream& out, std::span<const MetricsRow> rows);

/// Whole command-line front end; returns the process exit code
/// (0 success, 2 usage error, 1 runtime error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cera
