#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>

#include "cera/code.hpp"
#include "cera/hypergraph.hpp"

namespace cera {

/// Everything that happened in one simulated superframe. granted is a
/// uniform random subset of valid of size min(R, |valid|); used counts
/// granted codewords chosen by at least one device; successes counts devices
/// whose codeword was both granted and chosen by no one else.
struct SuperframeOutcome {
    std::vector<std::int64_t> transmitted;  // one entry per device, draw order
    std::vector<std::int64_t> valid;        // sorted
    std::vector<std::int64_t> granted;
    std::int64_t used = 0;
    std::int64_t successes = 0;
};

/// Runs superframes against one code. The hypergraph is built once and the
/// per-frame scratch buffers are reused, so a simulator instance is cheap to
/// drive for many iterations. Instances are not thread-safe; give each
/// thread its own (the copy shares nothing mutable).
class SuperframeSimulator {
  public:
    explicit SuperframeSimulator(Code code);

    const Code& code() const { return code_; }
    const CodeHypergraph& hypergraph() const { return graph_; }

    SuperframeOutcome run(std::int64_t K, std::int64_t R, std::mt19937_64& rng);

    /// Same pipeline with the device choices fixed instead of drawn; the
    /// random stream is used only for grant allocation.
    SuperframeOutcome run_with_transmitted(std::span<const std::int64_t> transmitted,
                                           std::int64_t R, std::mt19937_64& rng);

    /// Per-frame aggregates without materializing the index lists.
    struct FrameCounts {
        std::int64_t valid = 0;
        std::int64_t granted = 0;
        std::int64_t used = 0;
        std::int64_t successes = 0;
    };

    FrameCounts run_counts(std::int64_t K, std::int64_t R, std::mt19937_64& rng);

  private:
    FrameCounts decode_and_grant(std::int64_t R, std::mt19937_64& rng);

    Code code_;
    CodeHypergraph graph_;
    std::vector<std::int32_t> multiplicity_;   // devices per codeword
    std::vector<std::int64_t> chosen_;         // distinct chosen codewords
    std::vector<std::uint8_t> detected_;       // n*q flags
    std::vector<std::uint8_t> edge_hits_;      // covered partitions per hyperedge
    std::vector<std::int64_t> valid_;          // covered hyperedges, sorted
};

SuperframeOutcome run_superframe(const Code& c, std::int64_t K, std::int64_t R,
                                 std::mt19937_64& rng);

/// One Monte Carlo estimate: sample mean, normal-approximation 95% half-width,
/// the number of superframes that entered the average, and the seed the
/// estimate is reproducible from.
struct SimEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    std::int64_t iterations = 0;
    std::uint64_t seed = 0;
};

struct SimMetrics {
    SimEstimate p_s;   // mean of successes/K
    SimEstimate e_v;   // mean of |valid|
    SimEstimate eta;   // mean of used/granted over frames with granted >= 1
};

/// Monte Carlo estimation over `iterations` superframes. Iterations are
/// split into fixed-size batches, each with its own sub-seed, and batch
/// results are merged in batch order: output is bit-identical for a given
/// (code, K, R, iterations, seed) regardless of max_threads.
/// max_threads = 0 picks the hardware concurrency. Requires K >= 1.
SimMetrics estimate(const Code& c, std::int64_t K, std::int64_t R, std::int64_t iterations,
                    std::uint64_t seed, int max_threads = 0);

enum class Scheme { optcera, multipreamble };

std::string_view scheme_name(Scheme s);

/// One evaluated grid point, analytical or simulated. Fields without a value
/// in a given method are left unset: simulated rows carry no P_N/P_A, and
/// analytical rows carry no iteration, seed, or confidence data.
struct MetricsRow {
    Scheme scheme = Scheme::optcera;
    int n = 0;
    int q = 0;
    std::int64_t M = 0;
    std::int64_t K = 0;
    std::int64_t R = 0;
    std::string method;  // "analytical" or "simulated"
    std::optional<double> p_n;
    std::optional<double> p_a;
    double p_s = 0.0;
    double e_v = 0.0;
    double eta = 0.0;
    std::optional<std::int64_t> iterations;
    std::optional<std::uint64_t> seed;
    std::optional<double> ci_p_s;
    std::optional<double> ci_e_v;
    std::optional<double> ci_eta;
};

enum class SweepMode { analytical, simulate, both };

/// Grid description: one M axis per scheme (k-range for the constructed
/// code, a-range for the baseline), a list of device loads, and the common
/// n, q, R.
struct SweepSpec {
    int n = 2;
    int q = 64;
    std::int64_t R = 100;
    bool run_optcera = true;
    int k_lo = 1;
    int k_hi = 8;
    bool run_multipreamble = true;
    int a_lo = 8;
    int a_hi = 23;
    std::vector<std::int64_t> device_counts = {50, 100, 150, 200};
    SweepMode mode = SweepMode::both;
    std::int64_t iterations = 100000;
    std::uint64_t seed = 1;
    int max_threads = 0;
};

struct SweepResult {
    std::vector<MetricsRow> rows;          // ordered by (scheme, M, K), analytical first
    std::vector<std::string> warnings;     // skipped infeasible grid cells
};

/// Evaluates the whole grid. Infeasible cells (a > q, k > q^(n-1)) are
/// skipped with a warning record. Per-point simulation seeds are derived
/// from (seed, scheme, M, K), so rerunning with the same spec reproduces
/// every row exactly.
SweepResult sweep(const SweepSpec& spec);

}  // namespace cera
