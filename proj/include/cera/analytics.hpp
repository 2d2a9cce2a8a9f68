#pragma once

#include <cstdint>

#include "cera/code.hpp"

namespace cera {

/// One evaluated operating point: K contending devices (as perceived by the
/// base station), R uplink resources per superframe, and the scheme's code
/// dimensioning. p = 1/M is the per-codeword selection probability.
struct ScenarioParams {
    std::int64_t K = 0;
    std::int64_t R = 1;
    CodeParams code;

    double selection_probability() const { return 1.0 / static_cast<double>(code.M); }
};

/// B(m; K, p) = C(K,m) p^m (1-p)^(K-m).
double binom_pmf(std::int64_t m, std::int64_t K, double p);

/// N_C: expected number of codewords chosen by at least one of K devices,
/// M [1 - (1-1/M)^K].
double expected_selected(std::int64_t K, std::int64_t M);

/// N_S: expected number of codewords chosen by exactly one device,
/// K (1-1/M)^(K-1).
double expected_singleton(std::int64_t K, std::int64_t M);

/// P_N = N_S / K = (1-1/M)^(K-1), the probability that a given device's
/// codeword is non-collided. Requires K >= 1.
double prob_non_collision(std::int64_t K, std::int64_t M);

/// Closed-form E[V] for block length 2 and uniform symbol usage (every used
/// preamble appears in M/r codewords per coordinate):
///   M [1 - 2(1 - 1/r)^K + (1 - 2/r + 1/M)^K].
/// Requires r | M and M <= r^2.
double expected_valid_n2(std::int64_t K, std::int64_t M, std::int64_t r);

/// Overload that checks the uniformity precondition against an actual code.
double expected_valid_n2(const Code& c, std::int64_t K);

/// E[V] for any code and block length, by inclusion-exclusion over coordinate
/// subsets with overlap counts taken from the code itself. Setup cost is
/// O(M^2 2^n); refuses instances with M^2 2^n > 10^9.
class ExactValidEvaluator {
  public:
    explicit ExactValidEvaluator(const Code& c);

    double operator()(std::int64_t K) const;  // O(M 2^n) per call

  private:
    std::int64_t code_size_ = 0;
    int coords_ = 0;
    // miss_counts_[t][S]: number of codewords sharing no coordinate value
    // with codeword t on the coordinate subset S (bitmask). A single device
    // leaves hyperedge t uncovered on all of S with probability
    // miss_counts_[t][S] / M.
    std::vector<std::vector<std::int64_t>> miss_counts_;
};

double expected_valid_exact(const Code& c, std::int64_t K);

/// P_A: fraction of inferred valid codewords that can be granted,
/// R/E[V] when E[V] exceeds R, 1 otherwise.
double alloc_probability(double expected_valid, std::int64_t R);

/// P_S = P_N * P_A with P_A taken at the analytical E[V] (block length 2).
double success_probability(std::int64_t K, std::int64_t M, std::int64_t r, std::int64_t R);

/// E[eta] ~= E[C]/E[V] = N_C / E[V]: the expected fraction of issued grants
/// that some device actually uses (block length 2). Requires K >= 1.
double grant_utilization(std::int64_t K, std::int64_t M, std::int64_t r);

/// Full analytical row for one (K, M, r, R) operating point, block length 2.
struct AnalyticalMetrics {
    double n_c = 0;
    double n_s = 0;
    double p_n = 0;
    double e_v = 0;
    double p_a = 0;
    double p_s = 0;
    double eta = 0;
};

AnalyticalMetrics analyze_n2(std::int64_t K, std::int64_t M, std::int64_t r, std::int64_t R);

}  // namespace cera
