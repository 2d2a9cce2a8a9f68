#include "cera/analytics.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace cera {

double binom_pmf(std::int64_t m, std::int64_t K, double p) {
    if (K < 0 || m < 0 || m > K) throw std::invalid_argument("binom_pmf: need 0 <= m <= K");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binom_pmf: need 0 <= p <= 1");
    if (p == 0.0) return m == 0 ? 1.0 : 0.0;
    if (p == 1.0) return m == K ? 1.0 : 0.0;
    // Log-domain evaluation in extended precision keeps the pmf accurate for
    // large K, where the direct product under- or overflows.
    const long double lp = std::log(static_cast<long double>(p));
    const long double l1p = std::log1p(static_cast<long double>(-p));
    const long double lchoose = std::lgammal(static_cast<long double>(K) + 1) -
                                std::lgammal(static_cast<long double>(m) + 1) -
                                std::lgammal(static_cast<long double>(K - m) + 1);
    return static_cast<double>(
        std::exp(lchoose + static_cast<long double>(m) * lp +
                 static_cast<long double>(K - m) * l1p));
}

namespace {

// (1 - p)^K without catastrophic loss for small p and large K.
double pow_one_minus(double p, std::int64_t K) {
    if (K == 0) return 1.0;
    if (p >= 1.0) return 0.0;
    return std::exp(static_cast<double>(K) * std::log1p(-p));
}

}  // namespace

double expected_selected(std::int64_t K, std::int64_t M) {
    if (M < 1 || K < 0) throw std::invalid_argument("expected_selected: need M >= 1, K >= 0");
    return static_cast<double>(M) * (1.0 - pow_one_minus(1.0 / static_cast<double>(M), K));
}

double expected_singleton(std::int64_t K, std::int64_t M) {
    if (M < 1 || K < 0) throw std::invalid_argument("expected_singleton: need M >= 1, K >= 0");
    if (K == 0) return 0.0;
    return static_cast<double>(K) * pow_one_minus(1.0 / static_cast<double>(M), K - 1);
}

double prob_non_collision(std::int64_t K, std::int64_t M) {
    if (M < 1) throw std::invalid_argument("prob_non_collision: need M >= 1");
    if (K < 1)
        throw std::invalid_argument("prob_non_collision: undefined without a contending device");
    return pow_one_minus(1.0 / static_cast<double>(M), K - 1);
}

double expected_valid_n2(std::int64_t K, std::int64_t M, std::int64_t r) {
    if (M < 1 || r < 1 || K < 0)
        throw std::invalid_argument("expected_valid_n2: need M >= 1, r >= 1, K >= 0");
    if (M % r != 0) throw std::invalid_argument("expected_valid_n2: r must divide M");
    if (M > r * r) throw std::invalid_argument("expected_valid_n2: M exceeds r^2");
    const double m = static_cast<double>(M);
    const double rr = static_cast<double>(r);
    const double single = pow_one_minus(1.0 / rr, K);            // coordinate missed
    const double both = pow_one_minus(2.0 / rr - 1.0 / m, K);    // both coordinates missed
    return m * (1.0 - 2.0 * single + both);
}

double expected_valid_n2(const Code& c, std::int64_t K) {
    if (c.params.n != 2)
        throw std::invalid_argument("expected_valid_n2: closed form holds for n = 2 only");
    if (c.params.M % c.params.r != 0)
        throw std::invalid_argument("expected_valid_n2: r must divide M");
    const std::int64_t per_symbol = c.params.M / c.params.r;
    for (const auto& row : c.symbol_counts)
        for (std::size_t j = 0; j < row.size(); ++j) {
            const std::int64_t want = j < static_cast<std::size_t>(c.params.r) ? per_symbol : 0;
            if (row[j] != want)
                throw std::invalid_argument(
                    "expected_valid_n2: code symbol distribution is not uniform");
        }
    return expected_valid_n2(K, c.params.M, c.params.r);
}

ExactValidEvaluator::ExactValidEvaluator(const Code& c)
    : code_size_(c.params.M), coords_(c.params.n) {
    const std::int64_t subsets = std::int64_t{1} << coords_;
    if (static_cast<double>(code_size_) * static_cast<double>(code_size_) *
            static_cast<double>(subsets) >
        1e9)
        throw capacity_error("ExactValidEvaluator: M^2 2^n exceeds 1e9");

    miss_counts_.assign(static_cast<std::size_t>(code_size_),
                        std::vector<std::int64_t>(static_cast<std::size_t>(subsets), 0));
    std::vector<std::int64_t> mask_histogram(static_cast<std::size_t>(subsets));
    for (std::int64_t t = 0; t < code_size_; ++t) {
        const Codeword& ref = c.words[static_cast<std::size_t>(t)];
        std::fill(mask_histogram.begin(), mask_histogram.end(), 0);
        for (const Codeword& other : c.words) {
            unsigned match = 0;
            for (int i = 0; i < coords_; ++i)
                if (other.coords[static_cast<std::size_t>(i)] ==
                    ref.coords[static_cast<std::size_t>(i)])
                    match |= 1u << i;
            ++mask_histogram[match];
        }
        // A codeword misses t on subset S iff its match mask avoids S, so sum
        // the histogram over submasks of the complement of S.
        auto& row = miss_counts_[static_cast<std::size_t>(t)];
        for (std::int64_t s = 0; s < subsets; ++s) {
            const std::int64_t comp = (subsets - 1) & ~s;
            std::int64_t total = 0;
            for (std::int64_t sub = comp;; sub = (sub - 1) & comp) {
                total += mask_histogram[static_cast<std::size_t>(sub)];
                if (sub == 0) break;
            }
            row[static_cast<std::size_t>(s)] = total;
        }
    }
}

double ExactValidEvaluator::operator()(std::int64_t K) const {
    if (K < 0) throw std::invalid_argument("ExactValidEvaluator: need K >= 0");
    const std::int64_t subsets = std::int64_t{1} << coords_;
    const double m = static_cast<double>(code_size_);
    double expected = 0.0;
    for (const auto& row : miss_counts_) {
        double uncovered = 0.0;  // P(edge t not fully covered), by inclusion-exclusion
        for (std::int64_t s = 1; s < subsets; ++s) {
            const double term =
                std::pow(static_cast<double>(row[static_cast<std::size_t>(s)]) / m,
                         static_cast<double>(K));
            uncovered += (std::popcount(static_cast<std::uint64_t>(s)) % 2 == 1) ? term : -term;
        }
        expected += 1.0 - uncovered;
    }
    return expected;
}

double expected_valid_exact(const Code& c, std::int64_t K) {
    return ExactValidEvaluator(c)(K);
}

double alloc_probability(double expected_valid, std::int64_t R) {
    if (expected_valid < 0.0) throw std::invalid_argument("alloc_probability: need E[V] >= 0");
    if (R < 1) throw std::invalid_argument("alloc_probability: need R >= 1");
    const double r = static_cast<double>(R);
    return expected_valid > r ? r / expected_valid : 1.0;
}

double success_probability(std::int64_t K, std::int64_t M, std::int64_t r, std::int64_t R) {
    return prob_non_collision(K, M) * alloc_probability(expected_valid_n2(K, M, r), R);
}

double grant_utilization(std::int64_t K, std::int64_t M, std::int64_t r) {
    if (K < 1) throw std::invalid_argument("grant_utilization: need K >= 1");
    return expected_selected(K, M) / expected_valid_n2(K, M, r);
}

AnalyticalMetrics analyze_n2(std::int64_t K, std::int64_t M, std::int64_t r, std::int64_t R) {
    AnalyticalMetrics out;
    out.n_c = expected_selected(K, M);
    out.n_s = expected_singleton(K, M);
    out.p_n = prob_non_collision(K, M);
    out.e_v = expected_valid_n2(K, M, r);
    out.p_a = alloc_probability(out.e_v, R);
    out.p_s = out.p_n * out.p_a;
    out.eta = out.n_c / out.e_v;
    assert(out.n_c <= out.e_v * (1.0 + 1e-12));
    return out;
}

}  // namespace cera
