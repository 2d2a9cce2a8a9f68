#include "cera/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

#include "cera/analytics.hpp"
#include "cera/optcera.hpp"
#include "cera/rng.hpp"

namespace cera {

SuperframeSimulator::SuperframeSimulator(Code code)
    : code_(std::move(code)), graph_(build_hypergraph(code_)) {
    const auto m = static_cast<std::size_t>(code_.params.M);
    multiplicity_.assign(m, 0);
    detected_.assign(static_cast<std::size_t>(code_.params.n) *
                         static_cast<std::size_t>(code_.params.q),
                     0);
    edge_hits_.assign(m, 0);
    chosen_.reserve(m);
    valid_.reserve(m);
}

SuperframeSimulator::FrameCounts SuperframeSimulator::decode_and_grant(std::int64_t R,
                                                                       std::mt19937_64& rng) {
    const int n = code_.params.n;
    const int q = code_.params.q;

    // Mark detected preambles from the distinct chosen codewords.
    for (std::int64_t t : chosen_) {
        const Codeword& w = code_.words[static_cast<std::size_t>(t)];
        for (int i = 0; i < n; ++i)
            detected_[static_cast<std::size_t>(i) * static_cast<std::size_t>(q) +
                      w.coords[static_cast<std::size_t>(i)]] = 1;
    }

    // Induced-subhypergraph decode via incidence counting.
    std::fill(edge_hits_.begin(), edge_hits_.end(), 0);
    for (int i = 0; i < n; ++i) {
        const auto& partition = graph_.incidence[static_cast<std::size_t>(i)];
        const std::size_t base = static_cast<std::size_t>(i) * static_cast<std::size_t>(q);
        for (int j = 0; j < code_.params.r; ++j) {
            if (!detected_[base + static_cast<std::size_t>(j)]) continue;
            for (std::int64_t t : partition[static_cast<std::size_t>(j)])
                ++edge_hits_[static_cast<std::size_t>(t)];
        }
    }
    valid_.clear();
    for (std::int64_t t = 0; t < code_.params.M; ++t)
        if (edge_hits_[static_cast<std::size_t>(t)] == n) valid_.push_back(t);

    FrameCounts out;
    out.valid = static_cast<std::int64_t>(valid_.size());
    out.granted = std::min<std::int64_t>(R, out.valid);

    // Uniform random subset of the valid list by partial Fisher-Yates; the
    // granted entries end up in the first `granted` slots.
    for (std::int64_t g = 0; g < out.granted; ++g) {
        const std::int64_t pick =
            g + static_cast<std::int64_t>(
                    uniform_below(rng, static_cast<std::uint64_t>(out.valid - g)));
        std::swap(valid_[static_cast<std::size_t>(g)], valid_[static_cast<std::size_t>(pick)]);
        const std::int32_t mult = multiplicity_[static_cast<std::size_t>(
            valid_[static_cast<std::size_t>(g)])];
        if (mult > 0) ++out.used;
        if (mult == 1) ++out.successes;
    }
    return out;
}

SuperframeSimulator::FrameCounts SuperframeSimulator::run_counts(std::int64_t K, std::int64_t R,
                                                                 std::mt19937_64& rng) {
    if (K < 0 || R < 1) throw std::invalid_argument("run_counts: need K >= 0, R >= 1");

    // Reset only what the previous frame touched.
    for (std::int64_t t : chosen_) multiplicity_[static_cast<std::size_t>(t)] = 0;
    std::fill(detected_.begin(), detected_.end(), 0);
    chosen_.clear();

    for (std::int64_t d = 0; d < K; ++d) {
        const auto t = static_cast<std::int64_t>(
            uniform_below(rng, static_cast<std::uint64_t>(code_.params.M)));
        if (multiplicity_[static_cast<std::size_t>(t)]++ == 0) chosen_.push_back(t);
    }
    return decode_and_grant(R, rng);
}

SuperframeOutcome SuperframeSimulator::run(std::int64_t K, std::int64_t R,
                                           std::mt19937_64& rng) {
    if (K < 0 || R < 1) throw std::invalid_argument("run: need K >= 0, R >= 1");

    for (std::int64_t t : chosen_) multiplicity_[static_cast<std::size_t>(t)] = 0;
    std::fill(detected_.begin(), detected_.end(), 0);
    chosen_.clear();

    SuperframeOutcome out;
    out.transmitted.reserve(static_cast<std::size_t>(K));
    for (std::int64_t d = 0; d < K; ++d) {
        const auto t = static_cast<std::int64_t>(
            uniform_below(rng, static_cast<std::uint64_t>(code_.params.M)));
        out.transmitted.push_back(t);
        if (multiplicity_[static_cast<std::size_t>(t)]++ == 0) chosen_.push_back(t);
    }
    const FrameCounts counts = decode_and_grant(R, rng);

    out.granted.assign(valid_.begin(), valid_.begin() + counts.granted);
    std::sort(out.granted.begin(), out.granted.end());
    out.valid = valid_;
    std::sort(out.valid.begin(), out.valid.end());
    out.used = counts.used;
    out.successes = counts.successes;
    return out;
}

SuperframeOutcome SuperframeSimulator::run_with_transmitted(
    std::span<const std::int64_t> transmitted, std::int64_t R, std::mt19937_64& rng) {
    if (R < 1) throw std::invalid_argument("run_with_transmitted: need R >= 1");

    for (std::int64_t t : chosen_) multiplicity_[static_cast<std::size_t>(t)] = 0;
    std::fill(detected_.begin(), detected_.end(), 0);
    chosen_.clear();

    SuperframeOutcome out;
    for (std::int64_t t : transmitted) {
        if (t < 0 || t >= code_.params.M)
            throw std::invalid_argument("run_with_transmitted: codeword index out of range");
        out.transmitted.push_back(t);
        if (multiplicity_[static_cast<std::size_t>(t)]++ == 0) chosen_.push_back(t);
    }
    const FrameCounts counts = decode_and_grant(R, rng);

    out.granted.assign(valid_.begin(), valid_.begin() + counts.granted);
    std::sort(out.granted.begin(), out.granted.end());
    out.valid = valid_;
    std::sort(out.valid.begin(), out.valid.end());
    out.used = counts.used;
    out.successes = counts.successes;
    return out;
}

SuperframeOutcome run_superframe(const Code& c, std::int64_t K, std::int64_t R,
                                 std::mt19937_64& rng) {
    SuperframeSimulator sim(c);
    return sim.run(K, R, rng);
}

namespace {

constexpr std::int64_t kBatchFrames = 4096;

struct BatchAccum {
    double sum_ps = 0, sumsq_ps = 0;
    double sum_v = 0, sumsq_v = 0;
    double sum_eta = 0, sumsq_eta = 0;
    std::int64_t frames = 0;
    std::int64_t eta_frames = 0;
};

SimEstimate finalize(double sum, double sumsq, std::int64_t count, std::uint64_t seed) {
    SimEstimate e;
    e.iterations = count;
    e.seed = seed;
    if (count == 0) return e;
    e.mean = sum / static_cast<double>(count);
    if (count > 1) {
        const double var =
            std::max(0.0, (sumsq - sum * sum / static_cast<double>(count)) /
                              static_cast<double>(count - 1));
        e.half_width_95 = 1.96 * std::sqrt(var / static_cast<double>(count));
    }
    return e;
}

}  // namespace

SimMetrics estimate(const Code& c, std::int64_t K, std::int64_t R, std::int64_t iterations,
                    std::uint64_t seed, int max_threads) {
    if (K < 1)
        throw std::invalid_argument("estimate: P_S needs at least one contending device");
    if (iterations < 1) throw std::invalid_argument("estimate: need iterations >= 1");
    if (R < 1) throw std::invalid_argument("estimate: need R >= 1");

    const std::int64_t batches = (iterations + kBatchFrames - 1) / kBatchFrames;
    std::vector<BatchAccum> partial(static_cast<std::size_t>(batches));

    int threads = max_threads > 0 ? max_threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = static_cast<int>(std::min<std::int64_t>(threads, batches));

    auto worker = [&](int tid) {
        SuperframeSimulator sim(c);
        for (std::int64_t b = tid; b < batches; b += threads) {
            const std::int64_t frames =
                std::min<std::int64_t>(kBatchFrames, iterations - b * kBatchFrames);
            std::mt19937_64 rng(mix_seed(seed, {static_cast<std::uint64_t>(b)}));
            BatchAccum acc;
            for (std::int64_t f = 0; f < frames; ++f) {
                const auto counts = sim.run_counts(K, R, rng);
                const double ps =
                    static_cast<double>(counts.successes) / static_cast<double>(K);
                const double v = static_cast<double>(counts.valid);
                acc.sum_ps += ps;
                acc.sumsq_ps += ps * ps;
                acc.sum_v += v;
                acc.sumsq_v += v * v;
                ++acc.frames;
                if (counts.granted >= 1) {
                    const double eta =
                        static_cast<double>(counts.used) / static_cast<double>(counts.granted);
                    acc.sum_eta += eta;
                    acc.sumsq_eta += eta * eta;
                    ++acc.eta_frames;
                }
            }
            partial[static_cast<std::size_t>(b)] = acc;
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }

    // Merge in batch order so the result does not depend on thread count.
    BatchAccum total;
    for (const BatchAccum& acc : partial) {
        total.sum_ps += acc.sum_ps;
        total.sumsq_ps += acc.sumsq_ps;
        total.sum_v += acc.sum_v;
        total.sumsq_v += acc.sumsq_v;
        total.sum_eta += acc.sum_eta;
        total.sumsq_eta += acc.sumsq_eta;
        total.frames += acc.frames;
        total.eta_frames += acc.eta_frames;
    }

    SimMetrics out;
    out.p_s = finalize(total.sum_ps, total.sumsq_ps, total.frames, seed);
    out.e_v = finalize(total.sum_v, total.sumsq_v, total.frames, seed);
    out.eta = finalize(total.sum_eta, total.sumsq_eta, total.eta_frames, seed);
    return out;
}

std::string_view scheme_name(Scheme s) {
    return s == Scheme::optcera ? "optcera" : "multipreamble";
}

namespace {

struct GridPoint {
    Scheme scheme;
    int code_factor;  // k for optcera, a for multipreamble
    std::int64_t M;
};

Code build_scheme_code(const SweepSpec& spec, const GridPoint& point) {
    if (point.scheme == Scheme::optcera)
        return build_optcera_code(spec.n, spec.q, point.code_factor);
    return build_multipreamble_code(spec.n, point.code_factor, spec.q);
}

double analytical_expected_valid(const SweepSpec& spec, const Code& code, std::int64_t K) {
    if (spec.n == 2) return expected_valid_n2(code, K);
    return expected_valid_exact(code, K);
}

}  // namespace

SweepResult sweep(const SweepSpec& spec) {
    if (spec.n < 1 || spec.q < 2) throw std::invalid_argument("sweep: need n >= 1, q >= 2");
    if (spec.R < 1) throw std::invalid_argument("sweep: need R >= 1");
    if (spec.mode != SweepMode::analytical && spec.iterations < 1)
        throw std::invalid_argument("sweep: need iterations >= 1 when simulating");

    SweepResult result;

    std::vector<GridPoint> points;
    if (spec.run_optcera) {
        std::int64_t k_cap = 1;
        for (int i = 1; i < spec.n; ++i) k_cap *= spec.q;  // q^(n-1)
        for (int k = spec.k_lo; k <= spec.k_hi; ++k) {
            if (k < 1 || k > k_cap) {
                result.warnings.push_back("skipped optcera k=" + std::to_string(k) +
                                          ": outside {1,...,q^(n-1)}");
                continue;
            }
            points.push_back({Scheme::optcera, k, static_cast<std::int64_t>(k) * spec.q});
        }
    }
    if (spec.run_multipreamble) {
        for (int a = spec.a_lo; a <= spec.a_hi; ++a) {
            if (a < 2 || a > spec.q) {
                result.warnings.push_back("skipped multipreamble a=" + std::to_string(a) +
                                          ": outside {2,...,q}");
                continue;
            }
            std::int64_t m = 1;
            for (int i = 0; i < spec.n; ++i) m *= a;
            points.push_back({Scheme::multipreamble, a, m});
        }
    }
    std::stable_sort(points.begin(), points.end(), [](const GridPoint& x, const GridPoint& y) {
        if (x.scheme != y.scheme) return x.scheme < y.scheme;
        return x.M < y.M;
    });

    for (const GridPoint& point : points) {
        const Code code = build_scheme_code(spec, point);
        for (std::int64_t K : spec.device_counts) {
            if (K < 1) {
                result.warnings.push_back("skipped K=" + std::to_string(K) +
                                          ": needs at least one device");
                continue;
            }
            if (spec.mode != SweepMode::simulate) {
                MetricsRow row;
                row.scheme = point.scheme;
                row.n = spec.n;
                row.q = spec.q;
                row.M = point.M;
                row.K = K;
                row.R = spec.R;
                row.method = "analytical";
                const double e_v = analytical_expected_valid(spec, code, K);
                row.p_n = prob_non_collision(K, point.M);
                row.p_a = alloc_probability(e_v, spec.R);
                row.p_s = *row.p_n * *row.p_a;
                row.e_v = e_v;
                row.eta = expected_selected(K, point.M) / e_v;
                result.rows.push_back(std::move(row));
            }
            if (spec.mode != SweepMode::analytical) {
                const std::uint64_t point_seed =
                    mix_seed(spec.seed,
                             {static_cast<std::uint64_t>(point.scheme),
                              static_cast<std::uint64_t>(point.M),
                              static_cast<std::uint64_t>(K)});
                const SimMetrics sim =
                    estimate(code, K, spec.R, spec.iterations, point_seed, spec.max_threads);
                MetricsRow row;
                row.scheme = point.scheme;
                row.n = spec.n;
                row.q = spec.q;
                row.M = point.M;
                row.K = K;
                row.R = spec.R;
                row.method = "simulated";
                row.p_s = sim.p_s.mean;
                row.e_v = sim.e_v.mean;
                row.eta = sim.eta.mean;
                row.iterations = spec.iterations;
                row.seed = spec.seed;
                row.ci_p_s = sim.p_s.half_width_95;
                row.ci_e_v = sim.e_v.half_width_95;
                row.ci_eta = sim.eta.half_width_95;
                result.rows.push_back(std::move(row));
            }
        }
    }
    return result;
}

}  // namespace cera
