#pragma once

#include <cstdint>
#include <random>

#include "cera/code.hpp"

namespace cera {

/// Base-q representation of an integer t < q^n as (a_n, ..., a_1) with
/// t = sum_i a_i q^(i-1). digits[i-1] holds a_i; a_1 is the least significant.
struct QaryDigits {
    int q = 2;
    std::vector<Symbol> digits;

    auto operator<=>(const QaryDigits&) const = default;
};

QaryDigits qary_digits(std::int64_t t, int q, int n);

/// The integer the digit tuple represents.
std::int64_t qary_value(const QaryDigits& d);

/// The code construction map: coordinate i of the output is the prefix sum
/// (a_1 + ... + a_i) mod q. A bijection on A_q^n.
Codeword map_digits_to_codeword(const QaryDigits& d);

/// Inverse of the construction map: a_i = c_i - c_{i-1} mod q with c_0 = 0.
QaryDigits digits_from_codeword(const Codeword& w, int q);

/// The (n,q,k) code of size M = k*q: images of t = 0, ..., kq-1 under the
/// construction map. Every per-coordinate symbol occurs exactly k times, so
/// the result always satisfies is_mad. Requires 1 <= k <= q^(n-1).
Code build_optcera_code(int n, int q, int k);

/// Baseline scheme: all a^n words over the first a of the q preambles,
/// in value order. Requires 2 <= a <= q.
Code build_multipreamble_code(int n, int a, int q);

/// Device-side pick for one superframe: a uniformly chosen codeword index and
/// the preamble to transmit at each RA subframe.
struct PreambleSchedule {
    std::int64_t codeword_index = 0;
    std::vector<Symbol> per_subframe;
};

PreambleSchedule encode_random(const Code& c, std::mt19937_64& rng);

}  // namespace cera
