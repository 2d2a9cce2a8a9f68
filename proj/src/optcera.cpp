#include "cera/optcera.hpp"

#include <stdexcept>

#include "cera/rng.hpp"

namespace cera {

namespace {

std::int64_t pow_i64(int base, int exp) {
    std::int64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > (std::int64_t{1} << 62) / base)
            throw std::overflow_error("q^n does not fit in 64 bits");
        v *= base;
    }
    return v;
}

}  // namespace

QaryDigits qary_digits(std::int64_t t, int q, int n) {
    if (n < 1 || q < 2) throw std::invalid_argument("qary_digits: need n >= 1, q >= 2");
    if (t < 0 || t >= pow_i64(q, n))
        throw std::invalid_argument("qary_digits: t outside {0,...,q^n-1}");
    QaryDigits d;
    d.q = q;
    d.digits.resize(static_cast<std::size_t>(n));
    std::int64_t rest = t;
    for (int i = 0; i < n; ++i) {
        d.digits[static_cast<std::size_t>(i)] = static_cast<Symbol>(rest % q);
        rest /= q;
    }
    return d;
}

std::int64_t qary_value(const QaryDigits& d) {
    std::int64_t v = 0;
    for (std::size_t i = d.digits.size(); i-- > 0;) v = v * d.q + d.digits[i];
    return v;
}

Codeword map_digits_to_codeword(const QaryDigits& d) {
    Codeword w;
    w.coords.resize(d.digits.size());
    int acc = 0;
    for (std::size_t i = 0; i < d.digits.size(); ++i) {
        acc = (acc + d.digits[i]) % d.q;
        w.coords[i] = static_cast<Symbol>(acc);
    }
    return w;
}

QaryDigits digits_from_codeword(const Codeword& w, int q) {
    QaryDigits d;
    d.q = q;
    d.digits.resize(w.coords.size());
    int prev = 0;
    for (std::size_t i = 0; i < w.coords.size(); ++i) {
        d.digits[i] = static_cast<Symbol>((w.coords[i] - prev + q) % q);
        prev = w.coords[i];
    }
    return d;
}

Code build_optcera_code(int n, int q, int k) {
    if (n < 1 || q < 2) throw std::invalid_argument("build_optcera_code: need n >= 1, q >= 2");
    if (k < 1 || k > pow_i64(q, n - 1))
        throw std::invalid_argument("build_optcera_code: need 1 <= k <= q^(n-1)");
    const std::int64_t m = static_cast<std::int64_t>(k) * q;
    std::vector<Codeword> words;
    words.reserve(static_cast<std::size_t>(m));
    for (std::int64_t t = 0; t < m; ++t)
        words.push_back(map_digits_to_codeword(qary_digits(t, q, n)));
    return make_code(n, q, q, std::move(words));
}

Code build_multipreamble_code(int n, int a, int q) {
    if (n < 1) throw std::invalid_argument("build_multipreamble_code: need n >= 1");
    if (a < 2 || a > q) throw std::invalid_argument("build_multipreamble_code: need 2 <= a <= q");
    std::vector<Codeword> words = all_words(n, a);
    Code c = make_code(n, q, a, std::move(words));
    return c;
}

PreambleSchedule encode_random(const Code& c, std::mt19937_64& rng) {
    PreambleSchedule s;
    s.codeword_index = static_cast<std::int64_t>(
        uniform_below(rng, static_cast<std::uint64_t>(c.params.M)));
    s.per_subframe = c.words[static_cast<std::size_t>(s.codeword_index)].coords;
    return s;
}

}  // namespace cera
