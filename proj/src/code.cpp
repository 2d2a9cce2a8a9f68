#include "cera/code.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace cera {

double Code::distribution(int coordinate, Symbol symbol) const {
    return static_cast<double>(symbol_counts.at(static_cast<std::size_t>(coordinate - 1))
                                   .at(symbol)) /
           static_cast<double>(params.M);
}

Code make_code(int n, int q, int r, std::vector<Codeword> words) {
    if (n < 1) throw std::invalid_argument("make_code: n must be >= 1");
    if (q < 2) throw std::invalid_argument("make_code: q must be >= 2");
    if (r < 1 || r > q) throw std::invalid_argument("make_code: need 1 <= r <= q");
    if (words.empty()) throw std::invalid_argument("make_code: a code holds at least one codeword");

    std::vector<std::vector<std::int64_t>> counts(
        static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(q), 0));
    for (const Codeword& w : words) {
        if (static_cast<int>(w.coords.size()) != n)
            throw std::invalid_argument("make_code: codeword length differs from n");
        for (int i = 0; i < n; ++i) {
            const Symbol s = w.coords[static_cast<std::size_t>(i)];
            if (s >= r) throw std::invalid_argument("make_code: symbol outside {0,...,r-1}");
            ++counts[static_cast<std::size_t>(i)][s];
        }
    }
    std::set<Codeword> distinct(words.begin(), words.end());
    if (distinct.size() != words.size())
        throw std::invalid_argument("make_code: codewords must be pairwise distinct");

    Code c;
    c.params = CodeParams{n, q, r, static_cast<std::int64_t>(words.size())};
    c.words = std::move(words);
    c.symbol_counts = std::move(counts);
    return c;
}

int hamming_distance(const Codeword& x, const Codeword& y) {
    if (x.coords.size() != y.coords.size())
        throw std::invalid_argument("hamming_distance: words of unequal length");
    int d = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i)
        if (x.coords[i] != y.coords[i]) ++d;
    return d;
}

double average_hamming_distance(const Code& c) {
    const std::size_t m = c.words.size();
    if (m == 0) throw std::invalid_argument("average_hamming_distance: empty code");
    std::int64_t total = 0;  // sum over unordered pairs
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            total += hamming_distance(c.words[a], c.words[b]);
    const double mm = static_cast<double>(m) * static_cast<double>(m);
    return 2.0 * static_cast<double>(total) / mm;
}

double avg_distance_via_distribution(const Code& c) {
    const double m = static_cast<double>(c.params.M);
    double sum = 0.0;
    for (const auto& row : c.symbol_counts) {
        std::int64_t sq = 0;
        for (std::int64_t count : row) sq += count * count;
        sum += 1.0 - static_cast<double>(sq) / (m * m);
    }
    return sum;
}

double mad_upper_bound(int n, int q) {
    if (n < 1 || q < 2) throw std::invalid_argument("mad_upper_bound: need n >= 1, q >= 2");
    return static_cast<double>(n) * (1.0 - 1.0 / static_cast<double>(q));
}

bool is_mad(const Code& c) {
    if (c.params.M % c.params.q != 0) return false;
    const std::int64_t per_symbol = c.params.M / c.params.q;
    for (const auto& row : c.symbol_counts)
        for (std::int64_t count : row)
            if (count != per_symbol) return false;
    return true;
}

namespace {

std::int64_t checked_pow(int base, int exp) {
    std::int64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > (std::int64_t{1} << 62) / base)
            throw std::overflow_error("q^n does not fit in 64 bits");
        v *= base;
    }
    return v;
}

}  // namespace

BruteForceResult brute_force_mad(int q, int n, int M) {
    if (n < 1 || q < 2) throw std::invalid_argument("brute_force_mad: need n >= 1, q >= 2");
    const std::int64_t total = checked_pow(q, n);
    if (M < 1 || M > total)
        throw std::invalid_argument("brute_force_mad: need 1 <= M <= q^n");
    if (total > 16 || M > 8)
        throw capacity_error("brute_force_mad: instance exceeds the enumeration budget "
                             "(q^n <= 16, M <= 8)");

    const std::vector<Codeword> words = all_words(n, q);
    const int N = static_cast<int>(total);

    std::vector<std::vector<int>> dist(static_cast<std::size_t>(N),
                                       std::vector<int>(static_cast<std::size_t>(N), 0));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                dist[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
                    hamming_distance(words[static_cast<std::size_t>(a)],
                                     words[static_cast<std::size_t>(b)]);

    // Combinations in lexicographic index order; the first strict maximum is
    // therefore the lexicographically smallest witness.
    std::vector<int> pick(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) pick[static_cast<std::size_t>(i)] = i;

    std::int64_t best_pairs = -1;
    std::vector<int> best_pick;
    for (;;) {
        std::int64_t pair_sum = 0;
        for (int a = 0; a < M; ++a)
            for (int b = a + 1; b < M; ++b)
                pair_sum += dist[static_cast<std::size_t>(pick[static_cast<std::size_t>(a)])]
                                [static_cast<std::size_t>(pick[static_cast<std::size_t>(b)])];
        if (pair_sum > best_pairs) {
            best_pairs = pair_sum;
            best_pick = pick;
        }

        int i = M - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == N - M + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < M; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }

    std::vector<Codeword> chosen;
    chosen.reserve(static_cast<std::size_t>(M));
    for (int idx : best_pick) chosen.push_back(words[static_cast<std::size_t>(idx)]);

    BruteForceResult result;
    result.best_value =
        2.0 * static_cast<double>(best_pairs) / (static_cast<double>(M) * static_cast<double>(M));
    result.witness = make_code(n, q, q, std::move(chosen));
    return result;
}

std::vector<Codeword> all_words(int n, int q) {
    const std::int64_t total = checked_pow(q, n);
    std::vector<Codeword> words;
    words.reserve(static_cast<std::size_t>(total));
    for (std::int64_t v = 0; v < total; ++v) {
        Codeword w;
        w.coords.resize(static_cast<std::size_t>(n));
        std::int64_t rest = v;
        for (int i = 0; i < n; ++i) {  // c_1 is the least significant position
            w.coords[static_cast<std::size_t>(i)] = static_cast<Symbol>(rest % q);
            rest /= q;
        }
        words.push_back(std::move(w));
    }
    return words;
}

std::int64_t word_value(const Codeword& w, int q) {
    std::int64_t v = 0;
    for (std::size_t i = w.coords.size(); i-- > 0;) v = v * q + w.coords[i];
    return v;
}

std::string format_symbols(std::span<const Symbol> least_significant_first, int q) {
    std::string out;
    for (std::size_t i = least_significant_first.size(); i-- > 0;) {
        if (q <= 10) {
            out += static_cast<char>('0' + least_significant_first[i]);
        } else {
            if (!out.empty()) out += ' ';
            out += std::to_string(least_significant_first[i]);
        }
    }
    return out;
}

std::string format_word(const Codeword& w, int q) {
    return format_symbols(w.coords, q);
}

Codeword word_from_compact(std::string_view text) {
    Codeword w;
    w.coords.resize(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[text.size() - 1 - i];
        if (ch < '0' || ch > '9')
            throw std::invalid_argument("word_from_compact: non-digit symbol");
        w.coords[i] = static_cast<Symbol>(ch - '0');
    }
    return w;
}

void write_code_text(std::ostream& out, const Code& c) {
    out << c.params.n << ' ' << c.params.q << ' ' << c.params.r << ' ' << c.params.M << '\n';
    for (const Codeword& w : c.words) {
        for (std::size_t i = w.coords.size(); i-- > 0;) {
            out << w.coords[i];
            if (i != 0) out << ' ';
        }
        out << '\n';
    }
}

Code read_code_text(std::istream& in) {
    int n = 0, q = 0, r = 0;
    std::int64_t m = 0;
    if (!(in >> n >> q >> r >> m)) throw std::invalid_argument("read_code_text: bad header");
    std::vector<Codeword> words;
    words.reserve(static_cast<std::size_t>(m));
    for (std::int64_t t = 0; t < m; ++t) {
        Codeword w;
        w.coords.resize(static_cast<std::size_t>(n));
        for (int i = n; i-- > 0;) {  // stored c_n first on the line
            int s = 0;
            if (!(in >> s)) throw std::invalid_argument("read_code_text: truncated codeword");
            w.coords[static_cast<std::size_t>(i)] = static_cast<Symbol>(s);
        }
        words.push_back(std::move(w));
    }
    return make_code(n, q, r, std::move(words));
}

}  // namespace cera
