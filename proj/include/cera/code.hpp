#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cera {

using Symbol = std::uint16_t;

// Thrown when an exhaustive computation would exceed its enumeration budget.
class capacity_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Code dimensioning: block length n (RA subframes per superframe), alphabet
/// size q (available preambles), r <= q preambles actually used by the code,
/// and code size M <= r^n.
struct CodeParams {
    int n = 0;
    int q = 0;
    int r = 0;
    std::int64_t M = 0;

    auto operator<=>(const CodeParams&) const = default;
};

/// An n-tuple over Z_q. coords[i-1] holds coordinate c_i, the preamble id
/// transmitted at RA subframe i. Rendered forms list c_n ... c_1, most
/// significant coordinate first.
struct Codeword {
    std::vector<Symbol> coords;

    auto operator<=>(const Codeword&) const = default;
};

/// A set of M distinct codewords together with its exact per-coordinate
/// symbol distribution: symbol_counts[i][j] is the number of codewords with
/// symbol j at coordinate i+1, so p_ij = symbol_counts[i][j] / M with no
/// floating-point rounding.
struct Code {
    CodeParams params;
    std::vector<Codeword> words;
    std::vector<std::vector<std::int64_t>> symbol_counts;  // n rows, q columns

    double distribution(int coordinate, Symbol symbol) const;
};

/// Validates words (length n, symbols < r, pairwise distinct, at least one)
/// and computes the symbol counts.
Code make_code(int n, int q, int r, std::vector<Codeword> words);

/// Number of coordinates in which x and y differ.
int hamming_distance(const Codeword& x, const Codeword& y);

/// (1/M^2) * sum over all ordered codeword pairs of their Hamming distance;
/// self-pairs contribute zero.
double average_hamming_distance(const Code& c);

/// Same quantity evaluated from the symbol distribution alone:
/// sum_i (1 - sum_j p_ij^2).
double avg_distance_via_distribution(const Code& c);

/// Largest average Hamming distance any code over A_q^n can reach: n(1-1/q).
double mad_upper_bound(int n, int q);

/// True iff M is a multiple of q and every p_ij equals 1/q exactly, i.e. the
/// code meets mad_upper_bound. The comparison is on integer counts, so the
/// characterization is checked without rounding.
bool is_mad(const Code& c);

struct BruteForceResult {
    double best_value = 0.0;
    Code witness;  // first maximizer in subset enumeration order
};

/// Exhaustive solution of the optimal-subset problem: the maximum average
/// Hamming distance over all size-M subsets of A_q^n, with the
/// lexicographically smallest achieving subset (words enumerated in value
/// order). Refuses instances beyond q^n <= 16, M <= 8.
BruteForceResult brute_force_mad(int q, int n, int M);

/// All q^n words in value order (word_value 0, 1, ..., q^n - 1).
std::vector<Codeword> all_words(int n, int q);

/// Integer a word represents when c_n ... c_1 is read as a base-q numeral.
std::int64_t word_value(const Codeword& w, int q);

/// Renders a symbol tuple most significant position first: concatenated
/// digits for q <= 10, space-separated decimal symbols otherwise.
std::string format_symbols(std::span<const Symbol> least_significant_first, int q);

/// Renders c_n ... c_1.
std::string format_word(const Codeword& w, int q);

/// Parses a concatenated-digit rendering such as "21" (valid for q <= 10).
Codeword word_from_compact(std::string_view text);

/// Plain-text code serialization: header line "n q r M", then one codeword
/// per line as space-separated decimal symbols c_n ... c_1.
void write_code_text(std::ostream& out, const Code& c);
Code read_code_text(std::istream& in);

}  // namespace cera
