#pragma once

#include <cstdint>
#include <span>

#include "cera/code.hpp"

namespace cera {

/// n-partite n-uniform hypergraph view of a code: partition i holds one
/// vertex per used preamble at RA subframe i, and hyperedge t is codeword t's
/// vertex set {(i, c_i)}. incidence[i][j] lists the hyperedges containing
/// vertex (i+1, j); its sizes are exactly the code's symbol counts.
struct CodeHypergraph {
    int subframes = 0;      // n partitions
    int used_symbols = 0;   // r vertices per partition
    std::int64_t edges = 0; // M hyperedges
    std::vector<std::vector<std::vector<std::int64_t>>> incidence;
    std::vector<Codeword> edge_words;  // hyperedge t as its codeword
};

CodeHypergraph build_hypergraph(const Code& c);

/// Per-subframe preamble sets seen by the base station in one superframe.
/// per_subframe[i] is Y_{i+1}, sorted and duplicate-free, elements < q.
struct DetectedSets {
    int q = 0;
    std::vector<std::vector<Symbol>> per_subframe;
};

/// Perfect detection: Y_i is exactly the union of the transmitted codewords'
/// i-th coordinates.
DetectedSets observe(const Code& c, std::span<const std::int64_t> transmitted);

/// Hyperedges of the subhypergraph induced by y, i.e. codeword indices whose
/// every coordinate was detected. Counts vertex hits per hyperedge through
/// the incidence lists and keeps edges hit in all n partitions. Sorted.
std::vector<std::int64_t> decode(const CodeHypergraph& h, const DetectedSets& y);

/// Same set by direct per-codeword membership scan, O(M n). Kept as an
/// independent reference for decode.
std::vector<std::int64_t> decode_bruteforce(const Code& c, const DetectedSets& y);

}  // namespace cera
