#include "cera/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace cera {

CodeHypergraph build_hypergraph(const Code& c) {
    CodeHypergraph h;
    h.subframes = c.params.n;
    h.used_symbols = c.params.r;
    h.edges = c.params.M;
    h.incidence.assign(static_cast<std::size_t>(c.params.n),
                       std::vector<std::vector<std::int64_t>>(
                           static_cast<std::size_t>(c.params.r)));
    for (std::int64_t t = 0; t < c.params.M; ++t) {
        const Codeword& w = c.words[static_cast<std::size_t>(t)];
        for (int i = 0; i < c.params.n; ++i)
            h.incidence[static_cast<std::size_t>(i)][w.coords[static_cast<std::size_t>(i)]]
                .push_back(t);
    }
    h.edge_words = c.words;
    return h;
}

DetectedSets observe(const Code& c, std::span<const std::int64_t> transmitted) {
    DetectedSets y;
    y.q = c.params.q;
    y.per_subframe.assign(static_cast<std::size_t>(c.params.n), {});
    for (std::int64_t t : transmitted) {
        if (t < 0 || t >= c.params.M)
            throw std::invalid_argument("observe: codeword index out of range");
        const Codeword& w = c.words[static_cast<std::size_t>(t)];
        for (int i = 0; i < c.params.n; ++i)
            y.per_subframe[static_cast<std::size_t>(i)].push_back(
                w.coords[static_cast<std::size_t>(i)]);
    }
    for (auto& set : y.per_subframe) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    return y;
}

std::vector<std::int64_t> decode(const CodeHypergraph& h, const DetectedSets& y) {
    if (static_cast<int>(y.per_subframe.size()) != h.subframes)
        throw std::invalid_argument("decode: detected sets do not match the hypergraph");
    std::vector<std::uint8_t> hits(static_cast<std::size_t>(h.edges), 0);
    for (int i = 0; i < h.subframes; ++i) {
        for (Symbol j : y.per_subframe[static_cast<std::size_t>(i)]) {
            if (j >= h.used_symbols) continue;  // detected preamble not used by the code
            for (std::int64_t t : h.incidence[static_cast<std::size_t>(i)][j])
                ++hits[static_cast<std::size_t>(t)];
        }
    }
    std::vector<std::int64_t> covered;
    for (std::int64_t t = 0; t < h.edges; ++t)
        if (hits[static_cast<std::size_t>(t)] == h.subframes) covered.push_back(t);
    return covered;
}

std::vector<std::int64_t> decode_bruteforce(const Code& c, const DetectedSets& y) {
    if (static_cast<int>(y.per_subframe.size()) != c.params.n)
        throw std::invalid_argument("decode_bruteforce: detected sets do not match the code");
    std::vector<std::vector<std::uint8_t>> present(
        static_cast<std::size_t>(c.params.n),
        std::vector<std::uint8_t>(static_cast<std::size_t>(c.params.q), 0));
    for (int i = 0; i < c.params.n; ++i)
        for (Symbol j : y.per_subframe[static_cast<std::size_t>(i)]) {
            if (j >= c.params.q)
                throw std::invalid_argument("decode_bruteforce: preamble id >= q");
            present[static_cast<std::size_t>(i)][j] = 1;
        }

    std::vector<std::int64_t> valid;
    for (std::int64_t t = 0; t < c.params.M; ++t) {
        const Codeword& w = c.words[static_cast<std::size_t>(t)];
        bool all = true;
        for (int i = 0; i < c.params.n && all; ++i)
            all = present[static_cast<std::size_t>(i)][w.coords[static_cast<std::size_t>(i)]] != 0;
        if (all) valid.push_back(t);
    }
    return valid;
}

}  // namespace cera
