#pragma once

// Shared test oracles. These deliberately take the long way around: exhaustive
// enumeration of device choices with the decoder in the loop, so the closed
// formulas under test are checked against counted outcomes rather than against
// themselves.

#include <cstdint>
#include <vector>

#include "cera/hypergraph.hpp"

namespace cera::testing {

// Exact E[V] by enumerating all M^K ordered device-choice assignments and
// decoding each superframe. Only viable when M^K is small.
inline double enumerate_expected_valid(const Code& c, int devices) {
    const CodeHypergraph h = build_hypergraph(c);
    std::vector<std::int64_t> pick(static_cast<std::size_t>(devices), 0);
    std::int64_t total_valid = 0;
    std::int64_t assignments = 0;
    for (;;) {
        const DetectedSets y = observe(c, pick);
        total_valid += static_cast<std::int64_t>(decode(h, y).size());
        ++assignments;
        int slot = devices - 1;
        while (slot >= 0 && ++pick[static_cast<std::size_t>(slot)] == c.params.M) {
            pick[static_cast<std::size_t>(slot)] = 0;
            --slot;
        }
        if (slot < 0) break;
    }
    return static_cast<double>(total_valid) / static_cast<double>(assignments);
}

}  // namespace cera::testing
