#pragma once

#include "chronoslice/types.hpp"

#include <cstdint>
#include <vector>

namespace chronoslice {

/// One phase of a piecewise-rate synthetic stream: `span` consecutive
/// timestamps with exactly `events_per_timestamp` events each, endpoints
/// drawn from a pool of `node_pool` nodes (indexes 0..node_pool-1).
struct SynthPhase {
    std::int64_t span = 0;
    std::int64_t events_per_timestamp = 0;
    std::int64_t node_pool = 2;
};

/// Deterministic stream for a given seed; no self-edges; timestamps
/// start at 0 and are consecutive across phases.
std::vector<TemporalEdge> synth_stream(const std::vector<SynthPhase>& phases,
                                       std::uint64_t seed);

}  // namespace chronoslice
