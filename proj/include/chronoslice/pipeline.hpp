#pragma once

#include "chronoslice/baselines.hpp"
#include "chronoslice/slicer.hpp"
#include "chronoslice/stats.hpp"
#include "chronoslice/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chronoslice {

/// Which timeslicing strategy a run applies. `none` is raw passthrough,
/// identical to uniform tau=1.
struct MethodConfig {
    enum class Kind { nonuniform, uniform, bvc, none };
    Kind kind = Kind::nonuniform;
    SlicerConfig slicer;                        // nonuniform
    std::int64_t tau = 1;                       // uniform
    std::optional<std::int64_t> bvc_slices;     // bvc; default span - 1

    std::string name() const;
};

struct SliceOutput {
    std::vector<RemappedEvent> events;   // post-merge, display timestamps
    std::vector<SliceRecord> records;    // nonuniform only
    std::int64_t display_timestamps = 0; // full display span, empties included
    std::size_t merged = 0;
    std::size_t peak_state = 0;          // max slicer state_size() observed

    ScheduleSummary summary() const { return summarize_schedule(records); }
    SpreadSeries spread_full() const;    // padded to the full display span
    StrategyStats strategy_stats(const std::string& name) const;
};

/// Replay a validated, time-ordered stream through the chosen strategy.
/// Every strategy merges duplicate endpoint pairs per display timestamp.
/// bvc requires the full stream up front (offline only).
SliceOutput run_method(const std::vector<TemporalEdge>& events, const MethodConfig& method,
                       bool directed = false);

}  // namespace chronoslice
