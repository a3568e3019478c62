#pragma once

#include "chronoslice/types.hpp"

#include <cstdint>
#include <vector>

namespace chronoslice {

struct UniformConfig {
    std::int64_t tau = 1;  // desired resolution scale, >= 1
    Timestamp t_start = 0;
};

/// Uniform timeslicing stays on the original time axis in multiples of
/// tau: t_new = floor((t - t_s)/tau)*tau + t_s.
inline Timestamp uniform_remap(Timestamp t_orig, const UniformConfig& config) {
    return (t_orig - config.t_start) / config.tau * config.tau + config.t_start;
}

/// Column index of a uniform timeslice (consecutive display positions).
inline std::int64_t uniform_bin(Timestamp t_orig, const UniformConfig& config) {
    return (t_orig - config.t_start) / config.tau;
}

/// Events per original timestamp over the observed span.
struct EventHistogram {
    Timestamp first_t = 0;
    std::vector<std::int64_t> bins;

    std::int64_t total() const;
    void add(Timestamp t);  // grows bins as needed; t >= first_t
};

/// Equal-mass slice boundaries, histogram-equalization style: boundary k
/// is the smallest timestamp where cumulative mass reaches k*total/slice_count.
/// Returned vector has slice_count+1 entries; slice k covers
/// [boundaries[k], boundaries[k+1]) on the original axis. A zero-mass
/// histogram with slice_count > 1 degenerates to equal-width spans.
std::vector<Timestamp> bvc_boundaries(const EventHistogram& hist, std::int64_t slice_count);

/// Index of the slice containing t_orig (left-closed/right-open spans;
/// values past the end clamp to the last slice).
std::int64_t bvc_remap(Timestamp t_orig, const std::vector<Timestamp>& boundaries);

}  // namespace chronoslice
