#include "chronoslice/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chronoslice {

std::int64_t EventHistogram::total() const {
    return std::accumulate(bins.begin(), bins.end(), std::int64_t{0});
}

void EventHistogram::add(Timestamp t) {
    if (t < first_t) throw std::invalid_argument("timestamp before histogram start");
    const auto idx = static_cast<std::size_t>(t - first_t);
    if (idx >= bins.size()) bins.resize(idx + 1, 0);
    ++bins[idx];
}

std::vector<Timestamp> bvc_boundaries(const EventHistogram& hist, std::int64_t slice_count) {
    if (slice_count < 1) throw std::invalid_argument("slice_count must be >= 1");
    const auto span = static_cast<std::int64_t>(hist.bins.size());
    const std::int64_t total = hist.total();

    std::vector<Timestamp> boundaries;
    boundaries.reserve(static_cast<std::size_t>(slice_count) + 1);
    boundaries.push_back(hist.first_t);

    if (total == 0) {
        // Degenerate histogram: equal-width spans.
        for (std::int64_t k = 1; k < slice_count; ++k)
            boundaries.push_back(hist.first_t + k * span / slice_count);
    } else {
        std::int64_t cum = 0;
        std::int64_t bin = 0;
        for (std::int64_t k = 1; k < slice_count; ++k) {
            const double threshold =
                static_cast<double>(k) * static_cast<double>(total) /
                static_cast<double>(slice_count);
            while (bin < span && static_cast<double>(cum + hist.bins[static_cast<std::size_t>(bin)]) <
                                     threshold) {
                cum += hist.bins[static_cast<std::size_t>(bin)];
                ++bin;
            }
            // bin is the smallest timestamp whose inclusive mass reaches
            // the threshold; the slice boundary sits just after it.
            boundaries.push_back(hist.first_t + std::min(bin + 1, span));
        }
    }
    boundaries.push_back(hist.first_t + span);
    return boundaries;
}

std::int64_t bvc_remap(Timestamp t_orig, const std::vector<Timestamp>& boundaries) {
    if (boundaries.size() < 2) throw std::invalid_argument("need bvc_boundaries output");
    const auto last_interior = boundaries.end() - 1;  // final entry is the span end
    auto it = std::upper_bound(boundaries.begin() + 1, last_interior, t_orig);
    return std::distance(boundaries.begin() + 1, it);
}

}  // namespace chronoslice
