#include "chronoslice/synth.hpp"

#include <random>
#include <stdexcept>

namespace chronoslice {

std::vector<TemporalEdge> synth_stream(const std::vector<SynthPhase>& phases,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<TemporalEdge> events;
    Timestamp t = 0;
    for (const auto& phase : phases) {
        if (phase.span < 0 || phase.events_per_timestamp < 0)
            throw std::invalid_argument("negative span or rate");
        if (phase.events_per_timestamp > 0 && phase.node_pool < 2)
            throw std::invalid_argument("node_pool must be >= 2 when events are generated");
        for (std::int64_t i = 0; i < phase.span; ++i, ++t) {
            for (std::int64_t k = 0; k < phase.events_per_timestamp; ++k) {
                std::uniform_int_distribution<std::int64_t> pick(0, phase.node_pool - 1);
                const auto a = pick(rng);
                std::uniform_int_distribution<std::int64_t> pick_other(0, phase.node_pool - 2);
                auto b = pick_other(rng);
                if (b >= a) ++b;  // skip a, never a self-edge
                events.push_back({static_cast<NodeIndex>(a), static_cast<NodeIndex>(b), t});
            }
        }
    }
    return events;
}

}  // namespace chronoslice
