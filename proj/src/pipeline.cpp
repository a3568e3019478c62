#include "chronoslice/pipeline.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace chronoslice {

std::string MethodConfig::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::nonuniform:
            os << "nonuniform(w=" << slicer.w_size << ",ff=" << slicer.alpha
               << ",delta=" << slicer.delta << ")";
            break;
        case Kind::uniform: os << "uniform(tau=" << tau << ")"; break;
        case Kind::bvc: os << "bvc"; break;
        case Kind::none: os << "res-1"; break;
    }
    return os.str();
}

SpreadSeries SliceOutput::spread_full() const {
    std::vector<Timestamp> times;
    times.reserve(events.size());
    for (const auto& e : events) times.push_back(e.t_display);
    SpreadSeries s = spread_from_timestamps(times);
    // Trailing empty display timestamps of the final committed window
    // are part of the span.
    const auto span = static_cast<std::size_t>(display_timestamps);
    if (span > s.counts.size()) s.counts.resize(span, 0);
    return s;
}

StrategyStats SliceOutput::strategy_stats(const std::string& stat_name) const {
    StrategyStats st;
    st.name = stat_name;
    st.display_timestamps = display_timestamps;
    if (!records.empty()) st.schedule = summary();
    st.spread = spread_full();
    return st;
}

namespace {

// Shared merge-per-display-timestamp pass for the offline baselines.
struct Deduper {
    bool directed;
    Timestamp current_t = 0;
    std::unordered_set<std::uint64_t> seen;
    std::size_t merged = 0;

    bool admit(const TemporalEdge& e, Timestamp t_display) {
        if (seen.empty() || t_display != current_t) {
            seen.clear();
            current_t = t_display;
        }
        auto [a, b] = normalized_pair(e.source, e.target, directed);
        if (!seen.insert((static_cast<std::uint64_t>(a) << 32) | b).second) {
            ++merged;
            return false;
        }
        return true;
    }
};

SliceOutput run_nonuniform(const std::vector<TemporalEdge>& events, const MethodConfig& method,
                           bool directed) {
    SliceOutput out;
    SlicerConfig cfg = method.slicer;
    cfg.directed = directed;
    Slicer slicer(cfg);
    for (const auto& e : events) {
        if (auto remapped = slicer.process(e)) out.events.push_back(*remapped);
        out.peak_state = std::max(out.peak_state, slicer.state_size());
    }
    slicer.finish();
    out.records = slicer.records();
    out.merged = slicer.merged_count();
    out.display_timestamps = summarize_schedule(out.records).display_timestamps;
    return out;
}

SliceOutput run_uniform(const std::vector<TemporalEdge>& events, std::int64_t tau,
                        bool directed) {
    SliceOutput out;
    if (events.empty()) return out;
    const UniformConfig cfg{tau, events.front().t_orig};
    Deduper dedup{directed};
    Timestamp max_t = events.front().t_orig;
    for (const auto& e : events) {
        max_t = std::max(max_t, e.t_orig);
        const std::int64_t bin = uniform_bin(e.t_orig, cfg);
        if (dedup.admit(e, bin))
            out.events.push_back({e.source, e.target, bin, static_cast<std::size_t>(bin)});
    }
    out.merged = dedup.merged;
    out.display_timestamps = uniform_bin(max_t, cfg) + 1;
    return out;
}

SliceOutput run_bvc(const std::vector<TemporalEdge>& events,
                    std::optional<std::int64_t> slice_count, bool directed) {
    SliceOutput out;
    if (events.empty()) return out;
    EventHistogram hist;
    hist.first_t = events.front().t_orig;
    for (const auto& e : events) hist.add(e.t_orig);
    const auto span = static_cast<std::int64_t>(hist.bins.size());
    const std::int64_t slices = slice_count.value_or(std::max<std::int64_t>(1, span - 1));
    const auto boundaries = bvc_boundaries(hist, slices);

    Deduper dedup{directed};
    for (const auto& e : events) {
        const std::int64_t idx = bvc_remap(e.t_orig, boundaries);
        if (dedup.admit(e, idx))
            out.events.push_back({e.source, e.target, idx, static_cast<std::size_t>(idx)});
    }
    out.merged = dedup.merged;
    out.display_timestamps = slices;
    return out;
}

}  // namespace

SliceOutput run_method(const std::vector<TemporalEdge>& events, const MethodConfig& method,
                       bool directed) {
    switch (method.kind) {
        case MethodConfig::Kind::nonuniform: return run_nonuniform(events, method, directed);
        case MethodConfig::Kind::uniform: return run_uniform(events, method.tau, directed);
        case MethodConfig::Kind::bvc: return run_bvc(events, method.bvc_slices, directed);
        case MethodConfig::Kind::none: return run_uniform(events, 1, directed);
    }
    return {};
}

}  // namespace chronoslice
