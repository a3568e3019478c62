#pragma once

#include "chronoslice/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

namespace chronoslice {

/// Which axis the window length counts. `original`: every window spans
/// exactly w_size original timestamps (default). `display`: a window
/// spans w_size display timestamps, i.e. w_size * sigma original ones.
enum class WindowAxis { original, display };

struct SlicerConfig {
    std::int64_t w_size = 100;
    double alpha = 0.99;  // fading factor, 0 << alpha <= 1
    double delta = 0.2;   // weight of the current resolution
    bool directed = false;
    WindowAxis window_axis = WindowAxis::original;

    void validate() const;  // throws std::invalid_argument listing all violations
};

/// One committed timeslice: the original-time span it covers, the
/// resolution applied inside it and the display-time anchor.
struct SliceRecord {
    std::size_t index = 0;
    Timestamp t_ini = 0;
    Timestamp t_end_orig = 0;  // exclusive
    std::int64_t sigma = 1;
    Timestamp t_ref = 0;
    Timestamp display_first = 0;
    Timestamp display_last = 0;

    friend bool operator==(const SliceRecord&, const SliceRecord&) = default;
};

/// Fading sum over one window: fs(i) = x_i/active_count + alpha*fs(i-1),
/// fs(1) = x_1/active_count. Returns 0 for a fully inactive window.
double fading_sum(std::span<const std::int64_t> counts, std::int64_t active_count,
                  double alpha);

/// Resolution for the next window: floor(delta*sigma_current + (1-delta)*fading).
/// A zero result falls back to the floored mean of all past adopted
/// resolutions, clamped to >= 1.
std::int64_t next_resolution(std::int64_t sigma_current, double delta, double fading,
                             std::int64_t history_sum, std::int64_t history_count);

/// Display-time anchor of a new window, derived from the last event e'
/// of any previous window (Eq. over original gap at e''s resolution).
Timestamp compute_t_ref(Timestamp t_ini, Timestamp last_event_t_orig,
                        Timestamp last_event_t_display, std::int64_t sigma_prev);

/// t_display = floor((t_orig - t_ini)/sigma) + t_ref.
Timestamp remap_timestamp(Timestamp t_orig, Timestamp t_ini, std::int64_t sigma,
                          Timestamp t_ref);

/// The online nonuniform timeslicing state machine. Strictly sequential:
/// one owner feeds events in non-decreasing t_orig order; emitted
/// records and remapped events are immutable once returned.
///
/// Memory is bounded by O(w_size + committed-slice records + the
/// per-display-timestamp dedup set); no event is retained after
/// process() returns.
class Slicer {
public:
    explicit Slicer(const SlicerConfig& config);

    /// Feed one event. Returns the remapped event, or nullopt when it
    /// merged into an already-emitted duplicate at the same display
    /// timestamp. Commits (possibly several, for inactivity gaps)
    /// windows as a side effect; see records().
    std::optional<RemappedEvent> process(const TemporalEdge& event);

    /// Commit the final (possibly partial) window. Idempotent.
    void finish();

    const std::vector<SliceRecord>& records() const { return records_; }
    std::size_t merged_count() const { return merged_count_; }
    std::size_t event_count() const { return event_count_; }
    bool started() const { return initialized_; }
    Timestamp t_start() const { return t_start_; }

    /// Retained working-state size in elements, for the memory contract
    /// (window counters + dedup set; excludes the emitted schedule).
    std::size_t state_size() const { return counts_.size() + dedup_.size(); }

private:
    std::int64_t window_span() const;
    void commit_window();

    SlicerConfig config_;
    bool initialized_ = false;
    bool finished_ = false;
    Timestamp t_start_ = 0;
    Timestamp t_ini_ = 0;
    Timestamp t_ref_ = 0;
    std::int64_t sigma_cur_ = 1;
    std::vector<std::int64_t> counts_;
    std::int64_t active_ = 0;

    // last processed event, anchor for the next window's t_ref
    Timestamp last_t_orig_ = 0;
    Timestamp last_t_display_ = 0;
    std::int64_t last_sigma_ = 1;
    Timestamp prev_t_ = 0;

    // adopted resolutions, cold start included; mean is the only query
    std::int64_t history_sum_ = 0;
    std::int64_t history_count_ = 0;

    Timestamp dedup_t_ = 0;
    std::unordered_set<std::uint64_t> dedup_;

    std::vector<SliceRecord> records_;
    std::size_t merged_count_ = 0;
    std::size_t event_count_ = 0;
};

/// Summary of a committed schedule. The sigma envelope skips the
/// cold-start slice (index 0) when more than one slice exists, matching
/// how adopted resolutions are reported.
struct ScheduleSummary {
    std::size_t slices = 0;
    std::int64_t sigma_min = 0;
    double sigma_mean = 0.0;
    std::int64_t sigma_max = 0;
    std::int64_t display_timestamps = 0;  // full display span, gaps included
    std::int64_t cold_start_display_timestamps = 0;
};

ScheduleSummary summarize_schedule(const std::vector<SliceRecord>& records);

/// Serialize records as JSON-lines plus a trailing summary object.
void export_schedule(const std::vector<SliceRecord>& records, std::ostream& lines_out,
                     std::ostream& summary_out);

}  // namespace chronoslice
