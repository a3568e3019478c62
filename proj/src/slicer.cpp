#include "chronoslice/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace chronoslice {

void SlicerConfig::validate() const {
    std::string problems;
    if (w_size < 1) problems += "w_size must be >= 1; ";
    if (!(alpha > 0.0) || alpha > 1.0) problems += "alpha must be in (0, 1]; ";
    if (delta < 0.0 || delta > 1.0) problems += "delta must be in [0, 1]; ";
    if (!problems.empty()) throw std::invalid_argument(problems);
}

double fading_sum(std::span<const std::int64_t> counts, std::int64_t active_count,
                  double alpha) {
    if (active_count == 0) return 0.0;
    double fs = 0.0;
    for (std::int64_t x : counts)
        fs = static_cast<double>(x) / static_cast<double>(active_count) + alpha * fs;
    return fs;
}

std::int64_t next_resolution(std::int64_t sigma_current, double delta, double fading,
                             std::int64_t history_sum, std::int64_t history_count) {
    auto sigma =
        static_cast<std::int64_t>(std::floor(delta * static_cast<double>(sigma_current) +
                                             (1.0 - delta) * fading));
    if (sigma == 0) sigma = std::max<std::int64_t>(1, history_sum / history_count);
    return sigma;
}

Timestamp compute_t_ref(Timestamp t_ini, Timestamp last_event_t_orig,
                        Timestamp last_event_t_display, std::int64_t sigma_prev) {
    return (t_ini - last_event_t_orig) / sigma_prev + last_event_t_display;
}

Timestamp remap_timestamp(Timestamp t_orig, Timestamp t_ini, std::int64_t sigma,
                          Timestamp t_ref) {
    return (t_orig - t_ini) / sigma + t_ref;
}

Slicer::Slicer(const SlicerConfig& config) : config_(config) {
    config_.validate();
}

std::int64_t Slicer::window_span() const {
    return config_.window_axis == WindowAxis::original ? config_.w_size
                                                       : config_.w_size * sigma_cur_;
}

void Slicer::commit_window() {
    const std::int64_t span = window_span();
    const double fs = fading_sum(counts_, active_, config_.alpha);
    const std::int64_t sigma_next =
        next_resolution(sigma_cur_, config_.delta, fs, history_sum_, history_count_);

    records_.push_back({records_.size(), t_ini_, t_ini_ + span, sigma_cur_, t_ref_,
                        t_ref_, remap_timestamp(t_ini_ + span - 1, t_ini_, sigma_cur_, t_ref_)});

    history_sum_ += sigma_next;
    ++history_count_;
    t_ini_ += span;
    t_ref_ = compute_t_ref(t_ini_, last_t_orig_, last_t_display_, last_sigma_);
    sigma_cur_ = sigma_next;
    std::ranges::fill(counts_, 0);
    active_ = 0;
}

std::optional<RemappedEvent> Slicer::process(const TemporalEdge& event) {
    if (event.source == event.target)
        throw std::invalid_argument("self-edge reached the slicer; filter upstream");
    if (initialized_ && event.t_orig < prev_t_)
        throw OutOfOrderTimestamp(event.t_orig, prev_t_);

    if (!initialized_) {
        initialized_ = true;
        t_start_ = t_ini_ = t_ref_ = event.t_orig;
        sigma_cur_ = 1;  // cold start at the original resolution
        history_sum_ = 1;
        history_count_ = 1;
        last_t_orig_ = last_t_display_ = event.t_orig;
        last_sigma_ = 1;
        dedup_t_ = event.t_orig;
        counts_.assign(static_cast<std::size_t>(config_.w_size), 0);
    }
    prev_t_ = event.t_orig;

    // Roll over every completed window, including fully inactive ones.
    while (event.t_orig >= t_ini_ + window_span()) commit_window();

    const std::int64_t offset = event.t_orig - t_ini_;
    const auto pos = static_cast<std::size_t>(
        config_.window_axis == WindowAxis::original ? offset : offset / sigma_cur_);
    if (++counts_[pos] == 1) ++active_;
    ++event_count_;

    const Timestamp t_display = remap_timestamp(event.t_orig, t_ini_, sigma_cur_, t_ref_);
    last_t_orig_ = event.t_orig;
    last_t_display_ = t_display;
    last_sigma_ = sigma_cur_;

    if (t_display != dedup_t_) {
        dedup_.clear();
        dedup_t_ = t_display;
    }
    auto [a, b] = normalized_pair(event.source, event.target, config_.directed);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    if (!dedup_.insert(key).second) {
        ++merged_count_;
        return std::nullopt;
    }
    return RemappedEvent{event.source, event.target, t_display, records_.size()};
}

void Slicer::finish() {
    if (!initialized_ || finished_) return;
    finished_ = true;
    // Final window closes at the last event; it may span fewer than
    // w_size original timestamps.
    records_.push_back({records_.size(), t_ini_, last_t_orig_ + 1, sigma_cur_, t_ref_,
                        t_ref_, last_t_display_});
    dedup_.clear();
}

ScheduleSummary summarize_schedule(const std::vector<SliceRecord>& records) {
    ScheduleSummary s;
    s.slices = records.size();
    if (records.empty()) return s;

    s.display_timestamps = records.back().display_last - records.front().display_first + 1;
    s.cold_start_display_timestamps =
        records.front().display_last - records.front().display_first + 1;

    const std::size_t first = records.size() > 1 ? 1 : 0;
    std::int64_t sum = 0;
    s.sigma_min = records[first].sigma;
    s.sigma_max = records[first].sigma;
    for (std::size_t i = first; i < records.size(); ++i) {
        s.sigma_min = std::min(s.sigma_min, records[i].sigma);
        s.sigma_max = std::max(s.sigma_max, records[i].sigma);
        sum += records[i].sigma;
    }
    s.sigma_mean = static_cast<double>(sum) / static_cast<double>(records.size() - first);
    return s;
}

void export_schedule(const std::vector<SliceRecord>& records, std::ostream& lines_out,
                     std::ostream& summary_out) {
    for (const auto& r : records) {
        nlohmann::json j{{"index", r.index},
                         {"t_ini", r.t_ini},
                         {"t_end_orig", r.t_end_orig},
                         {"sigma", r.sigma},
                         {"t_ref", r.t_ref},
                         {"display_first", r.display_first},
                         {"display_last", r.display_last}};
        lines_out << j.dump() << '\n';
    }
    const ScheduleSummary s = summarize_schedule(records);
    nlohmann::json j{{"slices", s.slices},
                     {"sigma_min", s.sigma_min},
                     {"sigma_mean", s.sigma_mean},
                     {"sigma_max", s.sigma_max},
                     {"display_timestamps", s.display_timestamps},
                     {"cold_start_display_timestamps", s.cold_start_display_timestamps}};
    summary_out << j.dump(2) << '\n';
    if (!lines_out || !summary_out) throw IoError("schedule export failed");
}

}  // namespace chronoslice
