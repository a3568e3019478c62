#pragma once

#include "chronoslice/slicer.hpp"
#include "chronoslice/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chronoslice {

/// Per-display-timestamp event counts over the full display span,
/// zeros included. Counts are post-merge (what the layout draws).
struct SpreadSeries {
    Timestamp first_display = 0;
    std::vector<std::int64_t> counts;

    std::int64_t total() const;
    std::vector<double> normalized() const;  // max maps to 1 when any events exist
    double coefficient_of_variation() const;
};

SpreadSeries spread(const std::vector<RemappedEvent>& events);
SpreadSeries spread_from_timestamps(const std::vector<Timestamp>& display_times);

struct EcdfReport {
    std::vector<std::int64_t> sorted_counts;
    std::vector<double> cumulative;  // fraction of timestamps with count <= sorted_counts[i]
    double empty_fraction = 0.0;
    std::int64_t max_count = 0;
    std::int64_t q3_count = 0;           // 75th-percentile events per timestamp
    double q3_fraction_of_max = 0.0;
};

EcdfReport ecdf(const SpreadSeries& series);

struct StrategyStats {
    std::string name;
    std::int64_t display_timestamps = 0;
    std::optional<ScheduleSummary> schedule;  // adaptive strategies only
    SpreadSeries spread;
};

/// Consolidated comparison across strategies run on the same input:
/// JSON document plus a plain-text table.
std::string compare_report_json(const std::vector<StrategyStats>& strategies);
std::string compare_report_table(const std::vector<StrategyStats>& strategies);

/// Plot-ready "t,count,norm" CSV.
void write_series_csv(const SpreadSeries& series, std::ostream& out);

}  // namespace chronoslice
