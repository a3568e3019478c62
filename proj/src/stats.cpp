#include "chronoslice/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace chronoslice {

std::int64_t SpreadSeries::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::vector<double> SpreadSeries::normalized() const {
    std::vector<double> out(counts.size(), 0.0);
    const auto it = std::max_element(counts.begin(), counts.end());
    if (it == counts.end() || *it == 0) return out;
    const double max = static_cast<double>(*it);
    for (std::size_t i = 0; i < counts.size(); ++i)
        out[i] = static_cast<double>(counts[i]) / max;
    return out;
}

double SpreadSeries::coefficient_of_variation() const {
    if (counts.empty()) return 0.0;
    const double n = static_cast<double>(counts.size());
    const double mean = static_cast<double>(total()) / n;
    if (mean == 0.0) return 0.0;
    double ss = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - mean;
        ss += d * d;
    }
    return std::sqrt(ss / n) / mean;
}

SpreadSeries spread(const std::vector<RemappedEvent>& events) {
    std::vector<Timestamp> times;
    times.reserve(events.size());
    for (const auto& e : events) times.push_back(e.t_display);
    return spread_from_timestamps(times);
}

SpreadSeries spread_from_timestamps(const std::vector<Timestamp>& display_times) {
    SpreadSeries s;
    if (display_times.empty()) return s;
    const auto [min_it, max_it] = std::minmax_element(display_times.begin(), display_times.end());
    s.first_display = *min_it;
    s.counts.assign(static_cast<std::size_t>(*max_it - *min_it) + 1, 0);
    for (Timestamp t : display_times) ++s.counts[static_cast<std::size_t>(t - s.first_display)];
    return s;
}

EcdfReport ecdf(const SpreadSeries& series) {
    EcdfReport r;
    r.sorted_counts = series.counts;
    std::sort(r.sorted_counts.begin(), r.sorted_counts.end());
    const std::size_t n = r.sorted_counts.size();
    if (n == 0) return r;

    r.cumulative.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        r.cumulative[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    const auto empties = static_cast<std::size_t>(
        std::count(r.sorted_counts.begin(), r.sorted_counts.end(), std::int64_t{0}));
    r.empty_fraction = static_cast<double>(empties) / static_cast<double>(n);
    r.max_count = r.sorted_counts.back();
    r.q3_count = r.sorted_counts[3 * (n - 1) / 4];
    r.q3_fraction_of_max =
        r.max_count > 0 ? static_cast<double>(r.q3_count) / static_cast<double>(r.max_count) : 0.0;
    return r;
}

namespace {

nlohmann::json strategy_json(const StrategyStats& s) {
    const EcdfReport e = ecdf(s.spread);
    nlohmann::json j{{"name", s.name},
                     {"display_timestamps", s.display_timestamps},
                     {"events", s.spread.total()},
                     {"empty_fraction", e.empty_fraction},
                     {"max_per_timestamp", e.max_count},
                     {"q3_per_timestamp", e.q3_count},
                     {"cv", s.spread.coefficient_of_variation()}};
    if (s.schedule) {
        j["sigma_min"] = s.schedule->sigma_min;
        j["sigma_mean"] = s.schedule->sigma_mean;
        j["sigma_max"] = s.schedule->sigma_max;
        j["slices"] = s.schedule->slices;
    }
    return j;
}

}  // namespace

std::string compare_report_json(const std::vector<StrategyStats>& strategies) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : strategies) j.push_back(strategy_json(s));
    return nlohmann::json{{"strategies", j}}.dump(2) + "\n";
}

std::string compare_report_table(const std::vector<StrategyStats>& strategies) {
    std::ostringstream out;
    out << std::left << std::setw(24) << "strategy" << std::right << std::setw(12)
        << "timestamps" << std::setw(10) << "events" << std::setw(9) << "empty%"
        << std::setw(8) << "cv" << std::setw(18) << "sigma min/mean/max" << '\n';
    for (const auto& s : strategies) {
        const EcdfReport e = ecdf(s.spread);
        out << std::left << std::setw(24) << s.name << std::right << std::setw(12)
            << s.display_timestamps << std::setw(10) << s.spread.total() << std::setw(8)
            << std::fixed << std::setprecision(1) << e.empty_fraction * 100.0 << '%'
            << std::setw(8) << std::setprecision(2) << s.spread.coefficient_of_variation();
        if (s.schedule) {
            out << "   " << s.schedule->sigma_min << '/' << std::setprecision(1)
                << s.schedule->sigma_mean << '/' << s.schedule->sigma_max;
        } else {
            out << "   -";
        }
        out << '\n';
    }
    return out.str();
}

void write_series_csv(const SpreadSeries& series, std::ostream& out) {
    out << "t,count,norm\n";
    const auto norm = series.normalized();
    for (std::size_t i = 0; i < series.counts.size(); ++i) {
        out << series.first_display + static_cast<Timestamp>(i) << ',' << series.counts[i]
            << ',' << norm[i] << '\n';
    }
    if (!out) throw IoError("series export failed");
}

}  // namespace chronoslice
