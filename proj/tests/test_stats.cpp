#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chronoslice/pipeline.hpp"
#include "chronoslice/stats.hpp"
#include "chronoslice/synth.hpp"

#include <set>
#include <sstream>
#include <tuple>

using namespace chronoslice;

TEST_CASE("spread counts per display timestamp with zeros") {
    const std::vector<RemappedEvent> events{{0, 1, 0, 0}, {2, 3, 0, 0}, {0, 2, 2, 0}};
    const SpreadSeries s = spread(events);
    CHECK(s.first_display == 0);
    CHECK(s.counts == std::vector<std::int64_t>{2, 0, 1});
    const auto norm = s.normalized();
    CHECK(norm[0] == doctest::Approx(1.0));
    CHECK(norm[1] == doctest::Approx(0.0));
    CHECK(norm[2] == doctest::Approx(0.5));
}

TEST_CASE("spread of res-1 equals the raw histogram") {
    const auto raw = synth_stream({{30, 2, 20}}, 3);
    MethodConfig m;
    m.kind = MethodConfig::Kind::none;
    const auto out = run_method(raw, m);
    const SpreadSeries s = out.spread_full();

    std::vector<std::int64_t> hist(30, 0);
    // post-merge histogram: duplicates within a timestamp count once
    std::set<std::tuple<Timestamp, NodeIndex, NodeIndex>> seen;
    for (const auto& e : raw) {
        auto [a, b] = normalized_pair(e.source, e.target, false);
        if (seen.emplace(e.t_orig, a, b).second) ++hist[static_cast<std::size_t>(e.t_orig)];
    }
    hist.resize(s.counts.size());
    CHECK(s.counts == hist);
    CHECK(s.total() + static_cast<std::int64_t>(out.merged) ==
          static_cast<std::int64_t>(raw.size()));
}

TEST_CASE("ecdf report fields") {
    SpreadSeries s{0, {0, 0, 1, 3}};
    const EcdfReport r = ecdf(s);
    CHECK(r.empty_fraction == doctest::Approx(0.5));
    CHECK(r.max_count == 3);
    CHECK(r.cumulative.front() == doctest::Approx(0.25));
    CHECK(r.cumulative.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < r.cumulative.size(); ++i) {
        CHECK(r.cumulative[i] >= r.cumulative[i - 1]);
        CHECK(r.sorted_counts[i] >= r.sorted_counts[i - 1]);
    }
}

TEST_CASE("bvc flattens the spread relative to res-1") {
    // bursty stream: quiet, storm, quiet
    const auto raw = synth_stream({{60, 1, 30}, {30, 40, 30}, {60, 1, 30}}, 9);

    MethodConfig res1;
    res1.kind = MethodConfig::Kind::none;
    MethodConfig bvc;
    bvc.kind = MethodConfig::Kind::bvc;
    bvc.bvc_slices = 15;  // the default (span - 1) would barely compress

    const double cv_res1 = run_method(raw, res1).spread_full().coefficient_of_variation();
    const double cv_bvc = run_method(raw, bvc).spread_full().coefficient_of_variation();
    CHECK(cv_bvc < cv_res1);
}

TEST_CASE("compression never expands time") {
    const auto raw = synth_stream({{50, 2, 10}, {50, 30, 10}, {50, 2, 10}}, 77);
    MethodConfig ours;
    ours.slicer = SlicerConfig{25, 0.95, 0.2};
    MethodConfig res1;
    res1.kind = MethodConfig::Kind::none;
    const auto a = run_method(raw, ours);
    const auto b = run_method(raw, res1);
    CHECK(a.display_timestamps <= b.display_timestamps);
}

TEST_CASE("compare report consolidates strategies") {
    const auto raw = synth_stream({{40, 2, 8}, {40, 10, 8}}, 5);
    std::vector<StrategyStats> strategies;
    MethodConfig ours;
    ours.slicer = SlicerConfig{20, 0.9, 0.2};
    strategies.push_back(run_method(raw, ours).strategy_stats("ours"));
    MethodConfig uni;
    uni.kind = MethodConfig::Kind::uniform;
    uni.tau = 2;
    strategies.push_back(run_method(raw, uni).strategy_stats("uniform(2)"));

    const std::string json = compare_report_json(strategies);
    CHECK(json.find("\"ours\"") != std::string::npos);
    CHECK(json.find("sigma_mean") != std::string::npos);
    const std::string table = compare_report_table(strategies);
    CHECK(table.find("uniform(2)") != std::string::npos);
}

TEST_CASE("series csv is plot-ready") {
    SpreadSeries s{10, {2, 0, 4}};
    std::ostringstream out;
    write_series_csv(s, out);
    CHECK(out.str() == "t,count,norm\n10,2,0.5\n11,0,0\n12,4,1\n");
}
