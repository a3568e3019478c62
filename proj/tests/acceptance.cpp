// Acceptance suite: one pass/fail line per criterion. Dataset-backed
// criteria need CHRONOSLICE_DATA to point at a directory containing
//   primaryschool.csv  (SocioPatterns "t i j Ci Cj", 20 s ticks)
//   enron.csv          ("source,target,time" CSV, 1-day ticks)
// and are reported as SKIP when the files are absent.
#include "chronoslice/ingest.hpp"
#include "chronoslice/pipeline.hpp"
#include "chronoslice/slicer.hpp"
#include "chronoslice/stats.hpp"
#include "chronoslice/synth.hpp"
#include "reference_slicer.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace chronoslice;
namespace fs = std::filesystem;

namespace {

int failures = 0;
int passes = 0;
int skips = 0;

void report(const std::string& id, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << '\n';
    (ok ? passes : failures)++;
}

void skip(const std::string& id, const std::string& why) {
    std::cout << "[SKIP] " << id << "  (" << why << ")\n";
    ++skips;
}

bool within_rel(double value, double target, double rel) {
    return std::abs(value - target) <= rel * target;
}

std::optional<IngestResult> load_dataset(const std::string& file, StreamFormat format,
                                         std::int64_t divisor) {
    const char* dir = std::getenv("CHRONOSLICE_DATA");
    if (!dir) return std::nullopt;
    const fs::path path = fs::path(dir) / file;
    if (!fs::exists(path)) return std::nullopt;
    std::ifstream in(path);
    IngestConfig cfg;
    cfg.format = format;
    cfg.time_divisor = divisor;
    cfg.strict_order = false;
    cfg.sort_buffer = true;
    return parse_stream(in, cfg);
}

SliceOutput run_ours(const IngestResult& data, std::int64_t w, double ff,
                     double delta = 0.2) {
    MethodConfig m;
    m.slicer.w_size = w;
    m.slicer.alpha = ff;
    m.slicer.delta = delta;
    return run_method(data.events, m);
}

// ---- criteria ------------------------------------------------------------

void criterion_1(const std::optional<IngestResult>& ps) {
    const std::string id = "1. Primary School display-timestamp totals";
    if (!ps) return skip(id, "dataset not found");
    struct Row {
        std::int64_t w;
        double ff;
        std::int64_t expected;
    };
    const Row rows[] = {{50, 0.9, 1443}, {50, 0.99, 353}, {200, 0.9, 4880},
                        {200, 0.99, 541}, {100, 0.99, 393}};
    bool ok = true;
    std::ostringstream detail;
    std::vector<std::int64_t> fig3;
    for (const auto& row : rows) {
        const auto total = run_ours(*ps, row.w, row.ff).display_timestamps;
        if (fig3.size() < 4) fig3.push_back(total);
        detail << 'w' << row.w << "/ff" << row.ff << ": " << total << " vs " << row.expected
               << "; ";
        ok = ok && within_rel(static_cast<double>(total),
                              static_cast<double>(row.expected), 0.10);
    }
    // published ordering of the four Fig.-3 totals must be exact:
    // (50,0.99) < (200,0.99) < (50,0.9) < (200,0.9)
    ok = ok && fig3[1] < fig3[3] && fig3[3] < fig3[0] && fig3[0] < fig3[2];
    report(id, ok, detail.str());
}

void criterion_2(const std::optional<IngestResult>& ps) {
    const std::string id = "2. Primary School adopted-resolution envelope (w=100, ff=0.99)";
    if (!ps) return skip(id, "dataset not found");
    const auto s = run_ours(*ps, 100, 0.99).summary();
    std::ostringstream detail;
    detail << "min " << s.sigma_min << " mean " << s.sigma_mean << " max " << s.sigma_max;
    const bool ok = within_rel(static_cast<double>(s.sigma_min), 10.0, 0.20) &&
                    within_rel(static_cast<double>(s.sigma_max), 39.0, 0.20) &&
                    std::abs(s.sigma_mean - 25.0) <= 5.0;
    report(id, ok, detail.str());
}

void criterion_3(const std::optional<IngestResult>& ps) {
    const std::string id = "3. Primary School cold-start fraction (w=100, ff=0.99)";
    if (!ps) return skip(id, "dataset not found");
    const auto s = run_ours(*ps, 100, 0.99).summary();
    const double fraction = static_cast<double>(s.cold_start_display_timestamps) /
                            static_cast<double>(s.display_timestamps);
    std::ostringstream detail;
    detail << fraction * 100.0 << "% vs 25.4%";
    report(id, std::abs(fraction - 0.254) <= 0.03, detail.str());
}

void criterion_4(const std::optional<IngestResult>& ps) {
    const std::string id = "4. Primary School empty-timestamp fractions";
    if (!ps) return skip(id, "dataset not found");
    MethodConfig res1;
    res1.kind = MethodConfig::Kind::none;
    const double res1_empty =
        ecdf(run_method(ps->events, res1).spread_full()).empty_fraction;
    const double ours_empty =
        ecdf(run_ours(*ps, 100, 0.99).spread_full()).empty_fraction;
    std::ostringstream detail;
    detail << "res-1 " << res1_empty * 100.0 << "% vs 47%, ours " << ours_empty * 100.0
           << "% vs 36.6%";
    report(id,
           std::abs(res1_empty - 0.47) <= 0.01 && std::abs(ours_empty - 0.366) <= 0.05,
           detail.str());
}

void criterion_5(const std::optional<IngestResult>& enron) {
    const std::string id = "5. Enron totals and resolution envelope";
    if (!enron) return skip(id, "dataset not found");
    struct Row {
        std::int64_t w;
        double ff;
        std::int64_t expected;
    };
    const Row rows[] = {{100, 0.9, 921}, {50, 0.99, 357}, {100, 0.99, 448}, {200, 0.99, 579}};
    bool ok = true;
    std::ostringstream detail;
    for (const auto& row : rows) {
        const auto total = run_ours(*enron, row.w, row.ff).display_timestamps;
        detail << 'w' << row.w << "/ff" << row.ff << ": " << total << " vs " << row.expected
               << "; ";
        ok = ok && within_rel(static_cast<double>(total),
                              static_cast<double>(row.expected), 0.10);
    }
    const auto s = run_ours(*enron, 100, 0.9).summary();
    detail << "envelope " << s.sigma_min << '/' << s.sigma_mean << '/' << s.sigma_max;
    ok = ok && s.sigma_min == 1 && std::abs(s.sigma_mean - 2.0) <= 1.0 &&
         std::abs(s.sigma_max - 7) <= 1;
    report(id, ok, detail.str());
}

void criterion_6(const std::optional<IngestResult>& ps,
                 const std::optional<IngestResult>& enron) {
    const std::string id = "6. Baseline display-timestamp counts";
    if (!ps || !enron) return skip(id, "dataset not found");
    auto uniform_total = [](const IngestResult& data, std::int64_t tau) {
        MethodConfig m;
        m.kind = MethodConfig::Kind::uniform;
        m.tau = tau;
        return run_method(data.events, m).display_timestamps;
    };
    auto bvc_total = [](const IngestResult& data) {
        MethodConfig m;
        m.kind = MethodConfig::Kind::bvc;
        return run_method(data.events, m).display_timestamps;
    };
    const auto res2 = uniform_total(*enron, 2);
    const auto res7 = uniform_total(*enron, 7);
    const auto bvc_enron = bvc_total(*enron);
    const auto bvc_ps = bvc_total(*ps);
    std::ostringstream detail;
    detail << "enron res2 " << res2 << "/673, res7 " << res7 << "/193, bvc " << bvc_enron
           << "/1345, ps bvc " << bvc_ps << "/5845";
    report(id, res2 == 673 && res7 == 193 && bvc_enron == 1345 && bvc_ps == 5845,
           detail.str());
}

void criterion_7() {
    const bool ok = remap_timestamp(130, 100, 2, 100) == 115 &&
                    remap_timestamp(131, 100, 2, 100) == 115;
    report("7. resolution-2 window regression (130->115, 131->115)", ok);
}

void criterion_8() {
    std::mt19937_64 rng(424242);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        std::vector<SynthPhase> phases;
        const int phase_count = 1 + static_cast<int>(rng() % 4);
        for (int p = 0; p < phase_count; ++p)
            phases.push_back({1 + static_cast<std::int64_t>(rng() % 50),
                              static_cast<std::int64_t>(rng() % 10), 10});
        const auto events = synth_stream(phases, rng());
        if (events.empty()) continue;

        SlicerConfig cfg;
        cfg.w_size = 1 + static_cast<std::int64_t>(rng() % 30);
        cfg.alpha = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
        cfg.delta = std::uniform_real_distribution<double>(0.0, 1.0)(rng);

        Slicer slicer(cfg);
        std::vector<std::pair<std::size_t, Timestamp>> displays;
        for (std::size_t i = 0; i < events.size(); ++i)
            if (auto m = slicer.process(events[i])) displays.emplace_back(i, m->t_display);
        slicer.finish();

        const auto ref = testing::reference_slice(events, cfg.w_size, cfg.alpha, cfg.delta);
        ok = ok && slicer.records() == ref.slices;
        for (const auto& [idx, disp] : displays)
            ok = ok && disp == ref.event_display[idx];
    }
    report("8. streaming schedule bit-identical to batch reference (1000 streams)", ok);
}

void criterion_9() {
    bool ok = true;
    std::mt19937_64 rng(99);

    // t_display non-decreasing on bursty streams
    const auto events = synth_stream({{80, 1, 8}, {40, 25, 8}, {80, 1, 8}}, 3);
    MethodConfig m;
    m.slicer = SlicerConfig{30, 0.95, 0.2};
    const auto out = run_method(events, m);
    for (std::size_t i = 1; i < out.events.size(); ++i)
        ok = ok && out.events[i].t_display >= out.events[i - 1].t_display;

    // uniform_remap idempotent + monotone
    for (int trial = 0; trial < 200; ++trial) {
        const UniformConfig cfg{1 + static_cast<std::int64_t>(rng() % 20), 0};
        Timestamp a = static_cast<Timestamp>(rng() % 10000);
        Timestamp b = a + static_cast<Timestamp>(rng() % 1000);
        ok = ok && uniform_remap(uniform_remap(a, cfg), cfg) == uniform_remap(a, cfg);
        ok = ok && uniform_remap(a, cfg) <= uniform_remap(b, cfg);
    }

    // ECDF non-decreasing, final value 1
    const auto report_ecdf = ecdf(out.spread_full());
    for (std::size_t i = 1; i < report_ecdf.cumulative.size(); ++i)
        ok = ok && report_ecdf.cumulative[i] >= report_ecdf.cumulative[i - 1];
    ok = ok && !report_ecdf.cumulative.empty() &&
         std::abs(report_ecdf.cumulative.back() - 1.0) < 1e-12;

    // alpha-monotonicity of the fading sum per window
    std::uniform_int_distribution<std::int64_t> dist(0, 15);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::int64_t> counts(20);
        std::int64_t active = 0;
        for (auto& x : counts) {
            x = dist(rng);
            if (x > 0) ++active;
        }
        double a1 = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
        double a2 = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
        if (a1 > a2) std::swap(a1, a2);
        ok = ok && fading_sum(counts, active, a1) <= fading_sum(counts, active, a2) + 1e-12;
    }
    report("9. monotonicity suite", ok);
}

void criterion_10(const std::optional<IngestResult>& ps) {
    const std::string id = "10. memory contract (bounded retained state)";
    // Contract exercised on synthetic data regardless of dataset
    // availability: peak state must not scale with stream length.
    const auto short_stream = synth_stream({{500, 6, 16}}, 1);
    const auto long_stream = synth_stream({{5000, 6, 16}}, 1);
    auto peak = [](const std::vector<TemporalEdge>& events) {
        MethodConfig m;
        m.slicer = SlicerConfig{60, 0.95, 0.2};
        return run_method(events, m).peak_state;
    };
    bool ok = peak(long_stream) <= peak(short_stream) + 16 * 16;
    std::ostringstream detail;
    if (ps) {
        const auto out = run_ours(*ps, 100, 0.99);
        const auto max_per_ts =
            ecdf(out.spread_full()).max_count;  // dedup set never exceeds this
        detail << "primary-school peak " << out.peak_state << " <= 100 + " << max_per_ts;
        ok = ok && out.peak_state <=
                       static_cast<std::size_t>(100 + max_per_ts);
    } else {
        detail << "synthetic only; dataset not found";
    }
    report(id, ok, detail.str());
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CHRONOSLICE_CLI_PATH) + " " + args;
    return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_11() {
    const std::string id = "11. CLI pipelines are byte-deterministic";
    const fs::path dir = fs::temp_directory_path() / "chronoslice_acceptance";
    fs::create_directories(dir);
    const std::string input = (dir / "stream.csv").string();
    bool ok = run_cli("synth --phases 60:2:12,40:18:12,60:2:12 --seed 7 --out " + input +
                      " 2>/dev/null") == 0;

    for (int round = 1; round <= 2 && ok; ++round) {
        const std::string suffix = std::to_string(round);
        ok = ok && run_cli("slice --input " + input +
                           " --format csv --method nonuniform --wsize 40 --ff 0.95 "
                           "--delta 0.2 --schedule " +
                           (dir / ("sched" + suffix + ".jsonl")).string() + " --summary " +
                           (dir / ("sum" + suffix + ".json")).string() +
                           " >/dev/null") == 0;
        ok = ok && run_cli("render --input " + input +
                           " --format csv --method nonuniform --wsize 40 --ff 0.95 "
                           "--layout tam --out " +
                           (dir / ("tam" + suffix + ".svg")).string() + " >/dev/null") == 0;
        ok = ok && run_cli("stats --input " + input +
                           " --format csv --method uniform --tau 3 --spread " +
                           (dir / ("spread" + suffix + ".csv")).string() + " >/dev/null") == 0;
    }
    for (const char* base : {"sched", "sum", "tam", "spread"}) {
        const auto ext = std::string(base) == "tam"      ? ".svg"
                         : std::string(base) == "spread" ? ".csv"
                         : std::string(base) == "sched"  ? ".jsonl"
                                                         : ".json";
        ok = ok && slurp(dir / (std::string(base) + "1" + ext)) ==
                       slurp(dir / (std::string(base) + "2" + ext));
        ok = ok && !slurp(dir / (std::string(base) + "1" + ext)).empty();
    }
    report(id, ok);
}

void criterion_12(const std::optional<IngestResult>& ps,
                  const std::optional<IngestResult>& enron) {
    // (a) the Primary School inter-day gap spans at least one fully
    // empty committed slice
    {
        const std::string id = "12a. inter-day gap occupies >= 1 fully empty slice";
        if (!ps) {
            skip(id, "dataset not found");
        } else {
            const auto out = run_ours(*ps, 100, 0.99);
            std::vector<bool> active(
                static_cast<std::size_t>(out.display_timestamps), false);
            for (const auto& e : out.events)
                active[static_cast<std::size_t>(e.t_display -
                                                out.records.front().display_first)] = true;
            bool found = false;
            for (const auto& rec : out.records) {
                bool any = false;
                for (Timestamp t = rec.display_first; t <= rec.display_last; ++t)
                    any = any || active[static_cast<std::size_t>(
                                     t - out.records.front().display_first)];
                found = found || !any;
            }
            report(id, found);
        }
    }
    // (b) class 2B joins the network strictly after the stream starts
    {
        const std::string id = "12b. class 2B has no activity before its first appearance";
        if (!ps) {
            skip(id, "dataset not found");
        } else {
            Timestamp first_2b = -1;
            for (const auto& e : ps->events) {
                auto in_2b = [&](NodeIndex v) {
                    auto it = ps->groups.find(v);
                    return it != ps->groups.end() && it->second == "2B";
                };
                if (in_2b(e.source) || in_2b(e.target)) {
                    first_2b = e.t_orig;
                    break;
                }
            }
            report(id, first_2b > ps->meta.t_start,
                   "first 2B event at t=" + std::to_string(first_2b));
        }
    }
    // (c) Enron per-timestamp counts grow from the first to the last
    // quarter of the timeline under res-1
    {
        const std::string id = "12c. Enron event counts grow over time (res-1)";
        if (!enron) {
            skip(id, "dataset not found");
        } else {
            MethodConfig res1;
            res1.kind = MethodConfig::Kind::none;
            const auto series = run_method(enron->events, res1).spread_full();
            const std::size_t q = series.counts.size() / 4;
            auto mean = [&](std::size_t from, std::size_t to) {
                std::int64_t sum = 0;
                for (std::size_t i = from; i < to; ++i) sum += series.counts[i];
                return static_cast<double>(sum) / static_cast<double>(to - from);
            };
            const double first_q = mean(0, q);
            const double last_q = mean(series.counts.size() - q, series.counts.size());
            std::ostringstream detail;
            detail << "first quartile mean " << first_q << ", last " << last_q;
            report(id, last_q > first_q, detail.str());
        }
    }
}

}  // namespace

int main() {
    const auto ps = load_dataset("primaryschool.csv", StreamFormat::sociopatterns, 20);
    const auto enron = load_dataset("enron.csv", StreamFormat::csv, 1);
    if (!ps || !enron)
        std::cout << "note: set CHRONOSLICE_DATA to a directory with "
                     "primaryschool.csv / enron.csv to run dataset criteria\n";

    criterion_1(ps);
    criterion_2(ps);
    criterion_3(ps);
    criterion_4(ps);
    criterion_5(enron);
    criterion_6(ps, enron);
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(ps);
    criterion_11();
    criterion_12(ps, enron);

    std::cout << passes << " passed, " << failures << " failed, " << skips
              << " skipped\n";
    return failures == 0 ? 0 : 1;
}
