#include "chronoslice/ingest.hpp"
#include "chronoslice/layout.hpp"
#include "chronoslice/pipeline.hpp"
#include "chronoslice/slicer.hpp"
#include "chronoslice/stats.hpp"
#include "chronoslice/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace chronoslice;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

struct IngestOptions {
    std::string input;
    std::string format = "sociopatterns";
    bool directed = false;
    bool sort_buffer = false;
    std::int64_t time_divisor = 1;
};

struct MethodOptions {
    std::string method = "nonuniform";
    std::int64_t w_size = 100;
    double ff = 0.99;
    double delta = 0.2;
    std::string window_axis = "original";
    std::int64_t tau = 1;
    std::int64_t bvc_slices = 0;  // 0: span - 1
};

void add_ingest_options(CLI::App* app, IngestOptions& opt) {
    app->add_option("--input", opt.input, "edge-stream file")->required();
    app->add_option("--format", opt.format, "sociopatterns|csv|jsonl")
        ->check(CLI::IsMember({"sociopatterns", "csv", "jsonl"}));
    app->add_flag("--directed", opt.directed, "directed duplicate merging");
    app->add_flag("--sort-buffer", opt.sort_buffer, "sort by time before processing (offline)");
    app->add_option("--time-divisor", opt.time_divisor,
                    "raw-to-original timestamp divisor (e.g. 20 for SocioPatterns seconds)");
}

void add_method_options(CLI::App* app, MethodOptions& opt) {
    app->add_option("--method", opt.method, "nonuniform|uniform|bvc|none")
        ->check(CLI::IsMember({"nonuniform", "uniform", "bvc", "none"}));
    app->add_option("--wsize", opt.w_size, "window size (original timestamps)");
    app->add_option("--ff", opt.ff, "fading factor alpha");
    app->add_option("--delta", opt.delta, "weight of the current resolution");
    app->add_option("--window-axis", opt.window_axis, "original|display")
        ->check(CLI::IsMember({"original", "display"}));
    app->add_option("--tau", opt.tau, "uniform resolution scale");
    app->add_option("--bvc-slices", opt.bvc_slices, "bvc slice count (0: span - 1)");
}

std::filesystem::path resolve_input(const std::string& path) {
    if (std::filesystem::exists(path)) return path;
    if (const char* dir = std::getenv("CHRONOSLICE_DATA")) {
        const auto candidate = std::filesystem::path(dir) / path;
        if (std::filesystem::exists(candidate)) return candidate;
    }
    throw IoError("input not found: " + path);
}

IngestResult load(const IngestOptions& opt) {
    IngestConfig cfg;
    if (opt.format == "csv") cfg.format = StreamFormat::csv;
    else if (opt.format == "jsonl") cfg.format = StreamFormat::jsonl;
    else cfg.format = StreamFormat::sociopatterns;
    cfg.directed = opt.directed;
    cfg.sort_buffer = opt.sort_buffer;
    cfg.strict_order = !opt.sort_buffer;
    cfg.time_divisor = opt.time_divisor;

    std::ifstream in(resolve_input(opt.input));
    if (!in) throw IoError("cannot open " + opt.input);
    return parse_stream(in, cfg);
}

MethodConfig to_method(const MethodOptions& opt) {
    MethodConfig m;
    if (opt.method == "uniform") {
        m.kind = MethodConfig::Kind::uniform;
        m.tau = opt.tau;
        if (m.tau < 1) throw std::invalid_argument("tau must be >= 1");
    } else if (opt.method == "bvc") {
        m.kind = MethodConfig::Kind::bvc;
        if (opt.bvc_slices > 0) m.bvc_slices = opt.bvc_slices;
    } else if (opt.method == "none") {
        m.kind = MethodConfig::Kind::none;
    } else {
        m.kind = MethodConfig::Kind::nonuniform;
        m.slicer.w_size = opt.w_size;
        m.slicer.alpha = opt.ff;
        m.slicer.delta = opt.delta;
        m.slicer.window_axis =
            opt.window_axis == "display" ? WindowAxis::display : WindowAxis::original;
        m.slicer.validate();
    }
    return m;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

int cmd_slice(const IngestOptions& iopt, const MethodOptions& mopt,
              const std::string& schedule_path, const std::string& summary_path,
              const std::string& events_path) {
    const IngestResult data = load(iopt);
    const MethodConfig method = to_method(mopt);
    const SliceOutput out = run_method(data.events, method, iopt.directed);

    std::ostringstream summary_buf;
    if (!schedule_path.empty()) {
        auto f = open_out(schedule_path);
        export_schedule(out.records, f, summary_buf);
    } else {
        std::ostringstream ignored;
        export_schedule(out.records, ignored, summary_buf);
    }

    nlohmann::json summary = nlohmann::json::parse(summary_buf.str());
    summary["method"] = method.name();
    summary["nodes"] = data.meta.node_count;
    summary["events"] = data.meta.edge_count;
    summary["self_edges_dropped"] = data.self_edges_dropped;
    summary["merged_duplicates"] = out.merged;
    summary["display_timestamps"] = out.display_timestamps;  // all methods
    if (!summary_path.empty())
        open_out(summary_path) << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << '\n';

    if (!events_path.empty()) {
        auto f = open_out(events_path);
        f << "source,target,t_display,slice\n";
        for (const auto& e : out.events)
            f << data.nodes.id(e.source) << ',' << data.nodes.id(e.target) << ','
              << e.t_display << ',' << e.slice_index << '\n';
    }
    return kExitOk;
}

int cmd_render(const IngestOptions& iopt, const MethodOptions& mopt, LayoutSpec spec,
               const std::string& order_file, bool use_groups, const std::string& out_path) {
    const IngestResult data = load(iopt);
    const MethodConfig method = to_method(mopt);
    const SliceOutput out = run_method(data.events, method, iopt.directed);

    if (!order_file.empty()) {
        spec.order = NodeOrder::external_file;
        std::ifstream f(resolve_input(order_file));
        if (!f) throw IoError("cannot open order file " + order_file);
        std::string line;
        while (std::getline(f, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) spec.external_order.push_back(line);
        }
    }
    if (use_groups) spec.groups = data.groups;

    const RowAssignment rows = order_nodes(data.events, data.nodes, spec);
    for (const auto& w : rows.warnings) std::cerr << "warning: " << w << '\n';

    const std::string svg = spec.kind == LayoutKind::msv
                                ? render_msv(out.events, out.records, rows, data.nodes, spec)
                                : render_tam(out.events, out.records, rows, data.nodes, spec);
    open_out(out_path) << svg;
    return kExitOk;
}

int cmd_stats(const IngestOptions& iopt, const MethodOptions& mopt,
              const std::string& spread_path, const std::string& ecdf_path) {
    const IngestResult data = load(iopt);
    const MethodConfig method = to_method(mopt);
    const SliceOutput out = run_method(data.events, method, iopt.directed);
    const SpreadSeries series = out.spread_full();

    if (!spread_path.empty()) {
        auto f = open_out(spread_path);
        write_series_csv(series, f);
    }
    const EcdfReport report = ecdf(series);
    nlohmann::json j{{"method", method.name()},
                     {"display_timestamps", out.display_timestamps},
                     {"empty_fraction", report.empty_fraction},
                     {"max_per_timestamp", report.max_count},
                     {"q3_per_timestamp", report.q3_count},
                     {"q3_fraction_of_max", report.q3_fraction_of_max}};
    if (!ecdf_path.empty()) open_out(ecdf_path) << j.dump(2) << '\n';
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_compare(const IngestOptions& iopt, const MethodOptions& mopt,
                const std::vector<std::int64_t>& taus, bool with_bvc, bool with_res1,
                const std::string& json_path, const std::string& table_path) {
    const IngestResult data = load(iopt);
    std::vector<StrategyStats> strategies;

    MethodConfig ours = to_method(mopt);
    ours.kind = MethodConfig::Kind::nonuniform;
    strategies.push_back(run_method(data.events, ours, iopt.directed).strategy_stats(ours.name()));

    if (with_res1) {
        MethodConfig m;
        m.kind = MethodConfig::Kind::none;
        strategies.push_back(run_method(data.events, m, iopt.directed).strategy_stats("res-1"));
    }
    for (std::int64_t tau : taus) {
        MethodConfig m;
        m.kind = MethodConfig::Kind::uniform;
        m.tau = tau;
        strategies.push_back(run_method(data.events, m, iopt.directed).strategy_stats(m.name()));
    }
    if (with_bvc) {
        MethodConfig m;
        m.kind = MethodConfig::Kind::bvc;
        strategies.push_back(run_method(data.events, m, iopt.directed).strategy_stats("bvc"));
    }

    const std::string table = compare_report_table(strategies);
    if (!json_path.empty()) open_out(json_path) << compare_report_json(strategies);
    if (!table_path.empty()) open_out(table_path) << table;
    std::cout << table;
    return kExitOk;
}

int cmd_synth(const std::string& phases_arg, std::uint64_t seed, const std::string& out_path) {
    std::vector<SynthPhase> phases;
    std::istringstream ss(phases_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        SynthPhase p;
        if (std::sscanf(tok.c_str(), "%ld:%ld:%ld", &p.span, &p.events_per_timestamp,
                        &p.node_pool) != 3)
            throw std::invalid_argument("bad phase '" + tok + "', expected span:rate:pool");
        phases.push_back(p);
    }
    const auto events = synth_stream(phases, seed);
    NodeTable nodes;
    std::int64_t max_node = 0;
    for (const auto& p : phases) max_node = std::max(max_node, p.node_pool);
    for (std::int64_t v = 0; v < max_node; ++v) nodes.intern(std::to_string(v));
    auto f = open_out(out_path);
    write_csv(events, nodes, f);
    std::cerr << "wrote " << events.size() << " events\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chronoslice: online nonuniform timeslicing for temporal edge streams"};
    app.require_subcommand(1);

    IngestOptions iopt;
    MethodOptions mopt;

    auto* slice = app.add_subcommand("slice", "run a timeslicing strategy, export the schedule");
    add_ingest_options(slice, iopt);
    add_method_options(slice, mopt);
    std::string schedule_path, summary_path, events_path;
    slice->add_option("--schedule", schedule_path, "schedule JSONL output");
    slice->add_option("--summary", summary_path, "summary JSON output");
    slice->add_option("--events", events_path, "remapped events CSV output");

    auto* render = app.add_subcommand("render", "render an MSV or TAM SVG");
    add_ingest_options(render, iopt);
    add_method_options(render, mopt);
    LayoutSpec lspec;
    std::string layout_kind = "msv", order = "appearance", order_file, svg_path;
    bool use_groups = false;
    std::int64_t gap_elide = 0;
    render->add_option("--layout", layout_kind, "msv|tam")
        ->check(CLI::IsMember({"msv", "tam"}));
    render->add_option("--order", order, "appearance|degree|lexicographic")
        ->check(CLI::IsMember({"appearance", "degree", "lexicographic"}));
    render->add_option("--order-file", order_file, "node-id-per-line row order");
    render->add_flag("--groups", use_groups, "band rows by harvested group labels");
    render->add_option("--gap-elide", gap_elide, "collapse runs of >= N empty columns");
    render->add_option("--cell", lspec.cell_size, "cell size in pixels");
    render->add_option("--palette", lspec.slice_palette, "slice colors, cycled");
    render->add_flag("--tam-intensity", lspec.tam_count_intensity,
                     "scale TAM fill with event count (non-standard)");
    render->add_option("--out", svg_path, "SVG output")->required();

    auto* stats = app.add_subcommand("stats", "spread and ECDF statistics");
    add_ingest_options(stats, iopt);
    add_method_options(stats, mopt);
    std::string spread_path, ecdf_path;
    stats->add_option("--spread", spread_path, "per-timestamp series CSV output");
    stats->add_option("--ecdf", ecdf_path, "ECDF report JSON output");

    auto* compare = app.add_subcommand("compare", "compare strategies on one input");
    add_ingest_options(compare, iopt);
    add_method_options(compare, mopt);
    std::vector<std::int64_t> taus;
    bool with_bvc = false, no_res1 = false;
    std::string cmp_json, cmp_table;
    compare->add_option("--uniform", taus, "uniform tau values to include");
    compare->add_flag("--bvc", with_bvc, "include the bvc baseline (offline)");
    compare->add_flag("--no-res1", no_res1, "skip the res-1 reference");
    compare->add_option("--out-json", cmp_json, "comparison JSON output");
    compare->add_option("--out-table", cmp_table, "comparison table output");

    auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic stream");
    std::string phases = "100:2:10";
    std::uint64_t seed = 1;
    std::string synth_out;
    synth->add_option("--phases", phases, "comma-separated span:rate:pool phases");
    synth->add_option("--seed", seed, "RNG seed");
    synth->add_option("--out", synth_out, "CSV output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (slice->parsed()) return cmd_slice(iopt, mopt, schedule_path, summary_path, events_path);
        if (render->parsed()) {
            lspec.kind = layout_kind == "tam" ? LayoutKind::tam : LayoutKind::msv;
            if (order == "degree") lspec.order = NodeOrder::degree;
            else if (order == "lexicographic") lspec.order = NodeOrder::lexicographic;
            else lspec.order = NodeOrder::appearance;
            if (gap_elide > 0) lspec.gap_elision_threshold = gap_elide;
            return cmd_render(iopt, mopt, lspec, order_file, use_groups, svg_path);
        }
        if (stats->parsed()) return cmd_stats(iopt, mopt, spread_path, ecdf_path);
        if (compare->parsed())
            return cmd_compare(iopt, mopt, taus, with_bvc, !no_res1, cmp_json, cmp_table);
        if (synth->parsed()) return cmd_synth(phases, seed, synth_out);
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const OutOfOrderTimestamp& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
