#include "chronoslice/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace chronoslice {

void IngestConfig::validate() const {
    if (time_divisor < 1) throw std::invalid_argument("time_divisor must be >= 1");
    if (strict_order && sort_buffer)
        throw std::invalid_argument("strict_order and sort_buffer are mutually exclusive");
}

NodeIndex NodeTable::intern(const std::string& id) {
    auto [it, inserted] = index_.try_emplace(id, static_cast<NodeIndex>(ids_.size()));
    if (inserted) ids_.push_back(id);
    return it->second;
}

namespace {

struct RawRecord {
    std::string source;
    std::string target;
    Timestamp t = 0;
    std::string group_source;  // sociopatterns only
    std::string group_target;
};

Timestamp parse_time(const std::string& tok, std::size_t line_no) {
    Timestamp t = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), t);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(line_no, "bad timestamp '" + tok + "'");
    if (t < 0) throw ParseError(line_no, "negative timestamp");
    return t;
}

bool parse_sociopatterns(const std::string& line, std::size_t line_no, RawRecord& rec) {
    std::istringstream ss(line);
    std::string t_tok;
    if (!(ss >> t_tok)) return false;  // blank line
    if (!(ss >> rec.source >> rec.target))
        throw ParseError(line_no, "expected 't i j [Ci Cj]'");
    ss >> rec.group_source >> rec.group_target;
    rec.t = parse_time(t_tok, line_no);
    return true;
}

bool parse_csv(const std::string& line, std::size_t line_no, RawRecord& rec) {
    if (line.empty()) return false;
    std::istringstream ss(line);
    std::string t_tok;
    if (!std::getline(ss, rec.source, ',') || !std::getline(ss, rec.target, ',') ||
        !std::getline(ss, t_tok, ','))
        throw ParseError(line_no, "expected 'source,target,time'");
    rec.t = parse_time(t_tok, line_no);
    return true;
}

bool parse_jsonl(const std::string& line, std::size_t line_no, RawRecord& rec) {
    if (line.empty()) return false;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(line_no, e.what());
    }
    auto as_string = [&](const char* key) -> std::string {
        if (!j.contains(key)) throw ParseError(line_no, std::string("missing '") + key + "'");
        const auto& v = j.at(key);
        return v.is_string() ? v.get<std::string>() : v.dump();
    };
    rec.source = as_string("source");
    rec.target = as_string("target");
    if (!j.contains("t") || !j.at("t").is_number_integer())
        throw ParseError(line_no, "missing integer 't'");
    rec.t = j.at("t").get<Timestamp>();
    if (rec.t < 0) throw ParseError(line_no, "negative timestamp");
    return true;
}

}  // namespace

IngestResult parse_stream(std::istream& in, const IngestConfig& config) {
    config.validate();
    IngestResult result;

    std::string line;
    std::size_t line_no = 0;
    Timestamp prev_t = 0;
    bool first = true;
    bool skipped_header = config.format != StreamFormat::csv;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!skipped_header) {
            skipped_header = true;
            continue;
        }
        RawRecord rec;
        bool got = false;
        switch (config.format) {
            case StreamFormat::sociopatterns: got = parse_sociopatterns(line, line_no, rec); break;
            case StreamFormat::csv: got = parse_csv(line, line_no, rec); break;
            case StreamFormat::jsonl: got = parse_jsonl(line, line_no, rec); break;
        }
        if (!got) continue;

        const Timestamp t = rec.t / config.time_divisor;
        if (rec.source == rec.target) {
            ++result.self_edges_dropped;
            continue;
        }
        if (!first && config.strict_order && t < prev_t) throw OutOfOrderTimestamp(t, prev_t);
        prev_t = t;
        first = false;

        const NodeIndex s = result.nodes.intern(rec.source);
        const NodeIndex d = result.nodes.intern(rec.target);
        if (!rec.group_source.empty()) result.groups.emplace(s, rec.group_source);
        if (!rec.group_target.empty()) result.groups.emplace(d, rec.group_target);
        result.events.push_back({s, d, t});
    }

    if (config.sort_buffer)
        std::stable_sort(result.events.begin(), result.events.end(),
                         [](const TemporalEdge& a, const TemporalEdge& b) {
                             return a.t_orig < b.t_orig;
                         });

    if (!result.events.empty()) {
        // Rebase so the first timestamp is 0; gaps are preserved.
        result.raw_t_start = result.events.front().t_orig;
        for (auto& e : result.events) e.t_orig -= result.raw_t_start;
        result.meta.t_start = 0;
        result.meta.t_end = result.events.back().t_orig;
    }
    result.meta.node_count = result.nodes.size();
    result.meta.edge_count = result.events.size();
    return result;
}

void write_csv(const std::vector<TemporalEdge>& events, const NodeTable& nodes,
               std::ostream& out) {
    out << "source,target,time\n";
    for (const auto& e : events)
        out << nodes.id(e.source) << ',' << nodes.id(e.target) << ',' << e.t_orig << '\n';
    if (!out) throw IoError("csv export failed");
}

}  // namespace chronoslice
