#pragma once

#include "chronoslice/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace chronoslice {

enum class StreamFormat { sociopatterns, csv, jsonl };

struct IngestConfig {
    StreamFormat format = StreamFormat::sociopatterns;
    bool directed = false;
    bool strict_order = true;
    bool sort_buffer = false;  // offline convenience; excludes strict_order
    std::int64_t time_divisor = 1;

    void validate() const;
};

/// Opaque node ids interned to dense indexes in first-appearance order.
class NodeTable {
public:
    NodeIndex intern(const std::string& id);
    const std::string& id(NodeIndex idx) const { return ids_.at(idx); }
    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
};

using NodeGroups = std::unordered_map<NodeIndex, std::string>;

struct IngestResult {
    std::vector<TemporalEdge> events;  // non-decreasing t_orig, rebased to 0
    NetworkMeta meta;
    NodeTable nodes;
    NodeGroups groups;
    std::size_t self_edges_dropped = 0;
    Timestamp raw_t_start = 0;  // first timestamp before rebasing, for axis labels
};

/// Parse a line-oriented edge-stream file. Timestamps are divided by
/// time_divisor and rebased so the first one maps to 0; SocioPatterns
/// group columns are harvested when present. Throws ParseError with the
/// line number, OutOfOrderTimestamp in strict mode.
IngestResult parse_stream(std::istream& in, const IngestConfig& config);

/// Serialize events back to "source,target,time" CSV (with header).
void write_csv(const std::vector<TemporalEdge>& events, const NodeTable& nodes,
               std::ostream& out);

}  // namespace chronoslice
