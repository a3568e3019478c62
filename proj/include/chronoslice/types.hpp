#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace chronoslice {

using Timestamp = std::int64_t;
using NodeIndex = std::uint32_t;

/// One event of the edge stream: two endpoints and a discrete timestamp
/// in original-resolution units. Node ids are opaque tokens; a dense
/// NodeIndex is assigned in first-appearance order by the ingest layer.
struct TemporalEdge {
    NodeIndex source = 0;
    NodeIndex target = 0;
    Timestamp t_orig = 0;

    friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Running metadata for the observed stream. node_count and edge_count
/// are non-decreasing; t_end is the last timestamp seen so far.
struct NetworkMeta {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;   // after filtering
    Timestamp t_start = 0;
    Timestamp t_end = 0;
    std::string resolution_unit;  // documentation only, e.g. "20 s"
};

/// An edge after timeslicing: display timestamp plus the index of the
/// timeslice that produced it. Within one t_display a (source, target)
/// pair appears at most once (duplicates are merged upstream).
struct RemappedEvent {
    NodeIndex source = 0;
    NodeIndex target = 0;
    Timestamp t_display = 0;
    std::size_t slice_index = 0;

    friend bool operator==(const RemappedEvent&, const RemappedEvent&) = default;
};

class OutOfOrderTimestamp : public std::runtime_error {
public:
    OutOfOrderTimestamp(Timestamp got, Timestamp previous)
        : std::runtime_error("timestamp " + std::to_string(got) +
                             " arrived after " + std::to_string(previous)),
          got(got), previous(previous) {}
    Timestamp got;
    Timestamp previous;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line(line) {}
    std::size_t line;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

enum class FilterResult { accept, self_edge, out_of_order };

/// Validation stage of the stream: drops self-edges, rejects timestamp
/// regressions when strict. Pure function, safe from any thread.
inline FilterResult validate_and_filter(const TemporalEdge& e, Timestamp previous_t,
                                        bool strict_order = true) {
    if (e.source == e.target) return FilterResult::self_edge;
    if (strict_order && e.t_orig < previous_t) return FilterResult::out_of_order;
    return FilterResult::accept;
}

/// Order-normalize an endpoint pair for undirected duplicate merging.
inline std::pair<NodeIndex, NodeIndex> normalized_pair(NodeIndex a, NodeIndex b,
                                                       bool directed) {
    if (directed || a <= b) return {a, b};
    return {b, a};
}

}  // namespace chronoslice
