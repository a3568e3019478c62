#pragma once

#include "chronoslice/ingest.hpp"
#include "chronoslice/slicer.hpp"
#include "chronoslice/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chronoslice {

enum class LayoutKind { msv, tam };
enum class NodeOrder { appearance, degree, lexicographic, external_file };

struct LayoutSpec {
    LayoutKind kind = LayoutKind::msv;
    NodeOrder order = NodeOrder::appearance;
    std::vector<std::string> external_order;  // node ids, one per row
    NodeGroups groups;                        // empty: no grouping
    std::optional<std::int64_t> gap_elision_threshold;  // collapse runs of >= k empty columns
    std::vector<std::string> slice_palette = {"#2166ac", "#b2182b"};
    int cell_size = 4;
    int margin_left = 48;
    int margin_top = 20;
    bool tam_count_intensity = false;  // non-standard extension, off by default

    void validate() const;
};

/// Node-to-row bijection with contiguous group bands.
struct RowAssignment {
    std::vector<NodeIndex> row_to_node;
    std::vector<std::size_t> node_to_row;
    // band label + [first_row, last_row] (inclusive); empty label = ungrouped
    struct Band {
        std::string label;
        std::size_t first_row;
        std::size_t last_row;
    };
    std::vector<Band> bands;
    std::vector<std::string> warnings;  // e.g. external order file omissions
};

/// Assign rows by the requested order; grouped nodes occupy contiguous
/// bands. Degree ties break by lexicographic node id; nodes missing
/// from an external order file are appended with a warning.
RowAssignment order_nodes(const std::vector<TemporalEdge>& events, const NodeTable& nodes,
                          const LayoutSpec& spec);

/// MSV: x-axis display timestamps, y-axis node rows, one vertical line
/// per merged edge, activity marks at both endpoints. Slice boundaries
/// cycle the palette. Deterministic byte output.
std::string render_msv(const std::vector<RemappedEvent>& events,
                       const std::vector<SliceRecord>& slices, const RowAssignment& rows,
                       const NodeTable& nodes, const LayoutSpec& spec);

/// TAM: one filled square per (node, display timestamp) with at least
/// one incident event; edges omitted.
std::string render_tam(const std::vector<RemappedEvent>& events,
                       const std::vector<SliceRecord>& slices, const RowAssignment& rows,
                       const NodeTable& nodes, const LayoutSpec& spec);

}  // namespace chronoslice
