#include "chronoslice/layout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace chronoslice {

void LayoutSpec::validate() const {
    if (slice_palette.empty()) throw std::invalid_argument("slice palette must be nonempty");
    if (gap_elision_threshold && *gap_elision_threshold < 2)
        throw std::invalid_argument("gap elision threshold must be >= 2");
    if (cell_size < 1) throw std::invalid_argument("cell size must be >= 1");
}

RowAssignment order_nodes(const std::vector<TemporalEdge>& events, const NodeTable& nodes,
                          const LayoutSpec& spec) {
    const std::size_t n = nodes.size();
    RowAssignment out;
    std::vector<NodeIndex> base;
    base.reserve(n);

    switch (spec.order) {
        case NodeOrder::appearance: {
            std::vector<bool> seen(n, false);
            auto visit = [&](NodeIndex v) {
                if (!seen[v]) {
                    seen[v] = true;
                    base.push_back(v);
                }
            };
            for (const auto& e : events) {
                visit(e.source);
                visit(e.target);
            }
            for (NodeIndex v = 0; v < n; ++v) visit(v);
            break;
        }
        case NodeOrder::degree: {
            std::vector<std::int64_t> degree(n, 0);
            for (const auto& e : events) {
                ++degree[e.source];
                ++degree[e.target];
            }
            for (NodeIndex v = 0; v < n; ++v) base.push_back(v);
            std::sort(base.begin(), base.end(), [&](NodeIndex a, NodeIndex b) {
                if (degree[a] != degree[b]) return degree[a] > degree[b];
                return nodes.id(a) < nodes.id(b);
            });
            break;
        }
        case NodeOrder::lexicographic: {
            for (NodeIndex v = 0; v < n; ++v) base.push_back(v);
            std::sort(base.begin(), base.end(),
                      [&](NodeIndex a, NodeIndex b) { return nodes.id(a) < nodes.id(b); });
            break;
        }
        case NodeOrder::external_file: {
            std::unordered_map<std::string, NodeIndex> lookup;
            for (NodeIndex v = 0; v < n; ++v) lookup.emplace(nodes.id(v), v);
            std::vector<bool> placed(n, false);
            for (const auto& id : spec.external_order) {
                auto it = lookup.find(id);
                if (it == lookup.end()) {
                    out.warnings.push_back("order file lists unknown node '" + id + "'");
                    continue;
                }
                if (!placed[it->second]) {
                    placed[it->second] = true;
                    base.push_back(it->second);
                }
            }
            for (NodeIndex v = 0; v < n; ++v) {
                if (!placed[v]) {
                    out.warnings.push_back("order file omits node '" + nodes.id(v) +
                                           "', placed at the end");
                    base.push_back(v);
                }
            }
            break;
        }
    }

    if (!spec.groups.empty()) {
        // Contiguous bands per group label, ungrouped last; relative
        // order inside a band follows the base order.
        std::map<std::string, std::vector<NodeIndex>> bands;
        std::vector<NodeIndex> ungrouped;
        for (NodeIndex v : base) {
            auto it = spec.groups.find(v);
            if (it == spec.groups.end())
                ungrouped.push_back(v);
            else
                bands[it->second].push_back(v);
        }
        base.clear();
        for (const auto& [label, members] : bands) {
            out.bands.push_back({label, base.size(), base.size() + members.size() - 1});
            base.insert(base.end(), members.begin(), members.end());
        }
        if (!ungrouped.empty()) {
            out.bands.push_back({"", base.size(), base.size() + ungrouped.size() - 1});
            base.insert(base.end(), ungrouped.begin(), ungrouped.end());
        }
    }

    out.row_to_node = std::move(base);
    out.node_to_row.assign(n, 0);
    for (std::size_t row = 0; row < out.row_to_node.size(); ++row)
        out.node_to_row[out.row_to_node[row]] = row;
    return out;
}

namespace {

struct ColumnMap {
    Timestamp first_display = 0;
    std::vector<std::int64_t> col;  // display offset -> drawn column, -1 if elided
    std::int64_t columns = 0;
    struct Break {
        std::int64_t col;
        Timestamp from;
        Timestamp to;  // inclusive
    };
    std::vector<Break> breaks;
};

ColumnMap build_columns(const std::vector<RemappedEvent>& events,
                        const std::vector<SliceRecord>& slices, const LayoutSpec& spec) {
    ColumnMap cm;
    Timestamp lo = 0;
    Timestamp hi = -1;
    if (!slices.empty()) {
        lo = slices.front().display_first;
        hi = slices.back().display_last;
    } else if (!events.empty()) {
        lo = hi = events.front().t_display;
        for (const auto& e : events) {
            lo = std::min(lo, e.t_display);
            hi = std::max(hi, e.t_display);
        }
    }
    if (hi < lo) return cm;

    cm.first_display = lo;
    const auto span = static_cast<std::size_t>(hi - lo + 1);
    std::vector<bool> active(span, false);
    for (const auto& e : events) {
        if (e.t_display >= lo && e.t_display <= hi)
            active[static_cast<std::size_t>(e.t_display - lo)] = true;
    }

    cm.col.assign(span, -1);
    const std::int64_t threshold =
        spec.gap_elision_threshold ? *spec.gap_elision_threshold : 0;
    std::size_t i = 0;
    while (i < span) {
        if (!active[i] && threshold > 0) {
            std::size_t j = i;
            while (j < span && !active[j]) ++j;
            if (static_cast<std::int64_t>(j - i) >= threshold) {
                cm.breaks.push_back({cm.columns, lo + static_cast<Timestamp>(i),
                                     lo + static_cast<Timestamp>(j - 1)});
                ++cm.columns;  // one break column stands in for the run
                i = j;
                continue;
            }
        }
        cm.col[i] = cm.columns++;
        ++i;
    }
    return cm;
}

class SvgCanvas {
public:
    SvgCanvas(int width, int height) : width_(width), height_(height) {}

    void rect(int x, int y, int w, int h, const std::string& fill,
              const std::string& opacity = "") {
        body_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w
              << "\" height=\"" << h << "\" fill=\"" << fill << "\"";
        if (!opacity.empty()) body_ << " fill-opacity=\"" << opacity << "\"";
        body_ << "/>\n";
    }
    void line(int x1, int y1, int x2, int y2, const std::string& stroke, int width = 1) {
        body_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
              << y2 << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
    }
    void text(int x, int y, const std::string& s, int size = 8) {
        body_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
              << "\" font-family=\"monospace\">" << s << "</text>\n";
    }
    std::string finish() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_
            << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_
            << "\">\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    int width_;
    int height_;
    std::ostringstream body_;
};

struct Frame {
    ColumnMap cm;
    int cell;
    int x0;
    int y0;
    int width;
    int height;
    std::size_t rows;
};

Frame make_frame(const std::vector<RemappedEvent>& events,
                 const std::vector<SliceRecord>& slices, const RowAssignment& rows,
                 const LayoutSpec& spec) {
    Frame f;
    f.cm = build_columns(events, slices, spec);
    f.cell = spec.cell_size;
    f.x0 = spec.margin_left;
    f.y0 = spec.margin_top;
    f.rows = rows.row_to_node.size();
    f.width = f.x0 + static_cast<int>(f.cm.columns) * f.cell + 8;
    f.height = f.y0 + static_cast<int>(f.rows) * f.cell + 12;
    return f;
}

void draw_chrome(SvgCanvas& svg, const Frame& f, const RowAssignment& rows) {
    // group separators and labels
    for (const auto& band : rows.bands) {
        const int y_top = f.y0 + static_cast<int>(band.first_row) * f.cell;
        const int y_bot = f.y0 + static_cast<int>(band.last_row + 1) * f.cell;
        svg.line(f.x0, y_top, f.x0 + static_cast<int>(f.cm.columns) * f.cell, y_top,
                 "#999999");
        if (!band.label.empty()) svg.text(2, (y_top + y_bot) / 2 + 3, band.label);
    }
    // elided-gap break glyphs
    for (const auto& br : f.cm.breaks) {
        const int x = f.x0 + static_cast<int>(br.col) * f.cell;
        svg.rect(x, f.y0, f.cell, static_cast<int>(f.rows) * f.cell, "#dddddd");
        svg.text(x, f.y0 - 2, "~" + std::to_string(br.to - br.from + 1), 6);
    }
    // sparse time axis ticks
    const std::int64_t step = std::max<std::int64_t>(1, f.cm.columns / 10);
    for (std::size_t off = 0; off < f.cm.col.size(); ++off) {
        const std::int64_t c = f.cm.col[off];
        if (c < 0 || c % step != 0) continue;
        svg.text(f.x0 + static_cast<int>(c) * f.cell, f.y0 - 4,
                 std::to_string(f.cm.first_display + static_cast<Timestamp>(off)), 6);
    }
}

const std::string& slice_color(const LayoutSpec& spec, std::size_t slice_index) {
    return spec.slice_palette[slice_index % spec.slice_palette.size()];
}

}  // namespace

std::string render_msv(const std::vector<RemappedEvent>& events,
                       const std::vector<SliceRecord>& slices, const RowAssignment& rows,
                       const NodeTable& /*nodes*/, const LayoutSpec& spec) {
    spec.validate();
    const Frame f = make_frame(events, slices, rows, spec);
    SvgCanvas svg(f.width, f.height);
    draw_chrome(svg, f, rows);

    for (const auto& e : events) {
        const std::int64_t c = f.cm.col[static_cast<std::size_t>(e.t_display - f.cm.first_display)];
        if (c < 0) continue;
        const auto ra = rows.node_to_row[e.source];
        const auto rb = rows.node_to_row[e.target];
        const auto [top, bot] = std::minmax(ra, rb);
        const int x = f.x0 + static_cast<int>(c) * f.cell;
        const int xc = x + f.cell / 2;
        const std::string& color = slice_color(spec, e.slice_index);
        svg.line(xc, f.y0 + static_cast<int>(top) * f.cell + f.cell / 2, xc,
                 f.y0 + static_cast<int>(bot) * f.cell + f.cell / 2, color);
        svg.rect(x, f.y0 + static_cast<int>(ra) * f.cell, f.cell, f.cell, color);
        svg.rect(x, f.y0 + static_cast<int>(rb) * f.cell, f.cell, f.cell, color);
    }
    return svg.finish();
}

std::string render_tam(const std::vector<RemappedEvent>& events,
                       const std::vector<SliceRecord>& slices, const RowAssignment& rows,
                       const NodeTable& /*nodes*/, const LayoutSpec& spec) {
    spec.validate();
    const Frame f = make_frame(events, slices, rows, spec);
    SvgCanvas svg(f.width, f.height);
    draw_chrome(svg, f, rows);

    // (row, display timestamp) -> slice index and incident-event count
    std::map<std::pair<std::size_t, Timestamp>, std::pair<std::size_t, std::int64_t>> marks;
    std::int64_t max_count = 1;
    for (const auto& e : events) {
        for (NodeIndex v : {e.source, e.target}) {
            auto key = std::make_pair(rows.node_to_row[v], e.t_display);
            auto [it, inserted] = marks.try_emplace(key, std::make_pair(e.slice_index, 1));
            if (!inserted) {
                it->second.first = std::min(it->second.first, e.slice_index);
                ++it->second.second;
            }
            max_count = std::max(max_count, it->second.second);
        }
    }

    for (const auto& [key, val] : marks) {
        const auto [row, t] = key;
        const auto [slice, count] = val;
        const std::int64_t c = f.cm.col[static_cast<std::size_t>(t - f.cm.first_display)];
        if (c < 0) continue;
        std::string opacity;
        if (spec.tam_count_intensity && max_count > 1) {
            const double o = 0.3 + 0.7 * std::log1p(static_cast<double>(count)) /
                                       std::log1p(static_cast<double>(max_count));
            std::ostringstream os;
            os.precision(3);
            os << o;
            opacity = os.str();
        }
        svg.rect(f.x0 + static_cast<int>(c) * f.cell,
                 f.y0 + static_cast<int>(row) * f.cell, f.cell, f.cell,
                 slice_color(spec, slice), opacity);
    }
    return svg.finish();
}

}  // namespace chronoslice
