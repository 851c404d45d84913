#include "ui2html/layout.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ui2html {

using nlohmann::json;

std::string to_string(NodeType type) {
    switch (type) {
        case NodeType::Row: return "row";
        case NodeType::Column: return "column";
        case NodeType::Atomic: return "atomic";
    }
    return "atomic";
}

std::vector<GapInterval> project(const std::vector<Element>& blocks,
                                 const BBox& region, Axis axis) {
    // Block shadows on the chosen axis, clipped to the region.
    std::vector<std::pair<int, int>> shadows;
    for (const Element& block : blocks) {
        if (intersection_area(block.bbox, region) <= 0) continue;
        const int lo = axis == Axis::Horizontal
                           ? std::max(block.bbox.row_min, region.row_min)
                           : std::max(block.bbox.col_min, region.col_min);
        const int hi = axis == Axis::Horizontal
                           ? std::min(block.bbox.row_max, region.row_max)
                           : std::min(block.bbox.col_max, region.col_max);
        shadows.emplace_back(lo, hi);
    }
    if (shadows.empty())
        throw NoBlocks("region " + to_string(region) + " contains no block");

    std::sort(shadows.begin(), shadows.end());
    // Gaps between merged shadows lie strictly inside the content hull,
    // which trims boundary whitespace for free.
    std::vector<GapInterval> gaps;
    int covered_end = shadows.front().second;
    for (const auto& [lo, hi] : shadows) {
        if (lo > covered_end)
            gaps.push_back(GapInterval{axis, covered_end, lo});
        covered_end = std::max(covered_end, hi);
    }
    return gaps;
}

namespace {

std::optional<GapInterval> best_gap(const std::vector<Element>& blocks,
                                    const BBox& region, int min_gap_px) {
    std::vector<GapInterval> gaps = project(blocks, region, Axis::Horizontal);
    const std::vector<GapInterval> vertical =
        project(blocks, region, Axis::Vertical);
    gaps.insert(gaps.end(), vertical.begin(), vertical.end());

    std::optional<GapInterval> best;
    for (const GapInterval& gap : gaps) {
        if (gap.size() < min_gap_px) continue;
        if (!best) {
            best = gap;
            continue;
        }
        // Largest first; ties prefer a Horizontal cut, then smaller start.
        if (gap.size() > best->size() ||
            (gap.size() == best->size() &&
             ((gap.axis == Axis::Horizontal && best->axis == Axis::Vertical) ||
              (gap.axis == best->axis && gap.start < best->start)))) {
            best = gap;
        }
    }
    return best;
}

void flatten_into(std::vector<LayoutNode>& out, LayoutNode&& child,
                  NodeType parent_type) {
    if (child.type == parent_type) {
        for (LayoutNode& grandchild : child.children)
            out.push_back(std::move(grandchild));
    } else {
        out.push_back(std::move(child));
    }
}

}  // namespace

LayoutNode divide(const BBox& region, const std::vector<Element>& blocks,
                  const LayoutConfig& config) {
    LayoutNode node;
    node.position = region;
    if (blocks.size() <= 1) return node;
    if (region.width() < 2 * config.min_gap_px &&
        region.height() < 2 * config.min_gap_px)
        return node;

    const std::optional<GapInterval> gap =
        best_gap(blocks, region, config.min_gap_px);
    if (!gap) return node;

    const int mid = (gap->start + gap->end) / 2;
    BBox first = region, second = region;
    if (gap->axis == Axis::Horizontal) {
        first.row_max = mid;
        second.row_min = mid;
        node.type = NodeType::Column;
    } else {
        first.col_max = mid;
        second.col_min = mid;
        node.type = NodeType::Row;
    }

    // The gap contains no shadow, so no block straddles the midpoint.
    std::vector<Element> first_blocks, second_blocks;
    for (const Element& block : blocks) {
        const int hi = gap->axis == Axis::Horizontal ? block.bbox.row_max
                                                     : block.bbox.col_max;
        (hi <= mid ? first_blocks : second_blocks).push_back(block);
    }

    node.children.clear();
    flatten_into(node.children, divide(first, first_blocks, config), node.type);
    flatten_into(node.children, divide(second, second_blocks, config), node.type);
    return node;
}

namespace {

double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

void assign_portions(LayoutNode& node) {
    for (LayoutNode& child : node.children) {
        const double parent_extent = node.type == NodeType::Row
                                         ? node.position.width()
                                         : node.position.height();
        const double child_extent = node.type == NodeType::Row
                                        ? child.position.width()
                                        : child.position.height();
        child.portion = round4(child_extent / parent_extent);
        assign_portions(child);
    }
}

}  // namespace

LayoutTree build_layout_tree(const std::vector<Element>& blocks, int page_width,
                             int page_height, const LayoutConfig& config) {
    if (blocks.empty()) throw EmptyPage();
    LayoutTree tree;
    tree.page_width = page_width;
    tree.page_height = page_height;
    tree.root = divide(BBox{0, 0, page_width, page_height}, blocks, config);
    tree.root.portion = 1.0;
    assign_portions(tree.root);
    return tree;
}

namespace {

void draw_node(const LayoutNode& node, PageImage& image, int depth) {
    static constexpr Rgb palette[] = {
        {220, 50, 47}, {38, 139, 210}, {133, 153, 0},
        {181, 137, 0}, {211, 54, 130}, {42, 161, 152},
    };
    if (!image.bounds().contains(node.position))
        throw BoundsError("node " + to_string(node.position) +
                          " outside image " + to_string(image.bounds()));
    image.draw_rect_outline(node.position, palette[depth % 6],
                            std::max(1, 3 - depth));
    for (const LayoutNode& child : node.children)
        draw_node(child, image, depth + 1);
}

}  // namespace

PageImage render_division_overlay(const LayoutTree& tree, const PageImage& image) {
    PageImage out = image;
    draw_node(tree.root, out, 0);
    return out;
}

namespace {

void collect_leaves_impl(LayoutNode& node, std::vector<LayoutNode*>& out) {
    if (node.is_leaf()) {
        out.push_back(&node);
        return;
    }
    for (LayoutNode& child : node.children) collect_leaves_impl(child, out);
}

}  // namespace

std::vector<LayoutNode*> collect_leaves(LayoutNode& root) {
    std::vector<LayoutNode*> out;
    collect_leaves_impl(root, out);
    return out;
}

std::vector<const LayoutNode*> collect_leaves(const LayoutNode& root) {
    std::vector<LayoutNode*> mut =
        collect_leaves(const_cast<LayoutNode&>(root));
    return {mut.begin(), mut.end()};
}

int tree_depth(const LayoutNode& root) {
    int depth = 0;
    for (const LayoutNode& child : root.children)
        depth = std::max(depth, tree_depth(child));
    return depth + 1;
}

namespace {

json node_to_json(const LayoutNode& node) {
    json j;
    j["type"] = to_string(node.type);
    j["position"] = {node.position.col_min, node.position.row_min,
                     node.position.col_max, node.position.row_max};
    j["portion"] = node.portion;
    j["children"] = json::array();
    for (const LayoutNode& child : node.children)
        j["children"].push_back(node_to_json(child));
    j["code"] = node.code ? json(*node.code) : json(nullptr);
    return j;
}

LayoutNode node_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw Error("tree JSON: expected object at " + path);
    for (const char* field : {"type", "position", "portion", "children", "code"})
        if (!j.contains(field))
            throw Error("tree JSON: missing field '" + std::string(field) +
                        "' at " + path);

    LayoutNode node;
    const std::string type = j["type"].get<std::string>();
    if (type == "row") node.type = NodeType::Row;
    else if (type == "column") node.type = NodeType::Column;
    else if (type == "atomic") node.type = NodeType::Atomic;
    else throw Error("tree JSON: unknown type '" + type + "' at " + path);

    if (!j["position"].is_array() || j["position"].size() != 4)
        throw Error("tree JSON: bad position at " + path);
    node.position = BBox{j["position"][0].get<int>(), j["position"][1].get<int>(),
                         j["position"][2].get<int>(), j["position"][3].get<int>()};
    if (!node.position.valid())
        throw Error("tree JSON: invalid position " + to_string(node.position) +
                    " at " + path);
    node.portion = j["portion"].get<double>();
    if (j["code"].is_string()) node.code = j["code"].get<std::string>();
    else if (!j["code"].is_null())
        throw Error("tree JSON: code must be string or null at " + path);

    int i = 0;
    for (const json& child : j["children"]) {
        node.children.push_back(
            node_from_json(child, path + "/" + std::to_string(i)));
        ++i;
    }
    if (node.type == NodeType::Atomic && !node.children.empty())
        throw Error("tree JSON: atomic node with children at " + path);
    if (node.type != NodeType::Atomic && node.children.empty())
        throw Error("tree JSON: container without children at " + path);
    return node;
}

}  // namespace

std::string tree_to_json_text(const LayoutTree& tree) {
    return node_to_json(tree.root).dump(2) + "\n";
}

LayoutTree tree_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("tree JSON: invalid JSON: ") + e.what());
    }
    LayoutTree tree;
    tree.root = node_from_json(doc, "root");
    tree.page_width = tree.root.position.col_max;
    tree.page_height = tree.root.position.row_max;
    return tree;
}

LayoutTree load_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileRead: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return tree_from_json_text(buf.str());
}

void save_tree(const LayoutTree& tree, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("FileWrite: cannot open '" + path + "'");
    out << tree_to_json_text(tree);
}

}  // namespace ui2html
