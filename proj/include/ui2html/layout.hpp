#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ui2html/element.hpp"
#include "ui2html/image.hpp"

namespace ui2html {

class NoBlocks : public Error {
public:
    explicit NoBlocks(const std::string& msg) : Error("NoBlocks: " + msg) {}
};

class EmptyPage : public Error {
public:
    EmptyPage() : Error("EmptyPage: no blocks to lay out") {}
};

// Orientation of the cut line a gap would produce. A Horizontal cut line
// spans row coordinates (stacking content top to bottom, i.e. a Column
// container); a Vertical cut line spans column coordinates (a Row).
enum class Axis { Horizontal, Vertical };

struct GapInterval {
    Axis axis = Axis::Horizontal;
    int start = 0;  // row coordinate for Horizontal, column for Vertical
    int end = 0;
    int size() const { return end - start; }
};

enum class NodeType { Row, Column, Atomic };

std::string to_string(NodeType type);

struct LayoutNode {
    NodeType type = NodeType::Atomic;
    BBox position;
    double portion = 1.0;
    std::vector<LayoutNode> children;          // empty iff Atomic
    std::optional<std::string> code;           // Atomic only

    bool is_leaf() const { return type == NodeType::Atomic; }
};

struct LayoutTree {
    LayoutNode root;
    int page_width = 0;
    int page_height = 0;
};

struct LayoutConfig {
    // Gaps below this are treated as visual padding, not dividers.
    int min_gap_px = 5;
};

// Projects the blocks onto one axis within `region` and returns the
// maximal uncovered internal intervals. The region is first reduced to
// the content hull, so whitespace touching the region boundary never
// becomes a gap. Throws NoBlocks if no block intersects the region.
std::vector<GapInterval> project(const std::vector<Element>& blocks,
                                 const BBox& region, Axis axis);

// Recursive midpoint division: the largest qualifying gap on either axis
// is cut first (ties prefer Horizontal, then the smaller start), each
// half-gap going to the adjacent child, until regions hold a single block
// or no gap of at least min_gap_px remains. Consecutive same-axis binary
// splits are flattened into one n-ary container.
LayoutNode divide(const BBox& region, const std::vector<Element>& blocks,
                  const LayoutConfig& config);

// Full-page division plus portion assignment: a child's portion is its
// extent along the parent's stacking axis over the parent's extent,
// rounded to 4 decimals. Throws EmptyPage when blocks is empty.
LayoutTree build_layout_tree(const std::vector<Element>& blocks, int page_width,
                             int page_height, const LayoutConfig& config = {});

// Copy of the image with node borders drawn, color-coded by depth.
PageImage render_division_overlay(const LayoutTree& tree, const PageImage& image);

// Stable leaf numbering: depth-first index over Atomic nodes.
std::vector<LayoutNode*> collect_leaves(LayoutNode& root);
std::vector<const LayoutNode*> collect_leaves(const LayoutNode& root);

int tree_depth(const LayoutNode& root);

// Tree JSON contract (field names are fixed):
//   {"type": "row"|"column"|"atomic", "position": [c0,r0,c1,r1],
//    "portion": float, "children": [...], "code": string|null}
std::string tree_to_json_text(const LayoutTree& tree);
LayoutTree tree_from_json_text(const std::string& text);
LayoutTree load_tree(const std::string& path);
void save_tree(const LayoutTree& tree, const std::string& path);

}  // namespace ui2html
