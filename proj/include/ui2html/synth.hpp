#pragma once

#include <cstdint>
#include <vector>

#include "ui2html/element.hpp"
#include "ui2html/image.hpp"
#include "ui2html/layout.hpp"

namespace ui2html {

class PageTooSmall : public Error {
public:
    explicit PageTooSmall(const std::string& msg)
        : Error("PageTooSmall: " + msg) {}
};

enum class LeafFill {
    OneBox,       // one element per leaf
    AlignedGrid,  // a 2x3 equal-spacing grid per leaf, to exercise grouping
};

// The generator keeps every inter-child gap at exactly gap_px and spaces
// leaf content so that recovery is never threshold-ambiguous: spurious
// cross-axis gaps are rejected at generation time and OneBox elements get
// small per-leaf insets that keep visible neighbors out of alignment
// tolerance (otherwise the grouping exemption for pairs would merge them).
struct SynthConfig {
    std::uint64_t seed = 0;
    int max_depth = 4;
    int max_children = 4;
    int gap_px = 24;       // must exceed the layout divider threshold
    int min_leaf_px = 56;  // must be at least 2*gap_px + 8
    LeafFill leaf_fill = LeafFill::OneBox;
};

// Random layout tree with alternating Row/Column containers. Node
// positions tile their parent exactly (boundaries at gap midpoints), same
// convention as the parser output. Deterministic per (config, size).
LayoutTree random_layout(const SynthConfig& config, int page_width,
                         int page_height);

// Elements for the tree's leaves, pure function of (tree, config). Ids run
// 0..n-1 in depth-first leaf order; boxes are pairwise interior-disjoint.
std::vector<Element> render_boxes(const LayoutTree& tree,
                                  const SynthConfig& config);

// Solid dark rectangles on white, for exercising the detector.
PageImage render_page_image(const std::vector<Element>& elements,
                            int page_width, int page_height);

}  // namespace ui2html
