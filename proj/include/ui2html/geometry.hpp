#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ui2html {

// Axis-aligned pixel rectangle, half-open on both axes: a pixel (c, r)
// is inside iff col_min <= c < col_max and row_min <= r < row_max.
// Boxes sharing an edge have no interior overlap.
struct BBox {
    int col_min = 0;
    int row_min = 0;
    int col_max = 0;
    int row_max = 0;

    int width() const { return col_max - col_min; }
    int height() const { return row_max - row_min; }
    std::int64_t area() const {
        return static_cast<std::int64_t>(width()) * height();
    }
    bool valid() const {
        return col_min >= 0 && row_min >= 0 && col_min < col_max &&
               row_min < row_max;
    }
    bool contains(const BBox& other) const {
        return col_min <= other.col_min && row_min <= other.row_min &&
               col_max >= other.col_max && row_max >= other.row_max;
    }
    friend bool operator==(const BBox&, const BBox&) = default;
};

// Reading order used throughout: top-to-bottom, then left-to-right.
bool reading_order_less(const BBox& a, const BBox& b);

// Smallest rectangle covering both boxes.
BBox enclosing(const BBox& a, const BBox& b);

enum class OverlapKind { Disjoint, Containment, PartialIntersection };

struct OverlapReport {
    std::int64_t inter_area = 0;
    double iou = 0.0;  // intersection over union
    double ioa = 0.0;  // intersection over area(a)
    double iob = 0.0;  // intersection over area(b)
    OverlapKind kind = OverlapKind::Disjoint;
};

// Interior intersection area; edge-touching boxes yield 0.
std::int64_t intersection_area(const BBox& a, const BBox& b);

OverlapReport overlap_report(const BBox& a, const BBox& b);

// Repeatedly resolves overlapping pairs until all boxes are pairwise
// interior-disjoint: a contained box is dropped in favour of the larger
// one, a partial intersection is replaced by the enclosing rectangle.
// Pairs are processed in sorted (row_min, col_min) order, first offender
// per pass, so the result is deterministic. Output is sorted.
std::vector<BBox> resolve_overlaps(std::vector<BBox> boxes);

std::string to_string(const BBox& box);

}  // namespace ui2html
