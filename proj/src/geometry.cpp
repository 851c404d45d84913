#include "ui2html/geometry.hpp"

#include <algorithm>
#include <tuple>

#include "ui2html/errors.hpp"

namespace ui2html {

bool reading_order_less(const BBox& a, const BBox& b) {
    return std::tie(a.row_min, a.col_min, a.row_max, a.col_max) <
           std::tie(b.row_min, b.col_min, b.row_max, b.col_max);
}

BBox enclosing(const BBox& a, const BBox& b) {
    return BBox{std::min(a.col_min, b.col_min), std::min(a.row_min, b.row_min),
                std::max(a.col_max, b.col_max), std::max(a.row_max, b.row_max)};
}

std::int64_t intersection_area(const BBox& a, const BBox& b) {
    const std::int64_t w =
        std::min(a.col_max, b.col_max) - std::max(a.col_min, b.col_min);
    const std::int64_t h =
        std::min(a.row_max, b.row_max) - std::max(a.row_min, b.row_min);
    if (w <= 0 || h <= 0) return 0;
    return w * h;
}

OverlapReport overlap_report(const BBox& a, const BBox& b) {
    OverlapReport rep;
    rep.inter_area = intersection_area(a, b);
    if (rep.inter_area == 0) {
        rep.kind = OverlapKind::Disjoint;
        return rep;
    }
    const std::int64_t area_a = a.area();
    const std::int64_t area_b = b.area();
    rep.iou = static_cast<double>(rep.inter_area) /
              static_cast<double>(area_a + area_b - rep.inter_area);
    rep.ioa = static_cast<double>(rep.inter_area) / static_cast<double>(area_a);
    rep.iob = static_cast<double>(rep.inter_area) / static_cast<double>(area_b);
    // Containment is decided on integer areas, not the float ratios.
    rep.kind = (rep.inter_area == area_a || rep.inter_area == area_b)
                   ? OverlapKind::Containment
                   : OverlapKind::PartialIntersection;
    return rep;
}

namespace {

// Applies the resolution rule to the first overlapping pair in sorted
// order. Returns false if the list is already interior-disjoint.
bool resolve_one(std::vector<BBox>& boxes) {
    for (std::size_t i = 0; i + 1 < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            const OverlapReport rep = overlap_report(boxes[i], boxes[j]);
            if (rep.kind == OverlapKind::Disjoint) continue;
            if (rep.kind == OverlapKind::Containment) {
                // Keep the larger box; for identical boxes either works.
                const std::size_t drop =
                    boxes[i].area() >= boxes[j].area() ? j : i;
                boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(drop));
            } else {
                boxes[i] = enclosing(boxes[i], boxes[j]);
                boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
            }
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<BBox> resolve_overlaps(std::vector<BBox> boxes) {
    std::sort(boxes.begin(), boxes.end(), reading_order_less);
    // Every modification removes exactly one box, so at most |boxes| - 1
    // modifying passes are possible plus one clean pass.
    const std::size_t max_passes = boxes.size() + 1;
    for (std::size_t pass = 0; pass < max_passes; ++pass) {
        if (!resolve_one(boxes)) return boxes;
        std::sort(boxes.begin(), boxes.end(), reading_order_less);
    }
    throw InternalDefect("resolve_overlaps did not reach a fixpoint in " +
                         std::to_string(max_passes) + " passes");
}

std::string to_string(const BBox& box) {
    return "(" + std::to_string(box.col_min) + "," + std::to_string(box.row_min) +
           "," + std::to_string(box.col_max) + "," + std::to_string(box.row_max) +
           ")";
}

}  // namespace ui2html
