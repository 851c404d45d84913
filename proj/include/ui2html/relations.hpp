#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "ui2html/element.hpp"

namespace ui2html {

class OverlappingInput : public Error {
public:
    explicit OverlappingInput(const std::string& msg)
        : Error("OverlappingInput: " + msg) {}
};

enum class Direction { Up, Down, Left, Right };

// Direct-neighbor graph: b is a direct upper neighbor of a iff b lies
// fully above a, their column intervals overlap, and no third element
// intersects the rectangle spanned by the shared column interval between
// them. Left/right are the transposed rule. Pairing is symmetric by
// construction: b in up(a) <=> a in down(b).
class RelationGraph {
public:
    const std::vector<int>& neighbors(int element_id, Direction dir) const;
    const std::vector<int>& up(int id) const { return neighbors(id, Direction::Up); }
    const std::vector<int>& down(int id) const { return neighbors(id, Direction::Down); }
    const std::vector<int>& left(int id) const { return neighbors(id, Direction::Left); }
    const std::vector<int>& right(int id) const { return neighbors(id, Direction::Right); }
    std::size_t size() const { return ids_.size(); }

private:
    friend RelationGraph build_relation_graph(const std::vector<Element>&);
    std::vector<int> ids_;
    std::unordered_map<int, std::size_t> index_of_;
    // per element: up, down, left, right — each sorted by the neighbor's
    // (row_min, col_min)
    std::vector<std::array<std::vector<int>, 4>> lists_;
};

// Throws OverlappingInput unless the boxes are pairwise interior-disjoint.
RelationGraph build_relation_graph(const std::vector<Element>& elements);

struct UIGroup {
    std::vector<int> member_ids;  // in BFS insertion order
    BBox hull;
};

struct GroupingConfig {
    int align_tol_px = 3;
    int spacing_tol_px = 4;
};

// Membership test used by the group search: the candidate must share a
// left edge with some member column or a top edge with some member row
// (within align_tol_px), and adding it must keep the gaps inside every
// column/row cluster mutually equal within spacing_tol_px. Clusters with
// at most two members are exempt from the spacing requirement.
bool can_add_to_group(const Element& candidate, const UIGroup& group,
                      const std::vector<Element>& elements,
                      const GroupingConfig& config);

// BFS group expansion. Seeds are taken in (row_min, col_min) order rather
// than at random so identical input always yields identical groups. The
// result partitions the element set.
std::vector<UIGroup> search_ui_groups(const std::vector<Element>& elements,
                                      const RelationGraph& graph,
                                      const GroupingConfig& config);

// Replaces every group of two or more members with a single block element
// covering the group hull (id = minimal member id); singletons pass
// through. Output is in reading order.
std::vector<Element> merge_groups(const std::vector<Element>& elements,
                                  const std::vector<UIGroup>& groups);

// Debug dump: {"groups": [{"ids": [...], "hull": [c0, r0, c1, r1]}]}
std::string groups_to_json_text(const std::vector<UIGroup>& groups);

}  // namespace ui2html
