#include "ui2html/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ui2html {

namespace {

// Constants tied to the default downstream configs: a recovered divider
// needs min_gap_px (5), grouping alignment tolerance is 3 and spacing
// tolerance 4. The synthetic geometry keeps clear of all three.
constexpr int kDividerGap = 5;
constexpr int kAlignTol = 3;
constexpr int kGridSpacing = 4;  // below kDividerGap, within spacing tol
constexpr int kJitterValues[] = {0, 4, 8, 12};
constexpr int kJitterMax = 12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Implementation-defined std distributions would break golden files;
// plain modulo reduction is deterministic everywhere.
int draw(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

void validate_config(const SynthConfig& cfg) {
    if (cfg.gap_px <= kDividerGap)
        throw Error("SynthConfig: gap_px must exceed the divider threshold " +
                    std::to_string(kDividerGap));
    if (cfg.gap_px % 2 != 0)
        throw Error("SynthConfig: gap_px must be even");
    if (cfg.min_leaf_px < 2 * cfg.gap_px + 8)
        throw Error("SynthConfig: min_leaf_px must be at least 2*gap_px + 8");
    if (cfg.max_depth < 0 || cfg.max_children < 2)
        throw Error("SynthConfig: need max_depth >= 0 and max_children >= 2");
}

struct Interval {
    int lo = 0;
    int hi = 0;
};

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const Interval& i : v) {
        if (!out.empty() && i.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, i.hi);
        else
            out.push_back(i);
    }
    return out;
}

// Widest interval inside [hull_lo, hull_hi] covered by none of `covered`.
int widest_uncovered(const std::vector<Interval>& covered, int hull_lo,
                     int hull_hi) {
    int widest = 0;
    int cursor = hull_lo;
    for (const Interval& c : covered) {
        if (c.lo > cursor) widest = std::max(widest, std::min(c.lo, hull_hi) - cursor);
        cursor = std::max(cursor, c.hi);
        if (cursor >= hull_hi) break;
    }
    widest = std::max(widest, hull_hi - cursor);
    return widest;
}

// ---- generation (node positions hold *content* rects until regionized) ----

void collect_leaf_contents(const LayoutNode& node, std::vector<BBox>& out) {
    if (node.is_leaf()) {
        out.push_back(node.position);
        return;
    }
    for (const LayoutNode& child : node.children)
        collect_leaf_contents(child, out);
}

// Worst-case shadow of a leaf's content on one axis: what its rendered
// box certainly covers under any jitter assignment and grid rounding.
Interval conservative_shadow(const BBox& content, bool columns, int gap) {
    const int lo = columns ? content.col_min : content.row_min;
    const int hi = columns ? content.col_max : content.row_max;
    return Interval{lo + gap / 2 + kJitterMax, hi - gap / 2 - 2};
}

// True iff no contiguous run of children leaves a cross-axis corridor at
// least kDividerGap wide: such a corridor would let the parser cut across
// the stacking direction before the real dividers.
bool runs_are_separable(const std::vector<LayoutNode>& children, bool columns,
                        int gap) {
    const std::size_t k = children.size();
    std::vector<std::vector<Interval>> shadows(k);
    std::vector<Interval> hulls(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<BBox> leaves;
        collect_leaf_contents(children[i], leaves);
        Interval hull{INT32_MAX, INT32_MIN};
        for (const BBox& leaf : leaves) {
            const Interval s = conservative_shadow(leaf, columns, gap);
            shadows[i].push_back(s);
            hull.lo = std::min(hull.lo, s.lo);
            hull.hi = std::max(hull.hi, s.hi);
        }
        hulls[i] = hull;
    }
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Interval> acc = shadows[i];
        Interval hull = hulls[i];
        for (std::size_t j = i + 1; j < k; ++j) {
            acc.insert(acc.end(), shadows[j].begin(), shadows[j].end());
            hull.lo = std::min(hull.lo, hulls[j].lo);
            hull.hi = std::max(hull.hi, hulls[j].hi);
            if (widest_uncovered(merge_intervals(acc), hull.lo, hull.hi) >=
                kDividerGap)
                return false;
        }
    }
    return true;
}

LayoutNode gen_content_tree(std::mt19937_64& rng, const BBox& content,
                            int depth, bool split_rows,
                            const SynthConfig& cfg) {
    LayoutNode leaf;
    leaf.position = content;
    if (depth >= cfg.max_depth) return leaf;

    const int extent = split_rows ? content.height() : content.width();
    const int max_k =
        std::min(cfg.max_children,
                 (extent + cfg.gap_px) / (cfg.min_leaf_px + cfg.gap_px));
    if (max_k < 2) return leaf;

    for (int attempt = 0; attempt < 8; ++attempt) {
        const int k = draw(rng, 2, max_k);
        const int surplus =
            extent - k * cfg.min_leaf_px - (k - 1) * cfg.gap_px;
        std::vector<int> cuts;
        for (int i = 0; i < k - 1; ++i) cuts.push_back(draw(rng, 0, surplus));
        std::sort(cuts.begin(), cuts.end());
        cuts.push_back(surplus);

        LayoutNode node;
        node.type = split_rows ? NodeType::Column : NodeType::Row;
        node.position = content;
        int offset = split_rows ? content.row_min : content.col_min;
        int prev_cut = 0;
        for (int i = 0; i < k; ++i) {
            const int size = cfg.min_leaf_px + cuts[static_cast<std::size_t>(i)] -
                             prev_cut;
            prev_cut = cuts[static_cast<std::size_t>(i)];
            BBox child = content;
            if (split_rows) {
                child.row_min = offset;
                child.row_max = offset + size;
            } else {
                child.col_min = offset;
                child.col_max = offset + size;
            }
            offset += size + cfg.gap_px;
            node.children.push_back(
                gen_content_tree(rng, child, depth + 1, !split_rows, cfg));
        }
        if (runs_are_separable(node.children, /*columns=*/split_rows,
                               cfg.gap_px))
            return node;
    }
    return leaf;  // could not place separable children here
}

// Content rects -> tiling regions: boundaries at gap midpoints, outermost
// edges extended to the parent region.
void regionize(LayoutNode& node, const BBox& region) {
    const bool split_rows = node.type == NodeType::Column;
    std::vector<BBox> contents;
    for (const LayoutNode& child : node.children) contents.push_back(child.position);
    node.position = region;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        BBox child_region = region;
        const BBox& content = contents[i];
        if (split_rows) {
            child_region.row_min =
                i == 0 ? region.row_min
                       : (contents[i - 1].row_max + content.row_min) / 2;
            child_region.row_max =
                i + 1 == contents.size()
                    ? region.row_max
                    : (content.row_max + contents[i + 1].row_min) / 2;
        } else {
            child_region.col_min =
                i == 0 ? region.col_min
                       : (contents[i - 1].col_max + content.col_min) / 2;
            child_region.col_max =
                i + 1 == contents.size()
                    ? region.col_max
                    : (content.col_max + contents[i + 1].col_min) / 2;
        }
        regionize(node.children[i], child_region);
    }
}

void assign_portions(LayoutNode& node) {
    for (LayoutNode& child : node.children) {
        const double parent_extent = node.type == NodeType::Row
                                         ? node.position.width()
                                         : node.position.height();
        const double child_extent = node.type == NodeType::Row
                                        ? child.position.width()
                                        : child.position.height();
        child.portion =
            std::round(child_extent / parent_extent * 10000.0) / 10000.0;
        assign_portions(child);
    }
}

// ---- box planning ----

// Leaf content rects recovered from a regionized tree: an internal region
// edge sits mid-gap, an outer edge coincides with the content edge.
struct LeafPlacement {
    BBox content;
};

void recover_contents(const LayoutNode& node, bool l_out, bool t_out,
                      bool r_out, bool b_out, int gap,
                      std::vector<LeafPlacement>& out) {
    if (node.is_leaf()) {
        BBox c = node.position;
        if (!l_out) c.col_min += gap / 2;
        if (!t_out) c.row_min += gap / 2;
        if (!r_out) c.col_max -= gap / 2;
        if (!b_out) c.row_max -= gap / 2;
        out.push_back(LeafPlacement{c});
        return;
    }
    const bool split_rows = node.type == NodeType::Column;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        const bool first = i == 0;
        const bool last = i + 1 == node.children.size();
        if (split_rows)
            recover_contents(node.children[i], l_out, t_out && first, r_out,
                             b_out && last, gap, out);
        else
            recover_contents(node.children[i], l_out && first, t_out,
                             r_out && last, b_out, gap, out);
    }
}

bool x_overlap(const BBox& a, const BBox& b) {
    return std::min(a.col_max, b.col_max) > std::max(a.col_min, b.col_min);
}

bool y_overlap(const BBox& a, const BBox& b) {
    return std::min(a.row_max, b.row_max) > std::max(a.row_min, b.row_min);
}

// One box above the other with no third box poking into the corridor
// between them; mirrors the upper-neighbor rule the grouping search uses.
bool vertically_visible(const std::vector<BBox>& boxes, std::size_t i,
                        std::size_t j) {
    const BBox& a = boxes[i];
    const BBox& b = boxes[j];
    if (!x_overlap(a, b)) return false;
    const BBox& top = a.row_min <= b.row_min ? a : b;
    const BBox& bot = a.row_min <= b.row_min ? b : a;
    const BBox corridor{std::max(a.col_min, b.col_min), top.row_max,
                        std::min(a.col_max, b.col_max), bot.row_min};
    if (corridor.row_min >= corridor.row_max) return true;
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        if (k == i || k == j) continue;
        if (intersection_area(boxes[k], corridor) > 0) return false;
    }
    return true;
}

bool horizontally_visible(const std::vector<BBox>& boxes, std::size_t i,
                          std::size_t j) {
    const BBox& a = boxes[i];
    const BBox& b = boxes[j];
    if (!y_overlap(a, b)) return false;
    const BBox& lhs = a.col_min <= b.col_min ? a : b;
    const BBox& rhs = a.col_min <= b.col_min ? b : a;
    const BBox corridor{lhs.col_max, std::max(a.row_min, b.row_min),
                        rhs.col_min, std::min(a.row_max, b.row_max)};
    if (corridor.col_min >= corridor.col_max) return true;
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        if (k == i || k == j) continue;
        if (intersection_area(boxes[k], corridor) > 0) return false;
    }
    return true;
}

// Greedy per-leaf inset choice keeping every visible pair misaligned
// beyond kAlignTol on the given axis. Returns false when stuck.
bool color_jitters(const std::vector<BBox>& base, bool vertical_pairs,
                   std::vector<int>& jitter) {
    const std::size_t n = base.size();
    std::vector<std::vector<std::size_t>> partners(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool visible = vertical_pairs
                                     ? vertically_visible(base, i, j)
                                     : horizontally_visible(base, i, j);
            if (visible) {
                partners[i].push_back(j);
                partners[j].push_back(i);
            }
        }
    }
    jitter.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const int edge_i = vertical_pairs ? base[i].col_min : base[i].row_min;
        for (const int value : kJitterValues) {
            bool ok = true;
            for (const std::size_t p : partners[i]) {
                if (jitter[p] < 0) continue;
                const int edge_p =
                    vertical_pairs ? base[p].col_min : base[p].row_min;
                if (std::abs((edge_i + value) - (edge_p + jitter[p])) <=
                    kAlignTol) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                jitter[i] = value;
                break;
            }
        }
        if (jitter[i] < 0) return false;
    }
    return true;
}

struct BoxPlan {
    std::vector<std::vector<BBox>> per_leaf;  // 1 box (OneBox) or 6 (grid)
    std::vector<BBox> blocks;                 // per leaf: box or grid hull
};

// The 2x3 cell grid for a leaf whose usable rect starts at (gx, gy) into
// `inner`. Grid lines are the distinct col_min / row_min values.
struct GridPlan {
    std::vector<BBox> cells;
    std::array<int, 2> col_lines{};
    std::array<int, 3> row_lines{};
    bool ok = false;
};

GridPlan grid_cells(const BBox& inner, int gx, int gy) {
    GridPlan plan;
    const int cell_w = (inner.width() - gx - kGridSpacing) / 2;
    const int cell_h = (inner.height() - gy - 2 * kGridSpacing) / 3;
    if (cell_w < 2 || cell_h < 2) return plan;
    for (int col = 0; col < 2; ++col)
        plan.col_lines[static_cast<std::size_t>(col)] =
            inner.col_min + gx + col * (cell_w + kGridSpacing);
    for (int row = 0; row < 3; ++row)
        plan.row_lines[static_cast<std::size_t>(row)] =
            inner.row_min + gy + row * (cell_h + kGridSpacing);
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 2; ++col) {
            const int x = plan.col_lines[static_cast<std::size_t>(col)];
            const int y = plan.row_lines[static_cast<std::size_t>(row)];
            plan.cells.push_back(BBox{x, y, x + cell_w, y + cell_h});
        }
    }
    plan.ok = true;
    return plan;
}

template <std::size_t N>
bool lines_separated(const std::array<int, N>& a, const std::array<int, N>& b) {
    for (const int x : a)
        for (const int y : b)
            if (std::abs(x - y) <= kAlignTol) return false;
    return true;
}

// Grid leaves get a per-leaf origin jitter so that no two adjacent grids
// share a grid line within alignment tolerance; otherwise a candidate can
// join a foreign group through a one-member cluster, which the spacing
// rule exempts.
bool plan_grid_boxes(const std::vector<LeafPlacement>& leaves, int inset,
                     BoxPlan& plan) {
    const std::size_t n = leaves.size();
    std::vector<BBox> inner(n);
    for (std::size_t i = 0; i < n; ++i) {
        const BBox& c = leaves[i].content;
        inner[i] = BBox{c.col_min + inset, c.row_min + inset, c.col_max - inset,
                        c.row_max - inset};
        if (!inner[i].valid()) return false;
    }

    // Leaf-level adjacency, treating each inner rect as one solid box.
    std::vector<std::vector<std::size_t>> v_adj(n), h_adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (vertically_visible(inner, i, j)) {
                v_adj[i].push_back(j);
                v_adj[j].push_back(i);
            }
            if (horizontally_visible(inner, i, j)) {
                h_adj[i].push_back(j);
                h_adj[j].push_back(i);
            }
        }
    }

    std::vector<GridPlan> grids(n);
    std::vector<int> gx(n, -1), gy(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (const int vx : kJitterValues) {
            const GridPlan candidate = grid_cells(inner[i], vx, 0);
            if (!candidate.ok) continue;
            bool clear = true;
            for (const std::size_t j : v_adj[i]) {
                if (gx[j] < 0) continue;
                if (!lines_separated(candidate.col_lines, grids[j].col_lines))
                    clear = false;
            }
            if (clear) {
                gx[i] = vx;
                grids[i] = candidate;
                break;
            }
        }
        if (gx[i] < 0) return false;
        for (const int vy : kJitterValues) {
            const GridPlan candidate = grid_cells(inner[i], gx[i], vy);
            if (!candidate.ok) continue;
            bool clear = true;
            for (const std::size_t j : h_adj[i]) {
                if (gy[j] < 0) continue;
                if (!lines_separated(candidate.row_lines, grids[j].row_lines))
                    clear = false;
            }
            if (clear) {
                gy[i] = vy;
                grids[i] = candidate;
                break;
            }
        }
        if (gy[i] < 0) return false;
    }

    for (std::size_t i = 0; i < n; ++i) {
        plan.per_leaf[i] = grids[i].cells;
        plan.blocks[i] = grids[i].cells.front();
        for (const BBox& box : grids[i].cells)
            plan.blocks[i] = enclosing(plan.blocks[i], box);
    }
    return true;
}

bool plan_boxes(const LayoutTree& tree, const SynthConfig& cfg, BoxPlan& plan) {
    std::vector<LeafPlacement> leaves;
    recover_contents(tree.root, true, true, true, true, cfg.gap_px, leaves);
    const std::size_t n = leaves.size();
    const int inset = cfg.gap_px / 2;

    plan.per_leaf.assign(n, {});
    plan.blocks.assign(n, {});

    if (cfg.leaf_fill == LeafFill::OneBox) {
        std::vector<BBox> base(n);
        for (std::size_t i = 0; i < n; ++i) {
            const BBox& c = leaves[i].content;
            base[i] = BBox{c.col_min + inset, c.row_min + inset, c.col_max - inset,
                           c.row_max - inset};
            if (!base[i].valid()) return false;
        }
        std::vector<int> jx, jy;
        if (!color_jitters(base, /*vertical_pairs=*/true, jx)) return false;
        if (!color_jitters(base, /*vertical_pairs=*/false, jy)) return false;
        for (std::size_t i = 0; i < n; ++i) {
            const BBox box{base[i].col_min + jx[i], base[i].row_min + jy[i],
                           base[i].col_max, base[i].row_max};
            if (!box.valid()) return false;
            plan.per_leaf[i] = {box};
            plan.blocks[i] = box;
        }
        return true;
    }

    return plan_grid_boxes(leaves, inset, plan);
}

// ---- exact validation on the final plan ----

void leaf_ranges(const LayoutNode& node, int& next,
                 std::vector<std::pair<const LayoutNode*, std::pair<int, int>>>& out) {
    const int first = next;
    if (node.is_leaf()) {
        ++next;
    } else {
        for (const LayoutNode& child : node.children)
            leaf_ranges(child, next, out);
    }
    out.emplace_back(&node, std::make_pair(first, next));
}

bool validate_plan(const LayoutTree& tree, const SynthConfig& cfg,
                   const BoxPlan& plan) {
    const std::vector<BBox>& blocks = plan.blocks;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (intersection_area(blocks[i], blocks[j]) > 0) return false;

    if (cfg.leaf_fill == LeafFill::OneBox) {
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            for (std::size_t j = i + 1; j < blocks.size(); ++j) {
                if (vertically_visible(blocks, i, j) &&
                    std::abs(blocks[i].col_min - blocks[j].col_min) <= kAlignTol)
                    return false;
                if (horizontally_visible(blocks, i, j) &&
                    std::abs(blocks[i].row_min - blocks[j].row_min) <= kAlignTol)
                    return false;
            }
        }
    } else {
        // Cell-level check: if any cell of leaf A can see a cell of leaf B,
        // no grid line of A may be within alignment tolerance of B's on the
        // crossed axis; otherwise a one-member cluster (spacing-exempt)
        // could pull a foreign cell into the group.
        std::vector<BBox> cells;
        std::vector<std::size_t> leaf_of;
        for (std::size_t leaf = 0; leaf < plan.per_leaf.size(); ++leaf) {
            for (const BBox& box : plan.per_leaf[leaf]) {
                cells.push_back(box);
                leaf_of.push_back(leaf);
            }
        }
        const auto lines = [&](std::size_t leaf, bool cols) {
            std::vector<int> out;
            for (const BBox& box : plan.per_leaf[leaf])
                out.push_back(cols ? box.col_min : box.row_min);
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        };
        const auto sets_separated = [](const std::vector<int>& a,
                                       const std::vector<int>& b) {
            for (const int x : a)
                for (const int y : b)
                    if (std::abs(x - y) <= kAlignTol) return false;
            return true;
        };
        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::size_t j = i + 1; j < cells.size(); ++j) {
                if (leaf_of[i] == leaf_of[j]) continue;
                if (vertically_visible(cells, i, j) &&
                    !sets_separated(lines(leaf_of[i], true),
                                    lines(leaf_of[j], true)))
                    return false;
                if (horizontally_visible(cells, i, j) &&
                    !sets_separated(lines(leaf_of[i], false),
                                    lines(leaf_of[j], false)))
                    return false;
            }
        }
    }

    // No contiguous child run may leave a cross-axis corridor the parser
    // could cut before the true dividers.
    int next = 0;
    std::vector<std::pair<const LayoutNode*, std::pair<int, int>>> nodes;
    leaf_ranges(tree.root, next, nodes);
    for (const auto& [node, range] : nodes) {
        if (node->is_leaf()) continue;
        const bool columns = node->type == NodeType::Column;
        std::vector<std::pair<int, int>> child_ranges;
        int cursor = range.first;
        for (const LayoutNode& child : node->children) {
            int leaves = 0;
            std::vector<BBox> tmp;
            collect_leaf_contents(child, tmp);
            leaves = static_cast<int>(tmp.size());
            child_ranges.emplace_back(cursor, cursor + leaves);
            cursor += leaves;
        }
        const std::size_t k = child_ranges.size();
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Interval> acc;
            Interval hull{INT32_MAX, INT32_MIN};
            for (std::size_t j = i; j < k; ++j) {
                for (int b = child_ranges[j].first; b < child_ranges[j].second;
                     ++b) {
                    const BBox& box = blocks[static_cast<std::size_t>(b)];
                    const Interval s = columns
                                           ? Interval{box.col_min, box.col_max}
                                           : Interval{box.row_min, box.row_max};
                    acc.push_back(s);
                    hull.lo = std::min(hull.lo, s.lo);
                    hull.hi = std::max(hull.hi, s.hi);
                }
                if (j > i && widest_uncovered(merge_intervals(acc), hull.lo,
                                              hull.hi) >= kDividerGap)
                    return false;
            }
        }
    }
    return true;
}

}  // namespace

LayoutTree random_layout(const SynthConfig& config, int page_width,
                         int page_height) {
    validate_config(config);
    if (page_width < config.min_leaf_px || page_height < config.min_leaf_px)
        throw PageTooSmall("page " + std::to_string(page_width) + "x" +
                           std::to_string(page_height) + " below min_leaf_px " +
                           std::to_string(config.min_leaf_px));

    const BBox page{0, 0, page_width, page_height};
    for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
        std::mt19937_64 rng(splitmix64(config.seed * 0x100000001ULL + attempt));
        const bool split_rows = config.max_depth > 0 ? (rng() & 1) == 0 : true;
        LayoutTree tree;
        tree.page_width = page_width;
        tree.page_height = page_height;
        tree.root = gen_content_tree(rng, page, 0, split_rows, config);
        regionize(tree.root, page);
        tree.root.portion = 1.0;
        assign_portions(tree.root);

        BoxPlan plan;
        if (!plan_boxes(tree, config, plan)) continue;
        if (!validate_plan(tree, config, plan)) continue;
        return tree;
    }
    throw Error("synth: no separable layout found for seed " +
                std::to_string(config.seed));
}

std::vector<Element> render_boxes(const LayoutTree& tree,
                                  const SynthConfig& config) {
    validate_config(config);
    BoxPlan plan;
    if (!plan_boxes(tree, config, plan))
        throw Error("synth: cannot place boxes for this tree");
    std::vector<Element> out;
    int id = 0;
    for (const std::vector<BBox>& leaf_boxes : plan.per_leaf) {
        for (const BBox& box : leaf_boxes) {
            out.push_back(Element{id++, ElementKind::Unknown, box});
        }
    }
    return out;
}

PageImage render_page_image(const std::vector<Element>& elements,
                            int page_width, int page_height) {
    static constexpr Rgb palette[] = {
        {40, 42, 54},  {68, 71, 90},   {33, 62, 120},
        {90, 40, 70},  {25, 80, 60},   {100, 70, 20},
    };
    PageImage image(page_width, page_height);
    for (std::size_t i = 0; i < elements.size(); ++i)
        image.fill_rect(elements[i].bbox, palette[i % 6]);
    return image;
}

}  // namespace ui2html
