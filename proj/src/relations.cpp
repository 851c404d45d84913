#include "ui2html/relations.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"

namespace ui2html {

namespace {

inline int col_overlap(const BBox& a, const BBox& b) {
    return std::min(a.col_max, b.col_max) - std::max(a.col_min, b.col_min);
}

inline int row_overlap(const BBox& a, const BBox& b) {
    return std::min(a.row_max, b.row_max) - std::max(a.row_min, b.row_min);
}

}  // namespace

const std::vector<int>& RelationGraph::neighbors(int element_id,
                                                 Direction dir) const {
    const auto it = index_of_.find(element_id);
    if (it == index_of_.end())
        throw Error("RelationGraph: unknown element id " +
                    std::to_string(element_id));
    return lists_[it->second][static_cast<std::size_t>(dir)];
}

RelationGraph build_relation_graph(const std::vector<Element>& elements) {
    const std::size_t n = elements.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (intersection_area(elements[i].bbox, elements[j].bbox) > 0) {
                throw OverlappingInput(
                    "elements " + std::to_string(elements[i].id) + " and " +
                    std::to_string(elements[j].id) + " overlap");
            }
        }
    }

    RelationGraph graph;
    graph.ids_.reserve(n);
    graph.lists_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        graph.ids_.push_back(elements[i].id);
        graph.index_of_[elements[i].id] = i;
    }

    const auto add_edge = [&](std::size_t a, std::size_t b, Direction da,
                              Direction db) {
        graph.lists_[a][static_cast<std::size_t>(da)].push_back(elements[b].id);
        graph.lists_[b][static_cast<std::size_t>(db)].push_back(elements[a].id);
    };

    std::vector<std::size_t> pool;
    for (std::size_t ai = 0; ai < n; ++ai) {
        const BBox& a = elements[ai].bbox;

        // Upper neighbors: both the candidates and any potential occluder
        // share a's column span and start above a.
        pool.clear();
        for (std::size_t ci = 0; ci < n; ++ci) {
            if (ci == ai) continue;
            const BBox& c = elements[ci].bbox;
            if (c.row_min < a.row_min && col_overlap(a, c) > 0) pool.push_back(ci);
        }
        for (const std::size_t bi : pool) {
            const BBox& b = elements[bi].bbox;
            if (b.row_max > a.row_min) continue;  // not fully above
            const BBox span{std::max(a.col_min, b.col_min), b.row_max,
                            std::min(a.col_max, b.col_max), a.row_min};
            bool occluded = false;
            if (span.row_min < span.row_max) {
                for (const std::size_t ci : pool) {
                    if (ci == bi) continue;
                    if (intersection_area(elements[ci].bbox, span) > 0) {
                        occluded = true;
                        break;
                    }
                }
            }
            if (!occluded) add_edge(ai, bi, Direction::Up, Direction::Down);
        }

        // Left neighbors, transposed rule.
        pool.clear();
        for (std::size_t ci = 0; ci < n; ++ci) {
            if (ci == ai) continue;
            const BBox& c = elements[ci].bbox;
            if (c.col_min < a.col_min && row_overlap(a, c) > 0) pool.push_back(ci);
        }
        for (const std::size_t bi : pool) {
            const BBox& b = elements[bi].bbox;
            if (b.col_max > a.col_min) continue;
            const BBox span{b.col_max, std::max(a.row_min, b.row_min), a.col_min,
                            std::min(a.row_max, b.row_max)};
            bool occluded = false;
            if (span.col_min < span.col_max) {
                for (const std::size_t ci : pool) {
                    if (ci == bi) continue;
                    if (intersection_area(elements[ci].bbox, span) > 0) {
                        occluded = true;
                        break;
                    }
                }
            }
            if (!occluded) add_edge(ai, bi, Direction::Left, Direction::Right);
        }
    }

    const auto order = [&](int lhs, int rhs) {
        const BBox& lb = elements[graph.index_of_.at(lhs)].bbox;
        const BBox& rb = elements[graph.index_of_.at(rhs)].bbox;
        if (reading_order_less(lb, rb)) return true;
        if (reading_order_less(rb, lb)) return false;
        return lhs < rhs;
    };
    for (auto& per_element : graph.lists_)
        for (auto& list : per_element) std::sort(list.begin(), list.end(), order);
    return graph;
}

namespace {

// Greedy 1-D clustering of members by a coordinate: a member joins the
// current cluster while its value stays within tol of the cluster start.
template <typename Key>
std::vector<std::vector<const Element*>> cluster_by(
    std::vector<const Element*> members, Key key, int tol) {
    std::sort(members.begin(), members.end(),
              [&](const Element* a, const Element* b) {
                  if (key(*a) != key(*b)) return key(*a) < key(*b);
                  return reading_order_less(a->bbox, b->bbox);
              });
    std::vector<std::vector<const Element*>> clusters;
    for (const Element* m : members) {
        if (clusters.empty() || key(*m) - key(*clusters.back().front()) > tol)
            clusters.emplace_back();
        clusters.back().push_back(m);
    }
    return clusters;
}

// Gaps inside every cluster of three or more must be mutually equal
// within tol; clusters of one or two members are exempt.
bool spacing_consistent(const std::vector<std::vector<const Element*>>& clusters,
                        bool vertical, int tol) {
    for (const auto& cluster : clusters) {
        if (cluster.size() <= 2) continue;
        std::vector<const Element*> run(cluster);
        std::sort(run.begin(), run.end(), [&](const Element* a, const Element* b) {
            return vertical ? a->bbox.row_min < b->bbox.row_min
                            : a->bbox.col_min < b->bbox.col_min;
        });
        int min_gap = 0, max_gap = 0;
        for (std::size_t i = 0; i + 1 < run.size(); ++i) {
            const int gap = vertical
                                ? run[i + 1]->bbox.row_min - run[i]->bbox.row_max
                                : run[i + 1]->bbox.col_min - run[i]->bbox.col_max;
            if (i == 0) {
                min_gap = max_gap = gap;
            } else {
                min_gap = std::min(min_gap, gap);
                max_gap = std::max(max_gap, gap);
            }
        }
        if (max_gap - min_gap > tol) return false;
    }
    return true;
}

bool can_add_impl(const Element& candidate,
                  const std::vector<const Element*>& members,
                  const GroupingConfig& config) {
    bool aligned = false;
    for (const Element* m : members) {
        if (std::abs(candidate.bbox.col_min - m->bbox.col_min) <=
                config.align_tol_px ||
            std::abs(candidate.bbox.row_min - m->bbox.row_min) <=
                config.align_tol_px) {
            aligned = true;
            break;
        }
    }
    if (!aligned) return false;

    std::vector<const Element*> hypothetical(members);
    hypothetical.push_back(&candidate);
    const auto columns = cluster_by(
        hypothetical, [](const Element& e) { return e.bbox.col_min; },
        config.align_tol_px);
    if (!spacing_consistent(columns, /*vertical=*/true, config.spacing_tol_px))
        return false;
    const auto rows = cluster_by(
        hypothetical, [](const Element& e) { return e.bbox.row_min; },
        config.align_tol_px);
    return spacing_consistent(rows, /*vertical=*/false, config.spacing_tol_px);
}

}  // namespace

bool can_add_to_group(const Element& candidate, const UIGroup& group,
                      const std::vector<Element>& elements,
                      const GroupingConfig& config) {
    std::vector<const Element*> members;
    members.reserve(group.member_ids.size());
    for (const int id : group.member_ids) {
        const auto it =
            std::find_if(elements.begin(), elements.end(),
                         [id](const Element& e) { return e.id == id; });
        if (it == elements.end())
            throw Error("can_add_to_group: unknown member id " +
                        std::to_string(id));
        members.push_back(&*it);
    }
    return can_add_impl(candidate, members, config);
}

std::vector<UIGroup> search_ui_groups(const std::vector<Element>& elements,
                                      const RelationGraph& graph,
                                      const GroupingConfig& config) {
    std::unordered_map<int, const Element*> by_id;
    for (const Element& e : elements) by_id[e.id] = &e;

    // Deterministic seed order replaces the pseudo-code's random start.
    std::vector<const Element*> order;
    order.reserve(elements.size());
    for (const Element& e : elements) order.push_back(&e);
    std::sort(order.begin(), order.end(), [](const Element* a, const Element* b) {
        if (reading_order_less(a->bbox, b->bbox)) return true;
        if (reading_order_less(b->bbox, a->bbox)) return false;
        return a->id < b->id;
    });

    std::set<int> visited;
    std::vector<UIGroup> groups;
    for (const Element* seed : order) {
        if (visited.count(seed->id)) continue;
        visited.insert(seed->id);

        UIGroup group;
        group.member_ids.push_back(seed->id);
        group.hull = seed->bbox;
        std::vector<const Element*> members{seed};

        std::deque<int> queue{seed->id};
        while (!queue.empty()) {
            const int current = queue.front();
            queue.pop_front();
            for (const Direction dir : {Direction::Up, Direction::Down,
                                        Direction::Left, Direction::Right}) {
                for (const int nb_id : graph.neighbors(current, dir)) {
                    if (visited.count(nb_id)) continue;
                    const Element* nb = by_id.at(nb_id);
                    if (!can_add_impl(*nb, members, config)) continue;
                    visited.insert(nb_id);
                    group.member_ids.push_back(nb_id);
                    group.hull = enclosing(group.hull, nb->bbox);
                    members.push_back(nb);
                    queue.push_back(nb_id);
                }
            }
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

std::vector<Element> merge_groups(const std::vector<Element>& elements,
                                  const std::vector<UIGroup>& groups) {
    std::unordered_map<int, const Element*> by_id;
    for (const Element& e : elements) by_id[e.id] = &e;

    std::vector<Element> blocks;
    blocks.reserve(groups.size());
    for (const UIGroup& group : groups) {
        if (group.member_ids.empty())
            throw Error("merge_groups: empty group");
        if (group.member_ids.size() == 1) {
            blocks.push_back(*by_id.at(group.member_ids.front()));
            continue;
        }
        Element block;
        block.id = *std::min_element(group.member_ids.begin(),
                                     group.member_ids.end());
        block.kind = ElementKind::Unknown;
        block.bbox = group.hull;
        blocks.push_back(block);
    }
    std::sort(blocks.begin(), blocks.end(), [](const Element& a, const Element& b) {
        if (reading_order_less(a.bbox, b.bbox)) return true;
        if (reading_order_less(b.bbox, a.bbox)) return false;
        return a.id < b.id;
    });
    return blocks;
}

std::string groups_to_json_text(const std::vector<UIGroup>& groups) {
    nlohmann::json doc;
    doc["groups"] = nlohmann::json::array();
    for (const UIGroup& g : groups) {
        doc["groups"].push_back(
            {{"ids", g.member_ids},
             {"hull", {g.hull.col_min, g.hull.row_min, g.hull.col_max,
                       g.hull.row_max}}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace ui2html
