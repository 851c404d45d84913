#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ui2html/detect.hpp"
#include "ui2html/eval.hpp"
#include "ui2html/relations.hpp"
#include "ui2html/synth.hpp"

using namespace ui2html;

namespace {

std::vector<Element> recover_blocks(const std::vector<Element>& elements,
                                    const GroupingConfig& grouping = {}) {
    const RelationGraph graph = build_relation_graph(elements);
    return merge_groups(elements,
                        search_ui_groups(elements, graph, grouping));
}

LayoutTree recover_tree(const LayoutTree& source, const SynthConfig& config) {
    const auto elements = render_boxes(source, config);
    const auto blocks = recover_blocks(elements);
    return build_layout_tree(blocks, source.page_width, source.page_height,
                             LayoutConfig{});
}

void check_positions_close(const LayoutNode& a, const LayoutNode& b, int tol) {
    CHECK(std::abs(a.position.col_min - b.position.col_min) <= tol);
    CHECK(std::abs(a.position.row_min - b.position.row_min) <= tol);
    CHECK(std::abs(a.position.col_max - b.position.col_max) <= tol);
    CHECK(std::abs(a.position.row_max - b.position.row_max) <= tol);
    REQUIRE(a.children.size() == b.children.size());
    for (std::size_t i = 0; i < a.children.size(); ++i)
        check_positions_close(a.children[i], b.children[i], tol);
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("max_depth 0 yields a single atomic root") {
    const SynthConfig config{.seed = 1, .max_depth = 0};
    const LayoutTree tree = random_layout(config, 400, 300);
    CHECK(tree.root.type == NodeType::Atomic);
    CHECK(tree.root.position == BBox{0, 0, 400, 300});
    CHECK(tree.root.portion == doctest::Approx(1.0));
}

TEST_CASE("identical seeds yield identical trees, different seeds differ") {
    const SynthConfig config{.seed = 9, .max_depth = 3};
    const LayoutTree a = random_layout(config, 1000, 800);
    const LayoutTree b = random_layout(config, 1000, 800);
    CHECK(tree_to_json_text(a) == tree_to_json_text(b));

    const SynthConfig other{.seed = 10, .max_depth = 3};
    CHECK(tree_to_json_text(a) !=
          tree_to_json_text(random_layout(other, 1000, 800)));
}

TEST_CASE("generated trees satisfy the layout invariants") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SynthConfig config{.seed = seed, .max_depth = 4};
        const LayoutTree tree = random_layout(config, 1512, 1000);
        CHECK(tree.root.position == BBox{0, 0, 1512, 1000});
        // Alternating container axes, children tiling the parent.
        const auto walk = [](const auto& self, const LayoutNode& node) -> void {
            if (node.is_leaf()) return;
            int cursor = node.type == NodeType::Row ? node.position.col_min
                                                    : node.position.row_min;
            for (const LayoutNode& child : node.children) {
                CHECK(child.type != node.type);
                if (node.type == NodeType::Row) {
                    CHECK(child.position.col_min == cursor);
                    cursor = child.position.col_max;
                } else {
                    CHECK(child.position.row_min == cursor);
                    cursor = child.position.row_max;
                }
                self(self, child);
            }
            CHECK(cursor == (node.type == NodeType::Row ? node.position.col_max
                                                        : node.position.row_max));
        };
        walk(walk, tree.root);
    }
}

TEST_CASE("golden tree for seed 7, depth 2") {
    const SynthConfig config{.seed = 7, .max_depth = 2};
    const LayoutTree tree = random_layout(config, 1512, 1000);
    std::ifstream golden(std::string(UI2HTML_TEST_DATA) +
                         "/golden_synth_seed7_depth2.json");
    REQUIRE(golden.good());
    std::ostringstream buf;
    buf << golden.rdbuf();
    CHECK(nlohmann::json::parse(tree_to_json_text(tree)) ==
          nlohmann::json::parse(buf.str()));
}

TEST_CASE("page too small is rejected") {
    const SynthConfig config{.seed = 0};
    CHECK_THROWS_AS(random_layout(config, 40, 1000), PageTooSmall);
}

TEST_CASE("config invariants are enforced") {
    SynthConfig bad_gap{.seed = 0, .gap_px = 4};
    CHECK_THROWS_AS(random_layout(bad_gap, 800, 600), Error);
    SynthConfig bad_leaf{.seed = 0, .gap_px = 24, .min_leaf_px = 40};
    CHECK_THROWS_AS(random_layout(bad_leaf, 800, 600), Error);
}

TEST_CASE("render_boxes emits one disjoint element per leaf") {
    const SynthConfig config{.seed = 3, .max_depth = 3};
    const LayoutTree tree = random_layout(config, 1200, 900);
    const auto elements = render_boxes(tree, config);
    const auto leaves = collect_leaves(tree.root);
    REQUIRE(elements.size() == leaves.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        CHECK(elements[i].id == static_cast<int>(i));
        CHECK(leaves[i]->position.contains(elements[i].bbox));
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            CHECK(intersection_area(elements[i].bbox, elements[j].bbox) == 0);
    }
}

TEST_CASE("aligned grids re-merge into one block per leaf") {
    const SynthConfig config{.seed = 5, .max_depth = 2,
                             .leaf_fill = LeafFill::AlignedGrid};
    const LayoutTree tree = random_layout(config, 1000, 800);
    const auto elements = render_boxes(tree, config);
    const std::size_t leaf_count = collect_leaves(tree.root).size();
    CHECK(elements.size() == leaf_count * 6);
    const auto blocks = recover_blocks(elements);
    CHECK(blocks.size() == leaf_count);
}

TEST_CASE("round-trip recovery is structurally exact (sample)") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        SynthConfig config{.seed = seed};
        config.max_depth = 1 + static_cast<int>(seed % 4);
        config.leaf_fill =
            seed % 2 == 0 ? LeafFill::OneBox : LeafFill::AlignedGrid;
        const LayoutTree source = random_layout(config, 1512, 1000);
        const LayoutTree recovered = recover_tree(source, config);
        const TreeSimilarity report = tree_similarity(source, recovered);
        INFO("seed " << seed << " divergence at " << report.first_divergence);
        CHECK(report.structural_equal);
        if (report.structural_equal)
            check_positions_close(source.root, recovered.root,
                                  config.gap_px / 2);
    }
}

TEST_CASE("rendered page image feeds the detector (OneBox)") {
    const SynthConfig config{.seed = 8, .max_depth = 2};
    const LayoutTree tree = random_layout(config, 700, 500);
    auto elements = render_boxes(tree, config);
    const PageImage image = render_page_image(elements, 700, 500);
    const auto detected = detect_elements(image);  // reading order
    std::sort(elements.begin(), elements.end(),
              [](const Element& a, const Element& b) {
                  return reading_order_less(a.bbox, b.bbox);
              });
    REQUIRE(detected.size() == elements.size());
    for (std::size_t i = 0; i < detected.size(); ++i) {
        CHECK(std::abs(detected[i].bbox.col_min - elements[i].bbox.col_min) <= 1);
        CHECK(std::abs(detected[i].bbox.row_min - elements[i].bbox.row_min) <= 1);
        CHECK(std::abs(detected[i].bbox.col_max - elements[i].bbox.col_max) <= 1);
        CHECK(std::abs(detected[i].bbox.row_max - elements[i].bbox.row_max) <= 1);
    }
}

}  // TEST_SUITE
