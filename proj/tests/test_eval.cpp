#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "ui2html/eval.hpp"

using namespace ui2html;

namespace {

using Tokens = std::vector<std::string>;

// Independent brute-force BLEU: ordered-map n-gram counting and a direct
// transcription of the formula, sharing no code with the implementation.
double oracle_bleu(const Tokens& candidate, const Tokens& reference, int max_n) {
    const double c = static_cast<double>(candidate.size());
    const double r = static_cast<double>(reference.size());
    if (candidate.empty()) return 0.0;
    double log_sum = 0.0;
    for (int n = 1; n <= max_n; ++n) {
        std::map<Tokens, int> ref_counts;
        for (std::size_t i = 0; i + n <= reference.size(); ++i)
            ++ref_counts[Tokens(reference.begin() + static_cast<long>(i),
                                reference.begin() + static_cast<long>(i) + n)];
        std::map<Tokens, int> cand_counts;
        for (std::size_t i = 0; i + n <= candidate.size(); ++i)
            ++cand_counts[Tokens(candidate.begin() + static_cast<long>(i),
                                 candidate.begin() + static_cast<long>(i) + n)];
        int clipped = 0, total = 0;
        for (const auto& [gram, count] : cand_counts) {
            total += count;
            const auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) clipped += std::min(count, it->second);
        }
        double precision = total > 0 ? static_cast<double>(clipped) / total : 0.0;
        if (precision <= 0.0) precision = 1e-9;
        log_sum += (1.0 / max_n) * std::log(precision);
    }
    const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
    return bp * std::exp(log_sum);
}

struct DocNode {
    std::string tag;
    std::vector<DocNode> children;
};

DocNode random_doc(std::mt19937& rng, int depth) {
    static const char* tags[] = {"div", "span", "p", "section", "ul", "li"};
    DocNode node{tags[rng() % 6], {}};
    if (depth < 4) {
        const std::size_t n = rng() % 4;
        for (std::size_t i = 0; i < n; ++i)
            node.children.push_back(random_doc(rng, depth + 1));
    }
    return node;
}

void render_doc(const DocNode& node, std::string& out) {
    out += "<" + node.tag + ">";
    if (node.children.empty()) out += "x";
    for (const DocNode& child : node.children) render_doc(child, out);
    out += "</" + node.tag + ">";
}

int doc_depth(const DocNode& node) {
    int best = 0;
    for (const DocNode& child : node.children)
        best = std::max(best, doc_depth(child));
    return best + 1;
}

int doc_breadth(const DocNode& node) {
    int best = static_cast<int>(node.children.size());
    for (const DocNode& child : node.children)
        best = std::max(best, doc_breadth(child));
    return best;
}

int doc_count(const DocNode& node) {
    int count = 1;
    for (const DocNode& child : node.children) count += doc_count(child);
    return count;
}

LayoutTree two_leaf_tree(NodeType type, double p0, double p1) {
    LayoutTree tree;
    tree.root.type = type;
    tree.root.position = BBox{0, 0, 100, 100};
    LayoutNode a, b;
    a.position = type == NodeType::Row ? BBox{0, 0, 50, 100} : BBox{0, 0, 100, 50};
    b.position = type == NodeType::Row ? BBox{50, 0, 100, 100}
                                       : BBox{0, 50, 100, 100};
    a.portion = p0;
    b.portion = p1;
    tree.root.children = {a, b};
    return tree;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("tokenizer treats tags, attributes, and text per the rules") {
    CHECK(tokenize_html("<p>hi</p>") ==
          Tokens{"<p", ">", "hi", "</p", ">"});
    CHECK(tokenize_html("").empty());
    CHECK(tokenize_html("a  b") == Tokens{"a", "b"});
    CHECK(tokenize_html("<div class=\"row root\">") ==
          Tokens{"<div", "class", "row root", ">"});
    CHECK(tokenize_html("a, b.") == Tokens{"a", ",", "b", "."});
    CHECK(tokenize_html("<br/>") == Tokens{"<br", "/>"});
    CHECK(tokenize_html("x<!-- hidden -->y") == Tokens{"x", "y"});
    CHECK(tokenize_html("margin:0;") == Tokens{"margin", ":", "0", ";"});
    // Determinism.
    const std::string page = "<html><body class='a b'>1 + 2</body></html>";
    CHECK(tokenize_html(page) == tokenize_html(page));
}

TEST_CASE("bleu is 1 for identical inputs") {
    const Tokens text{"<div", ">", "hello", "</div", ">"};
    const BleuReport report = bleu(text, text);
    CHECK(report.score == doctest::Approx(1.0));
    CHECK(report.bp == 1.0);
    for (const double p : report.precisions) CHECK(p == doctest::Approx(1.0));
}

TEST_CASE("brevity penalty worked example: c=2, r=4") {
    BleuConfig config;
    config.max_n = 1;
    const BleuReport report =
        bleu(Tokens{"a", "b"}, Tokens{"a", "b", "c", "d"}, config);
    CHECK(report.precisions[0] == 1.0);
    CHECK(report.bp == std::exp(1.0 - 4.0 / 2.0));
    CHECK(std::abs(report.bp - std::exp(-1.0)) < 1e-12);
    CHECK(std::abs(report.score - std::exp(-1.0)) < 1e-12);
}

TEST_CASE("bleu agrees with the brute-force oracle on random cases") {
    std::mt19937 rng(77);
    const char* vocab[] = {"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 100; ++trial) {
        Tokens candidate, reference;
        const std::size_t cand_len = rng() % 30;
        const std::size_t ref_len = 1 + rng() % 30;
        for (std::size_t i = 0; i < cand_len; ++i)
            candidate.push_back(vocab[rng() % 5]);
        for (std::size_t i = 0; i < ref_len; ++i)
            reference.push_back(vocab[rng() % 5]);
        const int max_n = 1 + static_cast<int>(rng() % 4);

        BleuConfig config;
        config.max_n = max_n;
        const BleuReport report = bleu(candidate, reference, config);
        CHECK(report.score ==
              doctest::Approx(oracle_bleu(candidate, reference, max_n))
                  .epsilon(1e-9));
        CHECK(report.score >= 0.0);
        CHECK(report.score <= 1.0 + 1e-12);
    }
}

TEST_CASE("bleu input validation and edge cases") {
    CHECK_THROWS_AS(bleu(Tokens{"a"}, Tokens{}), EmptyReference);
    CHECK(bleu(Tokens{}, Tokens{"a"}).score == 0.0);

    BleuConfig bad;
    bad.weights = {0.5, 0.2};
    bad.max_n = 2;
    CHECK_THROWS_AS(bleu(Tokens{"a"}, Tokens{"a"}, bad), Error);

    // Unsmoothed BLEU-4 collapses on fragments shorter than 4 tokens.
    BleuConfig unsmoothed;
    unsmoothed.smoothing = BleuSmoothing::None;
    CHECK(bleu(Tokens{"a", "b"}, Tokens{"a", "b"}, unsmoothed).score == 0.0);
    CHECK(bleu(Tokens{"a", "b"}, Tokens{"a", "b"}).score > 0.0);
}

TEST_CASE("brevity penalty strictly decreases as the candidate shrinks") {
    BleuConfig config;
    config.max_n = 1;
    const Tokens reference(10, "a");
    double previous = -1.0;
    for (std::size_t len = 1; len < 10; ++len) {
        const BleuReport report = bleu(Tokens(len, "a"), reference, config);
        CHECK(report.bp > previous);
        previous = report.bp;
    }
    CHECK(bleu(Tokens(10, "a"), reference, config).bp == 1.0);
}

TEST_CASE("page_stats on the hand-counted example") {
    const PageStats stats = page_stats("<html><body><p>x</p></body></html>", 0, 0);
    CHECK(stats.dom_depth == 3);
    CHECK(stats.tag_count == 3);
    CHECK(stats.unique_tags == 3);
    CHECK(stats.dom_breadth == 1);
    CHECK(stats.warnings.empty());
}

TEST_CASE("page_stats edge cases") {
    const PageStats empty = page_stats("", 0, 0);
    CHECK(empty.dom_depth == 0);
    CHECK(empty.tag_count == 0);
    CHECK(empty.length_tokens == 0);

    CHECK(page_stats("", 1512, 1512).aspect_ratio == doctest::Approx(1.0));
    CHECK(page_stats("", 3024, 1512).aspect_ratio == doctest::Approx(2.0));

    const PageStats malformed = page_stats("<div><p>x</div>", 0, 0);
    CHECK_FALSE(malformed.warnings.empty());
    CHECK(malformed.tag_count == 2);

    const PageStats voids = page_stats("<div><br><img></div>", 0, 0);
    CHECK(voids.dom_depth == 1);
    CHECK(voids.tag_count == 3);
    CHECK(voids.dom_breadth == 2);
}

TEST_CASE("page_stats matches a recursive oracle on random documents") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        const DocNode doc = random_doc(rng, 0);
        std::string html;
        render_doc(doc, html);
        const PageStats stats = page_stats(html, 100, 100);
        CHECK(stats.dom_depth == doc_depth(doc));
        CHECK(stats.tag_count == doc_count(doc));
        CHECK(stats.dom_breadth == std::max(doc_breadth(doc), 1));
        CHECK(stats.warnings.empty());
    }
}

TEST_CASE("tree_similarity separates equal and diverging trees") {
    const LayoutTree row = two_leaf_tree(NodeType::Row, 0.5, 0.5);
    CHECK(tree_similarity(row, row).structural_equal);

    const LayoutTree column = two_leaf_tree(NodeType::Column, 0.5, 0.5);
    const TreeSimilarity diverged = tree_similarity(row, column);
    CHECK_FALSE(diverged.structural_equal);
    CHECK(diverged.first_divergence == "root");
    CHECK(diverged.node_count_a == 3);

    // Portions within 0.05 are equal, beyond diverge.
    const LayoutTree close = two_leaf_tree(NodeType::Row, 0.52, 0.48);
    CHECK(tree_similarity(row, close).structural_equal);
    const LayoutTree far = two_leaf_tree(NodeType::Row, 0.58, 0.42);
    const TreeSimilarity portion_diverged = tree_similarity(row, far);
    CHECK_FALSE(portion_diverged.structural_equal);
    CHECK(portion_diverged.first_divergence == "root/0");
}

TEST_CASE("cosine similarity for the embedding hook") {
    CHECK(cosine_similarity({1.f, 0.f}, {0.f, 1.f}) == doctest::Approx(0.0));
    CHECK(cosine_similarity({1.f, 2.f, 3.f}, {1.f, 2.f, 3.f}) ==
          doctest::Approx(1.0));
    CHECK(cosine_similarity({1.f, 0.f}, {-1.f, 0.f}) == doctest::Approx(-1.0));
    CHECK(cosine_similarity({}, {}) == 0.0);
    CHECK(cosine_similarity({1.f}, {1.f, 2.f}) == 0.0);
}

TEST_CASE("report JSON emitters carry the documented fields") {
    const BleuReport report = bleu(Tokens{"a"}, Tokens{"a"});
    const std::string bleu_json = bleu_report_to_json_text(report);
    for (const char* field : {"\"score\"", "\"precisions\"", "\"bp\"",
                              "\"candidate_len\"", "\"reference_len\""})
        CHECK(bleu_json.find(field) != std::string::npos);

    const std::string stats_json =
        page_stats_to_json_text(page_stats("<p>x</p>", 100, 200));
    for (const char* field :
         {"\"dom_depth\"", "\"dom_breadth\"", "\"tag_count\"", "\"unique_tags\"",
          "\"length_tokens\"", "\"aspect_ratio\"", "\"warnings\""})
        CHECK(stats_json.find(field) != std::string::npos);
}

}  // TEST_SUITE
