#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ui2html/image.hpp"
#include "ui2html/layout.hpp"

namespace ui2html {

class EmptyReference : public Error {
public:
    EmptyReference() : Error("EmptyReference: reference token list is empty") {}
};

// Markup-aware tokenizer: tag opens are single tokens ("<div", "</div"),
// '>' and '/>' close them, attribute names and quoted values are split on
// '=' and the quotes, text splits on whitespace with punctuation emitted
// as single-character tokens. Comments are dropped.
std::vector<std::string> tokenize_html(const std::string& html);

enum class BleuSmoothing { None, AddEpsilon };

struct BleuConfig {
    int max_n = 4;
    // Empty means uniform 1/max_n; otherwise must have max_n entries
    // summing to 1.
    std::vector<double> weights;
    BleuSmoothing smoothing = BleuSmoothing::AddEpsilon;
    static constexpr double kEpsilon = 1e-9;
};

struct BleuReport {
    double score = 0.0;
    std::vector<double> precisions;  // P_1..P_N (clipped)
    double bp = 0.0;                 // brevity penalty
    std::size_t candidate_len = 0;
    std::size_t reference_len = 0;
};

// BLEU-N = BP * exp(sum w_n log P_n), BP = 1 if c >= r else exp(1 - r/c).
// With AddEpsilon smoothing a zero clipped count contributes log(epsilon)
// instead of -inf. An empty candidate scores 0.
BleuReport bleu(const std::vector<std::string>& candidate,
                const std::vector<std::string>& reference,
                const BleuConfig& config = {});

std::string bleu_report_to_json_text(const BleuReport& report);

struct PageStats {
    int dom_depth = 0;
    int dom_breadth = 0;  // max element children of any node
    int tag_count = 0;    // opened tags (void and self-closing included)
    int unique_tags = 0;
    std::size_t length_tokens = 0;
    double aspect_ratio = 0.0;  // image height / width
    std::vector<std::string> warnings;
};

// Permissive tag scanner; mismatched nesting is auto-closed with a warning
// rather than rejected.
PageStats page_stats(const std::string& html, int image_height, int image_width);

std::string page_stats_to_json_text(const PageStats& stats);

struct TreeSimilarity {
    bool structural_equal = false;
    int node_count_a = 0;
    int node_count_b = 0;
    std::string first_divergence;  // node path like "root/2/0", empty if equal
};

// Depth-first comparison of node types and child counts; portions must
// agree within 0.05 (positions are deliberately not compared).
TreeSimilarity tree_similarity(const LayoutTree& a, const LayoutTree& b);

std::string tree_similarity_to_json_text(const TreeSimilarity& report);

// Hook for plugging an external image embedder (none ships here); paired
// with cosine_similarity this is the seam for visual-similarity scoring.
class ImageEncoder {
public:
    virtual ~ImageEncoder() = default;
    virtual std::vector<float> encode(const PageImage& image) = 0;
};

double cosine_similarity(const std::vector<float>& a,
                         const std::vector<float>& b);

}  // namespace ui2html
