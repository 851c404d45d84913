#include "ui2html/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace ui2html {

using nlohmann::json;

namespace {

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool is_tag_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
           c == '!' || c == ':';
}

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<std::string> tokenize_html(const std::string& html) {
    std::vector<std::string> tokens;
    const std::size_t n = html.size();
    std::size_t i = 0;
    while (i < n) {
        const char c = html[i];
        if (c == '<') {
            if (html.compare(i, 4, "<!--") == 0) {
                const std::size_t end = html.find("-->", i + 4);
                i = end == std::string::npos ? n : end + 3;
                continue;
            }
            std::size_t j = i + 1;
            if (j < n && html[j] == '/') ++j;
            if (j < n && (std::isalpha(static_cast<unsigned char>(html[j])) ||
                          html[j] == '!')) {
                while (j < n && is_tag_name_char(html[j])) ++j;
                tokens.push_back(html.substr(i, j - i));
                i = j;
                // Attribute names and values, split on '=' and quotes.
                while (i < n) {
                    while (i < n && is_space(html[i])) ++i;
                    if (i >= n) break;
                    if (html[i] == '>') {
                        tokens.emplace_back(">");
                        ++i;
                        break;
                    }
                    if (html[i] == '/' && i + 1 < n && html[i + 1] == '>') {
                        tokens.emplace_back("/>");
                        i += 2;
                        break;
                    }
                    if (html[i] == '/' || html[i] == '=') {
                        ++i;
                        continue;
                    }
                    if (html[i] == '"' || html[i] == '\'') {
                        const char quote = html[i];
                        const std::size_t close = html.find(quote, i + 1);
                        const std::size_t end =
                            close == std::string::npos ? n : close;
                        if (end > i + 1)
                            tokens.push_back(html.substr(i + 1, end - i - 1));
                        i = end < n ? end + 1 : n;
                        continue;
                    }
                    std::size_t start = i;
                    while (i < n && !is_space(html[i]) && html[i] != '=' &&
                           html[i] != '>' && html[i] != '/')
                        ++i;
                    if (i > start) tokens.push_back(html.substr(start, i - start));
                }
                continue;
            }
            tokens.emplace_back("<");
            ++i;
            continue;
        }
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (is_word_char(c)) {
            std::size_t j = i;
            while (j < n && is_word_char(html[j])) ++j;
            tokens.push_back(html.substr(i, j - i));
            i = j;
            continue;
        }
        tokens.push_back(std::string(1, c));
        ++i;
    }
    return tokens;
}

namespace {

std::unordered_map<std::string, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
    std::unordered_map<std::string, int> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key;
        for (int k = 0; k < n; ++k) {
            key += tokens[i + static_cast<std::size_t>(k)];
            key.push_back('\x1f');
        }
        ++counts[key];
    }
    return counts;
}

}  // namespace

BleuReport bleu(const std::vector<std::string>& candidate,
                const std::vector<std::string>& reference,
                const BleuConfig& config) {
    if (reference.empty()) throw EmptyReference();
    if (config.max_n < 1) throw Error("BleuConfig: max_n must be >= 1");
    std::vector<double> weights = config.weights;
    if (weights.empty()) {
        weights.assign(static_cast<std::size_t>(config.max_n),
                       1.0 / config.max_n);
    } else if (static_cast<int>(weights.size()) != config.max_n) {
        throw Error("BleuConfig: need exactly max_n weights");
    } else {
        double sum = 0.0;
        for (const double w : weights) sum += w;
        if (std::abs(sum - 1.0) > 1e-9)
            throw Error("BleuConfig: weights must sum to 1");
    }

    BleuReport report;
    report.candidate_len = candidate.size();
    report.reference_len = reference.size();
    report.precisions.assign(static_cast<std::size_t>(config.max_n), 0.0);
    if (candidate.empty()) return report;  // score 0, bp 0

    for (int n = 1; n <= config.max_n; ++n) {
        const auto ref_counts = ngram_counts(reference, n);
        int clipped = 0;
        int total = 0;
        for (const auto& [gram, count] : ngram_counts(candidate, n)) {
            total += count;
            const auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) clipped += std::min(count, it->second);
        }
        report.precisions[static_cast<std::size_t>(n - 1)] =
            total > 0 ? static_cast<double>(clipped) / total : 0.0;
    }

    const double c = static_cast<double>(report.candidate_len);
    const double r = static_cast<double>(report.reference_len);
    report.bp = c >= r ? 1.0 : std::exp(1.0 - r / c);

    double log_sum = 0.0;
    for (int n = 0; n < config.max_n; ++n) {
        double p = report.precisions[static_cast<std::size_t>(n)];
        if (p <= 0.0) {
            if (config.smoothing == BleuSmoothing::None) {
                report.score = 0.0;
                return report;
            }
            p = BleuConfig::kEpsilon;
        }
        log_sum += weights[static_cast<std::size_t>(n)] * std::log(p);
    }
    report.score = report.bp * std::exp(log_sum);
    return report;
}

std::string bleu_report_to_json_text(const BleuReport& report) {
    json j{{"score", report.score},
           {"precisions", report.precisions},
           {"bp", report.bp},
           {"candidate_len", report.candidate_len},
           {"reference_len", report.reference_len}};
    return j.dump(2) + "\n";
}

namespace {

const std::set<std::string>& void_tags() {
    static const std::set<std::string> tags{
        "area", "base", "br", "col", "embed", "hr", "img", "input",
        "link", "meta", "param", "source", "track", "wbr"};
    return tags;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

PageStats page_stats(const std::string& html, int image_height,
                     int image_width) {
    PageStats stats;
    stats.aspect_ratio = image_width > 0
                             ? static_cast<double>(image_height) / image_width
                             : 0.0;
    stats.length_tokens = tokenize_html(html).size();

    struct OpenNode {
        std::string name;
        int children = 0;
    };
    std::vector<OpenNode> stack;
    int top_level_children = 0;
    std::set<std::string> seen;

    const auto on_child = [&]() {
        if (stack.empty())
            ++top_level_children;
        else
            ++stack.back().children;
    };
    const auto close_node = [&](const OpenNode& node) {
        stats.dom_breadth = std::max(stats.dom_breadth, node.children);
    };

    const std::size_t n = html.size();
    std::size_t i = 0;
    while (i < n) {
        if (html[i] != '<') {
            ++i;
            continue;
        }
        if (html.compare(i, 4, "<!--") == 0) {
            const std::size_t end = html.find("-->", i + 4);
            i = end == std::string::npos ? n : end + 3;
            continue;
        }
        std::size_t j = i + 1;
        const bool closing = j < n && html[j] == '/';
        if (closing) ++j;
        if (j >= n || !(std::isalpha(static_cast<unsigned char>(html[j])) ||
                        html[j] == '!')) {
            ++i;
            continue;
        }
        std::size_t name_end = j;
        while (name_end < n && is_tag_name_char(html[name_end])) ++name_end;
        const std::string name = lower(html.substr(j, name_end - j));
        std::size_t gt = html.find('>', name_end);
        if (gt == std::string::npos) gt = n;
        const bool self_closing = gt > i && gt - 1 < n && html[gt - 1] == '/';
        i = gt < n ? gt + 1 : n;

        if (name.empty() || name[0] == '!') continue;  // doctype etc.

        if (!closing) {
            ++stats.tag_count;
            seen.insert(name);
            on_child();
            if (!self_closing && !void_tags().count(name)) {
                stack.push_back(OpenNode{name, 0});
                stats.dom_depth =
                    std::max(stats.dom_depth, static_cast<int>(stack.size()));
            }
            continue;
        }

        bool found = false;
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            if (it->name == name) {
                found = true;
                break;
            }
        }
        if (!found) {
            stats.warnings.push_back("stray closing tag </" + name + ">");
            continue;
        }
        while (!stack.empty() && stack.back().name != name) {
            stats.warnings.push_back("auto-closed <" + stack.back().name +
                                     "> before </" + name + ">");
            close_node(stack.back());
            stack.pop_back();
        }
        close_node(stack.back());
        stack.pop_back();
    }
    while (!stack.empty()) {
        stats.warnings.push_back("unclosed <" + stack.back().name + ">");
        close_node(stack.back());
        stack.pop_back();
    }
    stats.dom_breadth = std::max(stats.dom_breadth, top_level_children);
    stats.unique_tags = static_cast<int>(seen.size());
    return stats;
}

std::string page_stats_to_json_text(const PageStats& stats) {
    json j{{"dom_depth", stats.dom_depth},
           {"dom_breadth", stats.dom_breadth},
           {"tag_count", stats.tag_count},
           {"unique_tags", stats.unique_tags},
           {"length_tokens", stats.length_tokens},
           {"aspect_ratio", stats.aspect_ratio},
           {"warnings", stats.warnings}};
    return j.dump(2) + "\n";
}

namespace {

int count_nodes(const LayoutNode& node) {
    int count = 1;
    for (const LayoutNode& child : node.children) count += count_nodes(child);
    return count;
}

bool compare_nodes(const LayoutNode& a, const LayoutNode& b,
                   const std::string& path, std::string& divergence) {
    if (a.type != b.type || a.children.size() != b.children.size() ||
        std::abs(a.portion - b.portion) > 0.05) {
        divergence = path;
        return false;
    }
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (!compare_nodes(a.children[i], b.children[i],
                           path + "/" + std::to_string(i), divergence))
            return false;
    }
    return true;
}

}  // namespace

TreeSimilarity tree_similarity(const LayoutTree& a, const LayoutTree& b) {
    TreeSimilarity report;
    report.node_count_a = count_nodes(a.root);
    report.node_count_b = count_nodes(b.root);
    report.structural_equal =
        compare_nodes(a.root, b.root, "root", report.first_divergence);
    return report;
}

std::string tree_similarity_to_json_text(const TreeSimilarity& report) {
    json j{{"structural_equal", report.structural_equal},
           {"node_count_a", report.node_count_a},
           {"node_count_b", report.node_count_b},
           {"first_divergence", report.first_divergence}};
    return j.dump(2) + "\n";
}

double cosine_similarity(const std::vector<float>& a,
                         const std::vector<float>& b) {
    if (a.size() != b.size() || a.empty()) return 0.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace ui2html
