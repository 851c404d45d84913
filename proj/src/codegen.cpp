#include "ui2html/codegen.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"

namespace ui2html {

using nlohmann::json;

std::string MockClient::generate(const SnippetRequest& request) {
    return "<div class=\"stub\" data-node=\"" + std::to_string(request.node_id) +
           "\">" + std::to_string(request.crop.width) + "x" +
           std::to_string(request.crop.height) + "</div>";
}

std::string base64_encode(const std::uint8_t* data, std::size_t len) {
    static constexpr char alphabet[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((len + 2) / 3 * 4);
    for (std::size_t i = 0; i < len; i += 3) {
        std::uint32_t chunk = static_cast<std::uint32_t>(data[i]) << 16;
        if (i + 1 < len) chunk |= static_cast<std::uint32_t>(data[i + 1]) << 8;
        if (i + 2 < len) chunk |= data[i + 2];
        out.push_back(alphabet[(chunk >> 18) & 63]);
        out.push_back(alphabet[(chunk >> 12) & 63]);
        out.push_back(i + 1 < len ? alphabet[(chunk >> 6) & 63] : '=');
        out.push_back(i + 2 < len ? alphabet[chunk & 63] : '=');
    }
    return out;
}

std::string build_remote_request_body(const RemoteConfig& config,
                                      const SnippetRequest& request) {
    const std::vector<std::uint8_t> png = encode_png(request.crop);
    json body{{"model", config.model},
              {"prompt", request.prompt},
              {"image_base64", base64_encode(png.data(), png.size())},
              {"image_format", "png"},
              {"max_tokens", config.max_tokens},
              {"temperature", config.temperature}};
    return body.dump();
}

std::string parse_remote_response_text(const std::string& body) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(std::string("RemoteResponse: invalid JSON: ") + e.what());
    }
    if (doc.contains("content") && doc["content"].is_string())
        return doc["content"].get<std::string>();
    if (doc.contains("text") && doc["text"].is_string())
        return doc["text"].get<std::string>();
    if (doc.contains("choices") && doc["choices"].is_array() &&
        !doc["choices"].empty()) {
        const json& first = doc["choices"][0];
        if (first.contains("message") && first["message"].contains("content") &&
            first["message"]["content"].is_string())
            return first["message"]["content"].get<std::string>();
        if (first.contains("text") && first["text"].is_string())
            return first["text"].get<std::string>();
    }
    throw Error("RemoteResponse: no text field in response");
}

RemoteClient::RemoteClient(RemoteConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty())
        throw Error("RemoteClient: endpoint is required");
}

namespace {

// Splits "scheme://host[:port]/path" into the client base and the path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    const std::size_t scheme = endpoint.find("://");
    const std::size_t path_start =
        endpoint.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (path_start == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

std::string RemoteClient::generate(const SnippetRequest& request) {
    const auto [base, path] = split_endpoint(config_.endpoint);
    httplib::Client client(base);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_connection_timeout(config_.timeout_seconds, 0);

    httplib::Headers headers;
    if (!config_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + config_.api_key);

    const std::string body = build_remote_request_body(config_, request);
    std::clog << "[remote] POST " << config_.endpoint << " node="
              << request.node_id << " crop=" << request.crop.width << "x"
              << request.crop.height << " body=" << body.size()
              << "B key=<redacted>\n";
    const httplib::Result res =
        client.Post(path, headers, body, "application/json");
    if (!res) {
        throw Error("RemoteRequest: " + httplib::to_string(res.error()));
    }
    std::clog << "[remote] <- status=" << res->status << " body="
              << res->body.size() << "B\n";
    if (res->status != 200) {
        throw Error("RemoteRequest: HTTP " + std::to_string(res->status));
    }
    return parse_remote_response_text(res->body);
}

std::string build_snippet_prompt() {
    return "You are generating an HTML fragment for one region of a webpage "
           "screenshot.\n"
           "Follow these rules exactly:\n"
           "1. The generated code must start with a <div> tag and end with a "
           "</div> tag.\n"
           "2. Do not set fixed width or height values.\n"
           "3. The image proportions should be preserved.\n"
           "4. The margin and padding of the outermost element should be set "
           "to 0.\n"
           "5. Make sure the generated code does not conflict with outer divs "
           "in layout or style.\n"
           "Return only the code snippet, with no explanations.\n";
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// Content of the first ``` fenced block, language tag dropped.
std::string unfence(const std::string& s) {
    const std::size_t open = s.find("```");
    if (open == std::string::npos) return s;
    std::size_t content = s.find('\n', open);
    if (content == std::string::npos) content = open + 3;
    else ++content;
    const std::size_t close = s.find("```", content);
    return s.substr(content,
                    close == std::string::npos ? std::string::npos
                                               : close - content);
}

bool starts_with_div(const std::string& s) {
    if (s.size() < 4) return false;
    static constexpr char tag[] = "<div";
    for (int i = 0; i < 4; ++i)
        if (std::tolower(static_cast<unsigned char>(s[static_cast<std::size_t>(i)])) != tag[i])
            return false;
    return s.size() == 4 || !std::isalnum(static_cast<unsigned char>(s[4]));
}

bool ends_with_div(const std::string& s) {
    static constexpr char tag[] = "</div>";
    if (s.size() < 6) return false;
    for (int i = 0; i < 6; ++i) {
        const char c = s[s.size() - 6 + static_cast<std::size_t>(i)];
        if (std::tolower(static_cast<unsigned char>(c)) != tag[i]) return false;
    }
    return true;
}

}  // namespace

std::string sanitize_snippet(const std::string& raw) {
    std::string text = trim(unfence(raw));
    const std::size_t first_tag = text.find('<');
    const std::size_t last_close = text.rfind('>');
    if (first_tag == std::string::npos || last_close == std::string::npos ||
        last_close < first_tag) {
        throw EmptyResponse("no markup found in generator output");
    }
    text = text.substr(first_tag, last_close - first_tag + 1);
    if (starts_with_div(text) && ends_with_div(text)) return text;
    return "<div>" + text + "</div>";
}

LayoutTree generate_snippets(const LayoutTree& tree, const PageImage& image,
                             SnippetClient& client,
                             const GenerationConfig& config) {
    LayoutTree out = tree;
    const std::vector<LayoutNode*> leaves = collect_leaves(out.root);
    for (const LayoutNode* leaf : leaves) {
        if (!image.bounds().contains(leaf->position))
            throw BoundsError("leaf " + to_string(leaf->position) +
                              " outside image " + to_string(image.bounds()));
    }

    const std::string prompt = build_snippet_prompt();
    const std::size_t n = leaves.size();
    std::vector<std::string> results(n);
    std::vector<std::pair<int, std::string>> failures;
    std::mutex failures_mutex;
    std::atomic<std::size_t> next{0};

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            SnippetRequest request{static_cast<int>(i),
                                   image.crop(leaves[i]->position), prompt};
            std::string error;
            for (int attempt = 0; attempt <= config.retries; ++attempt) {
                if (attempt > 0 && config.backoff_ms > 0) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(
                        config.backoff_ms << (attempt - 1)));
                }
                try {
                    results[i] = sanitize_snippet(client.generate(request));
                    error.clear();
                    break;
                } catch (const std::exception& e) {
                    error = e.what();
                }
            }
            if (!error.empty()) {
                const std::lock_guard<std::mutex> lock(failures_mutex);
                failures.emplace_back(static_cast<int>(i), error);
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::max(1, config.parallelism)), 1,
        std::max<std::size_t>(1, n));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    if (!failures.empty()) {
        const auto worst = std::min_element(failures.begin(), failures.end());
        throw ClientError(worst->first, worst->second);
    }
    for (std::size_t i = 0; i < n; ++i) leaves[i]->code = results[i];
    return out;
}

std::string format_portion(double portion) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", portion);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

namespace {

void process_node(const LayoutNode& node, bool is_root, int& leaf_index,
                  std::string& html) {
    switch (node.type) {
        case NodeType::Row:
        case NodeType::Column:
            html += node.type == NodeType::Row ? "<div class=\"row"
                                               : "<div class=\"column";
            html += is_root ? " root\"" : "\"";
            html += " style=\"flex: " + format_portion(node.portion) + ";\">\n";
            for (const LayoutNode& child : node.children)
                process_node(child, false, leaf_index, html);
            html += "</div>\n";
            break;
        case NodeType::Atomic:
            if (!node.code) throw MissingCode(leaf_index);
            html += "<div class=\"atomic\" style=\"flex: " +
                    format_portion(node.portion) + ";\">" + *node.code +
                    "</div>\n";
            ++leaf_index;
            break;
    }
}

constexpr const char* kDocumentHead =
    "<!DOCTYPE html>\n"
    "<html>\n"
    "<head>\n"
    "<meta charset=\"utf-8\">\n"
    "<style>\n"
    "body{margin:0;padding:0;}\n"
    ".row{display:flex;flex-direction:row;}\n"
    ".column{display:flex;flex-direction:column;}\n"
    ".atomic{overflow:hidden;}\n"
    ".root{width:100%;}\n"
    "</style>\n"
    "</head>\n"
    "<body>\n";

}  // namespace

GeneratedPage code_fusion(const LayoutTree& tree) {
    std::string body;
    int leaf_index = 0;
    process_node(tree.root, true, leaf_index, body);
    GeneratedPage page;
    page.html = std::string(kDocumentHead) + body + "</body>\n</html>\n";
    page.tree = tree;
    return page;
}

namespace {

template <typename F>
auto stage(const char* name, F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

GeneratedPage pipeline_from_elements(std::vector<Element> elements,
                                     int page_width, int page_height,
                                     const PageImage* image,
                                     SnippetClient& client,
                                     const PipelineConfig& config,
                                     PipelineArtifacts* artifacts) {
    // Ingested boxes may overlap; downstream stages require disjointness.
    elements = stage("geometry", [&] {
        std::vector<BBox> boxes;
        for (const Element& e : elements) boxes.push_back(e.bbox);
        std::vector<BBox> sorted_input(boxes);
        std::sort(sorted_input.begin(), sorted_input.end(), reading_order_less);
        const std::vector<BBox> resolved = resolve_overlaps(boxes);
        if (resolved == sorted_input) return elements;
        std::vector<Element> rebuilt;
        for (std::size_t i = 0; i < resolved.size(); ++i)
            rebuilt.push_back(Element{static_cast<int>(i), ElementKind::Unknown,
                                      resolved[i]});
        return rebuilt;
    });
    if (artifacts) artifacts->elements = elements;

    const std::vector<UIGroup> groups = stage("relations", [&] {
        const RelationGraph graph = build_relation_graph(elements);
        return search_ui_groups(elements, graph, config.grouping);
    });
    if (artifacts) artifacts->groups = groups;

    const std::vector<Element> blocks =
        stage("relations", [&] { return merge_groups(elements, groups); });
    if (artifacts) artifacts->blocks = blocks;

    const LayoutTree tree = stage("layout", [&] {
        return build_layout_tree(blocks, page_width, page_height, config.layout);
    });
    if (artifacts) artifacts->tree = tree;

    const PageImage blank =
        image ? PageImage() : PageImage(page_width, page_height);
    const PageImage& source = image ? *image : blank;
    const LayoutTree coded = stage("codegen", [&] {
        return generate_snippets(tree, source, client, config.generation);
    });
    if (artifacts) artifacts->tree_with_code = coded;

    return stage("codegen", [&] { return code_fusion(coded); });
}

}  // namespace

GeneratedPage run_pipeline(const PageImage& image, SnippetClient& client,
                           const PipelineConfig& config,
                           PipelineArtifacts* artifacts) {
    const std::vector<Element> elements =
        stage("detect", [&] { return detect_elements(image, config.detector); });
    return pipeline_from_elements(elements, image.width, image.height, &image,
                                  client, config, artifacts);
}

GeneratedPage run_pipeline(const std::vector<Element>& elements, int page_width,
                           int page_height, const PageImage* image,
                           SnippetClient& client, const PipelineConfig& config,
                           PipelineArtifacts* artifacts) {
    return pipeline_from_elements(elements, page_width, page_height, image,
                                  client, config, artifacts);
}

}  // namespace ui2html
