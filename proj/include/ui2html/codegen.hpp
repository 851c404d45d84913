#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ui2html/detect.hpp"
#include "ui2html/image.hpp"
#include "ui2html/layout.hpp"
#include "ui2html/relations.hpp"

namespace ui2html {

class EmptyResponse : public Error {
public:
    explicit EmptyResponse(const std::string& msg)
        : Error("EmptyResponse: " + msg) {}
};

class ClientError : public Error {
public:
    ClientError(int node_id, const std::string& msg)
        : Error("ClientError: node " + std::to_string(node_id) + ": " + msg),
          node_id(node_id) {}
    int node_id;
};

class MissingCode : public Error {
public:
    explicit MissingCode(int node_id)
        : Error("MissingCode: leaf " + std::to_string(node_id) + " has no code"),
          node_id(node_id) {}
    int node_id;
};

struct SnippetRequest {
    int node_id = 0;     // depth-first index of the leaf
    PageImage crop;      // image cut at the leaf position
    std::string prompt;
};

struct CodeSnippet {
    int node_id = 0;
    std::string html;  // starts with <div and ends with </div>
};

class SnippetClient {
public:
    virtual ~SnippetClient() = default;
    // Raw generator output; may wrap the snippet in prose or code fences.
    // Must be safe to call from several threads at once.
    virtual std::string generate(const SnippetRequest& request) = 0;
};

// Deterministic placeholder generator: output is a pure function of
// (node_id, crop dimensions), so pipelines are reproducible offline.
class MockClient final : public SnippetClient {
public:
    std::string generate(const SnippetRequest& request) override;
};

struct RemoteConfig {
    std::string endpoint;  // e.g. https://host/v1/generate
    std::string model;
    std::string api_key;   // resolved from an environment variable
    int max_tokens = 4096;
    double temperature = 0.0;
    int timeout_seconds = 120;
};

// HTTP client: POST with a JSON body carrying the model name, the prompt,
// the base64 PNG crop, max_tokens and temperature. Requests and responses
// are logged with the key redacted.
class RemoteClient final : public SnippetClient {
public:
    explicit RemoteClient(RemoteConfig config);
    std::string generate(const SnippetRequest& request) override;

private:
    RemoteConfig config_;
};

// Pure helpers behind RemoteClient, split out for direct testing.
std::string base64_encode(const std::uint8_t* data, std::size_t len);
std::string build_remote_request_body(const RemoteConfig& config,
                                      const SnippetRequest& request);
std::string parse_remote_response_text(const std::string& body);

// Constant prompt embedding the five snippet constraints.
std::string build_snippet_prompt();

// Extracts the snippet from raw generator output: code fences are
// unwrapped, surrounding prose is stripped to the outermost tags, and the
// result is wrapped in <div>...</div> unless it already is one. Throws
// EmptyResponse when nothing salvageable remains.
std::string sanitize_snippet(const std::string& raw);

struct GenerationConfig {
    int parallelism = 4;   // concurrent snippet requests
    int retries = 2;       // extra attempts per leaf
    int backoff_ms = 250;  // doubled after each failed attempt
};

// Generates, sanitizes and attaches one snippet per Atomic leaf. Results
// are keyed by leaf index, so the output does not depend on completion
// order. A leaf that still fails after the retry budget aborts the whole
// call with ClientError; partial trees are never returned.
LayoutTree generate_snippets(const LayoutTree& tree, const PageImage& image,
                             SnippetClient& client,
                             const GenerationConfig& config = {});

struct GeneratedPage {
    std::string html;
    LayoutTree tree;
};

// Shortest decimal representation with at most 4 fraction digits
// ("1", "0.3", "0.1235"); used for the emitted flex values.
std::string format_portion(double portion);

// Deterministic fusion of the code-bearing tree into one HTML document:
// fixed preamble, then per node a flex div (`row`/`column` containers,
// `root` marker on the outermost one, `atomic` leaves embedding their
// snippet inline). No language model is involved.
GeneratedPage code_fusion(const LayoutTree& tree);

struct PipelineConfig {
    DetectorConfig detector;
    GroupingConfig grouping;
    LayoutConfig layout;
    GenerationConfig generation;
};

struct PipelineArtifacts {
    std::vector<Element> elements;
    std::vector<UIGroup> groups;
    std::vector<Element> blocks;
    LayoutTree tree;
    LayoutTree tree_with_code;
};

// Full pipeline from a screenshot: detect -> group -> layout -> snippets
// -> fusion. Errors carry the failing stage name as a prefix.
GeneratedPage run_pipeline(const PageImage& image, SnippetClient& client,
                           const PipelineConfig& config,
                           PipelineArtifacts* artifacts = nullptr);

// Same pipeline from precomputed elements. The image may be null; crops
// are then cut from a blank page, which is all the mock client needs.
GeneratedPage run_pipeline(const std::vector<Element>& elements, int page_width,
                           int page_height, const PageImage* image,
                           SnippetClient& client, const PipelineConfig& config,
                           PipelineArtifacts* artifacts = nullptr);

}  // namespace ui2html
