#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ui2html/codegen.hpp"
#include "ui2html/detect.hpp"
#include "ui2html/eval.hpp"
#include "ui2html/synth.hpp"

namespace fs = std::filesystem;
using namespace ui2html;

namespace {

constexpr const char* kVersion = "0.1.0";

template <typename F>
auto stage(const char* name, F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileRead: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("FileWrite: cannot open '" + path + "'");
    out << text;
}

struct ClientOptions {
    bool mock = false;
    std::string endpoint;
    std::string model;
    std::string key_env = "UI2HTML_API_KEY";
    int max_tokens = 4096;
    int timeout_seconds = 120;
};

void add_client_options(CLI::App* cmd, ClientOptions& opts) {
    cmd->add_flag("--mock", opts.mock, "Use the deterministic offline client");
    cmd->add_option("--endpoint", opts.endpoint, "Remote generator URL");
    cmd->add_option("--model", opts.model, "Remote model name");
    cmd->add_option("--key-env", opts.key_env,
                    "Environment variable holding the API key");
    cmd->add_option("--max-tokens", opts.max_tokens, "Remote completion budget");
    cmd->add_option("--timeout", opts.timeout_seconds, "Remote timeout, seconds");
}

std::unique_ptr<SnippetClient> make_client(const ClientOptions& opts) {
    if (opts.mock) return std::make_unique<MockClient>();
    if (opts.endpoint.empty() || opts.model.empty())
        throw Error("client: pass --mock, or --endpoint and --model");
    const char* key = std::getenv(opts.key_env.c_str());
    if (key == nullptr || *key == '\0')
        throw Error("client: API key environment variable '" + opts.key_env +
                    "' is not set (keys are never passed as flags)");
    RemoteConfig config;
    config.endpoint = opts.endpoint;
    config.model = opts.model;
    config.api_key = key;
    config.max_tokens = opts.max_tokens;
    config.timeout_seconds = opts.timeout_seconds;
    return std::make_unique<RemoteClient>(std::move(config));
}

struct GroupingOptions {
    GroupingConfig config;
    void add(CLI::App* cmd) {
        cmd->add_option("--align-tol", config.align_tol_px,
                        "Alignment tolerance, px");
        cmd->add_option("--spacing-tol", config.spacing_tol_px,
                        "Spacing consistency tolerance, px");
    }
};

struct PageGeometry {
    std::optional<PageImage> image;
    int width = 0;
    int height = 0;
};

// Page size comes from the image when given, from explicit flags next,
// and from the element hull as a last resort.
PageGeometry resolve_page(const std::string& image_path, int width, int height,
                          const std::vector<Element>& elements) {
    PageGeometry page;
    if (!image_path.empty()) {
        page.image = load_png(image_path);
        page.width = page.image->width;
        page.height = page.image->height;
        return page;
    }
    if (width > 0 && height > 0) {
        page.width = width;
        page.height = height;
        return page;
    }
    for (const Element& e : elements) {
        page.width = std::max(page.width, e.bbox.col_max);
        page.height = std::max(page.height, e.bbox.row_max);
    }
    return page;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Screenshot-to-HTML layout pipeline"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "Read options from a TOML/INI file");
    app.require_subcommand(1);

    // ---- detect ----
    auto* detect_cmd =
        app.add_subcommand("detect", "Detect element boxes in a screenshot");
    std::string detect_image, detect_out = "elements.json";
    DetectorConfig detector;
    detect_cmd->add_option("--image", detect_image, "Input PNG")->required();
    detect_cmd->add_option("-o,--out", detect_out, "Output elements JSON");
    detect_cmd->add_option("--grad-threshold", detector.gradient_threshold,
                           "Gradient threshold (0-255)");
    detect_cmd->add_option("--dilation-radius", detector.dilation_radius,
                           "Dilation radius, px");
    detect_cmd->add_option("--min-area", detector.min_area,
                           "Minimum element area, px^2");

    // ---- parse ----
    auto* parse_cmd =
        app.add_subcommand("parse", "Parse elements into a layout tree");
    std::string parse_elements, parse_image, parse_out = "tree.json";
    std::string parse_overlay, parse_groups;
    int parse_width = 0, parse_height = 0;
    GroupingOptions parse_grouping;
    LayoutConfig parse_layout;
    parse_cmd->add_option("--elements", parse_elements, "Input elements JSON")
        ->required();
    parse_cmd->add_option("--image", parse_image, "Screenshot PNG (for size)");
    parse_cmd->add_option("--width", parse_width, "Page width when no image");
    parse_cmd->add_option("--height", parse_height, "Page height when no image");
    parse_cmd->add_option("-o,--out", parse_out, "Output tree JSON");
    parse_cmd->add_option("--overlay", parse_overlay,
                          "Write a division overlay PNG (needs --image)");
    parse_cmd->add_option("--groups-out", parse_groups, "Write groups JSON");
    parse_grouping.add(parse_cmd);
    parse_cmd->add_option("--min-gap", parse_layout.min_gap_px,
                          "Minimum divider gap, px");

    // ---- generate ----
    auto* generate_cmd =
        app.add_subcommand("generate", "Attach snippets to a layout tree");
    std::string generate_tree, generate_image, generate_out = "tree_code.json";
    ClientOptions generate_client;
    GenerationConfig generate_config;
    generate_cmd->add_option("--tree", generate_tree, "Input tree JSON")
        ->required();
    generate_cmd->add_option("--image", generate_image, "Screenshot PNG");
    generate_cmd->add_option("-o,--out", generate_out, "Output tree JSON");
    add_client_options(generate_cmd, generate_client);
    generate_cmd->add_option("--parallelism", generate_config.parallelism,
                             "Concurrent snippet requests");
    generate_cmd->add_option("--retries", generate_config.retries,
                             "Retries per snippet");
    generate_cmd->add_option("--backoff-ms", generate_config.backoff_ms,
                             "Initial retry backoff");

    // ---- fuse ----
    auto* fuse_cmd =
        app.add_subcommand("fuse", "Fuse a code-bearing tree into HTML");
    std::string fuse_tree, fuse_out = "page.html";
    fuse_cmd->add_option("--tree", fuse_tree, "Input tree JSON")->required();
    fuse_cmd->add_option("-o,--out", fuse_out, "Output HTML file");

    // ---- run ----
    auto* run_cmd = app.add_subcommand("run", "Full pipeline to HTML");
    std::string run_image, run_elements, run_out = "page.html", run_artifacts;
    int run_width = 0, run_height = 0;
    ClientOptions run_client;
    PipelineConfig run_config;
    run_cmd->add_option("--image", run_image, "Screenshot PNG");
    run_cmd->add_option("--elements", run_elements, "Elements JSON");
    run_cmd->add_option("--width", run_width, "Page width when no image");
    run_cmd->add_option("--height", run_height, "Page height when no image");
    run_cmd->add_option("-o,--out", run_out, "Output HTML file");
    run_cmd->add_option("--artifacts", run_artifacts,
                        "Directory for intermediate JSON artifacts");
    add_client_options(run_cmd, run_client);
    run_cmd->add_option("--grad-threshold", run_config.detector.gradient_threshold,
                        "Gradient threshold (0-255)");
    run_cmd->add_option("--dilation-radius", run_config.detector.dilation_radius,
                        "Dilation radius, px");
    run_cmd->add_option("--min-area", run_config.detector.min_area,
                        "Minimum element area, px^2");
    run_cmd->add_option("--align-tol", run_config.grouping.align_tol_px,
                        "Alignment tolerance, px");
    run_cmd->add_option("--spacing-tol", run_config.grouping.spacing_tol_px,
                        "Spacing consistency tolerance, px");
    run_cmd->add_option("--min-gap", run_config.layout.min_gap_px,
                        "Minimum divider gap, px");
    run_cmd->add_option("--parallelism", run_config.generation.parallelism,
                        "Concurrent snippet requests");
    run_cmd->add_option("--retries", run_config.generation.retries,
                        "Retries per snippet");
    run_cmd->add_option("--backoff-ms", run_config.generation.backoff_ms,
                        "Initial retry backoff");

    // ---- synth ----
    auto* synth_cmd =
        app.add_subcommand("synth", "Generate a synthetic layout fixture");
    SynthConfig synth_config;
    std::string synth_fill = "onebox";
    int synth_width = 1512, synth_height = 1000;
    std::string synth_tree_out = "synth_tree.json";
    std::string synth_elements_out = "synth_elements.json";
    std::string synth_png_out;
    synth_cmd->add_option("--seed", synth_config.seed, "Generator seed");
    synth_cmd->add_option("--depth", synth_config.max_depth, "Maximum depth");
    synth_cmd->add_option("--max-children", synth_config.max_children,
                          "Maximum children per container");
    synth_cmd->add_option("--gap", synth_config.gap_px, "Inter-child gap, px");
    synth_cmd->add_option("--min-leaf", synth_config.min_leaf_px,
                          "Minimum leaf extent, px");
    synth_cmd->add_option("--fill", synth_fill, "Leaf fill: onebox | grid");
    synth_cmd->add_option("--width", synth_width, "Page width");
    synth_cmd->add_option("--height", synth_height, "Page height");
    synth_cmd->add_option("--tree-out", synth_tree_out, "Output tree JSON");
    synth_cmd->add_option("--elements-out", synth_elements_out,
                          "Output elements JSON");
    synth_cmd->add_option("--png-out", synth_png_out, "Optional rendered PNG");

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "Evaluation utilities");
    eval_cmd->require_subcommand(1);
    auto* bleu_cmd = eval_cmd->add_subcommand("bleu", "Code similarity score");
    std::string bleu_ref, bleu_gen;
    BleuConfig bleu_config;
    bleu_cmd->add_option("--ref", bleu_ref, "Reference HTML/text file")
        ->required();
    bleu_cmd->add_option("--gen", bleu_gen, "Generated HTML/text file")
        ->required();
    bleu_cmd->add_option("--max-n", bleu_config.max_n, "Maximum n-gram order");
    auto* stats_cmd = eval_cmd->add_subcommand("stats", "Page complexity stats");
    std::string stats_html, stats_image;
    stats_cmd->add_option("--html", stats_html, "HTML file")->required();
    stats_cmd->add_option("--image", stats_image, "Screenshot PNG")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*detect_cmd) {
            const PageImage image =
                stage("detect", [&] { return load_png(detect_image); });
            const auto elements =
                stage("detect", [&] { return detect_elements(image, detector); });
            save_elements(elements, detect_out);
            std::cout << detect_out << ": " << elements.size() << " elements\n";
        } else if (*parse_cmd) {
            const auto elements =
                stage("detect", [&] { return load_elements(parse_elements); });
            const PageGeometry page =
                resolve_page(parse_image, parse_width, parse_height, elements);

            // Same stage sequence as `run`, stopping at the layout tree.
            std::vector<BBox> boxes;
            for (const Element& e : elements) boxes.push_back(e.bbox);
            auto resolved_elements = elements;
            {
                std::vector<BBox> sorted_input(boxes);
                std::sort(sorted_input.begin(), sorted_input.end(),
                          reading_order_less);
                const auto resolved =
                    stage("geometry", [&] { return resolve_overlaps(boxes); });
                if (resolved != sorted_input) {
                    resolved_elements.clear();
                    for (std::size_t i = 0; i < resolved.size(); ++i)
                        resolved_elements.push_back(Element{
                            static_cast<int>(i), ElementKind::Unknown, resolved[i]});
                }
            }
            const auto groups = stage("relations", [&] {
                const RelationGraph graph = build_relation_graph(resolved_elements);
                return search_ui_groups(resolved_elements, graph,
                                        parse_grouping.config);
            });
            const auto blocks = stage("relations", [&] {
                return merge_groups(resolved_elements, groups);
            });
            const LayoutTree tree = stage("layout", [&] {
                return build_layout_tree(blocks, page.width, page.height,
                                         parse_layout);
            });
            save_tree(tree, parse_out);
            if (!parse_groups.empty())
                write_file(parse_groups, groups_to_json_text(groups));
            if (!parse_overlay.empty()) {
                if (!page.image)
                    throw Error("parse: --overlay requires --image");
                save_png(stage("layout", [&] {
                             return render_division_overlay(tree, *page.image);
                         }),
                         parse_overlay);
            }
            std::cout << parse_out << ": "
                      << collect_leaves(tree.root).size() << " leaves\n";
        } else if (*generate_cmd) {
            const LayoutTree tree =
                stage("codegen", [&] { return load_tree(generate_tree); });
            PageImage image;
            if (!generate_image.empty()) {
                image = load_png(generate_image);
            } else {
                if (!generate_client.mock)
                    throw Error(
                        "generate: --image is required unless --mock is used");
                image = PageImage(tree.page_width, tree.page_height);
            }
            const auto client = make_client(generate_client);
            const LayoutTree coded = stage("codegen", [&] {
                return generate_snippets(tree, image, *client, generate_config);
            });
            save_tree(coded, generate_out);
            std::cout << generate_out << ": snippets attached\n";
        } else if (*fuse_cmd) {
            const LayoutTree tree =
                stage("codegen", [&] { return load_tree(fuse_tree); });
            const GeneratedPage page =
                stage("codegen", [&] { return code_fusion(tree); });
            write_file(fuse_out, page.html);
            std::cout << fuse_out << ": " << page.html.size() << " bytes\n";
        } else if (*run_cmd) {
            if (run_image.empty() == run_elements.empty())
                throw Error("run: pass exactly one of --image or --elements");
            const auto client = make_client(run_client);
            PipelineArtifacts artifacts;
            GeneratedPage page;
            if (!run_image.empty()) {
                const PageImage image = load_png(run_image);
                page = run_pipeline(image, *client, run_config, &artifacts);
            } else {
                const auto elements = load_elements(run_elements);
                const PageGeometry geo =
                    resolve_page("", run_width, run_height, elements);
                page = run_pipeline(elements, geo.width, geo.height, nullptr,
                                    *client, run_config, &artifacts);
            }
            write_file(run_out, page.html);
            if (!run_artifacts.empty()) {
                fs::create_directories(run_artifacts);
                const fs::path dir(run_artifacts);
                save_elements(artifacts.elements, (dir / "elements.json").string());
                write_file((dir / "groups.json").string(),
                           groups_to_json_text(artifacts.groups));
                save_elements(artifacts.blocks, (dir / "blocks.json").string());
                save_tree(artifacts.tree, (dir / "tree.json").string());
                save_tree(artifacts.tree_with_code,
                          (dir / "tree_code.json").string());
            }
            std::cout << run_out << ": " << page.html.size() << " bytes\n";
        } else if (*synth_cmd) {
            if (synth_fill == "onebox") {
                synth_config.leaf_fill = LeafFill::OneBox;
            } else if (synth_fill == "grid") {
                synth_config.leaf_fill = LeafFill::AlignedGrid;
            } else {
                throw Error("synth: --fill must be onebox or grid");
            }
            const LayoutTree tree =
                random_layout(synth_config, synth_width, synth_height);
            const auto elements = render_boxes(tree, synth_config);
            save_tree(tree, synth_tree_out);
            save_elements(elements, synth_elements_out);
            if (!synth_png_out.empty())
                save_png(render_page_image(elements, synth_width, synth_height),
                         synth_png_out);
            std::cout << synth_tree_out << ": "
                      << collect_leaves(tree.root).size() << " leaves, "
                      << elements.size() << " elements\n";
        } else if (*bleu_cmd) {
            const auto reference = tokenize_html(read_file(bleu_ref));
            const auto candidate = tokenize_html(read_file(bleu_gen));
            const BleuReport report = bleu(candidate, reference, bleu_config);
            std::cout << bleu_report_to_json_text(report);
        } else if (*stats_cmd) {
            const PageImage image = load_png(stats_image);
            const PageStats stats =
                page_stats(read_file(stats_html), image.height, image.width);
            std::cout << page_stats_to_json_text(stats);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
