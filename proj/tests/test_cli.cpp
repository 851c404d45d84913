#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ui2html/element.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CmdResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out_file = dir / "stdout.txt";
    const fs::path err_file = dir / "stderr.txt";
    const std::string cmd = std::string(UI2HTML_BIN) + " " + args + " > " +
                            out_file.string() + " 2> " + err_file.string();
    const int rc = std::system(cmd.c_str());
    CmdResult result;
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ui2html_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("--version exits cleanly") {
    const fs::path dir = fresh_dir("version");
    const CmdResult result = run_cli("--version", dir);
    CHECK(result.status == 0);
    CHECK(result.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("synth, parse, generate, fuse chain matches run byte for byte") {
    const fs::path dir = fresh_dir("chain");
    const std::string elements = (dir / "elements.json").string();
    const std::string tree = (dir / "tree.json").string();
    const std::string coded = (dir / "coded.json").string();
    const std::string chained_html = (dir / "chained.html").string();
    const std::string run_html = (dir / "run.html").string();

    CHECK(run_cli("synth --seed 11 --depth 3 --width 1100 --height 900"
                  " --tree-out " + (dir / "src_tree.json").string() +
                  " --elements-out " + elements, dir).status == 0);

    CHECK(run_cli("parse --elements " + elements +
                  " --width 1100 --height 900 -o " + tree, dir).status == 0);
    CHECK(run_cli("generate --tree " + tree + " --mock -o " + coded, dir)
              .status == 0);
    CHECK(run_cli("fuse --tree " + coded + " -o " + chained_html, dir).status ==
          0);

    CHECK(run_cli("run --elements " + elements +
                  " --width 1100 --height 900 --mock -o " + run_html, dir)
              .status == 0);

    const std::string chained = slurp(chained_html);
    CHECK(!chained.empty());
    CHECK(chained == slurp(run_html));

    // Reproducibility: a second run yields identical bytes.
    const std::string rerun_html = (dir / "rerun.html").string();
    CHECK(run_cli("run --elements " + elements +
                  " --width 1100 --height 900 --mock -o " + rerun_html, dir)
              .status == 0);
    CHECK(slurp(rerun_html) == chained);
}

TEST_CASE("full pipeline from a rendered screenshot") {
    const fs::path dir = fresh_dir("image_run");
    const std::string png = (dir / "page.png").string();
    CHECK(run_cli("synth --seed 21 --depth 2 --width 700 --height 500"
                  " --tree-out " + (dir / "t.json").string() +
                  " --elements-out " + (dir / "e.json").string() +
                  " --png-out " + png, dir).status == 0);
    const std::string html = (dir / "page.html").string();
    const CmdResult result = run_cli(
        "run --image " + png + " --mock -o " + html +
        " --artifacts " + (dir / "artifacts").string(), dir);
    CHECK(result.status == 0);
    CHECK(slurp(html).find("<!DOCTYPE html>") == 0);
    for (const char* name :
         {"elements.json", "groups.json", "blocks.json", "tree.json",
          "tree_code.json"})
        CHECK(fs::exists(dir / "artifacts" / name));
}

TEST_CASE("detect writes the element schema") {
    const fs::path dir = fresh_dir("detect");
    const std::string png = (dir / "page.png").string();
    CHECK(run_cli("synth --seed 3 --depth 1 --width 600 --height 400"
                  " --tree-out " + (dir / "t.json").string() +
                  " --elements-out " + (dir / "e.json").string() +
                  " --png-out " + png, dir).status == 0);
    const std::string detected = (dir / "detected.json").string();
    CHECK(run_cli("detect --image " + png + " -o " + detected, dir).status == 0);
    const auto elements = ui2html::load_elements(detected);
    CHECK(!elements.empty());

    // Detected elements parse into a tree, with an overlay and groups dump.
    const std::string tree = (dir / "tree.json").string();
    const std::string overlay = (dir / "overlay.png").string();
    const std::string groups = (dir / "groups.json").string();
    CHECK(run_cli("parse --elements " + detected + " --image " + png + " -o " +
                  tree + " --overlay " + overlay + " --groups-out " + groups,
                  dir).status == 0);
    CHECK(fs::exists(overlay));
    CHECK(slurp(groups).find("\"hull\"") != std::string::npos);
}

TEST_CASE("stage-tagged errors reach stderr with nonzero exit") {
    const fs::path dir = fresh_dir("errors");
    const std::string empty = (dir / "empty.json").string();
    std::ofstream(empty) << "[]\n";
    const CmdResult parse = run_cli(
        "parse --elements " + empty + " --width 100 --height 100", dir);
    CHECK(parse.status != 0);
    CHECK(parse.err.find("layout: EmptyPage") != std::string::npos);

    const std::string codeless = (dir / "codeless.json").string();
    std::ofstream(codeless)
        << R"({"type":"atomic","position":[0,0,10,10],"portion":1.0,)"
        << R"("children":[],"code":null})";
    const CmdResult fuse = run_cli("fuse --tree " + codeless, dir);
    CHECK(fuse.status != 0);
    CHECK(fuse.err.find("codegen: MissingCode") != std::string::npos);

    const CmdResult missing = run_cli("run --elements /nope.json --mock", dir);
    CHECK(missing.status != 0);

    const CmdResult no_client = run_cli(
        "run --elements " + empty + " --width 10 --height 10", dir);
    CHECK(no_client.status != 0);
    CHECK(no_client.err.find("client") != std::string::npos);
}

TEST_CASE("eval subcommands emit their JSON reports") {
    const fs::path dir = fresh_dir("eval");
    const std::string ref = (dir / "ref.html").string();
    const std::string gen = (dir / "gen.html").string();
    std::ofstream(ref) << "<div><p>hello world</p></div>";
    std::ofstream(gen) << "<div><p>hello there</p></div>";

    const CmdResult bleu = run_cli(
        "eval bleu --ref " + ref + " --gen " + gen + " --max-n 2", dir);
    CHECK(bleu.status == 0);
    const auto bleu_json = nlohmann::json::parse(bleu.out);
    CHECK(bleu_json["score"].get<double>() > 0.0);
    CHECK(bleu_json["score"].get<double>() < 1.0);

    // Identical files score 1.
    const CmdResult self_bleu =
        run_cli("eval bleu --ref " + ref + " --gen " + ref, dir);
    CHECK(nlohmann::json::parse(self_bleu.out)["score"].get<double>() ==
          doctest::Approx(1.0));

    const std::string png = (dir / "img.png").string();
    CHECK(run_cli("synth --seed 1 --depth 0 --width 300 --height 600"
                  " --tree-out " + (dir / "t.json").string() +
                  " --elements-out " + (dir / "e.json").string() +
                  " --png-out " + png, dir).status == 0);
    const CmdResult stats = run_cli(
        "eval stats --html " + ref + " --image " + png, dir);
    CHECK(stats.status == 0);
    const auto stats_json = nlohmann::json::parse(stats.out);
    CHECK(stats_json["tag_count"].get<int>() == 2);
    CHECK(stats_json["aspect_ratio"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("config file values apply with flag precedence") {
    const fs::path dir = fresh_dir("config");
    const std::string config = (dir / "ui2html.toml").string();
    std::ofstream(config) << "[synth]\nseed=5\ndepth=1\nwidth=800\nheight=600\n";
    const std::string t1 = (dir / "t1.json").string();
    const std::string t2 = (dir / "t2.json").string();
    const std::string e1 = (dir / "e1.json").string();
    CHECK(run_cli("--config " + config + " synth --tree-out " + t1 +
                  " --elements-out " + e1, dir).status == 0);
    CHECK(run_cli("synth --seed 5 --depth 1 --width 800 --height 600"
                  " --tree-out " + t2 + " --elements-out " + e1, dir)
              .status == 0);
    CHECK(slurp(t1) == slurp(t2));
}

}  // TEST_SUITE
