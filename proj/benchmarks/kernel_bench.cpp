// Serial reference vs OpenMP raster kernels on a screenshot-sized page,
// plus the end-to-end detector. Run: ./kernel_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <random>

#include "ui2html/detect.hpp"
#include "ui2html/imgproc.hpp"
#include "ui2html/synth.hpp"

using namespace ui2html;

namespace {

PageImage bench_page() {
    SynthConfig config;
    config.seed = 17;
    config.max_depth = 4;
    config.leaf_fill = LeafFill::OneBox;
    const LayoutTree tree = random_layout(config, 1512, 3000);
    return render_page_image(render_boxes(tree, config), 1512, 3000);
}

const PageImage& page() {
    static const PageImage image = bench_page();
    return image;
}

const std::vector<std::uint8_t>& gray() {
    static const std::vector<std::uint8_t> g = imgproc::to_grayscale(page());
    return g;
}

const std::vector<std::uint8_t>& mask() {
    static const std::vector<std::uint8_t> m =
        imgproc::gradient_mask(gray(), page().width, page().height, 25);
    return m;
}

}  // namespace

static void BM_Grayscale_Serial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(imgproc::serial::to_grayscale(page()));
}
BENCHMARK(BM_Grayscale_Serial);

static void BM_Grayscale_OpenMP(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(imgproc::to_grayscale(page()));
}
BENCHMARK(BM_Grayscale_OpenMP);

static void BM_GradientMask_Serial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(imgproc::serial::gradient_mask(
            gray(), page().width, page().height, 25));
}
BENCHMARK(BM_GradientMask_Serial);

static void BM_GradientMask_OpenMP(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            imgproc::gradient_mask(gray(), page().width, page().height, 25));
}
BENCHMARK(BM_GradientMask_OpenMP);

static void BM_Dilate_Serial(benchmark::State& state) {
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            imgproc::serial::dilate(mask(), page().width, page().height, radius));
}
BENCHMARK(BM_Dilate_Serial)->Arg(2)->Arg(5);

static void BM_Dilate_OpenMP(benchmark::State& state) {
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            imgproc::dilate(mask(), page().width, page().height, radius));
}
BENCHMARK(BM_Dilate_OpenMP)->Arg(2)->Arg(5);

static void BM_DetectElements(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(detect_elements(page()));
}
BENCHMARK(BM_DetectElements);

BENCHMARK_MAIN();
