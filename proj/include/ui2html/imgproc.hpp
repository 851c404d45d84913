#pragma once

#include <cstdint>
#include <vector>

#include "ui2html/geometry.hpp"
#include "ui2html/image.hpp"

namespace ui2html::imgproc {

// Raster kernels behind the element detector. The default entry points
// are OpenMP-parallel over rows/columns; imgproc::serial holds the plain
// reference implementations. Both variants must produce identical bytes
// for identical input (the unit tests and the benchmark target compare
// them), so the parallel loops only ever write disjoint output ranges.

// Rec.601 luma, rounded to nearest.
std::vector<std::uint8_t> to_grayscale(const PageImage& image);

// Binary mask of pixels whose gradient magnitude meets `threshold`.
// Magnitude is max(|dx|, |dy|) / 2 of clamped central differences, so a
// hard edge spreads over the two pixels adjacent to it.
std::vector<std::uint8_t> gradient_mask(const std::vector<std::uint8_t>& gray,
                                        int width, int height, int threshold);

// Binary dilation by a (2r+1) x (2r+1) square, separable sliding window.
std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& mask,
                                 int width, int height, int radius);

namespace serial {
std::vector<std::uint8_t> to_grayscale(const PageImage& image);
std::vector<std::uint8_t> gradient_mask(const std::vector<std::uint8_t>& gray,
                                        int width, int height, int threshold);
std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& mask,
                                 int width, int height, int radius);
}  // namespace serial

// Bounding boxes of 8-connected nonzero components, in first-pixel scan
// order. Single-threaded; the flood fill is cheap next to the kernels.
std::vector<BBox> component_boxes(const std::vector<std::uint8_t>& mask,
                                  int width, int height);

}  // namespace ui2html::imgproc
