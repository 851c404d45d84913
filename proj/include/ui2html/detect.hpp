#pragma once

#include <vector>

#include "ui2html/element.hpp"
#include "ui2html/image.hpp"

namespace ui2html {

// Defaults are calibrated so that solid rectangles on a plain background
// are recovered exactly: the gradient spreads one pixel to each side of
// an edge and dilation adds `dilation_radius` more, so detected component
// boxes are shrunk back by dilation_radius + 1 per side.
struct DetectorConfig {
    int gradient_threshold = 25;  // on the 0..255 luma scale
    int dilation_radius = 2;      // px
    int min_area = 25;            // px^2, applied after shrinking
};

// Connected-region detector: grayscale -> gradient-magnitude threshold ->
// binary dilation -> component labeling -> shrink -> min-area filter ->
// resolve_overlaps. All elements come back with kind Unknown.
std::vector<Element> detect_elements(const PageImage& image,
                                     const DetectorConfig& config = {});

}  // namespace ui2html
