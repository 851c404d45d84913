#include "ui2html/detect.hpp"

#include <algorithm>

#include "ui2html/imgproc.hpp"

namespace ui2html {

std::vector<Element> detect_elements(const PageImage& image,
                                     const DetectorConfig& config) {
    if (image.width <= 0 || image.height <= 0) throw EmptyImage();

    const auto gray = imgproc::to_grayscale(image);
    auto mask = imgproc::gradient_mask(gray, image.width, image.height,
                                       config.gradient_threshold);
    mask = imgproc::dilate(mask, image.width, image.height,
                           config.dilation_radius);

    const int shrink = config.dilation_radius + 1;
    std::vector<BBox> boxes;
    for (const BBox& raw : imgproc::component_boxes(mask, image.width,
                                                    image.height)) {
        BBox box{raw.col_min + shrink, raw.row_min + shrink,
                 raw.col_max - shrink, raw.row_max - shrink};
        if (!box.valid()) continue;
        if (box.area() < config.min_area) continue;
        boxes.push_back(box);
    }
    if (!boxes.empty()) boxes = resolve_overlaps(std::move(boxes));

    std::vector<Element> elements;
    elements.reserve(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        elements.push_back(
            Element{static_cast<int>(i), ElementKind::Unknown, boxes[i]});
    }
    return elements;
}

}  // namespace ui2html
