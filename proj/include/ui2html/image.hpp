#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ui2html/errors.hpp"
#include "ui2html/geometry.hpp"

namespace ui2html {

class EmptyImage : public Error {
public:
    EmptyImage() : Error("EmptyImage: image width or height is 0") {}
};

class BoundsError : public Error {
public:
    explicit BoundsError(const std::string& msg)
        : Error("BoundsError: " + msg) {}
};

using Rgb = std::array<std::uint8_t, 3>;

// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct PageImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    PageImage() = default;
    PageImage(int w, int h, Rgb fill = {255, 255, 255});

    std::uint8_t* at(int col, int row) {
        return pixels.data() + (static_cast<std::size_t>(row) * width + col) * 3;
    }
    const std::uint8_t* at(int col, int row) const {
        return pixels.data() + (static_cast<std::size_t>(row) * width + col) * 3;
    }
    BBox bounds() const { return BBox{0, 0, width, height}; }

    void fill_rect(const BBox& box, Rgb color);
    void draw_rect_outline(const BBox& box, Rgb color, int thickness = 1);
    // Throws BoundsError if box is not inside the image.
    PageImage crop(const BBox& box) const;
};

// PNG I/O. 8-bit RGB and RGBA are accepted; alpha is composited over white.
PageImage load_png(const std::string& path);
void save_png(const PageImage& image, const std::string& path);
std::vector<std::uint8_t> encode_png(const PageImage& image);

}  // namespace ui2html
