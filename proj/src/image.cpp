#include "ui2html/image.hpp"

#include <png.h>

#include <algorithm>
#include <cstring>

namespace ui2html {

PageImage::PageImage(int w, int h, Rgb fill) : width(w), height(h) {
    pixels.resize(static_cast<std::size_t>(w) * h * 3);
    for (std::size_t i = 0; i < pixels.size(); i += 3) {
        pixels[i] = fill[0];
        pixels[i + 1] = fill[1];
        pixels[i + 2] = fill[2];
    }
}

void PageImage::fill_rect(const BBox& box, Rgb color) {
    const int c0 = std::max(0, box.col_min);
    const int r0 = std::max(0, box.row_min);
    const int c1 = std::min(width, box.col_max);
    const int r1 = std::min(height, box.row_max);
    for (int r = r0; r < r1; ++r) {
        for (int c = c0; c < c1; ++c) {
            std::uint8_t* p = at(c, r);
            p[0] = color[0];
            p[1] = color[1];
            p[2] = color[2];
        }
    }
}

void PageImage::draw_rect_outline(const BBox& box, Rgb color, int thickness) {
    fill_rect(BBox{box.col_min, box.row_min, box.col_max, box.row_min + thickness},
              color);
    fill_rect(BBox{box.col_min, box.row_max - thickness, box.col_max, box.row_max},
              color);
    fill_rect(BBox{box.col_min, box.row_min, box.col_min + thickness, box.row_max},
              color);
    fill_rect(BBox{box.col_max - thickness, box.row_min, box.col_max, box.row_max},
              color);
}

PageImage PageImage::crop(const BBox& box) const {
    if (!box.valid() || !bounds().contains(box)) {
        throw BoundsError("crop " + to_string(box) + " outside image " +
                          to_string(bounds()));
    }
    PageImage out(box.width(), box.height());
    for (int r = 0; r < out.height; ++r) {
        std::memcpy(out.at(0, r), at(box.col_min, box.row_min + r),
                    static_cast<std::size_t>(out.width) * 3);
    }
    return out;
}

PageImage load_png(const std::string& path) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        throw Error("ImageRead: cannot open '" + path + "': " + png.message);
    }
    png.format = PNG_FORMAT_RGB;
    PageImage out;
    out.width = static_cast<int>(png.width);
    out.height = static_cast<int>(png.height);
    out.pixels.resize(PNG_IMAGE_SIZE(png));
    // Non-opaque pixels are composited over white.
    const png_color white{255, 255, 255};
    if (!png_image_finish_read(&png, &white, out.pixels.data(), 0, nullptr)) {
        png_image_free(&png);
        throw Error("ImageRead: cannot decode '" + path + "': " + png.message);
    }
    return out;
}

std::vector<std::uint8_t> encode_png(const PageImage& image) {
    if (image.width <= 0 || image.height <= 0) throw EmptyImage();
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = PNG_FORMAT_RGB;
    png_alloc_size_t size = 0;
    png_image_write_to_memory(&png, nullptr, &size, 0, image.pixels.data(), 0,
                              nullptr);
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&png, out.data(), &size, 0,
                                   image.pixels.data(), 0, nullptr)) {
        throw Error(std::string("ImageWrite: cannot encode PNG: ") + png.message);
    }
    out.resize(size);
    return out;
}

void save_png(const PageImage& image, const std::string& path) {
    if (image.width <= 0 || image.height <= 0) throw EmptyImage();
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png, path.c_str(), 0, image.pixels.data(), 0,
                                 nullptr)) {
        throw Error("ImageWrite: cannot write '" + path + "': " + png.message);
    }
}

}  // namespace ui2html
