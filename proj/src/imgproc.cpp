#include "ui2html/imgproc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ui2html::imgproc {

namespace {

inline std::uint8_t luma(const std::uint8_t* p) {
    return static_cast<std::uint8_t>(
        std::lround(0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]));
}

inline void grayscale_row(const PageImage& img, int r, std::uint8_t* out) {
    const std::uint8_t* src = img.at(0, r);
    for (int c = 0; c < img.width; ++c) out[c] = luma(src + 3 * c);
}

inline void gradient_row(const std::uint8_t* gray, int w, int h, int r,
                         int threshold, std::uint8_t* out) {
    const std::uint8_t* row = gray + static_cast<std::size_t>(r) * w;
    const std::uint8_t* up = gray + static_cast<std::size_t>(std::max(0, r - 1)) * w;
    const std::uint8_t* dn =
        gray + static_cast<std::size_t>(std::min(h - 1, r + 1)) * w;
    for (int c = 0; c < w; ++c) {
        const int left = row[std::max(0, c - 1)];
        const int right = row[std::min(w - 1, c + 1)];
        const int mag =
            std::max(std::abs(right - left), std::abs(dn[c] - up[c])) / 2;
        out[c] = mag >= threshold ? 1 : 0;
    }
}

// Sliding-window "any nonzero" along one row of a strided sequence.
inline void dilate_line(const std::uint8_t* in, std::uint8_t* out, int n,
                        std::ptrdiff_t stride, int radius) {
    int count = 0;
    for (int i = 0; i < std::min(n, radius); ++i) count += in[i * stride] != 0;
    for (int i = 0; i < n; ++i) {
        if (i + radius < n) count += in[(i + radius) * stride] != 0;
        out[i * stride] = count > 0 ? 1 : 0;
        if (i - radius >= 0) count -= in[(i - radius) * stride] != 0;
    }
}

}  // namespace

namespace serial {

std::vector<std::uint8_t> to_grayscale(const PageImage& img) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(img.width) *
                                  img.height);
    for (int r = 0; r < img.height; ++r)
        grayscale_row(img, r, out.data() + static_cast<std::size_t>(r) * img.width);
    return out;
}

std::vector<std::uint8_t> gradient_mask(const std::vector<std::uint8_t>& gray,
                                        int w, int h, int threshold) {
    std::vector<std::uint8_t> out(gray.size());
    for (int r = 0; r < h; ++r)
        gradient_row(gray.data(), w, h, r, threshold,
                     out.data() + static_cast<std::size_t>(r) * w);
    return out;
}

std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& mask, int w,
                                 int h, int radius) {
    if (radius <= 0) return mask;
    std::vector<std::uint8_t> tmp(mask.size()), out(mask.size());
    for (int r = 0; r < h; ++r)
        dilate_line(mask.data() + static_cast<std::size_t>(r) * w,
                    tmp.data() + static_cast<std::size_t>(r) * w, w, 1, radius);
    for (int c = 0; c < w; ++c)
        dilate_line(tmp.data() + c, out.data() + c, h, w, radius);
    return out;
}

}  // namespace serial

std::vector<std::uint8_t> to_grayscale(const PageImage& img) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(img.width) *
                                  img.height);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < img.height; ++r)
        grayscale_row(img, r, out.data() + static_cast<std::size_t>(r) * img.width);
    return out;
}

std::vector<std::uint8_t> gradient_mask(const std::vector<std::uint8_t>& gray,
                                        int w, int h, int threshold) {
    std::vector<std::uint8_t> out(gray.size());
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r)
        gradient_row(gray.data(), w, h, r, threshold,
                     out.data() + static_cast<std::size_t>(r) * w);
    return out;
}

std::vector<std::uint8_t> dilate(const std::vector<std::uint8_t>& mask, int w,
                                 int h, int radius) {
    if (radius <= 0) return mask;
    std::vector<std::uint8_t> tmp(mask.size()), out(mask.size());
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r)
        dilate_line(mask.data() + static_cast<std::size_t>(r) * w,
                    tmp.data() + static_cast<std::size_t>(r) * w, w, 1, radius);
#pragma omp parallel for schedule(static)
    for (int c = 0; c < w; ++c)
        dilate_line(tmp.data() + c, out.data() + c, h, w, radius);
    return out;
}

std::vector<BBox> component_boxes(const std::vector<std::uint8_t>& mask, int w,
                                  int h) {
    std::vector<BBox> boxes;
    std::vector<std::uint8_t> seen(mask.size(), 0);
    std::vector<int> stack;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t idx = static_cast<std::size_t>(r) * w + c;
            if (!mask[idx] || seen[idx]) continue;
            BBox box{c, r, c + 1, r + 1};
            seen[idx] = 1;
            stack.push_back(static_cast<int>(idx));
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                const int cc = cur % w;
                const int cr = cur / w;
                box.col_min = std::min(box.col_min, cc);
                box.row_min = std::min(box.row_min, cr);
                box.col_max = std::max(box.col_max, cc + 1);
                box.row_max = std::max(box.row_max, cr + 1);
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int nc = cc + dc;
                        const int nr = cr + dr;
                        if (nc < 0 || nc >= w || nr < 0 || nr >= h) continue;
                        const std::size_t nidx =
                            static_cast<std::size_t>(nr) * w + nc;
                        if (mask[nidx] && !seen[nidx]) {
                            seen[nidx] = 1;
                            stack.push_back(static_cast<int>(nidx));
                        }
                    }
                }
            }
            boxes.push_back(box);
        }
    }
    return boxes;
}

}  // namespace ui2html::imgproc
