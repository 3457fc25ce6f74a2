#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "vton/common.hpp"
#include "vton/rng.hpp"

namespace vton {

// Planar float RGB image, values nominally in [0,1]. Layout (c, y, x).
struct Image {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h) : width(w), height(h), data(static_cast<size_t>(3) * w * h, 0.f) {}

    float& at(int c, int y, int x) {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    float at(int c, int y, int x) const {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }

    void set_pixel(int y, int x, float r, float g, float b) {
        at(0, y, x) = r;
        at(1, y, x) = g;
        at(2, y, x) = b;
    }

    void fill(float r, float g, float b);
    void clamp01();
    bool same_size(const Image& o) const { return width == o.width && height == o.height; }
};

// Binary mask, one byte per pixel holding 0 or 1.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    Mask() = default;
    Mask(int w, int h) : width(w), height(h), data(static_cast<size_t>(w) * h, 0) {}

    uint8_t& at(int y, int x) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int y, int x) const { return data[static_cast<size_t>(y) * width + x]; }

    size_t count() const;
    bool same_size(const Mask& o) const { return width == o.width && height == o.height; }
};

struct Rgb {
    float r = 0, g = 0, b = 0;
};

// L-infinity distance between two colors.
inline float color_dist(const Rgb& a, const Rgb& b) {
    return std::max({std::abs(a.r - b.r), std::abs(a.g - b.g), std::abs(a.b - b.b)});
}

Mask mask_and(const Mask& a, const Mask& b);
Mask mask_or(const Mask& a, const Mask& b);
size_t mask_intersection_count(const Mask& a, const Mask& b);
Mask dilate3x3(const Mask& m);
Mask erode3x3(const Mask& m);

// factor must divide both dimensions exactly; each output pixel is the mean
// of a factor x factor block.
Image downsample_area(const Image& img, int factor);
Image upsample_bilinear(const Image& img, int out_w, int out_h);
Image box_blur(const Image& img, int width);
Image add_gaussian_noise(const Image& img, float sigma, Rng& rng);

double image_psnr(const Image& a, const Image& b);

}  // namespace vton
