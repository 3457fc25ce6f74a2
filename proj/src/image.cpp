#include "vton/image.hpp"

#include <cmath>

namespace vton {

void Image::fill(float r, float g, float b) {
    for (int y = 0; y < height; y++)
        for (int x = 0; x < width; x++) set_pixel(y, x, r, g, b);
}

void Image::clamp01() {
    for (auto& v : data) v = std::clamp(v, 0.f, 1.f);
}

size_t Mask::count() const {
    size_t n = 0;
    for (uint8_t v : data) n += v;
    return n;
}

Mask mask_and(const Mask& a, const Mask& b) {
    check(a.same_size(b), "mask_and: size mismatch");
    Mask out(a.width, a.height);
    for (size_t i = 0; i < out.data.size(); i++) out.data[i] = a.data[i] & b.data[i];
    return out;
}

Mask mask_or(const Mask& a, const Mask& b) {
    check(a.same_size(b), "mask_or: size mismatch");
    Mask out(a.width, a.height);
    for (size_t i = 0; i < out.data.size(); i++) out.data[i] = a.data[i] | b.data[i];
    return out;
}

size_t mask_intersection_count(const Mask& a, const Mask& b) {
    check(a.same_size(b), "mask_intersection_count: size mismatch");
    size_t n = 0;
    for (size_t i = 0; i < a.data.size(); i++) n += a.data[i] & b.data[i];
    return n;
}

static Mask morph3x3(const Mask& m, bool dilate) {
    Mask out(m.width, m.height);
    for (int y = 0; y < m.height; y++) {
        for (int x = 0; x < m.width; x++) {
            uint8_t v = dilate ? 0 : 1;
            for (int dy = -1; dy <= 1; dy++) {
                for (int dx = -1; dx <= 1; dx++) {
                    int yy = y + dy, xx = x + dx;
                    // outside the image counts as background
                    uint8_t s = 0;
                    if (yy >= 0 && yy < m.height && xx >= 0 && xx < m.width) s = m.at(yy, xx);
                    if (dilate)
                        v |= s;
                    else
                        v &= s;
                }
            }
            out.at(y, x) = v;
        }
    }
    return out;
}

Mask dilate3x3(const Mask& m) { return morph3x3(m, true); }
Mask erode3x3(const Mask& m) { return morph3x3(m, false); }

Image downsample_area(const Image& img, int factor) {
    check_config(factor >= 1, "downsample_area: factor must be >= 1");
    if (factor == 1) return img;
    check_config(img.width % factor == 0 && img.height % factor == 0,
                 "downsample_area: size not divisible by factor");
    int w = img.width / factor, h = img.height / factor;
    Image out(w, h);
    float inv = 1.f / (factor * factor);
    for (int c = 0; c < 3; c++) {
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                float s = 0;
                for (int dy = 0; dy < factor; dy++)
                    for (int dx = 0; dx < factor; dx++)
                        s += img.at(c, y * factor + dy, x * factor + dx);
                out.at(c, y, x) = s * inv;
            }
        }
    }
    return out;
}

Image upsample_bilinear(const Image& img, int out_w, int out_h) {
    Image out(out_w, out_h);
    float sx = static_cast<float>(img.width) / out_w;
    float sy = static_cast<float>(img.height) / out_h;
    for (int y = 0; y < out_h; y++) {
        float fy = (y + 0.5f) * sy - 0.5f;
        int y0 = static_cast<int>(std::floor(fy));
        float wy = fy - y0;
        int y0c = std::clamp(y0, 0, img.height - 1);
        int y1c = std::clamp(y0 + 1, 0, img.height - 1);
        for (int x = 0; x < out_w; x++) {
            float fx = (x + 0.5f) * sx - 0.5f;
            int x0 = static_cast<int>(std::floor(fx));
            float wx = fx - x0;
            int x0c = std::clamp(x0, 0, img.width - 1);
            int x1c = std::clamp(x0 + 1, 0, img.width - 1);
            for (int c = 0; c < 3; c++) {
                float v00 = img.at(c, y0c, x0c), v01 = img.at(c, y0c, x1c);
                float v10 = img.at(c, y1c, x0c), v11 = img.at(c, y1c, x1c);
                out.at(c, y, x) = (1 - wy) * ((1 - wx) * v00 + wx * v01) +
                                  wy * ((1 - wx) * v10 + wx * v11);
            }
        }
    }
    return out;
}

Image box_blur(const Image& img, int width) {
    check_config(width >= 1 && width % 2 == 1, "box_blur: width must be odd and >= 1");
    if (width == 1) return img;
    int r = width / 2;
    Image tmp(img.width, img.height), out(img.width, img.height);
    float inv = 1.f / width;
    // horizontal, clamped at borders
    for (int c = 0; c < 3; c++)
        for (int y = 0; y < img.height; y++)
            for (int x = 0; x < img.width; x++) {
                float s = 0;
                for (int d = -r; d <= r; d++)
                    s += img.at(c, y, std::clamp(x + d, 0, img.width - 1));
                tmp.at(c, y, x) = s * inv;
            }
    for (int c = 0; c < 3; c++)
        for (int y = 0; y < img.height; y++)
            for (int x = 0; x < img.width; x++) {
                float s = 0;
                for (int d = -r; d <= r; d++)
                    s += tmp.at(c, std::clamp(y + d, 0, img.height - 1), x);
                out.at(c, y, x) = s * inv;
            }
    return out;
}

Image add_gaussian_noise(const Image& img, float sigma, Rng& rng) {
    Image out = img;
    if (sigma > 0)
        for (auto& v : out.data) v += static_cast<float>(rng.normal() * sigma);
    return out;
}

double image_psnr(const Image& a, const Image& b) {
    check(a.same_size(b), "image_psnr: size mismatch");
    double mse = 0;
    for (size_t i = 0; i < a.data.size(); i++) {
        double d = static_cast<double>(a.data[i]) - b.data[i];
        mse += d * d;
    }
    mse /= static_cast<double>(a.data.size());
    if (mse <= 0) return 99.0;
    return std::min(99.0, 10.0 * std::log10(1.0 / mse));
}

}  // namespace vton
