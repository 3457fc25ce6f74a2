#include "vton/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>

namespace vton {

namespace {

struct FileCloser {
    void operator()(FILE* f) const {
        if (f) fclose(f);
    }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

uint8_t to_u8(float v) {
    float s = std::round(std::clamp(v, 0.f, 1.f) * 255.f);
    return static_cast<uint8_t>(s);
}

void write_rows(const std::string& path, int width, int height, int color_type,
                const std::vector<uint8_t>& rows_interleaved, int bytes_per_pixel) {
    FilePtr fp(fopen(path.c_str(), "wb"));
    if (!fp) throw IoError("cannot open for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw IoError("libpng init failed: " + path);
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("png write failed: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> row_ptrs(height);
    for (int y = 0; y < height; y++)
        row_ptrs[y] = const_cast<png_bytep>(&rows_interleaved[static_cast<size_t>(y) * width *
                                                             bytes_per_pixel]);
    png_write_image(png, row_ptrs.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FilePtr fp;
    int width = 0, height = 0, channels = 0;
    std::vector<uint8_t> pixels;  // interleaved 8-bit

    explicit PngReader(const std::string& path) : fp(fopen(path.c_str(), "rb")) {
        if (!fp) throw IoError("cannot open for reading: " + path);
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        info = png ? png_create_info_struct(png) : nullptr;
        if (!png || !info) {
            png_destroy_read_struct(&png, &info, nullptr);
            throw IoError("libpng init failed: " + path);
        }
        if (setjmp(png_jmpbuf(png))) {
            png_destroy_read_struct(&png, &info, nullptr);
            throw IoError("png read failed: " + path);
        }
        png_init_io(png, fp.get());
        png_read_info(png, info);

        png_uint_32 w, h;
        int bit_depth, color_type;
        png_get_IHDR(png, info, &w, &h, &bit_depth, &color_type, nullptr, nullptr, nullptr);
        // normalize everything to 8-bit gray or RGB
        if (bit_depth == 16) png_set_strip_16(png);
        if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
        if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
        if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
        png_read_update_info(png, info);

        width = static_cast<int>(w);
        height = static_cast<int>(h);
        channels = png_get_channels(png, info);
        pixels.resize(static_cast<size_t>(width) * height * channels);
        std::vector<png_bytep> row_ptrs(height);
        for (int y = 0; y < height; y++)
            row_ptrs[y] = &pixels[static_cast<size_t>(y) * width * channels];
        png_read_image(png, row_ptrs.data());
        png_read_end(png, nullptr);
    }

    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

}  // namespace

void save_png(const std::string& path, const Image& img) {
    std::vector<uint8_t> rows(static_cast<size_t>(img.width) * img.height * 3);
    size_t i = 0;
    for (int y = 0; y < img.height; y++)
        for (int x = 0; x < img.width; x++) {
            rows[i++] = to_u8(img.at(0, y, x));
            rows[i++] = to_u8(img.at(1, y, x));
            rows[i++] = to_u8(img.at(2, y, x));
        }
    write_rows(path, img.width, img.height, PNG_COLOR_TYPE_RGB, rows, 3);
}

Image load_png(const std::string& path) {
    PngReader r(path);
    Image img(r.width, r.height);
    for (int y = 0; y < r.height; y++)
        for (int x = 0; x < r.width; x++) {
            size_t base = (static_cast<size_t>(y) * r.width + x) * r.channels;
            if (r.channels >= 3) {
                img.at(0, y, x) = r.pixels[base + 0] / 255.f;
                img.at(1, y, x) = r.pixels[base + 1] / 255.f;
                img.at(2, y, x) = r.pixels[base + 2] / 255.f;
            } else {
                float v = r.pixels[base] / 255.f;
                img.set_pixel(y, x, v, v, v);
            }
        }
    return img;
}

void save_mask_png(const std::string& path, const Mask& mask) {
    std::vector<uint8_t> rows(static_cast<size_t>(mask.width) * mask.height);
    for (size_t i = 0; i < rows.size(); i++) rows[i] = mask.data[i] ? 255 : 0;
    write_rows(path, mask.width, mask.height, PNG_COLOR_TYPE_GRAY, rows, 1);
}

Mask load_mask_png(const std::string& path) {
    PngReader r(path);
    Mask m(r.width, r.height);
    for (int y = 0; y < r.height; y++)
        for (int x = 0; x < r.width; x++) {
            size_t base = (static_cast<size_t>(y) * r.width + x) * r.channels;
            m.at(y, x) = r.pixels[base] >= 128 ? 1 : 0;
        }
    return m;
}

}  // namespace vton
