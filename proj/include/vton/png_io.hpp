#pragma once

#include <string>

#include "vton/image.hpp"

namespace vton {

// 8-bit RGB on disk; float values are rounded to the nearest of 256 levels.
void save_png(const std::string& path, const Image& img);
Image load_png(const std::string& path);

// 8-bit single-channel, 0 or 255.
void save_mask_png(const std::string& path, const Mask& mask);
Mask load_mask_png(const std::string& path);

}  // namespace vton
