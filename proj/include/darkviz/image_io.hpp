#pragma once

#include <filesystem>

#include "darkviz/image.hpp"

namespace darkviz {

/// Decodes a PNG or JPEG file (detected by signature) to 8-bit RGB.
/// Transparent and partially transparent pixels are composited over
/// alpha_background. Throws IoError on unreadable or undecodable input.
PixelImage load_image(const std::filesystem::path& path, Rgb8 alpha_background);

/// Encodes as 8-bit RGB PNG. Throws IoError on failure.
void save_png(const PixelImage& image, const std::filesystem::path& path);

}  // namespace darkviz
