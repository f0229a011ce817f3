#pragma once

#include <cstddef>
#include <vector>

#include "darkviz/color.hpp"

namespace darkviz {

/// Decoded raster, row-major 8-bit RGB.
struct PixelImage {
    int width = 0;
    int height = 0;
    std::vector<Rgb8> pixels;

    PixelImage() = default;
    PixelImage(int w, int h, Rgb8 fill = {0, 0, 0})
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    Rgb8& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const Rgb8& at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    std::size_t pixel_count() const { return pixels.size(); }
    bool empty() const { return pixels.empty(); }

    friend bool operator==(const PixelImage&, const PixelImage&) = default;
};

}  // namespace darkviz
