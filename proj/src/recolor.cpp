#include "darkviz/recolor.hpp"

#include <algorithm>
#include <utility>

#include "darkviz/errors.hpp"
#include "darkviz/optimize.hpp"

namespace darkviz {
namespace {

constexpr Rgb8 kSeparator{128, 128, 128};

}  // namespace

PixelImage apply_palette(const PixelImage& image, const ExtractedPalette& palette,
                         std::span<const LchColor> dark_colors, const BackgroundSpec& bg,
                         RenderMode mode) {
    if (palette.labels.size() != image.pixel_count()) {
        throw DimensionMismatchError("palette labels do not match image");
    }
    if (std::cmp_not_equal(dark_colors.size(), palette.centroids.size())) {
        throw DimensionMismatchError("dark palette is not index-aligned with light palette");
    }

    const std::vector<Rgb8> dark_rgb = palette_to_srgb(dark_colors);
    std::vector<LabColor> dark_lab;
    std::vector<LabColor> light_lab;
    if (mode == RenderMode::residual) {
        dark_lab.reserve(dark_colors.size());
        for (const auto& c : dark_colors) {
            dark_lab.push_back(lch_to_lab(c));
        }
        light_lab.reserve(palette.centroids.size());
        for (const auto& c : palette.centroids) {
            light_lab.push_back(srgb_to_lab(c));
        }
    }

    PixelImage out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const std::int32_t label = palette.labels[i];
        if (label < 0) {
            out.pixels[i] = bg.dark_bg;
        } else if (mode == RenderMode::quantize) {
            out.pixels[i] = dark_rgb[label];
        } else {
            const LabColor pixel = srgb_to_lab(image.pixels[i]);
            const LabColor& base = light_lab[label];
            const LabColor& dark = dark_lab[label];
            out.pixels[i] = lab_to_srgb_clipped(
                {dark.L + (pixel.L - base.L), dark.a + (pixel.a - base.a),
                 dark.b + (pixel.b - base.b)});
        }
    }
    return out;
}

PixelImage invert_image(const PixelImage& image) {
    PixelImage out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const Rgb8 c = image.pixels[i];
        out.pixels[i] = {static_cast<std::uint8_t>(255 - c.r),
                         static_cast<std::uint8_t>(255 - c.g),
                         static_cast<std::uint8_t>(255 - c.b)};
    }
    return out;
}

PixelImage compose_preview(const PixelImage& light, const PixelImage& dark) {
    const int height = std::max(light.height, dark.height);
    const int width = light.width + 2 + dark.width;
    PixelImage out(width, height, kSeparator);

    for (int y = 0; y < light.height; ++y) {
        for (int x = 0; x < light.width; ++x) {
            out.at(x, y) = light.at(x, y);
        }
    }
    for (int y = 0; y < dark.height; ++y) {
        for (int x = 0; x < dark.width; ++x) {
            out.at(light.width + 2 + x, y) = dark.at(x, y);
        }
    }
    return out;
}

}  // namespace darkviz
