#pragma once

#include <span>

#include "darkviz/color.hpp"
#include "darkviz/image.hpp"
#include "darkviz/palette.hpp"

namespace darkviz {

/// quantize: pixels take their cluster's dark color (at most k+1 distinct
/// output colors). residual: dark color plus the pixel's original Lab
/// offset from its light centroid, clipped to sRGB; preserves in-cluster
/// texture at the cost of exact palette control.
enum class RenderMode {
    quantize,
    residual,
};

/// Renders the dark-mode bitmap: background pixels become bg.dark_bg,
/// foreground pixels map through their cluster per the render mode.
PixelImage apply_palette(const PixelImage& image, const ExtractedPalette& palette,
                         std::span<const LchColor> dark_colors, const BackgroundSpec& bg,
                         RenderMode mode);

/// Channel-wise 255 - c. The common naive dark-mode baseline.
PixelImage invert_image(const PixelImage& image);

/// Side-by-side composition with a 2px separator, padding the shorter image.
PixelImage compose_preview(const PixelImage& light, const PixelImage& dark);

}  // namespace darkviz
