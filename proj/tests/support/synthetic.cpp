#include "synthetic.hpp"

#include <algorithm>
#include <cmath>

namespace darkviz::testing {

void fill_rect(PixelImage& image, int x0, int y0, int w, int h, Rgb8 color) {
    const int x1 = std::min(x0 + w, image.width);
    const int y1 = std::min(y0 + h, image.height);
    for (int y = std::max(y0, 0); y < y1; ++y) {
        for (int x = std::max(x0, 0); x < x1; ++x) {
            image.at(x, y) = color;
        }
    }
}

Rgb8 lerp_rgb(Rgb8 a, Rgb8 b, double t) {
    auto mix = [t](std::uint8_t lo, std::uint8_t hi) {
        return static_cast<std::uint8_t>(std::lround(lo + t * (hi - lo)));
    };
    return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

PixelImage vertical_bands(int band_width, int height, std::span<const Rgb8> colors) {
    PixelImage image(band_width * static_cast<int>(colors.size()), height);
    for (std::size_t i = 0; i < colors.size(); ++i) {
        fill_rect(image, static_cast<int>(i) * band_width, 0, band_width, height, colors[i]);
    }
    return image;
}

PixelImage bar_chart(int width, int height, std::span<const Rgb8> bars, Rgb8 bg, bool axis,
                     Rgb8 axis_color) {
    PixelImage image(width, height, bg);
    const int n = static_cast<int>(bars.size());
    const int slot = width / n;
    const int bar_width = std::max(1, slot * 2 / 3);
    for (int i = 0; i < n; ++i) {
        // deterministic bar heights between 40% and 90%
        const int bar_height = height * (40 + (i * 37) % 51) / 100;
        fill_rect(image, i * slot + slot / 6, height - bar_height, bar_width, bar_height,
                  bars[i]);
    }
    if (axis) {
        fill_rect(image, 0, height - 2, width, 2, axis_color);
        fill_rect(image, 0, 0, 2, height, axis_color);
    }
    return image;
}

PixelImage line_chart(int width, int height, std::span<const Rgb8> lines, Rgb8 bg) {
    PixelImage image(width, height, bg);
    const int n = static_cast<int>(lines.size());
    for (int i = 0; i < n; ++i) {
        for (int x = 0; x < width; ++x) {
            // interleaved sine-ish traces, 3px thick
            const double phase = 2.0 * 3.14159265358979 * (x + 40.0 * i) / width;
            const int center = height / 2 +
                               static_cast<int>((height / 3.0) * std::sin(phase) *
                                                (0.5 + 0.5 * i / std::max(1, n - 1)));
            fill_rect(image, x, std::clamp(center - 1, 0, height - 3), 1, 3, lines[i]);
        }
    }
    return image;
}

PixelImage heatmap(int cols, int rows, int cell_size,
                   const std::function<Rgb8(double)>& colormap) {
    PixelImage image(cols * cell_size, rows * cell_size);
    for (int cy = 0; cy < rows; ++cy) {
        for (int cx = 0; cx < cols; ++cx) {
            const double t =
                static_cast<double>(cy * cols + cx) / std::max(1, cols * rows - 1);
            fill_rect(image, cx * cell_size, cy * cell_size, cell_size, cell_size,
                      colormap(t));
        }
    }
    return image;
}

}  // namespace darkviz::testing
