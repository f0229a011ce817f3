#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "darkviz/color.hpp"
#include "darkviz/image.hpp"

namespace darkviz {

/// Declared input/output backgrounds plus the delta-E radius within which a
/// pixel counts as background.
struct BackgroundSpec {
    Rgb8 light_bg{255, 255, 255};
    Rgb8 dark_bg{0, 0, 0};
    double tolerance = 2.0;
};

using Mask = std::vector<std::uint8_t>;  // 1 = foreground

/// Result of k-means palette extraction over the foreground pixels.
///
/// `labels` covers the whole image; background pixels carry -1. Cluster
/// indices in `adjacency` are stored as (low, high) pairs, sorted.
struct ExtractedPalette {
    std::vector<Rgb8> centroids;
    std::vector<std::int32_t> labels;
    std::vector<std::size_t> counts;
    std::vector<std::pair<int, int>> adjacency;
    int requested_k = 0;
    bool k_clamped = false;
    /// within-cluster squared error after each Lloyd assignment; diagnostic
    std::vector<double> objective_trace;

    int k() const { return static_cast<int>(centroids.size()); }
};

/// Marks a pixel as background iff delta_e_2000(pixel, light_bg) is within
/// spec.tolerance. Throws AllBackgroundError when nothing survives.
Mask mask_background(const PixelImage& image, const BackgroundSpec& spec);

/// k-means (k-means++ seeding, Lloyd iterations) over the RGB values of
/// foreground pixels. k is clamped to the number of distinct foreground
/// colors when necessary; the clamp is recorded on the result. Also fills
/// the cluster adjacency set. Deterministic for a given (image, k, seed).
ExtractedPalette extract_palette(const PixelImage& image, const Mask& mask, int k,
                                 std::uint64_t seed);

/// Cluster pairs whose pixels share at least min_boundary 8-neighborhood
/// boundary pixel pairs, with min_boundary = max(8, 0.1% of foreground).
std::vector<std::pair<int, int>> build_adjacency(const std::vector<std::int32_t>& labels,
                                                 int width, int height);

}  // namespace darkviz
