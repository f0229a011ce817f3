#pragma once

#include <json.hpp>

#include "darkviz/evaluate.hpp"
#include "darkviz/image.hpp"
#include "darkviz/optimize.hpp"
#include "darkviz/palette.hpp"
#include "darkviz/recolor.hpp"

namespace darkviz {

struct TransformConfig {
    int k = 8;
    BackgroundSpec bg{};
    Weights weights{};
    SaConfig sa{};
    RenderMode mode = RenderMode::quantize;
};

struct TransformResult {
    ExtractedPalette palette;
    AnnealResult annealed;
    std::vector<Rgb8> dark_colors;
    PixelImage output;
};

/// Full light-to-dark pipeline: mask, extract, optimize, render.
TransformResult transform_image(const PixelImage& input, const TransformConfig& config);

/// Machine-readable run report: configuration, palette pairs as hex,
/// adjacency, energy trace summary (sampled every 1000 iterations), and
/// light/dark evaluation metrics.
nlohmann::json transform_report(const TransformResult& result, const TransformConfig& config);

}  // namespace darkviz
