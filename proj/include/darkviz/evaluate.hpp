#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "darkviz/color.hpp"
#include "darkviz/optimize.hpp"
#include "darkviz/palette.hpp"

namespace darkviz {

/// Minimum pixel-weighted contrast ratio for WCAG 2.1 AA graphical objects.
inline constexpr double kWcagPassThreshold = 3.0;

/// Histogram layout for color-difference scores: [0,5), [5,10), ... with a
/// final open bin [60, inf).
inline constexpr double kHistogramBinWidth = 5.0;
inline constexpr int kHistogramBins = 13;

struct ComplianceScore {
    double score = 0.0;
    bool wcag_pass = false;
};

/// Pixel-weighted mean contrast ratio of palette colors against bg.
ComplianceScore contrast_compliance(std::span<const Rgb8> colors,
                                    std::span<const std::size_t> counts, Rgb8 bg);

/// Pixel-weighted mean deltaE2000 between index-aligned palettes.
double color_difference_score(std::span<const Rgb8> light, std::span<const Rgb8> candidate,
                              std::span<const std::size_t> counts);

int histogram_bin(double score);

/// Per-image metrics for the three rendering conditions.
struct ConditionMetrics {
    double contrast_score = 0.0;
    bool wcag_pass = false;
    double color_difference = 0.0;
};

struct ImageEvaluation {
    std::string file;
    int k = 0;
    ConditionMetrics light;
    ConditionMetrics inverse;
    ConditionMetrics dark;
};

struct EvaluationReport {
    std::vector<ImageEvaluation> per_image;
    std::vector<std::string> skipped;

    nlohmann::json to_json() const;
};

struct EvalConfig {
    int k = 8;
    BackgroundSpec bg{};
    Weights weights{};
    SaConfig sa{};
};

/// Evaluates one already-extracted image under light/inverse/dark.
ImageEvaluation evaluate_image(const ExtractedPalette& palette, const EvalConfig& config,
                               const std::string& name);

/// Runs the three conditions over every decodable raster in the directory
/// (or the single file), in sorted filename order. Undecodable or
/// all-background files are skipped and recorded; throws Error only when
/// no image could be processed.
EvaluationReport batch_report(const std::filesystem::path& corpus, const EvalConfig& config);

}  // namespace darkviz
