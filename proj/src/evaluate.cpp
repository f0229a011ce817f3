#include "darkviz/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "darkviz/errors.hpp"
#include "darkviz/image_io.hpp"
#include "darkviz/recolor.hpp"

namespace darkviz {
namespace {

Rgb8 invert(Rgb8 c) {
    return {static_cast<std::uint8_t>(255 - c.r), static_cast<std::uint8_t>(255 - c.g),
            static_cast<std::uint8_t>(255 - c.b)};
}

bool has_raster_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

nlohmann::json condition_json(const ConditionMetrics& m) {
    return {{"contrast_score", m.contrast_score},
            {"wcag_pass", m.wcag_pass},
            {"color_difference", m.color_difference}};
}

}  // namespace

ComplianceScore contrast_compliance(std::span<const Rgb8> colors,
                                    std::span<const std::size_t> counts, Rgb8 bg) {
    double weighted = 0.0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        weighted += static_cast<double>(counts[i]) * wcag_contrast_ratio(colors[i], bg);
        total += counts[i];
    }
    const double score = total > 0 ? weighted / static_cast<double>(total) : 0.0;
    return {score, score >= kWcagPassThreshold};
}

double color_difference_score(std::span<const Rgb8> light, std::span<const Rgb8> candidate,
                              std::span<const std::size_t> counts) {
    double weighted = 0.0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < light.size(); ++i) {
        weighted += static_cast<double>(counts[i]) *
                    delta_e_2000(srgb_to_lab(light[i]), srgb_to_lab(candidate[i]));
        total += counts[i];
    }
    return total > 0 ? weighted / static_cast<double>(total) : 0.0;
}

int histogram_bin(double score) {
    const int bin = static_cast<int>(std::floor(score / kHistogramBinWidth));
    return std::clamp(bin, 0, kHistogramBins - 1);
}

ImageEvaluation evaluate_image(const ExtractedPalette& palette, const EvalConfig& config,
                               const std::string& name) {
    ImageEvaluation eval;
    eval.file = name;
    eval.k = palette.k();

    const auto& light_colors = palette.centroids;
    const auto& counts = palette.counts;

    auto light_score = contrast_compliance(light_colors, counts, config.bg.light_bg);
    eval.light = {light_score.score, light_score.wcag_pass, 0.0};

    // Inversion commutes with the cluster means, so the inverse condition's
    // palette is exactly the inverted centroids against the inverted bg.
    std::vector<Rgb8> inverse_colors;
    inverse_colors.reserve(light_colors.size());
    for (Rgb8 c : light_colors) {
        inverse_colors.push_back(invert(c));
    }
    auto inverse_score = contrast_compliance(inverse_colors, counts, invert(config.bg.light_bg));
    eval.inverse = {inverse_score.score, inverse_score.wcag_pass,
                    color_difference_score(light_colors, inverse_colors, counts)};

    const AnnealResult annealed = anneal(palette, config.bg, config.weights, config.sa);
    const std::vector<Rgb8> dark_colors = palette_to_srgb(annealed.best.colors);
    auto dark_score = contrast_compliance(dark_colors, counts, config.bg.dark_bg);
    eval.dark = {dark_score.score, dark_score.wcag_pass,
                 color_difference_score(light_colors, dark_colors, counts)};
    return eval;
}

nlohmann::json EvaluationReport::to_json() const {
    nlohmann::json images = nlohmann::json::array();
    int pass_light = 0;
    int pass_inverse = 0;
    int pass_dark = 0;
    std::vector<int> hist_light(kHistogramBins, 0);
    std::vector<int> hist_inverse(kHistogramBins, 0);
    std::vector<int> hist_dark(kHistogramBins, 0);

    for (const auto& eval : per_image) {
        images.push_back({{"file", eval.file},
                          {"k", eval.k},
                          {"conditions",
                           {{"light", condition_json(eval.light)},
                            {"inverse", condition_json(eval.inverse)},
                            {"dark", condition_json(eval.dark)}}}});
        pass_light += eval.light.wcag_pass ? 1 : 0;
        pass_inverse += eval.inverse.wcag_pass ? 1 : 0;
        pass_dark += eval.dark.wcag_pass ? 1 : 0;
        ++hist_light[histogram_bin(eval.light.color_difference)];
        ++hist_inverse[histogram_bin(eval.inverse.color_difference)];
        ++hist_dark[histogram_bin(eval.dark.color_difference)];
    }

    const auto count = static_cast<double>(per_image.size());
    auto rate = [count](int passes) {
        return count > 0 ? 100.0 * static_cast<double>(passes) / count : 0.0;
    };

    nlohmann::json bin_labels = nlohmann::json::array();
    for (int b = 0; b < kHistogramBins; ++b) {
        const int lo = b * static_cast<int>(kHistogramBinWidth);
        bin_labels.push_back(b + 1 == kHistogramBins
                                 ? "[" + std::to_string(lo) + ",inf)"
                                 : "[" + std::to_string(lo) + "," +
                                       std::to_string(lo + static_cast<int>(kHistogramBinWidth)) +
                                       ")");
    }

    return {{"version", 1},
            {"per_image", images},
            {"skipped", skipped},
            {"summary",
             {{"images", per_image.size()},
              {"pass_rate_by_condition",
               {{"light", rate(pass_light)},
                {"inverse", rate(pass_inverse)},
                {"dark", rate(pass_dark)}}},
              {"histogram",
               {{"bin_width", kHistogramBinWidth},
                {"bins", bin_labels},
                {"counts",
                 {{"light", hist_light}, {"inverse", hist_inverse}, {"dark", hist_dark}}}}}}}};
}

EvaluationReport batch_report(const std::filesystem::path& corpus, const EvalConfig& config) {
    std::vector<std::filesystem::path> files;
    if (std::filesystem::is_directory(corpus)) {
        for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
            if (entry.is_regular_file() && has_raster_extension(entry.path())) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(corpus);
    }

    EvaluationReport report;
    for (const auto& file : files) {
        try {
            const PixelImage image = load_image(file, config.bg.light_bg);
            const Mask mask = mask_background(image, config.bg);
            const ExtractedPalette palette =
                extract_palette(image, mask, config.k, config.sa.seed);
            report.per_image.push_back(
                evaluate_image(palette, config, file.filename().string()));
        } catch (const Error& e) {
            report.skipped.push_back(file.filename().string() + ": " + e.what());
        }
    }
    if (report.per_image.empty()) {
        throw Error("no images could be evaluated under " + corpus.string());
    }
    return report;
}

}  // namespace darkviz
