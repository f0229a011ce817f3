#include "darkviz/transform.hpp"

namespace darkviz {

TransformResult transform_image(const PixelImage& input, const TransformConfig& config) {
    TransformResult result;
    const Mask mask = mask_background(input, config.bg);
    result.palette = extract_palette(input, mask, config.k, config.sa.seed);
    result.annealed = anneal(result.palette, config.bg, config.weights, config.sa);
    result.dark_colors = palette_to_srgb(result.annealed.best.colors);
    result.output =
        apply_palette(input, result.palette, result.annealed.best.colors, config.bg, config.mode);
    return result;
}

nlohmann::json transform_report(const TransformResult& result, const TransformConfig& config) {
    const auto& palette = result.palette;

    nlohmann::json palette_json = nlohmann::json::array();
    for (int i = 0; i < palette.k(); ++i) {
        palette_json.push_back({{"index", i},
                                {"light", to_hex(palette.centroids[i])},
                                {"dark", to_hex(result.dark_colors[i])},
                                {"pixels", palette.counts[i]}});
    }

    nlohmann::json adjacency_json = nlohmann::json::array();
    for (const auto& [i, j] : palette.adjacency) {
        adjacency_json.push_back({i, j});
    }

    const auto& trace = result.annealed.best_energy_trace;
    nlohmann::json trace_json = nlohmann::json::array();
    for (std::size_t i = 0; i < trace.size(); i += 1000) {
        trace_json.push_back({{"iteration", i + 1}, {"best_energy", trace[i]}});
    }
    if (!trace.empty()) {
        trace_json.push_back({{"iteration", trace.size()}, {"best_energy", trace.back()}});
    }

    const auto light_score =
        contrast_compliance(palette.centroids, palette.counts, config.bg.light_bg);
    const auto dark_score =
        contrast_compliance(result.dark_colors, palette.counts, config.bg.dark_bg);
    const double color_diff =
        color_difference_score(palette.centroids, result.dark_colors, palette.counts);

    return {{"version", 1},
            {"config",
             {{"k", palette.k()},
              {"requested_k", palette.requested_k},
              {"k_clamped", palette.k_clamped},
              {"light_bg", to_hex(config.bg.light_bg)},
              {"dark_bg", to_hex(config.bg.dark_bg)},
              {"background_tolerance", config.bg.tolerance},
              {"weights", {{"lc", config.weights.lc}, {"cc", config.weights.cc}, {"ac", config.weights.ac}}},
              {"iterations", config.sa.iterations},
              {"t0", config.sa.t0},
              {"alpha", config.sa.alpha},
              {"seed", config.sa.seed},
              {"mode", config.mode == RenderMode::quantize ? "quantize" : "residual"}}},
            {"palette", palette_json},
            {"adjacency", adjacency_json},
            {"energy",
             {{"initial", result.annealed.initial_energy},
              {"final", result.annealed.best.energy},
              {"trace", trace_json}}},
            {"metrics",
             {{"light",
               {{"contrast_score", light_score.score}, {"wcag_pass", light_score.wcag_pass}}},
              {"dark",
               {{"contrast_score", dark_score.score},
                {"wcag_pass", dark_score.wcag_pass},
                {"color_difference", color_diff}}}}}};
}

}  // namespace darkviz
