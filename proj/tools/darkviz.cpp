// darkviz: adapts light-mode visualization bitmaps to dark mode by
// optimizing the extracted color palette for contrast and color
// consistency against the new background.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "darkviz/errors.hpp"
#include "darkviz/evaluate.hpp"
#include "darkviz/image_io.hpp"
#include "darkviz/recolor.hpp"
#include "darkviz/transform.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitProcessing = 3;

darkviz::Rgb8 parse_color_flag(const std::string& value, const char* flag) {
    auto color = darkviz::parse_hex_color(value);
    if (!color) {
        throw darkviz::ConfigError(std::string(flag) + ": invalid hex color '" + value +
                                   "' (expected #RRGGBB)");
    }
    return *color;
}

darkviz::RenderMode parse_mode_flag(const std::string& value) {
    if (value == "quantize") {
        return darkviz::RenderMode::quantize;
    }
    if (value == "residual") {
        return darkviz::RenderMode::residual;
    }
    throw darkviz::ConfigError("--mode: expected 'quantize' or 'residual', got '" + value + "'");
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw darkviz::IoError("cannot open " + path.string() + " for writing");
    }
    out << content;
    if (!out) {
        throw darkviz::IoError("failed writing " + path.string());
    }
}

// Shared option bundle; each subcommand registers the subset it uses.
struct Options {
    std::string input;
    std::string output;
    std::string light_bg = "#FFFFFF";
    std::string dark_bg = "#000000";
    double bg_tolerance = 2.0;
    int k = 8;
    darkviz::Weights weights{};
    darkviz::SaConfig sa{};
    std::string mode = "quantize";
    std::string report_path;
    std::string preview_path;
    bool log_progress = false;
};

void add_background_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--light-bg", opt.light_bg, "Input background color, hex")
        ->capture_default_str();
    cmd->add_option("--dark-bg", opt.dark_bg, "Target background color, hex")
        ->capture_default_str();
    cmd->add_option("--bg-tolerance", opt.bg_tolerance,
                    "Background match radius in deltaE2000 units")
        ->capture_default_str();
}

void add_optimizer_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--w-lc", opt.weights.lc, "Luminance contrast weight")->capture_default_str();
    cmd->add_option("--w-cc", opt.weights.cc, "Color consistency weight")->capture_default_str();
    cmd->add_option("--w-ac", opt.weights.ac, "Adjacent difference weight")
        ->capture_default_str();
    cmd->add_option("--iterations", opt.sa.iterations, "Annealing iterations")
        ->capture_default_str();
    cmd->add_option("--t0", opt.sa.t0, "Initial temperature")->capture_default_str();
    cmd->add_option("--alpha", opt.sa.alpha, "Cooling rate in (0,1)")->capture_default_str();
}

darkviz::TransformConfig make_transform_config(const Options& opt) {
    darkviz::TransformConfig config;
    config.k = opt.k;
    config.bg = {parse_color_flag(opt.light_bg, "--light-bg"),
                 parse_color_flag(opt.dark_bg, "--dark-bg"), opt.bg_tolerance};
    config.weights = opt.weights;
    config.sa = opt.sa;
    config.mode = parse_mode_flag(opt.mode);
    if (opt.bg_tolerance < 0.0) {
        throw darkviz::ConfigError("--bg-tolerance must be >= 0");
    }
    darkviz::validate(config.weights);
    darkviz::validate(config.sa);
    return config;
}

void warn_if_clamped(const darkviz::ExtractedPalette& palette) {
    if (palette.k_clamped) {
        std::cerr << "warning: k=" << palette.requested_k << " exceeds the "
                  << palette.k() << " distinct foreground colors; clamped to k="
                  << palette.k() << "\n";
    }
}

int run_transform(const Options& opt) {
    const darkviz::TransformConfig config = make_transform_config(opt);
    const darkviz::PixelImage input = darkviz::load_image(opt.input, config.bg.light_bg);

    const darkviz::TransformResult result = darkviz::transform_image(input, config);
    warn_if_clamped(result.palette);
    if (opt.log_progress) {
        const auto& trace = result.annealed.best_energy_trace;
        std::cerr << "energy: initial " << result.annealed.initial_energy << "\n";
        for (std::size_t i = 999; i < trace.size(); i += 1000) {
            std::cerr << "energy: iteration " << i + 1 << " best " << trace[i] << "\n";
        }
        std::cerr << "energy: final " << result.annealed.best.energy << "\n";
    }

    darkviz::save_png(result.output, opt.output);
    if (!opt.preview_path.empty()) {
        darkviz::save_png(darkviz::compose_preview(input, result.output), opt.preview_path);
    }
    if (!opt.report_path.empty()) {
        nlohmann::json report = darkviz::transform_report(result, config);
        report["input"] = opt.input;
        report["output"] = opt.output;
        write_text_file(opt.report_path, report.dump(2) + "\n");
    }
    return kExitOk;
}

int run_invert(const Options& opt) {
    const darkviz::PixelImage input = darkviz::load_image(opt.input, {255, 255, 255});
    darkviz::save_png(darkviz::invert_image(input), opt.output);
    return kExitOk;
}

int run_extract(const Options& opt) {
    const darkviz::Rgb8 light_bg = parse_color_flag(opt.light_bg, "--light-bg");
    if (opt.bg_tolerance < 0.0) {
        throw darkviz::ConfigError("--bg-tolerance must be >= 0");
    }
    const darkviz::BackgroundSpec bg{light_bg, {0, 0, 0}, opt.bg_tolerance};

    const darkviz::PixelImage input = darkviz::load_image(opt.input, light_bg);
    const darkviz::Mask mask = darkviz::mask_background(input, bg);
    const darkviz::ExtractedPalette palette =
        darkviz::extract_palette(input, mask, opt.k, opt.sa.seed);
    warn_if_clamped(palette);

    nlohmann::json palette_json = nlohmann::json::array();
    for (int i = 0; i < palette.k(); ++i) {
        palette_json.push_back({{"index", i},
                                {"color", darkviz::to_hex(palette.centroids[i])},
                                {"pixels", palette.counts[i]}});
    }
    nlohmann::json adjacency_json = nlohmann::json::array();
    for (const auto& [i, j] : palette.adjacency) {
        adjacency_json.push_back({i, j});
    }
    std::cout << nlohmann::json{{"k", palette.k()},
                                {"k_clamped", palette.k_clamped},
                                {"palette", palette_json},
                                {"adjacency", adjacency_json}}
                     .dump(2)
              << "\n";
    return kExitOk;
}

int run_evaluate(const Options& opt) {
    darkviz::EvalConfig config;
    config.k = opt.k;
    config.bg = {parse_color_flag(opt.light_bg, "--light-bg"),
                 parse_color_flag(opt.dark_bg, "--dark-bg"), opt.bg_tolerance};
    config.weights = opt.weights;
    config.sa = opt.sa;
    darkviz::validate(config.weights);
    darkviz::validate(config.sa);

    const darkviz::EvaluationReport report = darkviz::batch_report(opt.input, config);
    for (const auto& skipped : report.skipped) {
        std::cerr << "skipped " << skipped << "\n";
    }

    const std::string payload = report.to_json().dump(2) + "\n";
    if (opt.report_path.empty()) {
        std::cout << payload;
    } else {
        write_text_file(opt.report_path, payload);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adapts light-mode visualization images to dark mode"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* transform =
        app.add_subcommand("transform", "Optimize a dark palette and recolor the image");
    transform->add_option("--input", opt.input, "Input PNG or JPEG")->required();
    transform->add_option("--output", opt.output, "Output PNG")->required();
    add_background_flags(transform, opt);
    transform->add_option("-k,--k", opt.k, "Palette size")->capture_default_str();
    add_optimizer_flags(transform, opt);
    transform->add_option("--seed", opt.sa.seed, "RNG seed")->capture_default_str();
    transform->add_option("--mode", opt.mode, "Rendering mode: quantize|residual")
        ->capture_default_str();
    transform->add_option("--report", opt.report_path, "Write a JSON run report here");
    transform->add_option("--preview", opt.preview_path, "Write a side-by-side preview PNG here");
    transform->add_flag("--log-energy", opt.log_progress,
                        "Log best energy every 1000 iterations to stderr");

    CLI::App* invert = app.add_subcommand("invert", "Channel-wise 255-c inversion baseline");
    invert->add_option("--input", opt.input, "Input PNG or JPEG")->required();
    invert->add_option("--output", opt.output, "Output PNG")->required();

    CLI::App* extract = app.add_subcommand("extract", "Print the extracted palette as JSON");
    extract->add_option("--input", opt.input, "Input PNG or JPEG")->required();
    extract->add_option("-k,--k", opt.k, "Palette size")->capture_default_str();
    extract->add_option("--seed", opt.sa.seed, "RNG seed")->capture_default_str();
    extract->add_option("--light-bg", opt.light_bg, "Input background color, hex")
        ->capture_default_str();
    extract->add_option("--bg-tolerance", opt.bg_tolerance,
                        "Background match radius in deltaE2000 units")
        ->capture_default_str();

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Score light/inverse/dark conditions for a file or corpus");
    evaluate->add_option("--input", opt.input, "Image file or corpus directory")->required();
    evaluate->add_option("--report", opt.report_path, "Report path (stdout when omitted)");
    add_background_flags(evaluate, opt);
    evaluate->add_option("-k,--k", opt.k, "Palette size")->capture_default_str();
    add_optimizer_flags(evaluate, opt);
    evaluate->add_option("--seed", opt.sa.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (transform->parsed()) {
            return run_transform(opt);
        }
        if (invert->parsed()) {
            return run_invert(opt);
        }
        if (extract->parsed()) {
            return run_extract(opt);
        }
        return run_evaluate(opt);
    } catch (const darkviz::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const darkviz::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const darkviz::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProcessing;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProcessing;
    }
}
