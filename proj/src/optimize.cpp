#include "darkviz/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "darkviz/errors.hpp"

namespace darkviz {
namespace {

double wrap_hue(double h) {
    h = std::fmod(h, 360.0);
    return h < 0.0 ? h + 360.0 : h;
}

}  // namespace

void validate(const Weights& w) {
    if (w.lc < 0.0 || w.cc < 0.0 || w.ac < 0.0) {
        throw ConfigError("loss weights must be non-negative");
    }
    if (w.lc == 0.0 && w.cc == 0.0 && w.ac == 0.0) {
        throw ConfigError("at least one loss weight must be positive");
    }
}

void validate(const SaConfig& cfg) {
    if (cfg.t0 <= 0.0) {
        throw ConfigError("initial temperature must be positive");
    }
    if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0) {
        throw ConfigError("cooling rate must be in (0,1)");
    }
    if (cfg.iterations < 1) {
        throw ConfigError("iteration count must be >= 1");
    }
    if (cfg.max_perturb_attempts < 1) {
        throw ConfigError("max perturbation attempts must be >= 1");
    }
    if (cfg.bounds.max_dl <= 0.0 || cfg.bounds.max_dc <= 0.0 || cfg.bounds.max_dh <= 0.0) {
        throw ConfigError("perturbation bounds must be positive");
    }
}

double loss_lc(std::span<const LchColor> light, std::span<const LchColor> dark,
               const BackgroundSpec& bg) {
    if (light.empty()) {
        return 0.0;
    }
    const double l_bg_light = srgb_to_lab(bg.light_bg).L;
    const double l_bg_dark = srgb_to_lab(bg.dark_bg).L;
    double sum = 0.0;
    for (std::size_t i = 0; i < light.size(); ++i) {
        const double light_contrast = std::fabs(l_bg_light - light[i].L);
        const double dark_contrast = std::fabs(dark[i].L - l_bg_dark);
        sum += std::fabs(light_contrast - dark_contrast);
    }
    return sum / static_cast<double>(light.size());
}

double loss_cc(std::span<const LchColor> light, std::span<const LchColor> dark) {
    if (light.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < light.size(); ++i) {
        sum += delta_e_2000(lch_to_lab(light[i]), lch_to_lab(dark[i]));
    }
    return sum / static_cast<double>(light.size());
}

double loss_ac(std::span<const LchColor> light, std::span<const LchColor> dark,
               std::span<const std::pair<int, int>> adjacency) {
    if (adjacency.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& [i, a] : adjacency) {
        const double light_diff = delta_e_2000(lch_to_lab(light[i]), lch_to_lab(light[a]));
        const double dark_diff = delta_e_2000(lch_to_lab(dark[i]), lch_to_lab(dark[a]));
        sum += std::fabs(light_diff - dark_diff);
    }
    return sum / static_cast<double>(adjacency.size());
}

double total_energy(std::span<const LchColor> light, std::span<const LchColor> dark,
                    std::span<const std::pair<int, int>> adjacency, const BackgroundSpec& bg,
                    const Weights& w) {
    return w.lc * loss_lc(light, dark, bg) + w.cc * loss_cc(light, dark) +
           w.ac * loss_ac(light, dark, adjacency);
}

LchColor perturb_color(const LchColor& c, Rng& rng, const PerturbBounds& bounds,
                       int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        LchColor candidate = c;
        switch (rng.index(3)) {
        case 0:
            candidate.L = std::clamp(c.L + rng.uniform(-bounds.max_dl, bounds.max_dl), 0.0, 100.0);
            break;
        case 1:
            candidate.C = std::clamp(c.C + rng.uniform(-bounds.max_dc, bounds.max_dc), 0.0, 100.0);
            break;
        default:
            candidate.H = wrap_hue(c.H + rng.uniform(-bounds.max_dh, bounds.max_dh));
            break;
        }
        if (lch_to_srgb_checked(candidate)) {
            return candidate;
        }
    }
    return c;
}

bool sa_accept(double e_new, double e_current, double t, Rng& rng) {
    const double delta = e_new - e_current;
    const double p = std::exp(-delta / t);
    return rng.unit() < p;
}

AnnealResult anneal(const ExtractedPalette& palette, const BackgroundSpec& bg,
                    const Weights& w, const SaConfig& cfg) {
    validate(w);
    validate(cfg);
    if (palette.centroids.empty()) {
        throw ConfigError("cannot optimize an empty palette");
    }

    const std::vector<LchColor> light = palette_to_lch(palette.centroids);
    Rng rng(cfg.seed);

    std::vector<LchColor> current = light;
    double e_current = total_energy(light, current, palette.adjacency, bg, w);

    AnnealResult result;
    result.initial_energy = e_current;
    result.best = {current, e_current};
    result.best_energy_trace.reserve(cfg.iterations);

    double t = cfg.t0;
    std::vector<LchColor> candidate = current;
    for (int i = 0; i < cfg.iterations; ++i) {
        candidate = current;
        const std::size_t idx = rng.index(candidate.size());
        candidate[idx] =
            perturb_color(current[idx], rng, cfg.bounds, cfg.max_perturb_attempts);

        const double e_new = total_energy(light, candidate, palette.adjacency, bg, w);
        if (e_new < e_current) {
            current = candidate;
            e_current = e_new;
            if (e_new < result.best.energy) {
                result.best = {current, e_new};
            }
        } else if (sa_accept(e_new, e_current, t, rng)) {
            current = candidate;
            e_current = e_new;
        }
        t *= cfg.alpha;
        result.best_energy_trace.push_back(result.best.energy);
    }
    return result;
}

std::vector<LchColor> palette_to_lch(std::span<const Rgb8> centroids) {
    std::vector<LchColor> out;
    out.reserve(centroids.size());
    for (const Rgb8& c : centroids) {
        out.push_back(lab_to_lch(srgb_to_lab(c)));
    }
    return out;
}

std::vector<Rgb8> palette_to_srgb(std::span<const LchColor> colors) {
    std::vector<Rgb8> out;
    out.reserve(colors.size());
    for (const LchColor& c : colors) {
        if (auto rgb = lch_to_srgb_checked(c)) {
            out.push_back(*rgb);
        } else {
            out.push_back(lab_to_srgb_clipped(lch_to_lab(c)));
        }
    }
    return out;
}

}  // namespace darkviz
