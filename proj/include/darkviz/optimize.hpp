#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "darkviz/color.hpp"
#include "darkviz/palette.hpp"
#include "darkviz/rng.hpp"

namespace darkviz {

/// Objective weights: luminance contrast, color consistency, adjacent
/// color difference. All must be >= 0 and at least one positive.
struct Weights {
    double lc = 1.0;
    double cc = 1.0;
    double ac = 1.0;
};

struct PerturbBounds {
    double max_dl = 20.0;
    double max_dc = 20.0;
    double max_dh = 50.0;
};

struct SaConfig {
    double t0 = 10000.0;
    double alpha = 0.99;
    int iterations = 20000;
    int max_perturb_attempts = 100;
    std::uint64_t seed = 42;
    PerturbBounds bounds{};
};

/// Throws ConfigError on violated invariants.
void validate(const Weights& w);
void validate(const SaConfig& cfg);

/// A dark palette candidate, index-aligned with the light centroids.
struct PaletteState {
    std::vector<LchColor> colors;
    double energy = 0.0;
};

struct AnnealResult {
    PaletteState best;
    double initial_energy = 0.0;
    /// best-so-far energy after each iteration; monotone non-increasing
    std::vector<double> best_energy_trace;
};

/// Mean over palette colors of | |L_bg_light - L_i_light| - |L_i_dark - L_bg_dark| |.
double loss_lc(std::span<const LchColor> light, std::span<const LchColor> dark,
               const BackgroundSpec& bg);

/// Mean over palette colors of deltaE2000 between light and dark entries.
double loss_cc(std::span<const LchColor> light, std::span<const LchColor> dark);

/// Mean over adjacent pairs of the absolute change in pairwise deltaE2000
/// between modes; 0 when the adjacency set is empty.
double loss_ac(std::span<const LchColor> light, std::span<const LchColor> dark,
               std::span<const std::pair<int, int>> adjacency);

double total_energy(std::span<const LchColor> light, std::span<const LchColor> dark,
                    std::span<const std::pair<int, int>> adjacency, const BackgroundSpec& bg,
                    const Weights& w);

/// Randomly shifts one of L/C/H by a uniform delta within bounds, keeping
/// L and C in [0,100] and wrapping H mod 360. Retries until the result is
/// displayable; after max_attempts consecutive gamut failures the input is
/// returned unchanged.
LchColor perturb_color(const LchColor& c, Rng& rng, const PerturbBounds& bounds,
                       int max_attempts);

/// Metropolis acceptance for a non-improving candidate at temperature t.
bool sa_accept(double e_new, double e_current, double t, Rng& rng);

/// Simulated annealing over the palette, starting from the light centroids.
AnnealResult anneal(const ExtractedPalette& palette, const BackgroundSpec& bg,
                    const Weights& w, const SaConfig& cfg);

/// Light centroids converted to the optimizer's working space.
std::vector<LchColor> palette_to_lch(std::span<const Rgb8> centroids);

/// Dark palette realized as displayable colors (every anneal output passes
/// the gamut check; clipping is a fallback for hand-built states).
std::vector<Rgb8> palette_to_srgb(std::span<const LchColor> colors);

}  // namespace darkviz
