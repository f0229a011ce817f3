#include "darkviz/palette.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "darkviz/errors.hpp"
#include "darkviz/rng.hpp"

namespace darkviz {
namespace {

constexpr int kMaxLloydIterations = 100;
constexpr double kRelativeImprovementFloor = 1e-6;

std::uint32_t pack(Rgb8 c) {
    return (static_cast<std::uint32_t>(c.r) << 16) | (static_cast<std::uint32_t>(c.g) << 8) |
           static_cast<std::uint32_t>(c.b);
}

Rgb8 unpack(std::uint32_t v) {
    return {static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>((v >> 8) & 0xFF),
            static_cast<std::uint8_t>(v & 0xFF)};
}

struct WeightedPoint {
    double r, g, b;
    std::size_t weight;
};

double sq_dist(const WeightedPoint& p, const double* centroid) {
    const double dr = p.r - centroid[0];
    const double dg = p.g - centroid[1];
    const double db = p.b - centroid[2];
    return dr * dr + dg * dg + db * db;
}

/// Lloyd's algorithm over distinct foreground colors weighted by pixel
/// count; equivalent to clustering the raw pixels but O(distinct colors)
/// per pass. Assignment ties break toward the lowest cluster index.
class KMeans {
public:
    KMeans(std::vector<WeightedPoint> points, int k, std::uint64_t seed)
        : points_(std::move(points)), k_(k), rng_(seed) {
        centroids_.resize(static_cast<std::size_t>(k_) * 3);
        assignment_.assign(points_.size(), 0);
    }

    void run() {
        seed_plus_plus();
        double prev_objective = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
            const double objective = assign();
            objective_trace_.push_back(objective);
            recompute_centroids();
            if (objective == 0.0 ||
                (std::isfinite(prev_objective) &&
                 prev_objective - objective < kRelativeImprovementFloor * prev_objective)) {
                break;
            }
            prev_objective = objective;
        }
        objective_trace_.push_back(assign());  // labels must match the final centroids
    }

    const std::vector<double>& centroids() const { return centroids_; }
    const std::vector<int>& assignment() const { return assignment_; }
    const std::vector<double>& objective_trace() const { return objective_trace_; }

private:
    void seed_plus_plus() {
        std::vector<double> min_dist(points_.size(), std::numeric_limits<double>::infinity());

        // First center: sampled by pixel mass.
        std::size_t total = 0;
        for (const auto& p : points_) total += p.weight;
        place_centroid(0, pick_weighted([&](std::size_t i) {
                           return static_cast<double>(points_[i].weight);
                       },
                                        static_cast<double>(total)));

        for (int c = 1; c < k_; ++c) {
            double sum = 0.0;
            for (std::size_t i = 0; i < points_.size(); ++i) {
                const double d = sq_dist(points_[i], &centroids_[(c - 1) * 3]);
                min_dist[i] = std::min(min_dist[i], d);
                sum += min_dist[i] * static_cast<double>(points_[i].weight);
            }
            if (sum <= 0.0) {
                // All remaining mass sits on existing centers; reuse any point.
                place_centroid(c, rng_.index(points_.size()));
                continue;
            }
            place_centroid(c, pick_weighted([&](std::size_t i) {
                               return min_dist[i] * static_cast<double>(points_[i].weight);
                           },
                                            sum));
        }
    }

    template <typename WeightFn>
    std::size_t pick_weighted(WeightFn weight, double total) {
        const double target = rng_.unit() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            acc += weight(i);
            if (target < acc) {
                return i;
            }
        }
        return points_.size() - 1;
    }

    void place_centroid(int c, std::size_t point_index) {
        centroids_[c * 3 + 0] = points_[point_index].r;
        centroids_[c * 3 + 1] = points_[point_index].g;
        centroids_[c * 3 + 2] = points_[point_index].b;
    }

    double assign() {
        double objective = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            int best = 0;
            double best_d = sq_dist(points_[i], &centroids_[0]);
            for (int c = 1; c < k_; ++c) {
                const double d = sq_dist(points_[i], &centroids_[c * 3]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assignment_[i] = best;
            objective += best_d * static_cast<double>(points_[i].weight);
        }
        return objective;
    }

    void recompute_centroids() {
        std::vector<double> acc(static_cast<std::size_t>(k_) * 3, 0.0);
        std::vector<std::size_t> mass(k_, 0);
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& p = points_[i];
            const int c = assignment_[i];
            const auto w = static_cast<double>(p.weight);
            acc[c * 3 + 0] += p.r * w;
            acc[c * 3 + 1] += p.g * w;
            acc[c * 3 + 2] += p.b * w;
            mass[c] += p.weight;
        }
        for (int c = 0; c < k_; ++c) {
            if (mass[c] == 0) {
                reseed_empty_cluster(c);
                continue;
            }
            const auto w = static_cast<double>(mass[c]);
            centroids_[c * 3 + 0] = acc[c * 3 + 0] / w;
            centroids_[c * 3 + 1] = acc[c * 3 + 1] / w;
            centroids_[c * 3 + 2] = acc[c * 3 + 2] / w;
        }
    }

    // Reseed at the point farthest from its current centroid (first such
    // point on ties, so repair stays deterministic).
    void reseed_empty_cluster(int c) {
        std::size_t farthest = 0;
        double farthest_d = -1.0;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const double d = sq_dist(points_[i], &centroids_[assignment_[i] * 3]);
            if (d > farthest_d) {
                farthest_d = d;
                farthest = i;
            }
        }
        place_centroid(c, farthest);
    }

    std::vector<WeightedPoint> points_;
    int k_;
    Rng rng_;
    std::vector<double> centroids_;
    std::vector<int> assignment_;
    std::vector<double> objective_trace_;
};

}  // namespace

Mask mask_background(const PixelImage& image, const BackgroundSpec& spec) {
    if (image.empty()) {
        throw AllBackgroundError("empty image");
    }
    const LabColor bg_lab = srgb_to_lab(spec.light_bg);

    // Images repeat colors heavily; memoize the distance per distinct RGB.
    std::unordered_map<std::uint32_t, bool> is_bg;
    is_bg.reserve(1024);

    Mask mask(image.pixel_count(), 0);
    std::size_t foreground = 0;
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const std::uint32_t key = pack(image.pixels[i]);
        auto it = is_bg.find(key);
        if (it == is_bg.end()) {
            const bool bg =
                delta_e_2000(srgb_to_lab(image.pixels[i]), bg_lab) <= spec.tolerance;
            it = is_bg.emplace(key, bg).first;
        }
        if (!it->second) {
            mask[i] = 1;
            ++foreground;
        }
    }
    if (foreground == 0) {
        throw AllBackgroundError("no foreground pixels after background masking");
    }
    return mask;
}

ExtractedPalette extract_palette(const PixelImage& image, const Mask& mask, int k,
                                 std::uint64_t seed) {
    if (k < 1) {
        throw ConfigError("k must be >= 1");
    }
    if (mask.size() != image.pixel_count()) {
        throw DimensionMismatchError("mask size does not match image");
    }

    // Distinct foreground colors with pixel counts, in packed-RGB order so
    // the clustering input is independent of traversal order.
    std::map<std::uint32_t, std::size_t> histogram;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            ++histogram[pack(image.pixels[i])];
        }
    }
    if (histogram.empty()) {
        throw AllBackgroundError("mask has no foreground pixels");
    }

    ExtractedPalette result;
    result.requested_k = k;
    if (std::cmp_less(histogram.size(), k)) {
        k = static_cast<int>(histogram.size());
        result.k_clamped = true;
    }

    std::vector<WeightedPoint> points;
    points.reserve(histogram.size());
    std::vector<std::uint32_t> packed;
    packed.reserve(histogram.size());
    for (const auto& [value, count] : histogram) {
        const Rgb8 c = unpack(value);
        points.push_back({static_cast<double>(c.r), static_cast<double>(c.g),
                          static_cast<double>(c.b), count});
        packed.push_back(value);
    }

    KMeans kmeans(points, k, seed);
    kmeans.run();
    result.objective_trace = kmeans.objective_trace();

    result.centroids.resize(k);
    result.counts.assign(k, 0);
    const auto& raw = kmeans.centroids();
    for (int c = 0; c < k; ++c) {
        result.centroids[c] = {
            static_cast<std::uint8_t>(std::lround(std::clamp(raw[c * 3 + 0], 0.0, 255.0))),
            static_cast<std::uint8_t>(std::lround(std::clamp(raw[c * 3 + 1], 0.0, 255.0))),
            static_cast<std::uint8_t>(std::lround(std::clamp(raw[c * 3 + 2], 0.0, 255.0)))};
    }

    std::unordered_map<std::uint32_t, std::int32_t> color_to_cluster;
    color_to_cluster.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        color_to_cluster.emplace(packed[i], kmeans.assignment()[i]);
        result.counts[kmeans.assignment()[i]] += points[i].weight;
    }

    result.labels.assign(image.pixel_count(), -1);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            result.labels[i] = color_to_cluster.at(pack(image.pixels[i]));
        }
    }

    result.adjacency = build_adjacency(result.labels, image.width, image.height);
    return result;
}

std::vector<std::pair<int, int>> build_adjacency(const std::vector<std::int32_t>& labels,
                                                 int width, int height) {
    if (labels.size() != static_cast<std::size_t>(width) * height) {
        throw DimensionMismatchError("label map does not match image dimensions");
    }

    std::size_t foreground = 0;
    for (auto label : labels) {
        if (label >= 0) {
            ++foreground;
        }
    }

    // Each unordered neighbor pair is visited once via the E/SW/S/SE offsets.
    static constexpr int kOffsets[4][2] = {{1, 0}, {-1, 1}, {0, 1}, {1, 1}};
    std::map<std::pair<int, int>, std::size_t> boundary_counts;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::int32_t a = labels[static_cast<std::size_t>(y) * width + x];
            if (a < 0) {
                continue;
            }
            for (const auto& off : kOffsets) {
                const int nx = x + off[0];
                const int ny = y + off[1];
                if (nx < 0 || nx >= width || ny >= height) {
                    continue;
                }
                const std::int32_t b = labels[static_cast<std::size_t>(ny) * width + nx];
                if (b < 0 || b == a) {
                    continue;
                }
                ++boundary_counts[{std::min(a, b), std::max(a, b)}];
            }
        }
    }

    // Threshold filters anti-aliasing speckle along mark edges.
    const auto min_boundary =
        std::max<std::size_t>(8, static_cast<std::size_t>(0.001 * static_cast<double>(foreground)));

    std::vector<std::pair<int, int>> adjacency;
    for (const auto& [pair, count] : boundary_counts) {
        if (count >= min_boundary) {
            adjacency.push_back(pair);
        }
    }
    return adjacency;
}

}  // namespace darkviz
