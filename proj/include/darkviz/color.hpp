#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace darkviz {

/// 8-bit sRGB color, one byte per channel.
struct Rgb8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// CIELAB coordinates (D65, 2 degree observer). L in [0,100].
struct LabColor {
    double L = 0;
    double a = 0;
    double b = 0;
};

/// Cylindrical CIELAB: lightness, chroma, hue angle in degrees [0,360).
struct LchColor {
    double L = 0;
    double C = 0;
    double H = 0;
};

LabColor srgb_to_lab(Rgb8 c);
LchColor lab_to_lch(const LabColor& c);
LabColor lch_to_lab(const LchColor& c);

/// Inverse transform with sRGB gamut validation: returns the quantized
/// color only if every linear-RGB component of the inverse transform lies
/// in [0,1]; nullopt means the color is not displayable.
std::optional<Rgb8> lch_to_srgb_checked(const LchColor& c);

/// Inverse transform with per-channel clamping instead of rejection.
Rgb8 lab_to_srgb_clipped(const LabColor& c);

/// CIEDE2000 color difference, parametric factors kL = kC = kH = 1.
double delta_e_2000(const LabColor& c1, const LabColor& c2);

/// WCAG 2.1 relative luminance in [0,1].
double wcag_relative_luminance(Rgb8 c);

/// WCAG 2.1 contrast ratio in [1,21]; argument order does not matter.
double wcag_contrast_ratio(Rgb8 c1, Rgb8 c2);

/// Parses "#RRGGBB" or "RRGGBB" (case-insensitive).
std::optional<Rgb8> parse_hex_color(std::string_view text);
std::string to_hex(Rgb8 c);

/// Circular hue distance in degrees, result in [0,180].
double hue_distance_deg(double h1, double h2);

}  // namespace darkviz
