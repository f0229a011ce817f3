#include "darkviz/color.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace darkviz {
namespace {

constexpr double kPi = std::numbers::pi;

// D65 reference white, 2 degree observer.
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.00000;
constexpr double kWhiteZ = 1.08883;

// CIE standard thresholds for the Lab companding function.
constexpr double kLabEpsilon = 216.0 / 24389.0;
constexpr double kLabKappa = 24389.0 / 27.0;

// Linear components within this distance of [0,1] are treated as in gamut;
// the forward/inverse matrices are inverses only to ~1e-7, and 8-bit
// quantization cannot distinguish anything below ~4e-3 anyway.
constexpr double kGamutEpsilon = 1e-6;

double srgb_channel_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double linear_to_srgb_channel(double c) {
    return c <= 0.0031308 ? c * 12.92 : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

struct LinearRgb {
    double r, g, b;
};

struct Xyz {
    double x, y, z;
};

LinearRgb srgb_to_linear(Rgb8 c) {
    return {srgb_channel_to_linear(c.r / 255.0),
            srgb_channel_to_linear(c.g / 255.0),
            srgb_channel_to_linear(c.b / 255.0)};
}

// sRGB <-> XYZ matrices (IEC 61966-2-1, D65).
Xyz linear_to_xyz(const LinearRgb& c) {
    return {0.4124564 * c.r + 0.3575761 * c.g + 0.1804375 * c.b,
            0.2126729 * c.r + 0.7151522 * c.g + 0.0721750 * c.b,
            0.0193339 * c.r + 0.1191920 * c.g + 0.9503041 * c.b};
}

LinearRgb xyz_to_linear(const Xyz& c) {
    return {3.2404542 * c.x - 1.5371385 * c.y - 0.4985314 * c.z,
            -0.9692660 * c.x + 1.8760108 * c.y + 0.0415560 * c.z,
            0.0556434 * c.x - 0.2040259 * c.y + 1.0572252 * c.z};
}

double lab_f(double t) {
    return t > kLabEpsilon ? std::cbrt(t) : (kLabKappa * t + 16.0) / 116.0;
}

double lab_f_inv(double t) {
    const double t3 = t * t * t;
    return t3 > kLabEpsilon ? t3 : (116.0 * t - 16.0) / kLabKappa;
}

Xyz lab_to_xyz(const LabColor& c) {
    const double fy = (c.L + 16.0) / 116.0;
    const double fx = fy + c.a / 500.0;
    const double fz = fy - c.b / 200.0;
    return {lab_f_inv(fx) * kWhiteX, lab_f_inv(fy) * kWhiteY, lab_f_inv(fz) * kWhiteZ};
}

std::uint8_t quantize_channel(double linear) {
    const double srgb = linear_to_srgb_channel(std::clamp(linear, 0.0, 1.0));
    return static_cast<std::uint8_t>(std::lround(srgb * 255.0));
}

double deg2rad(double d) {
    return d * kPi / 180.0;
}

}  // namespace

LabColor srgb_to_lab(Rgb8 c) {
    const Xyz xyz = linear_to_xyz(srgb_to_linear(c));
    const double fx = lab_f(xyz.x / kWhiteX);
    const double fy = lab_f(xyz.y / kWhiteY);
    const double fz = lab_f(xyz.z / kWhiteZ);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

LchColor lab_to_lch(const LabColor& c) {
    const double chroma = std::hypot(c.a, c.b);
    if (chroma == 0.0) {
        return {c.L, 0.0, 0.0};
    }
    double hue = std::atan2(c.b, c.a) * 180.0 / kPi;
    if (hue < 0.0) {
        hue += 360.0;
    }
    if (hue >= 360.0) {
        hue -= 360.0;
    }
    return {c.L, chroma, hue};
}

LabColor lch_to_lab(const LchColor& c) {
    const double h = deg2rad(c.H);
    return {c.L, c.C * std::cos(h), c.C * std::sin(h)};
}

std::optional<Rgb8> lch_to_srgb_checked(const LchColor& c) {
    const LinearRgb lin = xyz_to_linear(lab_to_xyz(lch_to_lab(c)));
    for (double component : {lin.r, lin.g, lin.b}) {
        if (component < -kGamutEpsilon || component > 1.0 + kGamutEpsilon) {
            return std::nullopt;
        }
    }
    return Rgb8{quantize_channel(lin.r), quantize_channel(lin.g), quantize_channel(lin.b)};
}

Rgb8 lab_to_srgb_clipped(const LabColor& c) {
    const LinearRgb lin = xyz_to_linear(lab_to_xyz(c));
    return {quantize_channel(lin.r), quantize_channel(lin.g), quantize_channel(lin.b)};
}

double delta_e_2000(const LabColor& c1, const LabColor& c2) {
    constexpr double kPow25To7 = 6103515625.0;  // 25^7

    const double chroma1 = std::hypot(c1.a, c1.b);
    const double chroma2 = std::hypot(c2.a, c2.b);
    const double chroma_mean = (chroma1 + chroma2) / 2.0;

    const double chroma_mean7 = std::pow(chroma_mean, 7.0);
    const double g = 0.5 * (1.0 - std::sqrt(chroma_mean7 / (chroma_mean7 + kPow25To7)));

    const double a1p = (1.0 + g) * c1.a;
    const double a2p = (1.0 + g) * c2.a;
    const double c1p = std::hypot(a1p, c1.b);
    const double c2p = std::hypot(a2p, c2.b);

    auto hue_prime = [](double ap, double b) {
        if (ap == 0.0 && b == 0.0) {
            return 0.0;
        }
        double h = std::atan2(b, ap) * 180.0 / kPi;
        return h < 0.0 ? h + 360.0 : h;
    };
    const double h1p = hue_prime(a1p, c1.b);
    const double h2p = hue_prime(a2p, c2.b);

    const double dL = c2.L - c1.L;
    const double dC = c2p - c1p;

    double dh = 0.0;
    if (c1p * c2p != 0.0) {
        dh = h2p - h1p;
        if (dh > 180.0) {
            dh -= 360.0;
        } else if (dh < -180.0) {
            dh += 360.0;
        }
    }
    const double dH = 2.0 * std::sqrt(c1p * c2p) * std::sin(deg2rad(dh) / 2.0);

    const double lp_mean = (c1.L + c2.L) / 2.0;
    const double cp_mean = (c1p + c2p) / 2.0;

    double hp_mean = h1p + h2p;
    if (c1p * c2p != 0.0) {
        if (std::fabs(h1p - h2p) <= 180.0) {
            hp_mean /= 2.0;
        } else if (hp_mean < 360.0) {
            hp_mean = (hp_mean + 360.0) / 2.0;
        } else {
            hp_mean = (hp_mean - 360.0) / 2.0;
        }
    }

    const double t = 1.0 - 0.17 * std::cos(deg2rad(hp_mean - 30.0)) +
                     0.24 * std::cos(deg2rad(2.0 * hp_mean)) +
                     0.32 * std::cos(deg2rad(3.0 * hp_mean + 6.0)) -
                     0.20 * std::cos(deg2rad(4.0 * hp_mean - 63.0));

    const double d_theta = 30.0 * std::exp(-std::pow((hp_mean - 275.0) / 25.0, 2.0));
    const double cp_mean7 = std::pow(cp_mean, 7.0);
    const double r_c = 2.0 * std::sqrt(cp_mean7 / (cp_mean7 + kPow25To7));

    const double lp_off2 = (lp_mean - 50.0) * (lp_mean - 50.0);
    const double s_l = 1.0 + 0.015 * lp_off2 / std::sqrt(20.0 + lp_off2);
    const double s_c = 1.0 + 0.045 * cp_mean;
    const double s_h = 1.0 + 0.015 * cp_mean * t;
    const double r_t = -std::sin(deg2rad(2.0 * d_theta)) * r_c;

    const double term_l = dL / s_l;
    const double term_c = dC / s_c;
    const double term_h = dH / s_h;
    return std::sqrt(term_l * term_l + term_c * term_c + term_h * term_h +
                     r_t * term_c * term_h);
}

double wcag_relative_luminance(Rgb8 c) {
    // WCAG 2.1 publishes a 0.03928 threshold; it differs from the sRGB
    // 0.04045 only below quantization precision but we follow the letter.
    auto lin = [](double v) {
        return v <= 0.03928 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
    };
    return 0.2126 * lin(c.r / 255.0) + 0.7152 * lin(c.g / 255.0) + 0.0722 * lin(c.b / 255.0);
}

double wcag_contrast_ratio(Rgb8 c1, Rgb8 c2) {
    const double l1 = wcag_relative_luminance(c1);
    const double l2 = wcag_relative_luminance(c2);
    const double lighter = std::max(l1, l2);
    const double darker = std::min(l1, l2);
    return (lighter + 0.05) / (darker + 0.05);
}

std::optional<Rgb8> parse_hex_color(std::string_view text) {
    if (!text.empty() && text.front() == '#') {
        text.remove_prefix(1);
    }
    if (text.size() != 6) {
        return std::nullopt;
    }
    std::uint32_t value = 0;
    for (char ch : text) {
        std::uint32_t digit = 0;
        if (ch >= '0' && ch <= '9') {
            digit = static_cast<std::uint32_t>(ch - '0');
        } else if (ch >= 'a' && ch <= 'f') {
            digit = static_cast<std::uint32_t>(ch - 'a' + 10);
        } else if (ch >= 'A' && ch <= 'F') {
            digit = static_cast<std::uint32_t>(ch - 'A' + 10);
        } else {
            return std::nullopt;
        }
        value = value * 16 + digit;
    }
    return Rgb8{static_cast<std::uint8_t>(value >> 16),
                static_cast<std::uint8_t>((value >> 8) & 0xFF),
                static_cast<std::uint8_t>(value & 0xFF)};
}

std::string to_hex(Rgb8 c) {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string out = "#000000";
    const std::uint8_t channels[] = {c.r, c.g, c.b};
    for (int i = 0; i < 3; ++i) {
        out[1 + 2 * i] = kDigits[channels[i] >> 4];
        out[2 + 2 * i] = kDigits[channels[i] & 0xF];
    }
    return out;
}

double hue_distance_deg(double h1, double h2) {
    double d = std::fabs(h1 - h2);
    d = std::fmod(d, 360.0);
    return d > 180.0 ? 360.0 - d : d;
}

}  // namespace darkviz
