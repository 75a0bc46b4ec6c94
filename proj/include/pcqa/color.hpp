// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "pcqa/point_cloud.hpp"

namespace pcqa {

/// Normalized YCbCr: Y in [0,1], Cb/Cr in [0,1] centered at 0.5.
struct Ycbcr {
    double y = 0.0;
    double cb = 0.5;
    double cr = 0.5;
};

/// CIELAB (D65 reference white).
struct Lab {
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
};

enum class YcbcrMatrix { bt709, bt601 };

namespace detail {
struct LumaCoeffs {
    double kr, kg, kb;
};
constexpr LumaCoeffs luma_coeffs(YcbcrMatrix m) {
    return m == YcbcrMatrix::bt709 ? LumaCoeffs{0.2126, 0.7152, 0.0722}
                                   : LumaCoeffs{0.299, 0.587, 0.114};
}
} // namespace detail

/// Full-range conversion: Y = Kr R' + Kg G' + Kb B' on [0,1] primaries,
/// Cb = (B'-Y)/(2(1-Kb)) + 0.5, Cr = (R'-Y)/(2(1-Kr)) + 0.5.
/// BT.709 is the documented default; BT.601 is selectable by flag.
inline Ycbcr rgb_to_ycbcr(Rgb8 c, YcbcrMatrix m = YcbcrMatrix::bt709) {
    const auto [kr, kg, kb] = detail::luma_coeffs(m);
    const double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
    const double y = kr * r + kg * g + kb * b;
    return {y, (b - y) / (2.0 * (1.0 - kb)) + 0.5, (r - y) / (2.0 * (1.0 - kr)) + 0.5};
}

/// Exact inverse of rgb_to_ycbcr up to 8-bit rounding.
inline Rgb8 ycbcr_to_rgb(Ycbcr c, YcbcrMatrix m = YcbcrMatrix::bt709) {
    const auto [kr, kg, kb] = detail::luma_coeffs(m);
    const double r = c.y + (c.cr - 0.5) * 2.0 * (1.0 - kr);
    const double b = c.y + (c.cb - 0.5) * 2.0 * (1.0 - kb);
    const double g = (c.y - kr * r - kb * b) / kg;
    auto to8 = [](double v) {
        return static_cast<std::uint8_t>(std::clamp(std::lround(v * 255.0), 0L, 255L));
    };
    return {to8(r), to8(g), to8(b)};
}

inline double luminance(Rgb8 c, YcbcrMatrix m = YcbcrMatrix::bt709) {
    return rgb_to_ycbcr(c, m).y;
}

namespace detail {
// sRGB EOTF linearization.
inline double srgb_linear(double v) {
    return v > 0.0404482362771076 ? std::pow((v + 0.055) / 1.055, 2.4) : v / 12.92;
}
inline double lab_f(double t) {
    constexpr double cube_eps = 216.0 / 24389.0; // (6/29)^3
    return t > cube_eps ? std::cbrt(t) : (24389.0 / 27.0 * t + 16.0) / 116.0;
}
} // namespace detail

/// sRGB (D65) -> CIELAB. Stand-in perceptual space for PCQM when no
/// LAB2000HL tables are configured.
inline Lab rgb_to_lab(Rgb8 c) {
    const double r = detail::srgb_linear(c.r / 255.0);
    const double g = detail::srgb_linear(c.g / 255.0);
    const double b = detail::srgb_linear(c.b / 255.0);
    // sRGB -> XYZ (D65)
    const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    const double fx = detail::lab_f(x / 0.95047);
    const double fy = detail::lab_f(y / 1.0);
    const double fz = detail::lab_f(z / 1.08883);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

inline double lab_chroma(Lab c) { return std::hypot(c.a, c.b); }

} // namespace pcqa
