// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "pcqa/color.hpp"
#include "support.hpp"

using namespace pcqa;

TEST_CASE("white maps to max luma and neutral chroma") {
    const Ycbcr c = rgb_to_ycbcr({255, 255, 255});
    CHECK_THAT(c.y, Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK_THAT(c.cb, Catch::Matchers::WithinAbs(0.5, 1e-9));
    CHECK_THAT(c.cr, Catch::Matchers::WithinAbs(0.5, 1e-9));
}

TEST_CASE("black maps to zero luma and neutral chroma") {
    const Ycbcr c = rgb_to_ycbcr({0, 0, 0});
    CHECK_THAT(c.y, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(c.cb, Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK_THAT(c.cr, Catch::Matchers::WithinAbs(0.5, 1e-12));
}

TEST_CASE("ycbcr stays in range and round-trips within one code value") {
    std::mt19937_64 gen = pcqa::test::rng(77);
    std::uniform_int_distribution<int> chan(0, 255);
    for (YcbcrMatrix m : {YcbcrMatrix::bt709, YcbcrMatrix::bt601}) {
        for (int i = 0; i < 10000; ++i) {
            const Rgb8 rgb{static_cast<std::uint8_t>(chan(gen)), static_cast<std::uint8_t>(chan(gen)),
                           static_cast<std::uint8_t>(chan(gen))};
            const Ycbcr c = rgb_to_ycbcr(rgb, m);
            CHECK(c.y >= 0.0);
            CHECK(c.y <= 1.0);
            CHECK(c.cb >= 0.0);
            CHECK(c.cb <= 1.0);
            CHECK(c.cr >= 0.0);
            CHECK(c.cr <= 1.0);
            const Rgb8 back = ycbcr_to_rgb(c, m);
            CHECK(std::abs(int(back.r) - int(rgb.r)) <= 1);
            CHECK(std::abs(int(back.g) - int(rgb.g)) <= 1);
            CHECK(std::abs(int(back.b) - int(rgb.b)) <= 1);
        }
    }
}

TEST_CASE("cielab matches reference conversions") {
    // Frozen from scikit-image rgb2lab (D65, 2 degree observer). That
    // implementation uses slightly different matrix rounding, hence the loose
    // absolute tolerance.
    struct Case {
        Rgb8 rgb;
        double l, a, b;
    };
    const Case cases[] = {
        {{255, 0, 0}, 53.240587943745, 80.092308225692, 67.202751044429},
        {{0, 255, 0}, 87.735099488319, -86.183029744395, 83.179703175385},
        {{0, 0, 255}, 32.295672565014, 79.185590911766, -107.857300206695},
        {{255, 255, 255}, 100.0, 0.0, 0.0},
        {{0, 0, 0}, 0.0, 0.0, 0.0},
        {{128, 128, 128}, 53.585013452169, 0.0, 0.0},
        {{200, 100, 50}, 53.629508005396, 36.305164189407, 45.380471876186},
        {{12, 240, 180}, 84.837404838983, -61.376708010069, 15.780093160117},
    };
    for (const Case& c : cases) {
        const Lab lab = rgb_to_lab(c.rgb);
        CHECK_THAT(lab.l, Catch::Matchers::WithinAbs(c.l, 0.02));
        CHECK_THAT(lab.a, Catch::Matchers::WithinAbs(c.a, 0.05));
        CHECK_THAT(lab.b, Catch::Matchers::WithinAbs(c.b, 0.05));
    }
}

TEST_CASE("bt601 differs from bt709 on saturated colors") {
    const Ycbcr a = rgb_to_ycbcr({255, 0, 0}, YcbcrMatrix::bt709);
    const Ycbcr b = rgb_to_ycbcr({255, 0, 0}, YcbcrMatrix::bt601);
    CHECK(std::abs(a.y - b.y) > 0.05);
}
