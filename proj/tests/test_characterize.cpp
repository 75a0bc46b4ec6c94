// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "pcqa/characterize.hpp"
#include "support.hpp"

using namespace pcqa;

namespace {

// Independent hull-volume oracle: every triple of points whose plane has all
// other points on one side is a hull face; sum tetra volumes from the point
// centroid. O(n^4), test-only.
double brute_force_hull_volume(const std::vector<Vec3>& pts, double eps = 1e-12) {
    const std::size_t n = pts.size();
    if (n < 4) return 0.0;
    Vec3 center{};
    for (const Vec3& p : pts) center += p;
    center = center / static_cast<double>(n);
    double vol6 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const Vec3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
                if (norm(nrm) < eps) continue;
                bool pos = false, neg = false;
                for (std::size_t m = 0; m < n; ++m) {
                    if (m == i || m == j || m == k) continue;
                    const double s = dot(nrm, pts[m] - pts[i]);
                    if (s > eps) pos = true;
                    if (s < -eps) neg = true;
                }
                if (pos && neg) continue;  // not a hull face
                if (!pos && !neg) continue;  // degenerate: all coplanar with the face
                // Orient outward (all other points on the negative side).
                const double sgn = neg ? 1.0 : -1.0;
                vol6 += sgn * dot(cross(pts[i] - center, pts[j] - center), pts[k] - center);
            }
    return std::abs(vol6) / 6.0;
}

double ycbcr_matrix_determinant() {
    // Linear part of the RGB8 -> normalized YCbCr map (BT.709 full range).
    const Rgb8 basis[3] = {{255, 0, 0}, {0, 255, 0}, {0, 0, 255}};
    Vec3 col[3];
    const Ycbcr origin = rgb_to_ycbcr({0, 0, 0});
    for (int i = 0; i < 3; ++i) {
        const Ycbcr c = rgb_to_ycbcr(basis[i]);
        col[i] = {c.y - origin.y, c.cb - origin.cb, c.cr - origin.cr};
    }
    return std::abs(dot(cross(col[0], col[1]), col[2]));
}

} // namespace

TEST_CASE("two points at distance d have sparsity d") {
    PointCloud cloud;
    cloud.positions = {{0, 0, 0}, {3, 4, 0}};
    CHECK_THAT(sparsity(cloud, 20), Catch::Matchers::WithinAbs(5.0, 1e-12));
}

TEST_CASE("sparsity equals the exhaustive scan on an integer grid") {
    PointCloud cloud;
    for (int x = 0; x < 10; ++x)
        for (int y = 0; y < 10; ++y)
            for (int z = 0; z < 10; ++z) cloud.positions.push_back({double(x), double(y), double(z)});
    const std::size_t k = 20;
    // exhaustive oracle
    double total = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        auto nn = test::brute_force_knn(cloud.positions, cloud.positions[i], k + 1);
        double sum = 0.0;
        std::size_t taken = 0;
        for (const auto& nb : nn) {
            if (nb.index == i) continue;
            if (taken == k) break;
            sum += nb.distance;
            ++taken;
        }
        total += sum / double(k);
    }
    const double want = total / double(cloud.size());
    CHECK(sparsity(cloud, k) == want);
}

TEST_CASE("sparsity of a single point is an error") {
    PointCloud cloud;
    cloud.positions = {{0, 0, 0}};
    CHECK_THROWS(sparsity(cloud));
}

TEST_CASE("sparsity is rigid-invariant and scales linearly") {
    PointCloud cloud = test::random_cloud(200, 61, 10.0);
    const double base = sparsity(cloud, 12);

    const test::Rigid rig = test::random_rigid(62);
    CHECK_THAT(sparsity(test::transformed(cloud, rig), 12), Catch::Matchers::WithinAbs(base, 1e-9));

    PointCloud scaled = cloud;
    for (Vec3& p : scaled.positions) p = p * 2.5;
    CHECK_THAT(sparsity(scaled, 12), Catch::Matchers::WithinRel(2.5 * base, 1e-12));
}

TEST_CASE("single repeated color is a degenerate zero-volume gamut") {
    PointCloud cloud = test::random_cloud(50, 3);
    cloud.colors.assign(50, Rgb8{12, 200, 64});
    const auto [vol, degenerate] = gamut_volume(cloud);
    CHECK(vol == 0.0);
    CHECK(degenerate);
}

TEST_CASE("gamut of the full RGB cube corners matches independent references") {
    PointCloud cloud;
    for (int r : {0, 255})
        for (int g : {0, 255})
            for (int b : {0, 255}) {
                cloud.positions.push_back({double(r), double(g), double(b)});
                cloud.colors.push_back({std::uint8_t(r), std::uint8_t(g), std::uint8_t(b)});
            }
    const auto [vol_pct, degenerate] = gamut_volume(cloud);
    CHECK_FALSE(degenerate);

    // route 1: the hull of the cube corners is the image of the cube under a
    // linear map, so its volume is |det| of the matrix.
    CHECK_THAT(vol_pct / 100.0, Catch::Matchers::WithinAbs(ycbcr_matrix_determinant(), 1e-12));

    // route 2: frozen scipy.spatial.ConvexHull (Qhull) volume.
    CHECK_THAT(vol_pct / 100.0, Catch::Matchers::WithinAbs(0.24474720214799342, 1e-12));
}

TEST_CASE("gamut volume matches frozen Qhull references on fixed color sets") {
    // Expected volumes computed once with scipy.spatial.ConvexHull over the
    // normalized-YCbCr images of these exact color lists.
    const std::vector<Rgb8> set_a = {
        {0, 0, 0},     {255, 255, 255}, {255, 0, 0},   {0, 255, 0},    {0, 0, 255},
        {255, 255, 0}, {0, 255, 255},   {255, 0, 255}, {128, 64, 32},  {32, 128, 64},
        {64, 32, 128}, {200, 200, 10},  {10, 200, 200}, {200, 10, 200}, {90, 13, 240},
        {240, 90, 13}, {13, 240, 90},   {77, 77, 77},  {180, 255, 120}, {120, 180, 255}};
    PointCloud a;
    for (std::size_t i = 0; i < set_a.size(); ++i) {
        a.positions.push_back({double(i), 0, 0});
        a.colors.push_back(set_a[i]);
    }
    CHECK_THAT(gamut_volume(a).first / 100.0,
               Catch::Matchers::WithinAbs(0.24474720214799342, 1e-12));

    // 30 colors from a fixed LCG stream.
    PointCloud b;
    std::uint64_t s = 12345;
    auto next = [&s]() {
        s = (1103515245ULL * s + 12345ULL) % 2147483648ULL;
        return static_cast<std::uint8_t>(s % 256);
    };
    for (int i = 0; i < 30; ++i) {
        const std::uint8_t r = next(), g = next(), bl = next();
        b.positions.push_back({double(i), 0, 0});
        b.colors.push_back({r, g, bl});
    }
    REQUIRE(b.colors[0] == Rgb8{126, 223, 44});
    REQUIRE(b.colors[1] == Rgb8{245, 138, 251});
    CHECK_THAT(gamut_volume(b).first / 100.0,
               Catch::Matchers::WithinAbs(0.092219317457723451, 1e-12));
}

TEST_CASE("hull volume matches the triple-scan oracle on general-position sets") {
    // Continuous random coordinates are in general position almost surely,
    // where the O(n^4) face-scan oracle is exact.
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        std::mt19937_64 gen = test::rng(seed);
        std::uniform_real_distribution<double> coord(0.0, 1.0);
        std::vector<Vec3> pts;
        for (int i = 0; i < 24; ++i) pts.push_back({coord(gen), coord(gen), coord(gen)});
        const double want = brute_force_hull_volume(pts);
        CHECK_THAT(convex_hull_volume(pts), Catch::Matchers::WithinAbs(want, 1e-9));
    }
}

TEST_CASE("gamut volume ignores duplication and ordering") {
    PointCloud cloud = test::random_cloud(40, 5, 1.0, true);
    const auto [base, deg] = gamut_volume(cloud);
    (void)deg;

    PointCloud doubled = cloud;
    doubled.positions.insert(doubled.positions.end(), cloud.positions.begin(), cloud.positions.end());
    doubled.colors.insert(doubled.colors.end(), cloud.colors.begin(), cloud.colors.end());
    CHECK(gamut_volume(doubled).first == base);

    PointCloud shuffled = cloud;
    std::mt19937_64 gen = test::rng(6);
    for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        const std::size_t j = pick(gen);
        std::swap(shuffled.colors[i - 1], shuffled.colors[j]);
        std::swap(shuffled.positions[i - 1], shuffled.positions[j]);
    }
    CHECK(gamut_volume(shuffled).first == base);
}

TEST_CASE("constant color has zero channel deviations") {
    PointCloud cloud = test::random_cloud(10, 1);
    cloud.colors.assign(10, Rgb8{100, 150, 200});
    const auto [y, cb, cr] = channel_stats(cloud);
    CHECK(y == 0.0);
    CHECK(cb == 0.0);
    CHECK(cr == 0.0);
}

TEST_CASE("black and white pair has population luma deviation one half") {
    PointCloud cloud;
    cloud.positions = {{0, 0, 0}, {1, 0, 0}};
    cloud.colors = {{0, 0, 0}, {255, 255, 255}};
    const auto [y, cb, cr] = channel_stats(cloud);
    CHECK_THAT(y, Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK_THAT(cb, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(cr, Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("channel stats are permutation invariant and contrast-linear") {
    PointCloud cloud = test::random_cloud(64, 10, 1.0, true);
    const auto [y0, cb0, cr0] = channel_stats(cloud);

    PointCloud reversed = cloud;
    std::reverse(reversed.colors.begin(), reversed.colors.end());
    const auto [y1, cb1, cr1] = channel_stats(reversed);
    CHECK_THAT(y1, Catch::Matchers::WithinRel(y0, 1e-12));
    CHECK_THAT(cb1, Catch::Matchers::WithinRel(cb0, 1e-12));
    CHECK_THAT(cr1, Catch::Matchers::WithinRel(cr0, 1e-12));

    // Scaling luma contrast about the mean scales y_dev proportionally:
    // grayscale ramp vs the same ramp stretched by 2 about its mean.
    PointCloud ramp, stretched;
    for (int i = 0; i < 32; ++i) {
        ramp.positions.push_back({double(i), 0, 0});
        stretched.positions.push_back({double(i), 0, 0});
        const int v = 96 + i;             // mean 111.5
        const int w = 96 + 2 * i - 16;    // 2x contrast about the same mean (exact for ints)
        ramp.colors.push_back({std::uint8_t(v), std::uint8_t(v), std::uint8_t(v)});
        stretched.colors.push_back({std::uint8_t(w), std::uint8_t(w), std::uint8_t(w)});
    }
    const auto [yr, cbr, crr] = channel_stats(ramp);
    const auto [ys, cbs, crs] = channel_stats(stretched);
    CHECK_THAT(ys, Catch::Matchers::WithinRel(2.0 * yr, 1e-9));
}

TEST_CASE("characterize assembles the full profile") {
    PointCloud cloud = test::random_cloud(128, 15, 20.0, true);
    const ContentProfile p = characterize(cloud);
    CHECK(p.sparsity > 0.0);
    CHECK(p.gamut_volume_pct >= 0.0);
    CHECK(p.gamut_volume_pct <= 100.0);
    CHECK(p.y_dev >= 0.0);
}
