// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "pcqa/metrics/pcqm.hpp"
#include "support.hpp"

using namespace pcqa;
using namespace pcqa::metrics;

namespace {

MetricConfig color_weights() {
    MetricConfig cfg;
    cfg.pcqm_weights = {0, 0, 0, 0.9771, 0.1, 0.0172, 0.05, 0.02};
    return cfg;
}

// Independent transcription of the five color features for the
// geometry-identical case: brute-force neighborhoods, explicit formulas.
std::array<double, 5> oracle_color_features(const PointCloud& ref, const PointCloud& dist,
                                            const MetricConfig& cfg) {
    const std::size_t n = ref.size();
    // intrinsic scale: centroid-sphere diameter
    Vec3 c{};
    for (const Vec3& p : ref.positions) c += p;
    c = c / double(n);
    double max_d2 = 0.0;
    for (const Vec3& p : ref.positions) max_d2 = std::max(max_d2, squared_distance(p, c));
    const double scale = 2.0 * std::sqrt(max_d2);
    const double stat_radius = cfg.pcqm_radius_rel * scale * cfg.pcqm_radius_factor;
    const double sigma = stat_radius / 2.0;

    std::vector<double> l_own(n), l_other(n), ch_own(n), ch_other(n), hue(n);
    for (std::size_t i = 0; i < n; ++i) {
        // geometry identical: the matched point is the same index
        const Lab a = rgb_to_lab(ref.colors[i]);
        const Lab b = rgb_to_lab(dist.colors[i]);
        l_own[i] = a.l;
        l_other[i] = b.l;
        ch_own[i] = std::hypot(a.a, a.b);
        ch_other[i] = std::hypot(b.a, b.b);
        const double dh2 = (a.a - b.a) * (a.a - b.a) + (a.b - b.b) * (a.b - b.b) -
                           (ch_own[i] - ch_other[i]) * (ch_own[i] - ch_other[i]);
        hue[i] = dh2 > 0 ? std::sqrt(dh2) : 0.0;
    }

    double f4 = 0, f5 = 0, f6 = 0, f7 = 0, f8 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> hood;
        std::vector<double> w;
        double wsum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d2 = squared_distance(ref.positions[i], ref.positions[j]);
            if (d2 <= stat_radius * stat_radius) {
                hood.push_back(j);
                const double wj = std::exp(-d2 / (2 * sigma * sigma));
                w.push_back(wj);
                wsum += wj;
            }
        }
        const double m = double(hood.size());
        auto wmean = [&](const std::vector<double>& v) {
            double s = 0;
            for (std::size_t j = 0; j < hood.size(); ++j) s += v[hood[j]] * w[j];
            return s / wsum;
        };
        auto wsd = [&](const std::vector<double>& v, double mu) {
            double s = 0;
            for (std::size_t j = 0; j < hood.size(); ++j) s += (v[hood[j]] - mu) * (v[hood[j]] - mu) * w[j];
            return std::sqrt(std::max(0.0, s / wsum));
        };
        const double mu_own = wmean(l_own), mu_other = wmean(l_other);
        f4 += 1.0 - 1.0 / (0.002 * (mu_own - mu_other) * (mu_own - mu_other) + 1.0);
        const double sd_own = wsd(l_own, mu_own), sd_other = wsd(l_other, mu_other);
        f5 += 1.0 - (2 * sd_own * sd_other + 0.1) / (sd_own * sd_own + sd_other * sd_other + 0.1);

        double ma = 0, mb = 0;
        for (std::size_t j : hood) {
            ma += l_own[j];
            mb += l_other[j];
        }
        ma /= m;
        mb /= m;
        double va = 0, vb = 0, cov = 0;
        for (std::size_t j : hood) {
            va += (l_own[j] - ma) * (l_own[j] - ma);
            vb += (l_other[j] - mb) * (l_other[j] - mb);
            cov += (l_own[j] - ma) * (l_other[j] - mb);
        }
        va /= m;
        vb /= m;
        cov /= m;
        f6 += 1.0 - (cov + 0.1) / (std::sqrt(va) * std::sqrt(vb) + 0.1);

        const double cmu_own = wmean(ch_own), cmu_other = wmean(ch_other);
        f7 += 1.0 - 1.0 / (0.002 * (cmu_own - cmu_other) * (cmu_own - cmu_other) + 1.0);
        const double hmu = wmean(hue);
        f8 += 1.0 - 1.0 / (0.008 * hmu * hmu + 1.0);
    }
    return {f4 / double(n), f5 / double(n), f6 / double(n), f7 / double(n), f8 / double(n)};
}

} // namespace

TEST_CASE("identical clouds give a zero pcqm") {
    const PointCloud cloud = test::random_cloud(150, 101, 10.0, true);
    const MetricResult r = pcqm(cloud, cloud, color_weights());
    CHECK(std::abs(r.value) <= 1e-12);
    CHECK(r.polarity == Polarity::lower_better);
}

TEST_CASE("all-zero weights give zero regardless of inputs") {
    const PointCloud ref = test::random_cloud(80, 102, 10.0, true);
    const PointCloud dist = test::random_cloud(90, 103, 10.0, true);
    MetricConfig cfg;
    cfg.pcqm_weights.assign(8, 0.0);
    CHECK(pcqm(ref, dist, cfg).value == 0.0);
}

TEST_CASE("recolored point reproduces the transcribed color features") {
    PointCloud ref = test::random_cloud(120, 104, 2.0, true);
    PointCloud dist = ref;  // geometry identical
    dist.colors[17] = {255, 0, 0};
    dist.colors[55] = {0, 255, 0};
    const MetricConfig cfg = color_weights();

    const PcqmFeatures feats = pcqm_features(ref, dist, cfg);
    const auto want = oracle_color_features(ref, dist, cfg);
    CHECK_THAT(feats.f[3], Catch::Matchers::WithinAbs(want[0], 1e-9));
    CHECK_THAT(feats.f[4], Catch::Matchers::WithinAbs(want[1], 1e-9));
    CHECK_THAT(feats.f[5], Catch::Matchers::WithinAbs(want[2], 1e-9));
    CHECK_THAT(feats.f[6], Catch::Matchers::WithinAbs(want[3], 1e-9));
    CHECK_THAT(feats.f[7], Catch::Matchers::WithinAbs(want[4], 1e-9));
    // geometry features vanish on identical geometry
    CHECK(std::abs(feats.f[0]) <= 1e-12);
    CHECK(std::abs(feats.f[1]) <= 1e-12);
    CHECK(std::abs(feats.f[2]) <= 1e-12);

    const MetricResult r = pcqm(ref, dist, cfg);
    double manual = 0.0;
    const double w[5] = {0.9771, 0.1, 0.0172, 0.05, 0.02};
    for (int i = 0; i < 5; ++i) manual += w[i] * want[std::size_t(i)];
    CHECK_THAT(r.value, Catch::Matchers::WithinAbs(manual, 1e-9));
    CHECK(r.value > 0.0);
}

TEST_CASE("weight vector length is validated") {
    const PointCloud cloud = test::random_cloud(30, 105, 5.0, true);
    MetricConfig cfg;
    cfg.pcqm_weights = {1.0, 2.0};
    CHECK_THROWS(pcqm(cloud, cloud, cfg));
}

TEST_CASE("pcqm rejects missing colors") {
    PointCloud plain = test::random_cloud(30, 106);
    PointCloud colored = test::random_cloud(30, 107, 5.0, true);
    CHECK_THROWS(pcqm(plain, colored, color_weights()));
}

TEST_CASE("reports the color-space note") {
    const PointCloud cloud = test::random_cloud(40, 108, 5.0, true);
    const MetricResult r = pcqm(cloud, cloud, color_weights());
    REQUIRE_FALSE(r.notes.empty());
    CHECK(r.notes.front().find("cielab") != std::string::npos);
}
