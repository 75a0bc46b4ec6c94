// pcqa - point cloud quality assessment toolkit
// SPDX-License-Identifier: MIT

#include <catch2/catch_amalgamated.hpp>

#include "pcqa/neighbor_index.hpp"
#include "support.hpp"

using namespace pcqa;

TEST_CASE("k_nearest on a tiny line of points") {
    NeighborIndex index(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {3, 0, 0}});
    const auto nn = index.k_nearest({0, 0, 0}, 2);
    REQUIRE(nn.size() == 2);
    CHECK(nn[0].index == 0);
    CHECK(nn[0].distance == 0.0);
    CHECK(nn[1].index == 1);
    CHECK(nn[1].distance == 1.0);
}

TEST_CASE("k out of range is rejected") {
    NeighborIndex index(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}});
    CHECK_THROWS_AS(index.k_nearest({0, 0, 0}, 3), std::out_of_range);
    CHECK_THROWS_AS(index.k_nearest({0, 0, 0}, 0), std::out_of_range);
}

TEST_CASE("ties break toward the lowest original index") {
    // Four points equidistant from the origin, declared in scrambled order.
    NeighborIndex index(std::vector<Vec3>{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}});
    const auto nn = index.k_nearest({0, 0, 0}, 2);
    CHECK(nn[0].index == 0);
    CHECK(nn[1].index == 1);

    const auto all = index.k_nearest({0, 0, 0}, 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(all[i].index == i);
}

TEST_CASE("k_nearest equals the exhaustive scan on random clouds") {
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        const auto cloud = test::random_cloud(200, seed, 50.0);
        NeighborIndex index(cloud);
        std::mt19937_64 gen = test::rng(seed ^ 0xabcd);
        std::uniform_real_distribution<double> pos(-10.0, 60.0);
        for (int q = 0; q < 50; ++q) {
            const Vec3 query{pos(gen), pos(gen), pos(gen)};
            const auto got = index.k_nearest(query, 12);
            const auto want = test::brute_force_knn(cloud.positions, query, 12);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].index == want[i].index);
                CHECK(got[i].distance == want[i].distance);
            }
        }
    }
}

TEST_CASE("k_nearest matches the scan on duplicate-heavy grids for every k") {
    // Integer grid with every point doubled: dense distance ties.
    std::vector<Vec3> pts;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
            for (int z = 0; z < 2; ++z) {
                pts.push_back({double(x), double(y), double(z)});
                pts.push_back({double(x), double(y), double(z)});
            }
    NeighborIndex index(pts);
    std::mt19937_64 gen = test::rng(7);
    std::uniform_int_distribution<int> coord(0, 3);
    for (int q = 0; q < 20; ++q) {
        const Vec3 query{double(coord(gen)), double(coord(gen)), double(coord(gen)) / 3.0};
        for (std::size_t k : {1u, 2u, 5u, 17u, 64u}) {
            const auto got = index.k_nearest(query, k);
            const auto want = test::brute_force_knn(pts, query, k);
            REQUIRE(got.size() == k);
            for (std::size_t i = 0; i < k; ++i) {
                CHECK(got[i].index == want[i].index);
                CHECK(got[i].distance == want[i].distance);
            }
        }
    }
}

TEST_CASE("radius queries return exactly the in-range points") {
    const auto cloud = test::random_cloud(300, 99, 20.0);
    NeighborIndex index(cloud);
    std::mt19937_64 gen = test::rng(100);
    std::uniform_real_distribution<double> pos(0.0, 20.0);
    std::uniform_real_distribution<double> rad(0.0, 8.0);
    for (int q = 0; q < 40; ++q) {
        const Vec3 query{pos(gen), pos(gen), pos(gen)};
        const double r = rad(gen);
        const auto got = index.radius(query, r);
        const auto want = test::brute_force_radius(cloud.positions, query, r);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].index == want[i].index);
            CHECK(got[i].distance == want[i].distance);
        }
    }
}

TEST_CASE("radius boundary is inclusive") {
    NeighborIndex index(std::vector<Vec3>{{0, 0, 0}, {2, 0, 0}, {4, 0, 0}});
    const auto hits = index.radius({0, 0, 0}, 2.0);
    REQUIRE(hits.size() == 2);
    CHECK(hits[1].index == 1);
    CHECK(hits[1].distance == 2.0);
}

TEST_CASE("identical query sequences give identical results regardless of interleaving") {
    const auto cloud = test::random_cloud(150, 5);
    NeighborIndex index(cloud);
    std::vector<Vec3> queries;
    std::mt19937_64 gen = test::rng(6);
    std::uniform_real_distribution<double> pos(0.0, 100.0);
    for (int i = 0; i < 30; ++i) queries.push_back({pos(gen), pos(gen), pos(gen)});

    std::vector<std::vector<Neighbor>> straight, interleaved;
    for (const Vec3& q : queries) straight.push_back(index.k_nearest(q, 5));
    for (std::size_t i = 0; i < queries.size(); ++i) {
        index.radius(queries[(i * 7) % queries.size()], 3.0);  // interleave other work
        interleaved.push_back(index.k_nearest(queries[i], 5));
    }
    for (std::size_t i = 0; i < queries.size(); ++i) {
        REQUIRE(straight[i].size() == interleaved[i].size());
        for (std::size_t j = 0; j < straight[i].size(); ++j) {
            CHECK(straight[i][j].index == interleaved[i][j].index);
            CHECK(straight[i][j].distance == interleaved[i][j].distance);
        }
    }
}
