#include <doctest.h>

#include <algorithm>
#include <random>

#include "ffsalem/errors.hpp"
#include "ffsalem/grassmannian.hpp"
#include "oracles.hpp"

using namespace ffsalem;

TEST_CASE("gaussian binomial values and identities") {
    CHECK(gaussian_binomial(2, 1, 2) == 3);
    CHECK(gaussian_binomial(2, 1, 3) == 4);
    CHECK(gaussian_binomial(2, 1, 13) == 14);
    CHECK(gaussian_binomial(3, 1, 2) == 7);
    CHECK(gaussian_binomial(3, 1, 3) == 13);
    CHECK(gaussian_binomial(3, 1, 5) == 31);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(4, 2, 3) == 130);
    CHECK(gaussian_binomial(4, 2, 5) == 806);
    CHECK(gaussian_binomial(5, 0, 7) == 1);
    CHECK(gaussian_binomial(5, 5, 7) == 1);
    CHECK(gaussian_binomial(3, 4, 2) == 0);

    for (std::uint64_t q : {2, 3, 4, 5, 7}) {
        for (std::uint32_t d = 1; d <= 6; ++d) {
            for (std::uint32_t k = 0; k <= d; ++k) {
                CHECK(gaussian_binomial(d, k, q) == gaussian_binomial(d, d - k, q));
                if (k >= 1 && k <= d - 1) {
                    std::uint64_t qk = 1;
                    for (std::uint32_t i = 0; i < k; ++i) qk *= q;
                    CHECK(gaussian_binomial(d, k, q) ==
                          gaussian_binomial(d - 1, k - 1, q) +
                              qk * gaussian_binomial(d - 1, k, q));
                }
            }
        }
    }
    CHECK_THROWS_AS(gaussian_binomial(128, 64, 65536), Error);
}

TEST_CASE("enumeration count matches three independent counts") {
    for (std::uint64_t q : {2, 3, 4, 5}) {
        auto F = make_field(q == 4 ? 2 : std::uint32_t(q), q == 4 ? 2 : 1);
        for (std::uint32_t d = 2; d <= 4; ++d) {
            for (std::uint32_t k = 1; k < d; ++k) {
                const auto all = enumerate_grassmannian(d, k, F);
                CHECK(all.size() == gaussian_binomial(d, k, q));
                CHECK(all.size() == oracles::count_subspaces_bases(q, d, k));
                CHECK(std::is_sorted(all.begin(), all.end()));
                CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());

                // brute-force span dedup where the matrix space is small
                std::uint64_t mats = 1;
                for (std::uint32_t i = 0; i < k * d; ++i) mats *= q;
                if (mats <= 7000)
                    CHECK(all.size() == oracles::count_subspaces_brute(F, d, k));
            }
        }
    }
}

TEST_CASE("enumerated bases are canonical RREF") {
    auto F = make_field(3, 1);
    for (const Subspace& V : enumerate_grassmannian(3, 2, F)) {
        const RrefResult r = rref(*F, V.d, V.rows);
        CHECK(r.rank == V.k);
        CHECK(r.rows == V.rows);
        CHECK(r.pivots == V.pivots);
        CHECK(std::is_sorted(V.pivots.begin(), V.pivots.end()));
    }
}

TEST_CASE("from_rows canonicalizes and rejects dependent rows") {
    auto F = make_field(5, 1);
    const Subspace a = Subspace::from_rows(F, 3, {2, 4, 0, 0, 0, 3});
    const Subspace b = Subspace::from_rows(F, 3, {1, 2, 0, 4, 3, 1});
    CHECK(a == b); // same row space, same canonical form
    CHECK_THROWS_AS(Subspace::from_rows(F, 3, {1, 2, 3, 2, 4, 1}), Error);
    CHECK_THROWS_AS(Subspace::from_rows(F, 3, {0, 0, 0}), Error);
    CHECK_THROWS_AS(Subspace::from_rows(F, 3, {1, 2, 7}), Error);
}

TEST_CASE("membership") {
    auto F = make_field(3, 1);
    const Subspace V = Subspace::from_rows(F, 3, {1, 0, 2, 0, 1, 1});
    CHECK(V.contains(Point{1, 0, 2}));
    CHECK(V.contains(Point{1, 1, 0})); // sum of the rows
    CHECK(V.contains(Point{0, 0, 0}));
    CHECK(!V.contains(Point{1, 0, 0}));
    CHECK_THROWS_AS(V.contains(Point{1, 0}), Error);
}

TEST_CASE("perp is an orthogonal complement and an involution") {
    for (auto [p, n, d] : std::vector<std::array<std::uint32_t, 3>>{
             {2, 1, 4}, {3, 1, 3}, {5, 1, 3}, {2, 2, 3}, {3, 2, 2}}) {
        auto F = make_field(p, n);
        for (std::uint32_t k = 1; k < d; ++k) {
            for (const Subspace& V : enumerate_grassmannian(d, k, F)) {
                const Subspace W = perp(V);
                CHECK(W.k == d - k);
                for (std::uint32_t i = 0; i < V.k; ++i)
                    for (std::uint32_t j = 0; j < W.k; ++j)
                        CHECK(dot(*F, V.row(i), W.row(j)) == 0);
                CHECK(perp(W) == V);
            }
        }
    }
}

TEST_CASE("stabbing count over the full Grassmannian is |G(d-1,k)|") {
    for (auto [p, n, d] : std::vector<std::array<std::uint32_t, 3>>{
             {2, 1, 3}, {3, 1, 3}, {2, 1, 4}, {2, 2, 2}, {5, 1, 2}}) {
        auto F = make_field(p, n);
        for (std::uint32_t k = 1; k < d; ++k) {
            const auto gamma = enumerate_grassmannian(d, k, F);
            const std::uint64_t expect = gaussian_binomial(d - 1, k, F->q());
            for (std::uint64_t idx = 1; idx < grid_size(*F, d); ++idx) {
                const Point xi = decode_point(*F, d, idx);
                CHECK(stabbing_count(*F, xi, gamma) == expect);
            }
            CHECK_THROWS_AS(stabbing_count(*F, Point(d, 0), gamma), Error);
        }
    }
}

TEST_CASE("subspace points enumerate the whole subspace once") {
    auto F = make_field(3, 1);
    for (const Subspace& V : enumerate_grassmannian(3, 2, F)) {
        auto pts = subspace_points(V);
        CHECK(pts.size() == 9);
        std::vector<std::uint64_t> enc;
        for (const Point& pt : pts) {
            CHECK(V.contains(pt));
            enc.push_back(encode_point(*F, pt));
        }
        std::sort(enc.begin(), enc.end());
        CHECK(std::adjacent_find(enc.begin(), enc.end()) == enc.end());
    }
}

TEST_CASE("enumeration dimension and cap errors") {
    auto F = make_field(3, 1);
    CHECK_THROWS_AS(enumerate_grassmannian(3, 0, F), Error);
    CHECK_THROWS_AS(enumerate_grassmannian(3, 3, F), Error);
    CHECK_THROWS_AS(enumerate_grassmannian(0, 1, F), Error);
    try {
        enumerate_grassmannian(3, 1, F, 5); // 13 subspaces > cap 5
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooManySubspaces);
    }
}
