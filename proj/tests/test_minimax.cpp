#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ffsalem/errors.hpp"
#include "ffsalem/fourier.hpp"
#include "ffsalem/minimax.hpp"
#include "ffsalem/salem.hpp"

using namespace ffsalem;

TEST_CASE("full grid admits a flat measure, single point forces a delta") {
    auto F = make_field(3, 1);

    const MinimaxResult flat = minimax_measure(PointSet::full(F, 2));
    CHECK(flat.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(flat.converged);
    CHECK(flat.iterations == 0); // cold start is already optimal
    CHECK(flat.certified_lower == 0.0);

    PointSet one(F, 2);
    one.insert(4);
    const MinimaxResult delta = minimax_measure(one);
    CHECK(delta.value == doctest::Approx(1.0));
    CHECK(delta.certified_lower == doctest::Approx(1.0));
    CHECK(delta.converged);
    CHECK(delta.measure.support_size() == 1);
}

TEST_CASE("optimizer value sits between the support floor and the warm start") {
    auto F = make_field(5, 1);
    const AffinePlaneFamily fam = construct_mt_kakeya_2d(F);
    const PointSet K = expand(fam);
    const Measure inc = incidence_measure(fam);

    MinimaxOptions opts;
    opts.warm_start = &inc;
    opts.max_iters = 4000;
    const MinimaxResult r = minimax_measure(K, opts);

    CHECK(r.certified_lower == doctest::Approx(min_sup_lower_bound(17, *F, 2)));
    CHECK(r.value >= r.certified_lower - 1e-12);
    CHECK(r.value <= 1.0 / 6 + 1e-12); // never worse than the starting measure
    CHECK(r.gap == doctest::Approx(r.value - r.certified_lower).epsilon(1e-15));
    CHECK(r.kappa_effective == doctest::Approx(r.value * 5).epsilon(1e-15));

    // reported value is the sup of the reported measure
    const auto [sup, arg] = sup_nonzero(dft_fast(r.measure.grid));
    (void)arg;
    CHECK(sup == doctest::Approx(r.value).epsilon(1e-12));

    // mass stays inside K
    for (std::uint64_t i = 0; i < r.measure.size(); ++i)
        if (r.measure.weight(i) > 0) CHECK(K.test(i));
}

TEST_CASE("iterates stay on the simplex") {
    auto F = make_field(3, 1);
    const PointSet K = expand(construct_mt_kakeya_2d(F));

    std::size_t calls = 0;
    double min_obj = 1e30;
    MinimaxOptions opts;
    opts.max_iters = 150;
    opts.tol = 0.0;
    opts.on_iterate = [&](std::size_t iter, std::span<const double> w, double obj) {
        CHECK(iter == calls);
        ++calls;
        double sum = 0;
        for (double x : w) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        min_obj = std::min(min_obj, obj);
    };
    const MinimaxResult r = minimax_measure(K, opts);
    CHECK(calls == 150);
    CHECK(r.iterations == 150);
    CHECK(!r.converged);
    CHECK(r.value <= min_obj + 1e-15); // best iterate also sees the final step
}

TEST_CASE("objective is convex in the weights") {
    auto F = make_field(3, 1);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto sup_of = [&](const std::vector<double>& w) {
        GridFunction g(F, 2);
        for (std::size_t i = 0; i < 9; ++i) g.values[i] = w[i];
        return sup_nonzero(dft_fast(g)).first;
    };
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<double> a(9), b(9);
        double sa = 0, sb = 0;
        for (std::size_t i = 0; i < 9; ++i) {
            a[i] = uni(rng);
            b[i] = uni(rng);
            sa += a[i];
            sb += b[i];
        }
        for (std::size_t i = 0; i < 9; ++i) {
            a[i] /= sa;
            b[i] /= sb;
        }
        const double lam = uni(rng);
        std::vector<double> m(9);
        for (std::size_t i = 0; i < 9; ++i) m[i] = lam * a[i] + (1 - lam) * b[i];
        CHECK(sup_of(m) <= lam * sup_of(a) + (1 - lam) * sup_of(b) + 1e-12);
    }
}

TEST_CASE("warm start is used verbatim") {
    auto F = make_field(3, 1);
    const AffinePlaneFamily fam = construct_mt_kakeya_2d(F);
    const PointSet K = expand(fam);
    const Measure inc = incidence_measure(fam);

    MinimaxOptions opts;
    opts.warm_start = &inc;
    opts.max_iters = 0;
    const MinimaxResult r = minimax_measure(K, opts);
    CHECK(r.iterations == 0);
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12)); // sup of the incidence measure
}

TEST_CASE("warm start must live on the set and the grid") {
    auto F = make_field(3, 1);
    const PointSet K = expand(construct_mt_kakeya_2d(F));

    const Measure outside = Measure::point_mass(F, 2, 7); // (1,2) is not in K
    MinimaxOptions opts;
    opts.warm_start = &outside;
    CHECK_THROWS_AS(minimax_measure(K, opts), Error);

    const Measure wrong_d = Measure::uniform(F, 3);
    opts.warm_start = &wrong_d;
    CHECK_THROWS_AS(minimax_measure(K, opts), Error);

    auto F2 = make_field(3, 1);
    const Measure other_field = Measure::uniform(F2, 2);
    opts.warm_start = &other_field;
    CHECK_THROWS_AS(minimax_measure(K, opts), Error);
}

TEST_CASE("size guards") {
    auto F3 = make_field(3, 1);
    CHECK_THROWS_AS(minimax_measure(PointSet(F3, 2)), Error); // empty support

    auto F5 = make_field(5, 1);
    PointSet big(F5, 5); // 3125 cells, above the dense-iteration limit
    big.insert(0);
    CHECK_THROWS_AS(minimax_measure(big), Error);
}

TEST_CASE("seeded starts are reproducible") {
    auto F = make_field(3, 1);
    const PointSet K = expand(construct_mt_kakeya_2d(F));
    MinimaxOptions opts;
    opts.seed = 5;
    opts.max_iters = 60;
    opts.tol = 0.0;
    const MinimaxResult a = minimax_measure(K, opts);
    const MinimaxResult b = minimax_measure(K, opts);
    CHECK(a.value == b.value);
    CHECK(a.measure.grid.values == b.measure.grid.values);
    opts.seed = 6;
    const MinimaxResult c = minimax_measure(K, opts);
    CHECK(c.value >= c.certified_lower - 1e-12);
}

TEST_CASE("sharpness window for the planar construction") {
    auto F = make_field(5, 1);
    const PointSet K0 = expand(construct_mt_kakeya_2d(F));

    MinimaxOptions opts;
    opts.max_iters = 300;

    const SharpnessReport flat = sharpness_report(K0, 2, opts);
    CHECK(flat.q == 5);
    CHECK(flat.d == 2);
    CHECK(flat.k0_size == 17);
    CHECK(flat.k_size == 17);
    CHECK(flat.c == doctest::Approx(17.0 / 25));
    CHECK(flat.lower_bound == doctest::Approx(std::sqrt(8.0 / 17.0) / 5).epsilon(1e-12));
    CHECK(flat.upper_bound == doctest::Approx(0.2));
    CHECK(flat.incidence_sup <= 1.0 / 6 + 1e-9);
    CHECK(flat.in_window);
    CHECK(flat.projection_defect == 0.0);

    const SharpnessReport cube = sharpness_report(K0, 3, opts);
    CHECK(cube.k_size == 85);
    CHECK(cube.v_star >= cube.lower_bound - 1e-3);
    CHECK(cube.v_star <= cube.upper_bound + 1e-3);
    CHECK(cube.in_window);
    CHECK(cube.projection_defect <= 1e-10);
    CHECK(cube.kappa_effective == doctest::Approx(cube.v_star * 5).epsilon(1e-15));
}

TEST_CASE("sharpness rejects non-planar and non-covering sets") {
    auto F = make_field(3, 1);
    PointSet axis(F, 2);
    for (elem_t x = 0; x < 3; ++x) axis.insert_point(Point{x, 0});
    CHECK_THROWS_AS(sharpness_report(axis, 3), Error);

    const PointSet cube = PointSet::full(F, 3);
    CHECK_THROWS_AS(sharpness_report(cube, 3), Error);
}
