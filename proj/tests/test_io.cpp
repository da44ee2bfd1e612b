#include <doctest.h>

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "ffsalem/errors.hpp"
#include "ffsalem/io.hpp"

using namespace ffsalem;

namespace {

template <class T, class W>
std::string to_text(const T& obj, W writer) {
    std::ostringstream ss;
    writer(ss, obj);
    return ss.str();
}

} // namespace

TEST_CASE("double formatting survives a round trip") {
    for (double v : {0.0, 1.0 / 3, -2.0 / 7, 1e-15, 0.1, 123456.789, -0.25}) {
        CHECK(std::stod(fmt_double(v)) == v);
    }
}

TEST_CASE("point set round trip") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 1}, {3, 2}}) {
        auto F = make_field(p, n);
        const PointSet K = expand(construct_mt_kakeya_2d(F));
        const std::string text = to_text(K, write_point_set);
        CHECK(text == to_text(K, write_point_set)); // deterministic

        std::istringstream is(text);
        const PointSet back = read_point_set(is);
        CHECK(back.field()->q() == F->q());
        CHECK(back.dim() == 2);
        CHECK(back.members() == K.members());
    }
}

TEST_CASE("point set reader skips comments and rejects bad rows") {
    std::istringstream ok("# produced by hand\n\nq=3 d=2\n0,1\n# interior comment\n2,2\n");
    const PointSet s = read_point_set(ok);
    CHECK(s.cardinality() == 2);
    CHECK(s.test(3));
    CHECK(s.test(8));

    std::istringstream no_header("0,1\n");
    CHECK_THROWS_AS(read_point_set(no_header), Error);
    std::istringstream bad_coord("q=3 d=2\n0,3\n");
    CHECK_THROWS_AS(read_point_set(bad_coord), Error);
    std::istringstream bad_arity("q=3 d=2\n0,1,2\n");
    CHECK_THROWS_AS(read_point_set(bad_arity), Error);
    std::istringstream stray("q=3 d=2 extra\n");
    CHECK_THROWS_AS(read_point_set(stray), Error);
}

TEST_CASE("family round trip keeps directions and shifts") {
    auto F = make_field(5, 1);
    const AffinePlaneFamily fam = construct_mt_kakeya_2d(F);
    const std::string text = to_text(fam, write_family);
    CHECK(text == to_text(fam, write_family));

    std::istringstream is(text);
    const AffinePlaneFamily back = read_family(is);
    CHECK(back.d == 2);
    CHECK(back.k == 1);
    REQUIRE(back.size() == fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i) {
        CHECK(back.planes[i].V == fam.planes[i].V);
        CHECK(back.planes[i].shift == fam.planes[i].shift);
    }
}

TEST_CASE("family files without shift rows mean zero shifts") {
    std::istringstream is("q=3 d=3 k=2\n1,0,0\n0,1,0\n\n1,0,2\n0,1,1\n");
    const AffinePlaneFamily fam = read_family(is);
    REQUIRE(fam.size() == 2);
    CHECK(fam.k == 2);
    for (const AffinePlane& pl : fam.planes) CHECK(pl.shift == Point{0, 0, 0});
}

TEST_CASE("family reader rejects malformed input") {
    std::istringstream no_k("q=3 d=2\n0,1\n");
    CHECK_THROWS_AS(read_family(no_k), Error);
    std::istringstream shift_first("q=3 d=2 k=1\nu=1,1\n0,1\n");
    CHECK_THROWS_AS(read_family(shift_first), Error);
    std::istringstream short_plane("q=3 d=3 k=2\n1,0,0\n");
    CHECK_THROWS_AS(read_family(short_plane), Error);
    std::istringstream dependent("q=3 d=3 k=2\n1,0,0\n2,0,0\n");
    CHECK_THROWS_AS(read_family(dependent), Error);
    std::istringstream dup("q=3 d=2 k=1\n0,1\n\n0,2\n");
    CHECK_THROWS_AS(read_family(dup), Error);
}

TEST_CASE("grid round trip is bit exact") {
    auto F = make_field(3, 1);
    GridFunction g(F, 2);
    g.values[0] = {1.0 / 3, -2.0 / 7};
    g.values[4] = {-1e-15, 3.25};
    g.values[8] = {0.1, 123456.789};

    const std::string text = to_text(g, write_grid);
    std::istringstream is(text);
    const GridFunction back = read_grid(is);
    CHECK(back.d == 2);
    CHECK(back.values == g.values);

    std::istringstream no_header("index,re,im\n0,1,0\n");
    CHECK_THROWS_AS(read_grid(no_header), Error);
    std::istringstream bad_index("# q=3 d=2\nindex,re,im\n9,1,0\n");
    CHECK_THROWS_AS(read_grid(bad_index), Error);
    std::istringstream bad_value("# q=3 d=2\nindex,re,im\n0,one,0\n");
    CHECK_THROWS_AS(read_grid(bad_value), Error);
}

TEST_CASE("exact measures round trip through a/b weights") {
    auto F = make_field(5, 1);
    const Measure mu = incidence_measure(construct_mt_kakeya_2d(F));
    const std::string text = to_text(mu, write_measure);
    CHECK(text.find("/30") != std::string::npos);

    std::istringstream is(text);
    const Measure back = read_measure(is);
    REQUIRE(back.exact.has_value());
    CHECK(back.exact->den == mu.exact->den);
    CHECK(back.exact->num == mu.exact->num);
    CHECK(back.support_size() == 17);
}

TEST_CASE("float measures round trip through decimal weights") {
    auto F = make_field(3, 1);
    GridFunction g(F, 2);
    g.values[2] = 0.25;
    g.values[7] = 0.75;
    const Measure mu = Measure::from_grid(std::move(g));
    CHECK(!mu.exact.has_value());

    std::istringstream is(to_text(mu, write_measure));
    const Measure back = read_measure(is);
    CHECK(!back.exact.has_value());
    CHECK(back.grid.values == mu.grid.values);
}

TEST_CASE("measure reader rejects malformed input") {
    std::istringstream mixed("# q=3 d=2\nindex,weight\n0,1/2\n1,1/3\n");
    CHECK_THROWS_AS(read_measure(mixed), Error);
    std::istringstream zero_den("# q=3 d=2\nindex,weight\n0,1/0\n");
    CHECK_THROWS_AS(read_measure(zero_den), Error);
    std::istringstream out_of_range("# q=3 d=2\nindex,weight\n9,1/1\n");
    CHECK_THROWS_AS(read_measure(out_of_range), Error);
    std::istringstream not_prob("# q=3 d=2\nindex,weight\n0,2/3\n");
    CHECK_THROWS_AS(read_measure(not_prob), Error);
}

TEST_CASE("bound report serializes every field") {
    auto F = make_field(3, 1);
    const BoundReport r = analyze_family(construct_mt_kakeya_2d(F));
    const nlohmann::json j = nlohmann::json::parse(bound_report_json(r));
    CHECK(j.size() == 15);
    for (const char* key : {"q", "p", "n", "d", "k", "gamma_size", "support_size", "sup_value",
                            "sup_argmax", "tight_bound", "weak_bound", "lowerb1", "sizeest",
                            "salem_constant", "pass"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["q"] == 3);
    CHECK(j["k"] == 1);
    CHECK(j["gamma_size"] == 4);
    CHECK(j["support_size"] == 7);
    CHECK(j["sup_value"].get<double>() == doctest::Approx(0.25));
    CHECK(j["pass"] == true);
}

TEST_CASE("optimizer and sharpness reports serialize") {
    auto F = make_field(3, 1);
    const PointSet K = expand(construct_mt_kakeya_2d(F));
    MinimaxOptions opts;
    opts.max_iters = 40;
    const MinimaxResult res = minimax_measure(K, opts);
    const nlohmann::json j = nlohmann::json::parse(minimax_report_json(res, *F, 2));
    CHECK(j["q"] == 3);
    CHECK(j["v_star"].get<double>() == doctest::Approx(res.value));
    CHECK(j.contains("converged"));

    const SharpnessReport rep = sharpness_report(K, 2, opts);
    const nlohmann::json s = nlohmann::json::parse(sharpness_report_json(rep));
    CHECK(s["d"] == 2);
    CHECK(s["k0_size"] == 7);
    CHECK(s.contains("in_window"));
    CHECK(s.contains("projection_defect"));
}

TEST_CASE("file helpers") {
    const std::string path = "/tmp/ffsalem_io_test.txt";
    save_text(path, "payload\n");
    CHECK(load_text(path) == "payload\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_text("/tmp/ffsalem_does_not_exist_7431"), Error);
    CHECK_THROWS_AS(save_text("/tmp/no_such_dir_7431/x.txt", "x"), Error);

    auto F = make_field(3, 1);
    const PointSet K = expand(construct_mt_kakeya_2d(F));
    const std::string set_path = "/tmp/ffsalem_io_test.set";
    save_point_set(set_path, K);
    CHECK(load_point_set(set_path).members() == K.members());
    std::remove(set_path.c_str());
}
