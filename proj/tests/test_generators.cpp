#include <doctest.h>

#include <sstream>

#include "crosscalc/calculus.hpp"
#include "crosscalc/errors.hpp"
#include "crosscalc/generators.hpp"
#include "crosscalc/resolution.hpp"

using namespace crosscalc;

TEST_SUITE("generators") {
    TEST_CASE("image CSV parsing") {
        std::istringstream in("# ring\n3,3,1,1\n0,0,0\n0,1,0\n\n0,0,0\n");
        const auto img = parse_image_csv(in);
        CHECK(img.width == 3);
        CHECK(img.at(0, 1, 1) == 1);
        CHECK(img.at(0, 2, 2) == 0);
        std::istringstream ragged("3,3,1,1\n0,0\n0,1,0\n0,0,0\n");
        CHECK_THROWS_AS(parse_image_csv(ragged), ParseError);
        std::istringstream range("2,1,1,1\n0,5\n");
        CHECK_THROWS_AS(parse_image_csv(range), ParseError);
        std::istringstream header("2,1,1\n0,0\n");
        CHECK_THROWS_AS(parse_image_csv(header), ParseError);
    }

    TEST_CASE("a ring image has one loop below the centre value") {
        std::istringstream in("3,3,1,1\n0,0,0\n0,1,0\n0,0,0\n");
        const auto img = parse_image_csv(in);
        const auto h1 = image_bifiltration_homology(img, 1, Field(2));
        const auto h0 = image_bifiltration_homology(img, 0, Field(2));
        CHECK(h1.module.dims() == std::vector<std::size_t>{1, 0});
        CHECK(h0.module.dims() == std::vector<std::size_t>{1, 1});
        CHECK(h1.one_critical == true);
        CHECK_THROWS_AS(image_bifiltration_homology(img, 2, Field(2)), UnsupportedDimension);
    }

    TEST_CASE("two-channel images") {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto img = random_peaked_image(5, 5, 2, 2, s);
            validate_image(img);
            const auto cx = cubical_complex(img);
            CHECK(cx.cells[0].size() == 25);
            CHECK(cx.cells[1].size() == 40);
            CHECK(cx.cells[2].size() == 16);
            const auto h1 = image_bifiltration_homology(img, 1, Field(2));
            CHECK(h1.module.lattice().size() == 9);
            CHECK(sublevel_meets_are_intersections(cx, h1.module.lattice()));
            CHECK_FALSE(validate_functor(h1.module).has_value());
            CHECK(pdim(h1.module) <= 1);
            CHECK(min_cross_degree(h1.module) <= 1);
            CHECK(random_peaked_image(5, 5, 2, 2, s).values == img.values);
        }
    }

    TEST_CASE("sublevel Rips H0 on two clusters") {
        MetricFunctionSpace sp;
        sp.distances = {{0, 1, 5, 5}, {1, 0, 5, 5}, {5, 5, 0, 1}, {5, 5, 1, 0}};
        sp.values = {0, 0, 0, 1};
        sp.a_thresholds = {0, 1};
        sp.r_thresholds = {0.5, 1, 6};
        const auto g = sublevel_rips_h0(sp, Field(2));
        const auto& l = g.module.lattice();
        CHECK(g.module.dim(l.at("0,0")) == 3);
        CHECK(g.module.dim(l.at("0,1")) == 2);
        CHECK(g.module.dim(l.at("0,2")) == 1);
        CHECK(g.module.dim(l.at("1,0")) == 4);
        CHECK(g.module.dim(l.at("1,1")) == 2);
        CHECK(g.module.dim(l.at("1,2")) == 1);
        CHECK_FALSE(g.one_critical.has_value());
        CHECK_FALSE(onecritical_check(g).has_value());
        CHECK_FALSE(validate_functor(g.module).has_value());
        CHECK(min_cross_codegree(g.module) <= 1);
    }

    TEST_CASE("metric space validation") {
        MetricFunctionSpace sp;
        sp.distances = {{0, 1}, {2, 0}};
        sp.values = {0, 0};
        sp.a_thresholds = {0};
        sp.r_thresholds = {1};
        CHECK_THROWS_AS(validate_metric_space(sp), InvalidArgument);
        sp.distances = {{0, 1}, {1, 0}};
        sp.r_thresholds = {1, 1};
        CHECK_THROWS_AS(validate_metric_space(sp), InvalidArgument);
        std::istringstream d("0,2\n2,0\n"), v("0.5,1.5\n");
        const auto parsed = parse_metric_csv(d, v, {1, 2}, {1, 3});
        CHECK(parsed.distances[0][1] == 2);
        CHECK(parsed.values[1] == 1.5);
    }

    TEST_CASE("random metric spaces") {
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto sp = random_metric_space(6, 3, 3, s);
            validate_metric_space(sp);
            CHECK(sp.a_thresholds.size() == 3);
            const auto g = sublevel_rips_h0(sp, Field(2));
            CHECK(g.module.lattice().size() == 9);
            CHECK(g.module.dim(g.module.lattice().top()) >= 1);
            CHECK(min_cross_codegree(g.module) <= 1);
        }
    }
}
