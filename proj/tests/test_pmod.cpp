#include <doctest.h>

#include <fstream>
#include <sstream>

#include "crosscalc/errors.hpp"
#include "crosscalc/pmod.hpp"

using namespace crosscalc;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_pmod(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("pmod") {
    TEST_CASE("round trip is exact") {
        for (auto ext : std::vector<std::vector<std::size_t>>{{2, 2}, {1, 1, 1}, {4}}) {
            auto l = Lattice::grid(ext);
            for (std::uint64_t s = 0; s < 10; ++s) {
                const auto m = random_module(l, Field(s % 2 ? 5 : 2), s);
                const auto text = print_pmod(m);
                const auto back = parse_pmod(text);
                CHECK(back == m);
                CHECK(print_pmod(back) == text);
            }
        }
    }

    TEST_CASE("explicit elements and covers") {
        const auto m = parse_pmod(R"(pmod: 1
field: 3
elements: o a b t
covers: o<a o<b a<t b<t
dims:
  a = 1
  b = 1
  t = 2
maps:
  a<t = 2x1 [1; 0]
  b<t = 2x1 [0; 1]
)");
        const auto& l = m.lattice();
        CHECK(l.size() == 4);
        CHECK(m.dim(l.at("t")) == 2);
        CHECK(m.dim(l.at("o")) == 0);
        CHECK(parse_pmod(print_pmod(m)) == m);
    }

    TEST_CASE("fixtures parse") {
        for (const char* name : {"corner.pmod", "nonexample.pmod", "free.pmod"}) {
            std::ifstream in(std::string(CROSSCALC_FIXTURE_DIR) + "/" + name);
            REQUIRE(in.good());
            const auto m = parse_pmod(in);
            CHECK(m.total_dim() > 0);
        }
    }

    TEST_CASE("field override reduces entries") {
        const auto m = parse_pmod("pmod: 1\nfield: 5\ngrid: [1]\ndims:\n  0 = 1\n  1 = 1\nmaps:\n  0<1 = 1x1 [3]\n",
                                  PmodOptions{3, true});
        CHECK(m.field().p() == 3);
        CHECK(m.cover_map(0)(0, 0) == 0);
        const auto d = parse_pmod("pmod: 1\ngrid: [1]\ndims:\n  0 = 1\n  1 = 1\nmaps:\n  0<1 = 1x1 [-1]\n");
        CHECK(d.field().p() == 2);
        CHECK(d.cover_map(0)(0, 0) == 1);
    }

    TEST_CASE("matrix syntax") {
        Field f(7);
        const auto m = parse_matrix("2x3 [1 2 3; 4 5 -1]", f);
        CHECK(m.rows() == 2);
        CHECK(m(1, 2) == 6);
        CHECK(format_matrix(m) == "2x3 [1 2 3; 4 5 6]");
        CHECK(parse_matrix(format_matrix(Matrix(f, 0, 2)), f) == Matrix(f, 0, 2));
        CHECK_THROWS_AS(parse_matrix("2x2 [1 2; 3]", f), ParseError);
        CHECK_THROWS_AS(parse_matrix("2x2 1 2 3 4", f), ParseError);
    }

    TEST_CASE("errors") {
        const std::string head = "pmod: 1\ngrid: [1,1]\n";
        CHECK(error_of(head + "colour: red\n").find("colour") != std::string::npos);
        CHECK(error_of("pmod: 1\ngrid: [1]\ngrid: [1]\n").find("grid") != std::string::npos);
        CHECK_FALSE(error_of(head + "dims:\n  0,0 = 1\n  1,1 = 1\nmaps:\n  0,0<1,1 = 1x1 [1]\n").empty());
        const auto shape = error_of(head + "dims:\n  0,0 = 1\n  1,0 = 1\nmaps:\n  0,0<1,0 = 2x1 [1; 1]\n");
        CHECK(shape.find("0,0<1,0") != std::string::npos);
        CHECK_FALSE(error_of(head + "dims:\n  0,0 = 1\n  1,0 = 1\nmaps:\n").empty());
        CHECK_FALSE(error_of(head + "dims:\n  2,2 = 1\n").empty());
        CHECK_FALSE(error_of("pmod: 2\ngrid: [1]\n").empty());
        CHECK_FALSE(error_of("pmod: 1\nelements: a:b c\ncovers: a:b<c\n").empty());
        CHECK_THROWS_AS(parse_pmod(head + "colour: red\n"), ParseError);
        CHECK_THROWS_AS(parse_pmod("pmod: 1\nelements: 0 a b c 1\ncovers: 0<a 0<b 0<c a<1 b<1 c<1\n"),
                        NotDistributive);
        const std::string square = head +
                                   "dims:\n  0,0 = 1\n  1,0 = 1\n  0,1 = 1\n  1,1 = 1\nmaps:\n"
                                   "  0,0<1,0 = 1x1 [1]\n  0,0<0,1 = 1x1 [1]\n  1,0<1,1 = 1x1 [1]\n  0,1<1,1 = 1x1 [0]\n";
        CHECK_THROWS_AS(parse_pmod(square), NonCommutingSquare);
        CHECK_NOTHROW(parse_pmod(square, PmodOptions{std::nullopt, false}));
    }
}
