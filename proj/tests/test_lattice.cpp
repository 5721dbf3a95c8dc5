#include <doctest.h>

#include <utility>

#include "crosscalc/errors.hpp"
#include "crosscalc/lattice.hpp"
#include "oracles.hpp"

using namespace crosscalc;

namespace {

using Rel = std::pair<std::string, std::string>;

}  // namespace

TEST_SUITE("lattice") {
    TEST_CASE("grid structure") {
        auto l = Lattice::grid({2, 1});
        CHECK(l->size() == 6);
        CHECK(l->name(l->bottom()) == "0,0");
        CHECK(l->name(l->top()) == "2,1");
        CHECK(l->dimension() == 2);
        CHECK(l->join(l->at("2,0"), l->at("0,1")) == l->at("2,1"));
        CHECK(l->meet(l->at("1,1"), l->at("2,0")) == l->at("1,0"));
        CHECK(l->covers().size() == 7);
        CHECK(l->jdim(l->at("1,1")) == 2);
        CHECK(l->mdim(l->at("1,0")) == 2);
        CHECK(l->mdim(l->at("1,1")) == 1);
        CHECK(l->jdim(l->at("2,0")) == 1);
        CHECK_THROWS_AS((void)l->at("3,0"), UnknownElement);
    }

    TEST_CASE("boolean lattice numbering is by bitmask") {
        auto l = Lattice::boolean(3);
        for (Element a = 0; a < 8; ++a)
            for (Element b = 0; b < 8; ++b) {
                CHECK(l->leq(a, b) == ((a & b) == a));
                CHECK(l->join(a, b) == (a | b));
                CHECK(l->meet(a, b) == (a & b));
            }
        CHECK(l->dimension() == 3);
    }

    TEST_CASE("jdim equals number of parents") {
        for (auto ext : std::vector<std::vector<std::size_t>>{{2, 2}, {1, 1, 1}, {3, 1}, {1, 2, 1}}) {
            auto l = Lattice::grid(ext);
            for (Element v = 0; v < l->size(); ++v) CHECK(l->jdim(v) == oracle::jdim_by_search(*l, v));
        }
        // divisors of 12
        const std::vector<std::string> names = {"1", "2", "3", "4", "6", "12"};
        const std::vector<Rel> rels = {{"1", "2"}, {"1", "3"}, {"2", "4"}, {"2", "6"},
                                       {"3", "6"}, {"4", "12"}, {"6", "12"}};
        auto l = Lattice::from_relations(names, rels);
        for (Element v = 0; v < l->size(); ++v) CHECK(l->jdim(v) == oracle::jdim_by_search(*l, v));
        CHECK(l->jdim(l->at("12")) == 2);
        CHECK(l->dimension() == 2);
    }

    TEST_CASE("rejects non-lattices") {
        const std::vector<std::string> m3 = {"0", "a", "b", "c", "1"};
        const std::vector<Rel> m3r = {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}};
        CHECK_THROWS_AS(Lattice::from_relations(m3, m3r), NotDistributive);
        const std::vector<std::string> n5 = {"0", "a", "b", "c", "1"};
        const std::vector<Rel> n5r = {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}};
        CHECK_THROWS_AS(Lattice::from_relations(n5, n5r), NotDistributive);
        const std::vector<std::string> v = {"a", "b", "t"};
        const std::vector<Rel> vr = {{"a", "t"}, {"b", "t"}};
        CHECK_THROWS_AS(Lattice::from_relations(v, vr), NoBottom);
        const std::vector<std::string> bowtie = {"0", "a", "b", "c", "d", "1"};
        const std::vector<Rel> br = {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"},
                                     {"b", "d"}, {"c", "1"}, {"d", "1"}};
        CHECK_THROWS_AS(Lattice::from_relations(bowtie, br), NotLattice);
        const std::vector<std::string> cyc = {"0", "a", "b"};
        const std::vector<Rel> cr = {{"0", "a"}, {"a", "b"}, {"b", "a"}};
        CHECK_FALSE(validate_lattice(cyc, cr).ok());
        CHECK(validate_lattice(cyc, cr).violation == LatticeViolation::not_a_poset);
        auto rep = validate_lattice(m3, m3r);
        CHECK(rep.violation == LatticeViolation::not_distributive);
        CHECK(rep.triple.has_value());
    }

    TEST_CASE("opposite lattice") {
        auto l = Lattice::grid({2, 1});
        auto op = l->opposite();
        for (Element a = 0; a < l->size(); ++a)
            for (Element b = 0; b < l->size(); ++b) CHECK(op->leq(a, b) == l->leq(b, a));
        CHECK(op->bottom() == l->top());
    }

    TEST_CASE("bicartesian cubes") {
        auto l = Lattice::grid({2, 2});
        std::size_t count = 0;
        for (const auto& c : enumerate_bicartesian_cubes(*l, 2)) {
            CHECK(is_strongly_bicartesian(*l, c));
            CHECK(cube_from_cover(*l, cover_of_cube(c)) == c);
            ++count;
        }
        CHECK(count > 0);
        CHECK(enumerate_bicartesian_cubes(*l, 3).size() > 0);
        for (Element a = 0; a < l->size(); ++a) {
            CHECK(is_strongly_bicartesian(*l, parent_cube(*l, a)));
            CHECK(is_strongly_bicartesian(*l, child_cube(*l, a)));
            CHECK(parent_cube(*l, a).top() == a);
            CHECK(child_cube(*l, a).bottom() == a);
        }
        const PairwiseCover bad{l->at("2,2"), {l->at("1,0"), l->at("0,1")}};
        CHECK_FALSE(is_pairwise_cover(*l, bad));
        CHECK_THROWS_AS(cube_from_cover(*l, bad), NotPairwiseCover);
    }

    TEST_CASE("non-degenerate 2-cubes of {0,1}^2") {
        auto l = Lattice::boolean(2);
        std::size_t full_square = 0;
        for (const auto& c : enumerate_bicartesian_cubes(*l, 2))
            if (c.bottom() == 0 && c.top() == 3 && c.at(1) != c.at(2) && c.at(1) != 3 && c.at(2) != 3) ++full_square;
        CHECK(full_square == 1);
    }
}
