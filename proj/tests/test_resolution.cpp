#include <doctest.h>

#include "crosscalc/calculus.hpp"
#include "crosscalc/errors.hpp"
#include "crosscalc/pmod.hpp"
#include "crosscalc/resolution.hpp"

using namespace crosscalc;

namespace {

const char* nonexample_text = R"(pmod: 1
field: 2
grid: [1,1,1]
dims:
  1,1,0 = 1
  1,0,1 = 1
  0,1,1 = 1
  1,1,1 = 2
maps:
  1,1,0<1,1,1 = 2x1 [0; 1]
  1,0,1<1,1,1 = 2x1 [1; 0]
  0,1,1<1,1,1 = 2x1 [1; 1]
)";

}  // namespace

TEST_SUITE("resolution") {
    TEST_CASE("corner module has the Koszul resolution") {
        auto l = Lattice::grid({1, 1});
        const auto m = interval_module(l, Field(2), std::vector<Element>{l->at("0,0")});
        const auto b = betti(m);
        CHECK(b.at(l->at("0,0"), 0) == 1);
        CHECK(b.at(l->at("1,0"), 1) == 1);
        CHECK(b.at(l->at("0,1"), 1) == 1);
        CHECK(b.at(l->at("1,1"), 2) == 1);
        CHECK(b.total(0) == 1);
        CHECK(b.total(1) == 2);
        CHECK(b.total(2) == 1);
        CHECK(pdim(m) == 2);
        CHECK(injective_dimension(m) == 0);
    }

    TEST_CASE("free and zero modules") {
        auto l = Lattice::grid({2, 2});
        const std::vector<Generator> gens = {{l->at("1,0"), 1}, {l->at("0,2"), 2}};
        const auto m = free_module(l, Field(3), gens);
        const auto b = betti(m);
        CHECK(b.at(l->at("1,0"), 0) == 1);
        CHECK(b.at(l->at("0,2"), 0) == 2);
        CHECK(b.total(0) == 3);
        CHECK(b.total(1) == 0);
        CHECK(b.total(2) == 0);
        CHECK(pdim(m) == 0);
        CHECK(pdim(PersistenceModule::zero(l, Field(2))) == -1);
        CHECK(b.max_degree() == 0);
    }

    TEST_CASE("non-example over {0,1}^3") {
        const auto m = parse_pmod(nonexample_text);
        const auto& l = m.lattice();
        const auto b = betti(m);
        for (Element a : l.parents(l.top())) CHECK(b.at(a, 0) == 1);
        CHECK(b.at(l.top(), 0) == 0);
        CHECK(b.at(l.top(), 1) == 1);
        CHECK(pdim(m) == 1);
        CHECK(min_degree(m) == 1);
        CHECK(min_cross_degree(m) == 0);
        const auto r = check_pdim_theorem_2(m, 2);
        CHECK_FALSE(r.hypothesis_holds);
        CHECK_FALSE(r.conditions[0]);
        CHECK(r.conditions[1]);
        const auto r3 = check_pdim_theorem_2(m);
        CHECK(r3.n == 3);
        CHECK(r3.consistent());
    }

    TEST_CASE("alternating Betti sums recover dimensions") {
        for (auto ext : std::vector<std::vector<std::size_t>>{{2, 2}, {1, 1, 1}, {3, 1}}) {
            auto l = Lattice::grid(ext);
            for (std::uint64_t s = 0; s < 20; ++s) {
                const auto m = random_module(l, Field(s % 2 ? 3 : 2), s);
                const auto b = betti(m);
                for (Element x = 0; x < l->size(); ++x) {
                    long long chi = 0;
                    for (Element a = 0; a < l->size(); ++a)
                        if (l->leq(a, x))
                            for (std::size_t i = 0; i < b.row(a).size(); ++i)
                                chi += (i % 2 ? -1 : 1) * static_cast<long long>(b.at(a, i));
                    CHECK(chi == static_cast<long long>(m.dim(x)));
                }
            }
        }
    }

    TEST_CASE("theorem reports on random modules") {
        auto l = Lattice::grid({2, 2});
        for (std::uint64_t s = 0; s < 40; ++s) {
            const auto m = random_module(l, Field(2), 77 + s);
            const auto r1 = check_pdim_theorem_1(m);
            const auto r2 = check_pdim_theorem_2(m);
            CHECK(r1.consistent());
            CHECK(r2.consistent());
            CHECK(r1.conditions[0] == (pdim(m) <= 1));
            CHECK(r2.conditions[0] == (pdim(m) <= 0));
            CHECK_FALSE(r1.describe().empty());
        }
        const auto m = random_module(l, Field(2), 1);
        CHECK_THROWS_AS(check_pdim_theorem_1(m, 0), UnsupportedDimension);
        CHECK_THROWS_AS(check_pdim_theorem_2(m, 1), UnsupportedDimension);
        CHECK_THROWS_AS(check_pdim_theorem_2(random_module(Lattice::grid({3}), Field(2), 1)), UnsupportedDimension);
    }

    TEST_CASE("injective Betti numbers are dual Betti numbers") {
        auto l = Lattice::grid({1, 2});
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto m = random_module(l, Field(2), s);
            const auto ib = injective_betti(m);
            const auto db = betti(dual_module(m));
            for (Element a = 0; a < l->size(); ++a) CHECK(ib.row(a) == db.row(a));
            CHECK(injective_dimension(m) == pdim(dual_module(m)));
        }
    }
}
