#include <doctest.h>

#include <array>

#include "crosscalc/calculus.hpp"
#include "crosscalc/cube.hpp"
#include "crosscalc/errors.hpp"
#include "crosscalc/pmod.hpp"
#include "oracles.hpp"

using namespace crosscalc;

namespace {

struct Row {
    std::vector<const char*> support;
    std::array<std::size_t, 4> stats;  // degree, cross-degree, codegree, cross-codegree
};

const Row square_intervals[] = {
    {{"0,0"}, {2, 2, 1, 0}},
    {{"1,0"}, {2, 1, 2, 1}},
    {{"0,1"}, {2, 1, 2, 1}},
    {{"1,1"}, {1, 0, 2, 2}},
    {{"0,0", "1,0"}, {1, 1, 1, 0}},
    {{"0,0", "0,1"}, {1, 1, 1, 0}},
    {{"0,1", "1,1"}, {1, 0, 1, 1}},
    {{"1,0", "1,1"}, {1, 0, 1, 1}},
    {{"0,0", "1,0", "0,1"}, {2, 1, 2, 0}},
    {{"1,0", "0,1", "1,1"}, {2, 0, 2, 1}},
    {{"0,0", "1,0", "0,1", "1,1"}, {0, 0, 0, 0}},
};

PersistenceModule interval(const LatticePtr& l, const std::vector<const char*>& names, Field f = Field(2)) {
    std::vector<Element> s;
    for (const char* n : names) s.push_back(l->at(n));
    return interval_module(l, f, s);
}

std::vector<Element> everything(const Lattice& l) {
    std::vector<Element> out;
    for (Element e = 0; e < l.size(); ++e) out.push_back(e);
    return out;
}

}  // namespace

TEST_SUITE("calculus") {
    TEST_CASE("interval statistics on {0,1}^2 on both predicate paths") {
        auto l = Lattice::grid({1, 1});
        for (const auto& row : square_intervals) {
            const auto m = interval(l, row.support);
            for (auto path : {PredicatePath::fast, PredicatePath::brute_force}) {
                CHECK(min_degree(m, path) == row.stats[0]);
                CHECK(min_cross_degree(m, path) == row.stats[1]);
                CHECK(min_codegree(m, path) == row.stats[2]);
                CHECK(min_cross_codegree(m, path) == row.stats[3]);
            }
        }
    }

    TEST_CASE("index sets") {
        auto l = Lattice::grid({2, 2});
        for (Element x = 0; x < l->size(); ++x)
            for (std::size_t n = 0; n <= 2; ++n) {
                std::vector<Element> lower, upper;
                for (Element v = 0; v < l->size(); ++v) {
                    if (l->leq(v, x) && oracle::jdim_by_search(*l, v) <= n) lower.push_back(v);
                    if (l->leq(x, v) && l->mdim(v) <= n) upper.push_back(v);
                }
                CHECK(lower_index(*l, x, n) == lower);
                CHECK(upper_index(*l, x, n) == upper);
            }
    }

    TEST_CASE("T_n and T^n agree with the all-pairs (co)limit oracle") {
        for (auto ext : std::vector<std::vector<std::size_t>>{{2, 2}, {1, 1, 1}}) {
            auto l = Lattice::grid(ext);
            for (std::uint64_t s = 0; s < 15; ++s) {
                const auto m = random_module(l, Field(s % 2 ? 3 : 2), 100 + s);
                for (std::size_t n = 0; n <= l->dimension(); ++n) {
                    const auto lo = t_lower(m, n);
                    const auto up = t_upper(m, n);
                    for (Element x = 0; x < l->size(); ++x) {
                        CHECK(lo.module.dim(x) == oracle::colimit_dim(m, lower_index(*l, x, n)));
                        CHECK(up.module.dim(x) == oracle::limit_dim(m, upper_index(*l, x, n)));
                    }
                    CHECK(is_natural(lo.canonical));
                    CHECK(is_natural(up.canonical));
                    CHECK_FALSE(validate_functor(lo.module).has_value());
                    CHECK_FALSE(validate_functor(up.module).has_value());
                }
            }
        }
    }

    TEST_CASE("approximations at the lattice dimension are the identity") {
        auto l = Lattice::grid({2, 1});
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto m = random_module(l, Field(2), s);
            for (auto kind : {ApproxKind::t_lower, ApproxKind::t_upper, ApproxKind::gamma_lower, ApproxKind::gamma_upper}) {
                const auto r = approximate(m, kind, 2);
                CHECK(is_iso(r.canonical));
                CHECK(r.module.dims() == m.dims());
            }
            CHECK(cr_lower(m, 2).module.is_zero());
            CHECK(cr_upper(m, 2).module.is_zero());
        }
    }

    TEST_CASE("cross effects measure the canonical maps") {
        auto l = Lattice::grid({2, 2});
        for (std::uint64_t s = 0; s < 15; ++s) {
            const auto m = random_module(l, Field(3), 7 * s);
            for (std::size_t n = 0; n <= 2; ++n) {
                const auto lo = t_lower(m, n);
                const auto up = t_upper(m, n);
                const auto cl = cr_lower(m, n);
                const auto cu = cr_upper(m, n);
                const auto rl = ranks(lo.canonical);
                const auto ru = ranks(up.canonical);
                for (Element x = 0; x < l->size(); ++x) {
                    CHECK(cl.module.dim(x) == m.dim(x) - rl[x]);
                    CHECK(cu.module.dim(x) == m.dim(x) - ru[x]);
                    CHECK(gamma_lower(m, n).module.dim(x) == rl[x]);
                    CHECK(gamma_upper(m, n).module.dim(x) == ru[x]);
                }
                CHECK(is_cross_codegree(m, n).holds == cl.module.is_zero());
                CHECK(is_cross_degree(m, n).holds == cu.module.is_zero());
            }
        }
    }

    TEST_CASE("Gamma_1 of the top-only module vanishes") {
        auto l = Lattice::grid({1, 1});
        const auto f = interval(l, {"1,1"});
        const auto g = interval(l, {"0,0", "1,0", "0,1", "1,1"});
        CHECK(gamma_lower(f, 1).module.is_zero());
        CHECK(is_iso(gamma_lower(g, 1).canonical));
    }

    TEST_CASE("brute-force witnesses") {
        auto l = Lattice::grid({1, 1});
        const auto corner = interval(l, {"0,0"});
        const auto r = is_codegree(corner, 0, PredicatePath::brute_force);
        CHECK_FALSE(r.holds);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->arity == 1);
        CHECK(is_codegree(corner, 1, PredicatePath::brute_force).holds);
    }

    TEST_CASE("(co)cartesian squares against pushout and pullback dimensions") {
        for (std::uint64_t s = 0; s < 60; ++s) {
            auto l = Lattice::boolean(2);
            const Field f(s % 3 == 0 ? 3 : 2);
            const auto m = random_module(l, f, 500 + s);
            const std::vector<Element> all = {0, 1, 2, 3};
            const auto cube = restrict_along_cube(m, LatticeCube{2, all});
            // pushout of X(1) <- X(0) -> X(2); pullback of X(1) -> X(3) <- X(2)
            const std::size_t push = oracle::colimit_dim(m, {0, 1, 2});
            const std::size_t pull = oracle::limit_dim(m, {1, 2, 3});
            const bool onto = oracle::iterated_cofiber(m) == 0;
            const bool into = oracle::iterated_fiber(m) == 0;
            CHECK(is_cocartesian(cube) == (onto && push == m.dim(3)));
            CHECK(is_cartesian(cube) == (into && pull == m.dim(0)));
        }
    }

    TEST_CASE("local (co)limit errors") {
        auto l = Lattice::grid({1, 1});
        const auto m = interval(l, {"0,0", "1,0", "0,1", "1,1"});
        const std::vector<Element> top = {l->top()};
        CHECK_THROWS_AS(colim_over_downset(m, l->at("1,0"), top), NotBelow);
        const std::vector<Element> bottom = {l->bottom()};
        CHECK_THROWS_AS(lim_over_upset(m, l->at("1,0"), bottom), NotAbove);
        const auto d = colim_over_downset(m, l->top(), everything(*l));
        CHECK(d.presentation.rows() == 1);
    }

    TEST_CASE("functoriality of Gamma on maps") {
        auto l = Lattice::grid({2, 2});
        Rng rng(4);
        for (std::uint64_t s = 0; s < 10; ++s) {
            const auto a = random_module(l, Field(2), s);
            const auto b = random_module(l, Field(2), s + 1000);
            const auto alpha = random_natural_transformation(a, b, rng);
            for (std::size_t n = 0; n <= 2; ++n) {
                const auto ga = gamma_lower(a, n), gb = gamma_lower(b, n);
                const auto ua = gamma_upper(a, n), ub = gamma_upper(b, n);
                const auto lo = gamma_lower_map(ga, gb, alpha);
                const auto up = gamma_upper_map(ua, ub, alpha);
                CHECK(is_natural(lo));
                CHECK(is_natural(up));
                CHECK(compose(gb.canonical, lo).components() == compose(alpha, ga.canonical).components());
                CHECK(compose(up, ua.canonical).components() == compose(ub.canonical, alpha).components());
                const auto tl = t_lower_map(t_lower(a, n), t_lower(b, n), alpha);
                const auto tu = t_upper_map(t_upper(a, n), t_upper(b, n), alpha);
                CHECK(is_natural(tl));
                CHECK(is_natural(tu));
            }
            const auto id = NatTrans::identity(a);
            CHECK(is_iso(gamma_lower_map(id, 1)));
        }
    }
}
