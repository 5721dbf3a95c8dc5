#include "crosscalc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "crosscalc/calculus.hpp"
#include "crosscalc/cube.hpp"
#include "crosscalc/errors.hpp"
#include "crosscalc/generators.hpp"
#include "crosscalc/pmod.hpp"
#include "crosscalc/resolution.hpp"

namespace crosscalc {

bool SuiteReport::passed() const noexcept { return failures() == 0; }

std::size_t SuiteReport::failures() const noexcept {
    std::size_t f = 0;
    for (const auto& p : properties) f += p.failed;
    return f;
}

const PropertyResult* SuiteReport::find(const std::string& name) const {
    for (const auto& p : properties)
        if (p.name == name) return &p;
    return nullptr;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

const std::vector<IntervalRow>& square_interval_rows() {
    static const std::vector<IntervalRow> rows = {
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
    return rows;
}

std::vector<LabelledModule> square_interval_corpus(Field field) {
    auto l = Lattice::grid({1, 1});
    std::vector<LabelledModule> out;
    for (const auto& row : square_interval_rows()) {
        std::vector<Element> support;
        std::string label = "interval{";
        for (const auto& n : row.support) {
            support.push_back(l->at(n));
            label += (support.size() > 1 ? ";" : "") + n;
        }
        out.push_back({label + "}", interval_module(l, field, support), std::nullopt});
    }
    return out;
}

PersistenceModule nonexample_module(Field field) {
    auto l = Lattice::boolean(3);
    std::vector<std::size_t> dims(8, 0);
    const Element xy = 0b011, yz = 0b110, xz = 0b101, top = 0b111;
    dims[xy] = dims[yz] = dims[xz] = 1;
    dims[top] = 2;
    std::vector<Matrix> maps;
    for (const auto [u, v] : l->covers()) {
        Matrix m(field, dims[v], dims[u]);
        if (v == top && u == xy) m.set(0, 0, 1);
        if (v == top && u == yz) m.set(1, 0, 1);
        if (v == top && u == xz) {
            m.set(0, 0, 1);
            m.set(1, 0, 1);
        }
        maps.push_back(std::move(m));
    }
    return {l, field, std::move(dims), std::move(maps)};
}

NatTrans colimit_example(Field field) {
    auto l = Lattice::grid({1, 1});
    const Element top = l->top();
    const std::vector<Element> all = {0, 1, 2, 3};
    const std::vector<Element> top_only = {top};
    auto f = interval_module(l, field, top_only);
    auto g = interval_module(l, field, all);
    std::vector<Matrix> comps;
    for (Element x = 0; x < l->size(); ++x)
        comps.push_back(x == top ? Matrix::identity(field, 1) : Matrix(field, 1, 0));
    return {f, g, std::move(comps)};
}

std::vector<LabelledModule> random_corpus(const LatticePtr& lattice, std::uint64_t seed, std::size_t count) {
    std::vector<LabelledModule> out;
    std::string shape = "grid[";
    if (const auto& ext = lattice->grid_extents())
        for (std::size_t i = 0; i < ext->size(); ++i) shape += (i ? "," : "") + std::to_string((*ext)[i]);
    shape += "]";
    for (std::size_t i = 0; i < count; ++i) {
        const auto s = mix_seed(seed, i);
        const Field field(i % 3 == 2 ? 3 : 2);
        RandomModuleParams params;
        params.max_generators = 2 + s % 3;
        params.max_relations = 1 + (s >> 8) % 4;
        out.push_back({"random " + shape + " #" + std::to_string(i), random_module(lattice, field, s, params), s});
    }
    return out;
}

bool t_lower_preserves_cross_codegree(const PersistenceModule& m, std::size_t k, std::size_t n) {
    if (!is_cross_codegree(m, n)) return true;
    return is_cross_codegree(t_lower(m, k).module, n).holds;
}

bool t_upper_preserves_cross_degree(const PersistenceModule& m, std::size_t k, std::size_t n) {
    if (!is_cross_degree(m, n)) return true;
    return is_cross_degree(t_upper(m, k).module, n).holds;
}

namespace {

using Outcome = std::optional<std::string>;
constexpr std::size_t max_order = 2;

Outcome expect(bool ok, const std::string& what) { return ok ? Outcome{} : Outcome{what}; }

std::string dims_string(const PersistenceModule& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.dims().size(); ++i) s += (i ? "," : "") + std::to_string(m.dims()[i]);
    return s + ")";
}

class Runner {
public:
    Runner(SuiteReport& report, std::string prefix) : report_(report), prefix_(std::move(prefix)) {}

    void check(const std::string& name, const LabelledModule& item, const std::function<Outcome()>& body,
               const std::string& tested_map = "") {
        auto& p = property(name, tested_map);
        Outcome fail;
        try {
            fail = body();
        } catch (const std::exception& e) {
            fail = std::string("exception: ") + e.what();
        }
        if (!fail) {
            ++p.passed;
            return;
        }
        ++p.failed;
        if (!p.first_failure) p.first_failure = Counterexample{item.label, item.seed, *fail, print_pmod(item.module)};
    }

    void observe(const std::string& label, const std::string& value) {
        report_.observations.push_back({prefix_ + "/" + label, value});
    }

private:
    PropertyResult& property(const std::string& name, const std::string& tested_map) {
        const std::string full = prefix_ + "/" + name;
        for (auto& p : report_.properties)
            if (p.name == full) return p;
        report_.properties.push_back({full, tested_map, 0, 0, std::nullopt});
        return report_.properties.back();
    }

    SuiteReport& report_;
    std::string prefix_;
};

std::vector<LabelledModule> concat(std::vector<LabelledModule> a, const std::vector<LabelledModule>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

LabelledModule nonexample_item() { return {"nonexample{0,1}^3", nonexample_module(), std::nullopt}; }

std::size_t orders(const PersistenceModule& m) { return std::min(max_order, std::max<std::size_t>(m.lattice().dimension(), 1)); }

// ---- suites -----------------------------------------------------------------

void suite_square_intervals(Runner& run, std::uint64_t, std::size_t) {
    const auto corpus = square_interval_corpus();
    const char* names[] = {"degree", "cross-degree", "codegree", "cross-codegree"};
    for (std::size_t r = 0; r < corpus.size(); ++r) {
        const auto& item = corpus[r];
        const auto& expected = square_interval_rows()[r].expected;
        for (auto path : {PredicatePath::fast, PredicatePath::brute_force}) {
            const std::array<std::size_t, 4> got = {min_degree(item.module, path), min_cross_degree(item.module, path),
                                                    min_codegree(item.module, path),
                                                    min_cross_codegree(item.module, path)};
            for (std::size_t s = 0; s < 4; ++s)
                run.check(std::string(names[s]) + (path == PredicatePath::fast ? "" : "/brute-force"), item, [&] {
                    return expect(got[s] == expected[s], "expected " + std::to_string(expected[s]) + ", got " +
                                                             std::to_string(got[s]));
                });
        }
    }
}

void suite_nonexample(Runner& run, std::uint64_t, std::size_t) {
    const auto item = nonexample_item();
    const auto& m = item.module;
    const auto& l = m.lattice();
    run.check("min-degree-is-1", item, [&] { return expect(min_degree(m) == 1, "min_degree " + std::to_string(min_degree(m))); });
    run.check("min-cross-degree-is-0", item,
              [&] { return expect(min_cross_degree(m) == 0, "min_cross_degree " + std::to_string(min_cross_degree(m))); });
    run.check("brute-force-agrees", item, [&] {
        return expect(min_degree(m, PredicatePath::brute_force) == 1 &&
                          min_cross_degree(m, PredicatePath::brute_force) == 0,
                      "brute-force statistics differ");
    });
    const auto b = betti(m);
    run.check("not-projective", item, [&] { return expect(pdim(m) >= 1, "pdim " + std::to_string(pdim(m))); });
    run.check("beta1-top-is-1", item, [&] { return expect(b.at(l.top(), 1) == 1, "beta^1_top " + std::to_string(b.at(l.top(), 1))); });
    run.check("beta0-at-coatoms", item, [&] {
        for (Element a : l.parents(l.top()))
            if (b.at(a, 0) != 1) return Outcome{"beta^0 at " + l.name(a) + " is " + std::to_string(b.at(a, 0))};
        return Outcome{};
    });
    run.check("koszul-kernel-at-top", item, [&] {
        std::vector<Matrix> blocks;
        for (Element a : l.parents(l.top())) blocks.push_back(m.cover_map(a, l.top()));
        const Matrix joined = hstack(blocks, m.field(), m.dim(l.top()));
        return expect(joined.cols() - rank(joined) == 1, "kernel of F^3 -> F^2 is not 1-dimensional");
    });
    run.check("pdim-theorems-at-dimension-3", item, [&] {
        const auto r1 = check_pdim_theorem_1(m);
        const auto r2 = check_pdim_theorem_2(m);
        return expect(r1.consistent() && r2.consistent(), r1.describe() + " / " + r2.describe());
    });
    run.check("planar-theorem-fails-off-hypothesis", item, [&] {
        const auto r = check_pdim_theorem_2(m, 2);
        run.observe("pdim-theorem-2-with-n=2", r.describe());
        return expect(!r.hypothesis_holds && r.conditions[1] && !r.conditions[0],
                      "expected degree 1 and cross-degree 0 without projectivity, got " + r.describe());
    });
}

void theorem_properties(Runner& run, const LabelledModule& item) {
    const auto& m = item.module;
    for (std::size_t n = 0; n <= orders(m); ++n) {
        const std::string sn = "[n=" + std::to_string(n) + "]";
        const auto gl = gamma_lower(m, n);
        const auto gu = gamma_upper(m, n);
        run.check("gamma-lower-is-cross-codegree", item, [&] {
            return expect(is_cross_codegree(gl.module, n, PredicatePath::brute_force).holds &&
                              is_cross_codegree(gl.module, n).holds,
                          "Gamma_n F is not cross-codegree n " + sn);
        });
        run.check("gamma-upper-is-cross-degree", item, [&] {
            return expect(is_cross_degree(gu.module, n, PredicatePath::brute_force).holds &&
                              is_cross_degree(gu.module, n).holds,
                          "Gamma^n F is not cross-degree n " + sn);
        });
        run.check(
            "cross-codegree-fixes-gamma-lower", item,
            [&] {
                if (!is_cross_codegree(m, n, PredicatePath::brute_force)) return Outcome{};
                return expect(is_iso(gl.canonical), "Gamma_n F -> F is not an isomorphism " + sn);
            },
            "Gamma_n F -> F");
        run.check(
            "cross-degree-fixes-gamma-upper", item,
            [&] {
                if (!is_cross_degree(m, n, PredicatePath::brute_force)) return Outcome{};
                return expect(is_iso(gu.canonical), "F -> Gamma^n F is not an isomorphism " + sn);
            },
            "F -> Gamma^n F");
        run.check("gamma-lower-canonical-mono", item, [&] {
            return expect(is_natural(gl.canonical) && is_mono(gl.canonical), "Gamma_n F -> F not a natural mono " + sn);
        });
        run.check("gamma-upper-canonical-epi", item, [&] {
            return expect(is_natural(gu.canonical) && is_epi(gu.canonical), "F -> Gamma^n F not a natural epi " + sn);
        });
        run.check("degree-implies-cross-degree", item, [&] {
            return expect(!is_degree(m, n) || is_cross_degree(m, n), "degree n but not cross-degree n " + sn);
        });
        run.check("codegree-implies-cross-codegree", item, [&] {
            return expect(!is_codegree(m, n) || is_cross_codegree(m, n), "codegree n but not cross-codegree n " + sn);
        });
        for (std::size_t k = 0; k <= orders(m); ++k) {
            run.check("t-lower-preserves-cross-codegree", item, [&] {
                return expect(t_lower_preserves_cross_codegree(m, k, n), "T_k F lost cross-codegree n, k=" + std::to_string(k) + " " + sn);
            });
            run.check("t-upper-preserves-cross-degree", item, [&] {
                return expect(t_upper_preserves_cross_degree(m, k, n), "T^k F lost cross-degree n, k=" + std::to_string(k) + " " + sn);
            });
        }
    }
    const std::size_t dim = m.lattice().dimension();
    if (dim >= 1)
        run.check(
            "pdim-theorem-1", item,
            [&] {
                const auto r = check_pdim_theorem_1(m);
                return expect(r.consistent(), r.describe());
            },
            "F -> Gamma^{n-1} F");
    if (dim >= 2)
        run.check(
            "pdim-theorem-2", item,
            [&] {
                const auto r = check_pdim_theorem_2(m);
                return expect(r.consistent(), r.describe());
            },
            "F -> T^{n-1} Gamma^{n-2} F");
}

void suite_theorems_2param(Runner& run, std::uint64_t seed, std::size_t trials) {
    const auto corpus = concat(random_corpus(Lattice::grid({2, 2}), seed, trials), square_interval_corpus());
    std::size_t nonzero = 0;
    for (const auto& item : corpus) {
        theorem_properties(run, item);
        nonzero += item.module.is_zero() ? 0 : 1;
    }
    run.observe("corpus-nonzero", std::to_string(nonzero) + " of " + std::to_string(corpus.size()));
}

void suite_theorems_3param(Runner& run, std::uint64_t seed, std::size_t trials) {
    auto corpus = random_corpus(Lattice::boolean(3), seed, trials);
    corpus.push_back(nonexample_item());
    for (const auto& item : corpus) theorem_properties(run, item);
}

void structural_properties(Runner& run, const LabelledModule& item, Rng& rng) {
    const auto& m = item.module;
    const auto& lp = m.lattice_ptr();
    const auto& l = m.lattice();
    const Field f = m.field();
    const std::size_t top_n = orders(m);
    std::vector<ApproxResult> gl, gu;
    for (std::size_t n = 0; n <= top_n; ++n) {
        gl.push_back(gamma_lower(m, n));
        gu.push_back(gamma_upper(m, n));
    }

    for (std::size_t n = 0; n <= top_n; ++n) {
        const std::string sn = " [n=" + std::to_string(n) + "]";
        run.check(
            "idempotence", item,
            [&] {
                return expect(is_iso(gamma_lower(gl[n].module, n).canonical) &&
                                  is_iso(gamma_upper(gu[n].module, n).canonical),
                              "Gamma_n Gamma_n F -> Gamma_n F or its dual is not iso" + sn);
            },
            "Gamma_n Gamma_n F -> Gamma_n F; Gamma^n F -> Gamma^n Gamma^n F");
    }

    for (std::size_t n = 0; n <= top_n; ++n)
        for (std::size_t k = n + 1; k <= top_n; ++k) {
            const std::string sn = " [n=" + std::to_string(n) + ", m=" + std::to_string(k) + "]";
            run.check(
                "tower-lower-mono", item,
                [&] {
                    std::vector<Matrix> comps;
                    for (Element x = 0; x < l.size(); ++x)
                        comps.push_back(factor_through(gl[n].canonical.component(x), gl[k].canonical.component(x)));
                    NatTrans iota(gl[n].module, gl[k].module, std::move(comps));
                    return expect(is_natural(iota) && is_mono(iota), "Gamma_n F -> Gamma_m F is not a natural mono" + sn);
                },
                "Gamma_n F -> Gamma_m F");
            run.check(
                "tower-upper-epi", item,
                [&] {
                    std::vector<Matrix> comps;
                    for (Element x = 0; x < l.size(); ++x) {
                        Matrix c = gu[n].canonical.component(x) * right_inverse(gu[k].canonical.component(x));
                        if (!(c * gu[k].canonical.component(x) == gu[n].canonical.component(x)))
                            return Outcome{"F -> Gamma^n F does not factor through Gamma^m F" + sn};
                        comps.push_back(std::move(c));
                    }
                    NatTrans pi(gu[k].module, gu[n].module, std::move(comps));
                    return expect(is_natural(pi) && is_epi(pi), "Gamma^m F -> Gamma^n F is not a natural epi" + sn);
                },
                "Gamma^m F -> Gamma^n F");
        }

    run.check(
        "convergence", item,
        [&] {
            const std::size_t d = l.dimension();
            return expect(is_iso(t_lower(m, d).canonical) && is_iso(t_upper(m, d).canonical) &&
                              is_iso(gamma_lower(m, d).canonical) && is_iso(gamma_upper(m, d).canonical),
                          "approximations at the lattice dimension are not isomorphisms");
        },
        "eps_d, eta_d");

    for (std::size_t n = 0; n <= top_n; ++n) {
        const std::string sn = " [n=" + std::to_string(n) + "]";
        const auto other = random_module(lp, f, rng.next());
        run.check(
            "universal-property-lower", item,
            [&] {
                const auto g = gamma_lower(other, n).module;
                if (!is_cross_codegree(g, n)) return Outcome{"test input is not cross-codegree n" + sn};
                const auto alpha = random_natural_transformation(g, m, rng);
                std::vector<Matrix> comps;
                for (Element x = 0; x < l.size(); ++x) {
                    auto beta = solve(gl[n].canonical.component(x), alpha.component(x));
                    if (!beta) return Outcome{"no factorization through Gamma_n F at " + l.name(x) + sn};
                    comps.push_back(*std::move(beta));
                }
                NatTrans beta(g, gl[n].module, std::move(comps));
                if (!is_natural(beta)) return Outcome{"factorization is not natural" + sn};
                if (!(compose(gl[n].canonical, beta).components() == alpha.components()))
                    return Outcome{"factorization does not recover alpha" + sn};
                return expect(is_mono(gl[n].canonical), "factorization is not unique" + sn);
            },
            "Gamma_n F -> F");
        run.check(
            "universal-property-upper", item,
            [&] {
                const auto g = gamma_upper(other, n).module;
                if (!is_cross_degree(g, n)) return Outcome{"test input is not cross-degree n" + sn};
                const auto alpha = random_natural_transformation(m, g, rng);
                std::vector<Matrix> comps;
                for (Element x = 0; x < l.size(); ++x) {
                    Matrix beta = alpha.component(x) * right_inverse(gu[n].canonical.component(x));
                    if (!(beta * gu[n].canonical.component(x) == alpha.component(x)))
                        return Outcome{"no factorization through Gamma^n F at " + l.name(x) + sn};
                    comps.push_back(std::move(beta));
                }
                NatTrans beta(gu[n].module, g, std::move(comps));
                if (!is_natural(beta)) return Outcome{"factorization is not natural" + sn};
                return expect(is_epi(gu[n].canonical), "factorization is not unique" + sn);
            },
            "F -> Gamma^n F");
    }

    const auto source = random_module(lp, f, rng.next());
    const auto alpha = random_natural_transformation(source, m, rng);
    const auto mono = image_of(alpha).into_target;
    const auto epi = cokernel_of(alpha).projection;
    for (std::size_t n = 0; n <= top_n; ++n) {
        const std::string sn = " [n=" + std::to_string(n) + "]";
        run.check("mono-preservation", item, [&] {
            const auto a = gamma_lower_map(mono, n);
            const auto b = gamma_upper_map(mono, n);
            return expect(is_natural(a) && is_natural(b) && is_mono(a) && is_mono(b),
                          "Gamma_n or Gamma^n of a mono is not a natural mono" + sn);
        });
        run.check("epi-preservation", item, [&] {
            const auto a = gamma_lower_map(epi, n);
            const auto b = gamma_upper_map(epi, n);
            return expect(is_natural(a) && is_natural(b) && is_epi(a) && is_epi(b),
                          "Gamma_n or Gamma^n of an epi is not a natural epi" + sn);
        });
    }

    const auto second = random_module(lp, f, rng.next());
    const auto sum = direct_sum(m, second);
    for (std::size_t n = 0; n <= top_n; ++n) {
        const std::string sn = " [n=" + std::to_string(n) + "]";
        run.check(
            "direct-sum-additivity", item,
            [&] {
                const auto gs = gamma_lower(sum, n);
                const auto g2 = gamma_lower(second, n);
                const auto us = gamma_upper(sum, n);
                const auto u2 = gamma_upper(second, n);
                for (Element x = 0; x < l.size(); ++x) {
                    if (gs.module.dim(x) != gl[n].module.dim(x) + g2.module.dim(x) ||
                        us.module.dim(x) != gu[n].module.dim(x) + u2.module.dim(x))
                        return Outcome{"dimensions are not additive at " + l.name(x) + sn};
                    const Matrix lower_blocks = direct_sum(gl[n].canonical.component(x), g2.canonical.component(x));
                    const Matrix& lower_sum = gs.canonical.component(x);
                    if (rank(hstack(lower_sum, lower_blocks)) != rank(lower_sum))
                        return Outcome{"Gamma_n(F + G) -> F + G has the wrong image at " + l.name(x) + sn};
                    const Matrix upper_blocks = direct_sum(gu[n].canonical.component(x), u2.canonical.component(x));
                    const Matrix& upper_sum = us.canonical.component(x);
                    if (rank(vstack(upper_sum, upper_blocks)) != rank(upper_sum))
                        return Outcome{"F + G -> Gamma^n(F + G) has the wrong kernel at " + l.name(x) + sn};
                }
                return Outcome{};
            },
            "Gamma_n(F + G) -> F + G; F + G -> Gamma^n(F + G)");
    }

    for (std::size_t mm = 0; mm <= top_n; ++mm)
        for (std::size_t n = 0; n <= top_n; ++n) {
            const std::string sn = " [m=" + std::to_string(mm) + ", n=" + std::to_string(n) + "]";
            run.check(
                "distributive-law", item,
                [&] {
                    const auto& a = gl[mm];  // Gamma_m F -> F
                    const auto upper_a = gamma_upper(a.module, n);
                    const auto& upper_f = gu[n];
                    const auto upper_map = gamma_upper_map(upper_a, upper_f, a.canonical);
                    const auto lower_of_a = gamma_lower(upper_a.module, mm);
                    const auto lower_of_f = gamma_lower(upper_f.module, mm);
                    const auto left = gamma_lower_map(lower_of_a, lower_of_f, upper_map);
                    return expect(is_natural(left) && is_iso(left) && is_iso(lower_of_a.canonical),
                                  "Gamma_m Gamma^n F <- Gamma_m Gamma^n Gamma_m F -> Gamma^n Gamma_m F is not iso" + sn);
                },
                "Gamma_m Gamma^n Gamma_m F -> Gamma_m Gamma^n F and -> Gamma^n Gamma_m F");
        }

    const auto b = betti(m);
    run.check("betti-euler-characteristic", item, [&] {
        for (Element x = 0; x < l.size(); ++x) {
            long long chi = 0;
            for (Element a = 0; a < l.size(); ++a) {
                if (!l.leq(a, x)) continue;
                for (std::size_t i = 0; i < b.row(a).size(); ++i)
                    chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(b.at(a, i));
            }
            if (chi != static_cast<long long>(m.dim(x)))
                return Outcome{"alternating Betti sum below " + l.name(x) + " is " + std::to_string(chi) +
                               ", dim is " + std::to_string(m.dim(x))};
        }
        return Outcome{};
    });
    run.check("betti0-is-parent-cube-tcofib", item, [&] {
        for (Element a = 0; a < l.size(); ++a)
            if (b.at(a, 0) != tcofib(restrict_along_cube(m, parent_cube(l, a))))
                return Outcome{"beta^0 differs from the parent-cube cokernel at " + l.name(a)};
        return Outcome{};
    });
    run.check("betti-vanishes-above-jdim", item, [&] {
        for (Element a = 0; a < l.size(); ++a)
            if (b.row(a).size() != l.jdim(a) + 1) return Outcome{"Betti row at " + l.name(a) + " has the wrong length"};
        return expect(pdim(m) <= static_cast<int>(l.dimension()), "pdim exceeds the lattice dimension");
    });
    run.check("restriction-does-not-raise-pdim", item, [&] {
        const int p = pdim(m);
        Outcome out;
        for (std::size_t k = 1; k <= l.dimension() && !out; ++k)
            for_each_bicartesian_cube(l, k, [&](const LatticeCube& cube) {
                const int q = pdim(module_of_cube(restrict_along_cube(m, cube)));
                if (q <= std::max(p, -1) || (p < 0 && q < 0)) return true;
                out = "restriction to a " + std::to_string(k) + "-cube has pdim " + std::to_string(q) + " > " +
                      std::to_string(p);
                return false;
            });
        return out;
    });

    // free modules have no higher Betti numbers
    std::vector<Generator> gens;
    const std::size_t count = 1 + rng.below(3);
    for (std::size_t i = 0; i < count; ++i) gens.push_back({rng.below(l.size()), 1 + rng.below(2)});
    const auto free = free_module(lp, f, gens);
    run.check("free-module-betti", item, [&] {
        const auto fb = betti(free);
        std::vector<std::size_t> expected(l.size(), 0);
        for (const auto& g : gens) expected[g.at] += g.multiplicity;
        for (Element a = 0; a < l.size(); ++a) {
            if (fb.at(a, 0) != expected[a]) return Outcome{"beta^0 of a free module at " + l.name(a)};
            for (std::size_t i = 1; i < fb.row(a).size(); ++i)
                if (fb.at(a, i) != 0) return Outcome{"higher Betti number of a free module at " + l.name(a)};
        }
        return expect(pdim(free) == 0, "free module pdim is " + std::to_string(pdim(free)));
    });

    run.check("derived-constructions-are-functors", item, [&] {
        for (const auto* r : {&gl.back(), &gu.back()})
            if (validate_functor(r->module)) return Outcome{"Gamma module is not a functor"};
        if (validate_functor(cr_lower(m, 1).module) || validate_functor(cr_upper(m, 1).module))
            return Outcome{"cross effect is not a functor"};
        return expect(!validate_functor(image_of(alpha).module) && !validate_functor(cokernel_of(alpha).module) &&
                          !validate_functor(kernel_of(alpha).module),
                      "image, kernel or cokernel is not a functor");
    });
}

void suite_structural(Runner& run, std::uint64_t seed, std::size_t trials) {
    auto corpus = concat(random_corpus(Lattice::grid({2, 2}), seed, trials),
                         random_corpus(Lattice::boolean(3), mix_seed(seed, 1u << 20), std::max<std::size_t>(1, trials / 2)));
    corpus = concat(std::move(corpus), square_interval_corpus());
    corpus.push_back(nonexample_item());
    Rng rng(mix_seed(seed, 7));
    for (const auto& item : corpus) structural_properties(run, item, rng);
}

void suite_oracle(Runner& run, std::uint64_t seed, std::size_t trials) {
    auto corpus = concat(random_corpus(Lattice::grid({2, 2}), seed, trials),
                         random_corpus(Lattice::boolean(3), mix_seed(seed, 1u << 20), trials));
    corpus = concat(std::move(corpus), square_interval_corpus());
    corpus.push_back(nonexample_item());
    using Pred = PredicateResult (*)(const PersistenceModule&, std::size_t, PredicatePath);
    const std::pair<const char*, Pred> preds[] = {{"codegree", &is_codegree},
                                                  {"degree", &is_degree},
                                                  {"cross-codegree", &is_cross_codegree},
                                                  {"cross-degree", &is_cross_degree}};
    for (const auto& item : corpus)
        for (const auto& [name, pred] : preds)
            for (std::size_t n = 0; n <= max_order; ++n)
                run.check(std::string(name) + "-fast-equals-brute-force", item, [&] {
                    const auto fast = pred(item.module, n, PredicatePath::fast);
                    const auto brute = pred(item.module, n, PredicatePath::brute_force);
                    return expect(fast.holds == brute.holds, std::string(name) + " paths disagree at n=" +
                                                                 std::to_string(n) + ": fast " +
                                                                 (fast.holds ? "true" : "false"));
                });
}

void suite_koszul_cubes(Runner& run, std::uint64_t seed, std::size_t trials) {
    const std::size_t count = std::max<std::size_t>(trials, 100);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = 1 + i % 3;
        const auto s = mix_seed(seed, i);
        const Field field(i % 4 == 3 ? 5 : (i % 2 ? 3 : 2));
        auto l = Lattice::boolean(k);
        RandomModuleParams params{3, 3};
        const auto m = random_module(l, field, s, params);
        LatticeCube identity{k, {}};
        for (Element e = 0; e < l->size(); ++e) identity.vertices.push_back(e);
        const auto cube = restrict_along_cube(m, identity);
        const LabelledModule item{"cube arity " + std::to_string(k) + " #" + std::to_string(i), m, s};
        run.check("cube-is-functorial", item, [&] { return expect(cube.is_functorial(), "2-face does not commute"); });
        run.check("koszul-top-homology-is-tfib", item, [&] {
            const auto h = koszul_homologies(koszul(cube));
            return expect(h[k] == tfib(cube), "H_k " + std::to_string(h[k]) + " vs tfib " + std::to_string(tfib(cube)));
        });
        run.check("koszul-bottom-homology-is-tcofib", item, [&] {
            const auto h = koszul_homologies(koszul(cube));
            return expect(h[0] == tcofib(cube), "H_0 " + std::to_string(h[0]) + " vs tcofib " + std::to_string(tcofib(cube)));
        });
        run.check("punctured-colimit-matches-koszul", item, [&] {
            std::vector<Element> punctured;
            for (Element e = 0; e + 1 < l->size(); ++e) punctured.push_back(e);
            const Element top = l->top();
            const auto d = colim_over_downset(m, top, punctured);
            Matrix legs(field, m.dim(top), d.sum_dim);
            for (std::size_t j = 0; j < d.elements.size(); ++j) legs.place(0, d.offsets[j], m.transport(d.elements[j], top));
            const bool iso = is_invertible(legs * d.section);
            return expect(iso == is_cocartesian(cube), "colimit comparison and Koszul homology disagree");
        });
        run.check("punctured-limit-matches-koszul", item, [&] {
            std::vector<Element> punctured;
            for (Element e = 1; e < l->size(); ++e) punctured.push_back(e);
            const auto d = lim_over_upset(m, 0, punctured);
            Matrix legs(field, d.sum_dim, m.dim(0));
            for (std::size_t j = 0; j < d.elements.size(); ++j) legs.place(d.offsets[j], 0, m.transport(0, d.elements[j]));
            auto c = solve(d.presentation, legs);
            const bool iso = c && is_invertible(*c);
            return expect(iso == is_cartesian(cube), "limit comparison and Koszul homology disagree");
        });
    }
}

void suite_colimit_counterexample(Runner& run, std::uint64_t, std::size_t) {
    const auto alpha = colimit_example();
    const auto& f = alpha.source();
    const auto& g = alpha.target();
    const LabelledModule item{"top-only into constant", f, std::nullopt};
    const auto& l = f.lattice();
    run.check("gamma1-of-top-only-is-zero", item, [&] { return expect(gamma_lower(f, 1).module.is_zero(), "Gamma_1 F is nonzero"); });
    run.check("gamma1-of-constant-is-itself", item,
              [&] { return expect(is_iso(gamma_lower(g, 1).canonical), "Gamma_1 G -> G is not iso"); }, "Gamma_1 G -> G");
    const auto coker_of_gamma = cokernel_of(gamma_lower_map(alpha, 1)).module;
    const auto gamma_of_coker = gamma_lower(cokernel_of(alpha).module, 1).module;
    run.observe("coker(Gamma_1 alpha) dims", dims_string(coker_of_gamma));
    run.observe("Gamma_1 coker(alpha) dims", dims_string(gamma_of_coker));
    run.check("coker-gamma1-has-dims-of-G", item, [&] {
        return expect(coker_of_gamma.dims() == g.dims(), "coker(Gamma_1 alpha) dims " + dims_string(coker_of_gamma));
    });
    run.check("gamma1-coker-dims", item, [&] {
        std::vector<std::size_t> expected(l.size(), 1);
        expected[l.top()] = 0;
        return expect(gamma_of_coker.dims() == expected, "Gamma_1 coker(alpha) dims " + dims_string(gamma_of_coker));
    });
    run.check("gamma1-does-not-commute-with-cokernels", item, [&] {
        std::size_t differing = 0;
        for (Element x = 0; x < l.size(); ++x) differing += coker_of_gamma.dim(x) != gamma_of_coker.dim(x);
        return expect(differing >= 1, "dimensions agree everywhere");
    });
}

void suite_applications_image(Runner& run, std::uint64_t seed, std::size_t trials) {
    const std::size_t count = std::max<std::size_t>(trials, 20);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const auto s = mix_seed(seed, i);
        const auto img = random_peaked_image(5, 5, 2, 2, s);
        const auto h1 = image_bifiltration_homology(img, 1, Field(2));
        const auto h0 = image_bifiltration_homology(img, 0, Field(2));
        const LabelledModule item{"image 5x5x2 #" + std::to_string(i), h1.module, s};
        nonzero += h1.module.is_zero() ? 0 : 1;
        run.check("h1-is-functor", item, [&] { return expect(!validate_functor(h1.module) && !validate_functor(h0.module), "non-functorial homology"); });
        run.check("h1-cross-degree-at-most-1", item, [&] {
            const auto d = min_cross_degree(h1.module);
            return expect(d <= 1 && min_cross_degree(h1.module, PredicatePath::brute_force) <= 1,
                          "min_cross_degree " + std::to_string(d));
        });
        run.check("h1-pdim-at-most-1", item, [&] { return expect(pdim(h1.module) <= 1, "pdim " + std::to_string(pdim(h1.module))); });
        run.check("one-critical-tag", item, [&] { return expect(onecritical_check(h1) == true, "image filtration not tagged one-critical"); });
        run.check("sublevel-meets-are-intersections", item, [&] {
            return expect(sublevel_meets_are_intersections(cubical_complex(img), h1.module.lattice()),
                          "complex(a ^ b) differs from complex(a) n complex(b)");
        });
    }
    run.observe("nonzero-h1-modules", std::to_string(nonzero) + " of " + std::to_string(count));
}

void suite_applications_rips(Runner& run, std::uint64_t seed, std::size_t trials) {
    const std::size_t count = std::max<std::size_t>(trials, 20);
    for (std::size_t i = 0; i < count; ++i) {
        const auto s = mix_seed(seed, i);
        const auto space = random_metric_space(6, 3, 3, s);
        const auto h0 = sublevel_rips_h0(space, Field(2));
        const LabelledModule item{"rips 6 points #" + std::to_string(i), h0.module, s};
        const auto& l = h0.module.lattice();
        run.check("h0-is-functor", item, [&] { return expect(!validate_functor(h0.module), "non-functorial H_0"); });
        run.check("h0-cross-codegree-at-most-1", item, [&] {
            const auto d = min_cross_codegree(h0.module);
            return expect(d <= 1 && min_cross_codegree(h0.module, PredicatePath::brute_force) <= 1,
                          "min_cross_codegree " + std::to_string(d));
        });
        run.check("r-direction-surjective", item, [&] {
            for (std::size_t c = 0; c < l.covers().size(); ++c) {
                const auto [u, v] = l.covers()[c];
                if (grid_coordinates(l, u)[0] == grid_coordinates(l, v)[0] && !is_surjective(h0.module.cover_map(c)))
                    return Outcome{"r-direction map " + l.name(u) + " < " + l.name(v) + " is not onto"};
            }
            return Outcome{};
        });
        run.check("one-critical-not-claimed", item, [&] { return expect(!onecritical_check(h0).has_value(), "Rips filtration carries a tag"); });
    }
}

void suite_dual(Runner& run, std::uint64_t seed, std::size_t trials) {
    auto corpus = concat(random_corpus(Lattice::grid({2, 2}), seed, trials),
                         random_corpus(Lattice::boolean(3), mix_seed(seed, 1u << 20), std::max<std::size_t>(1, trials / 2)));
    corpus = concat(std::move(corpus), square_interval_corpus());
    corpus.push_back(nonexample_item());
    for (const auto& item : corpus) {
        const auto& m = item.module;
        const auto d = dual_module(m);
        run.check("double-dual-is-identity", item, [&] { return expect(dual_module(d) == m, "F** differs from F"); });
        run.check("dual-exchanges-statistics", item, [&] {
            return expect(min_degree(m) == min_codegree(d) && min_codegree(m) == min_degree(d) &&
                              min_cross_degree(m) == min_cross_codegree(d) &&
                              min_cross_codegree(m) == min_cross_degree(d),
                          "statistics of F and F* do not correspond");
        });
        run.check("injective-dimension-bounded", item, [&] {
            return expect(injective_dimension(m) <= static_cast<int>(m.lattice().dimension()),
                          "injective dimension " + std::to_string(injective_dimension(m)));
        });
        run.check("injective-pdim-theorem-1", item, [&] {
            const auto r = check_pdim_theorem_1(d);
            return expect(r.consistent(), r.describe());
        });
        if (m.lattice().dimension() >= 2)
            run.check("injective-pdim-theorem-2", item, [&] {
                const auto r = check_pdim_theorem_2(d);
                return expect(r.consistent(), r.describe());
            });
    }
}

void suite_open_question(Runner& run, std::uint64_t seed, std::size_t trials) {
    const auto corpus = concat(random_corpus(Lattice::grid({2, 2}), seed, trials),
                               random_corpus(Lattice::boolean(3), mix_seed(seed, 1u << 20), trials));
    std::size_t equal = 0, compared = 0;
    for (const auto& item : corpus) {
        const auto& m = item.module;
        const std::size_t n = m.lattice().dimension();
        if (n < 2) continue;
        run.check("both-orders-computable", item, [&] {
            const auto a = gamma_upper(t_upper(m, n - 1).module, n - 2).module;
            const auto b = t_upper(gamma_upper(m, n - 2).module, n - 1).module;
            ++compared;
            if (a.dims() == b.dims()) ++equal;
            else run.observe("dims differ", item.label + ": " + dims_string(a) + " vs " + dims_string(b));
            return Outcome{};
        });
    }
    run.observe("Gamma^{n-2} T^{n-1} F vs T^{n-1} Gamma^{n-2} F equal dims",
                std::to_string(equal) + " of " + std::to_string(compared));
}

using SuiteFn = void (*)(Runner&, std::uint64_t, std::size_t);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r = {
        {"table1", &suite_square_intervals},
        {"nonexample", &suite_nonexample},
        {"theorems-2param", &suite_theorems_2param},
        {"theorems-3param", &suite_theorems_3param},
        {"structural", &suite_structural},
        {"oracle", &suite_oracle},
        {"koszul-cubes", &suite_koszul_cubes},
        {"colimit-counterexample", &suite_colimit_counterexample},
        {"applications-image", &suite_applications_image},
        {"applications-rips", &suite_applications_rips},
        {"dual", &suite_dual},
        {"open-question", &suite_open_question},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : registry()) n.push_back(name);
        n.push_back("theorems");
        n.push_back("all");
        return n;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t trials) {
    std::vector<std::pair<std::string, SuiteFn>> selected;
    for (const auto& entry : registry())
        if (name == "all" || entry.first == name || (name == "theorems" && entry.first.starts_with("theorems-")))
            selected.push_back(entry);
    if (selected.empty()) throw UnknownSuite("unknown suite '" + name + "'");
    SuiteReport report;
    report.suite = name;
    report.seed = seed;
    report.trials = trials;
    if (trials == 0) return report;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [suite, fn] : selected) {
        Runner run(report, suite);
        fn(run, seed, trials);
    }
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string report_json(const SuiteReport& report, bool include_timing) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["trials"] = report.trials;
    j["passed"] = report.passed();
    j["failures"] = report.failures();
    if (include_timing) j["wall_seconds"] = report.wall_seconds;
    j["properties"] = nlohmann::ordered_json::array();
    for (const auto& p : report.properties) {
        nlohmann::ordered_json e;
        e["name"] = p.name;
        if (!p.tested_map.empty()) e["tested_map"] = p.tested_map;
        e["passed"] = p.passed;
        e["failed"] = p.failed;
        if (p.first_failure) {
            const auto& c = *p.first_failure;
            e["first_failure"] = {{"label", c.label}, {"detail", c.detail}, {"pmod", c.pmod}};
            if (c.seed) e["first_failure"]["seed"] = *c.seed;
        }
        j["properties"].push_back(std::move(e));
    }
    j["observations"] = nlohmann::ordered_json::array();
    for (const auto& o : report.observations) j["observations"].push_back({{"label", o.label}, {"value", o.value}});
    return j.dump(2);
}

}  // namespace crosscalc
