#include "crosscalc/resolution.hpp"

#include <algorithm>

#include "crosscalc/calculus.hpp"
#include "crosscalc/cube.hpp"
#include "crosscalc/errors.hpp"

namespace crosscalc {

std::size_t BettiDiagram::total(std::size_t i) const {
    std::size_t s = 0;
    for (Element a = 0; a < table_.size(); ++a) s += at(a, i);
    return s;
}

int BettiDiagram::max_degree() const {
    int best = -1;
    for (const auto& row : table_)
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i] != 0) best = std::max(best, static_cast<int>(i));
    return best;
}

BettiDiagram betti(const PersistenceModule& m) {
    const auto& l = m.lattice();
    std::vector<std::vector<std::size_t>> table;
    for (Element a = 0; a < l.size(); ++a)
        table.push_back(koszul_homologies(koszul(restrict_along_cube(m, parent_cube(l, a)))));
    return BettiDiagram(std::move(table));
}

int pdim(const PersistenceModule& m) { return betti(m).max_degree(); }

BettiDiagram injective_betti(const PersistenceModule& m) { return betti(dual_module(m)); }

int injective_dimension(const PersistenceModule& m) { return injective_betti(m).max_degree(); }

std::string PdimReport::describe() const {
    std::string s = "n=" + std::to_string(n) + " (";
    for (std::size_t i = 0; i < 3; ++i) s += std::string(i ? ", " : "") + (conditions[i] ? "true" : "false");
    s += ")";
    if (!hypothesis_holds) s += " hypothesis violated";
    return s;
}

namespace {

std::size_t resolve_n(const PersistenceModule& m, std::optional<std::size_t> n, std::size_t min, PdimReport& report) {
    const std::size_t dim = m.lattice().dimension();
    report.n = n.value_or(dim);
    report.hypothesis_holds = report.n == dim;
    if (report.n < min)
        throw UnsupportedDimension("theorem needs dimension at least " + std::to_string(min) + ", got " +
                                   std::to_string(report.n));
    return report.n;
}

void enforce(const PdimReport& r, const char* which) {
    if (r.hypothesis_holds && !r.consistent())
        throw EquivalenceViolated(std::string(which) + " conditions disagree: " + r.describe());
}

}  // namespace

PdimReport check_pdim_theorem_1(const PersistenceModule& m, std::optional<std::size_t> n_override) {
    PdimReport r;
    const std::size_t n = resolve_n(m, n_override, 1, r);
    r.conditions[0] = pdim(m) <= static_cast<int>(n) - 1;
    r.conditions[1] = is_cross_degree(m, n - 1, PredicatePath::brute_force).holds;
    r.conditions[2] = is_iso(gamma_upper(m, n - 1).canonical);
    enforce(r, "pdim theorem 1");
    return r;
}

PdimReport check_pdim_theorem_2(const PersistenceModule& m, std::optional<std::size_t> n_override) {
    PdimReport r;
    const std::size_t n = resolve_n(m, n_override, 2, r);
    r.conditions[0] = pdim(m) <= static_cast<int>(n) - 2;
    r.conditions[1] = is_degree(m, n - 1, PredicatePath::brute_force).holds &&
                      is_cross_degree(m, n - 2, PredicatePath::brute_force).holds;
    const auto g = gamma_upper(m, n - 2);
    const auto t = t_upper(g.module, n - 1);
    r.conditions[2] = is_iso(compose(t.canonical, g.canonical));
    enforce(r, "pdim theorem 2");
    return r;
}

}  // namespace crosscalc
