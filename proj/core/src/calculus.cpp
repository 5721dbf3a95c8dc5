#include "crosscalc/calculus.hpp"

#include <algorithm>

#include "crosscalc/errors.hpp"

namespace crosscalc {

namespace {

/// All transports F(u <= v) of a module, computed once.
class TransportTable {
public:
    explicit TransportTable(const PersistenceModule& m) : n_(m.lattice().size()), table_(n_ * n_) {
        const auto& l = m.lattice();
        for (Element u = 0; u < n_; ++u) {
            table_[u * n_ + u] = Matrix::identity(m.field(), m.dim(u));
            for (Element v : l.topological_order()) {
                if (!l.lt(u, v)) continue;
                for (Element w : l.parents(v))
                    if (l.leq(u, w)) {
                        table_[u * n_ + v] = m.cover_map(w, v) * *table_[u * n_ + w];
                        break;
                    }
            }
        }
    }
    [[nodiscard]] const Matrix& operator()(Element u, Element v) const { return *table_[u * n_ + v]; }

private:
    std::size_t n_;
    std::vector<std::optional<Matrix>> table_;
};

LocalDiagram layout(const PersistenceModule& m, std::span<const Element> subset) {
    LocalDiagram d;
    d.elements.assign(subset.begin(), subset.end());
    std::sort(d.elements.begin(), d.elements.end());
    d.elements.erase(std::unique(d.elements.begin(), d.elements.end()), d.elements.end());
    for (Element v : d.elements) {
        d.offsets.push_back(d.sum_dim);
        d.sum_dim += m.dim(v);
    }
    return d;
}

LocalDiagram colimit(const PersistenceModule& m, const TransportTable& tr, std::span<const Element> subset) {
    const auto& l = m.lattice();
    const Field f = m.field();
    LocalDiagram d = layout(m, subset);
    const auto covers = l.induced_covers(d.elements);
    std::size_t cols = 0;
    for (const auto& c : covers) cols += m.dim(c.lower);
    Matrix incidence(f, d.sum_dim, cols);
    std::size_t c0 = 0;
    for (const auto& c : covers) {
        const auto iu = *d.index_of(c.lower);
        const auto iv = *d.index_of(c.upper);
        incidence.place(d.offsets[iv], c0, tr(c.lower, c.upper));
        incidence.place(d.offsets[iu], c0, scale(Matrix::identity(f, m.dim(c.lower)), f.neg(1)));
        c0 += m.dim(c.lower);
    }
    d.presentation = cokernel_projection(incidence);
    d.section = right_inverse(d.presentation);
    return d;
}

LocalDiagram limit(const PersistenceModule& m, const TransportTable& tr, std::span<const Element> subset) {
    const auto& l = m.lattice();
    const Field f = m.field();
    LocalDiagram d = layout(m, subset);
    const auto covers = l.induced_covers(d.elements);
    std::size_t rows = 0;
    for (const auto& c : covers) rows += m.dim(c.upper);
    Matrix incidence(f, rows, d.sum_dim);
    std::size_t r0 = 0;
    for (const auto& c : covers) {
        const auto iu = *d.index_of(c.lower);
        const auto iv = *d.index_of(c.upper);
        incidence.place(r0, d.offsets[iu], tr(c.lower, c.upper));
        incidence.place(r0, d.offsets[iv], scale(Matrix::identity(f, m.dim(c.upper)), f.neg(1)));
        r0 += m.dim(c.upper);
    }
    d.is_limit = true;
    d.presentation = kernel_basis(incidence);
    return d;
}

/// Embedding of the sum over `small` into the sum over `big` (small a subset of big).
Matrix embedding(const PersistenceModule& m, const LocalDiagram& small, const LocalDiagram& big) {
    Matrix e(m.field(), big.sum_dim, small.sum_dim);
    for (std::size_t i = 0; i < small.elements.size(); ++i) {
        const auto j = *big.index_of(small.elements[i]);
        e.place(big.offsets[j], small.offsets[i], Matrix::identity(m.field(), m.dim(small.elements[i])));
    }
    return e;
}

/// Block-diagonal sum of alpha over the elements of d (source layout in df, target layout in dg).
Matrix block_alpha(const NatTrans& alpha, const LocalDiagram& df, const LocalDiagram& dg) {
    Matrix out(alpha.source().field(), dg.sum_dim, df.sum_dim);
    for (std::size_t i = 0; i < df.elements.size(); ++i) out.place(dg.offsets[i], df.offsets[i], alpha.component(df.elements[i]));
    return out;
}

void require_same_shape(const ApproxResult& f, const ApproxResult& g, ApproxKind kind) {
    if (f.kind != kind || g.kind != kind || f.n != g.n)
        throw InvalidArgument("approximations of different kind or order");
}

std::vector<Matrix> component_list(std::size_t n) { return std::vector<Matrix>(n); }

}  // namespace

Matrix LocalDiagram::leg(std::size_t index, const PersistenceModule& m) const {
    const auto d = m.dim(elements.at(index));
    return is_limit ? presentation.rows_range(offsets[index], d) : presentation.columns(offsets[index], d);
}

std::optional<std::size_t> LocalDiagram::index_of(Element v) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), v);
    if (it == elements.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - elements.begin());
}

std::vector<Element> lower_index(const Lattice& l, Element x, std::size_t n) {
    std::vector<Element> out;
    for (Element v = 0; v < l.size(); ++v)
        if (l.leq(v, x) && l.jdim(v) <= n) out.push_back(v);
    return out;
}

std::vector<Element> upper_index(const Lattice& l, Element x, std::size_t n) {
    std::vector<Element> out;
    for (Element v = 0; v < l.size(); ++v)
        if (l.leq(x, v) && l.mdim(v) <= n) out.push_back(v);
    return out;
}

LocalDiagram colim_over_downset(const PersistenceModule& m, Element x, std::span<const Element> subset) {
    const auto& l = m.lattice();
    for (Element v : subset)
        if (v >= l.size() || !l.leq(v, x)) throw NotBelow("diagram element is not below " + l.name(x));
    return colimit(m, TransportTable(m), subset);
}

LocalDiagram lim_over_upset(const PersistenceModule& m, Element x, std::span<const Element> subset) {
    const auto& l = m.lattice();
    for (Element v : subset)
        if (v >= l.size() || !l.leq(x, v)) throw NotAbove("diagram element is not above " + l.name(x));
    return limit(m, TransportTable(m), subset);
}

ApproxResult t_lower(const PersistenceModule& m, std::size_t n) {
    const auto& l = m.lattice();
    const Field f = m.field();
    const TransportTable tr(m);
    std::vector<LocalDiagram> local;
    std::vector<std::size_t> dims;
    for (Element x = 0; x < l.size(); ++x) {
        local.push_back(colimit(m, tr, lower_index(l, x, n)));
        dims.push_back(local.back().presentation.rows());
    }
    std::vector<Matrix> maps;
    for (const auto [x, y] : l.covers()) {
        const Matrix j = embedding(m, local[x], local[y]);
        Matrix c = local[y].presentation * j * local[x].section;
        if (!(c * local[x].presentation == local[y].presentation * j))
            throw InternalError("T_n cover map on " + l.name(x) + " < " + l.name(y) + " is not well defined");
        maps.push_back(std::move(c));
    }
    PersistenceModule t(m.lattice_ptr(), f, std::move(dims), std::move(maps));
    std::vector<Matrix> eps;
    for (Element x = 0; x < l.size(); ++x) {
        const auto& d = local[x];
        Matrix legs(f, m.dim(x), d.sum_dim);
        for (std::size_t i = 0; i < d.elements.size(); ++i) legs.place(0, d.offsets[i], tr(d.elements[i], x));
        Matrix e = legs * d.section;
        if (!(e * d.presentation == legs)) throw InternalError("eps_n at " + l.name(x) + " is not well defined");
        eps.push_back(std::move(e));
    }
    NatTrans canonical(t, m, std::move(eps));
    return {ApproxKind::t_lower, n, t, std::move(canonical), std::move(local)};
}

ApproxResult t_upper(const PersistenceModule& m, std::size_t n) {
    const auto& l = m.lattice();
    const Field f = m.field();
    const TransportTable tr(m);
    std::vector<LocalDiagram> local;
    std::vector<std::size_t> dims;
    for (Element x = 0; x < l.size(); ++x) {
        local.push_back(limit(m, tr, upper_index(l, x, n)));
        dims.push_back(local.back().presentation.cols());
    }
    std::vector<Matrix> maps;
    for (const auto [x, y] : l.covers()) {
        // restrict a cone over U_x to U_y, a subset of U_x
        const Matrix restricted = embedding(m, local[y], local[x]).transpose() * local[x].presentation;
        auto c = solve(local[y].presentation, restricted);
        if (!c) throw InternalError("T^n cover map on " + l.name(x) + " < " + l.name(y) + " is not well defined");
        maps.push_back(*std::move(c));
    }
    PersistenceModule t(m.lattice_ptr(), f, std::move(dims), std::move(maps));
    std::vector<Matrix> eta;
    for (Element x = 0; x < l.size(); ++x) {
        const auto& d = local[x];
        Matrix legs(f, d.sum_dim, m.dim(x));
        for (std::size_t i = 0; i < d.elements.size(); ++i) legs.place(d.offsets[i], 0, tr(x, d.elements[i]));
        auto e = solve(d.presentation, legs);
        if (!e) throw InternalError("eta_n at " + l.name(x) + " does not land in the limit");
        eta.push_back(*std::move(e));
    }
    NatTrans canonical(m, t, std::move(eta));
    return {ApproxKind::t_upper, n, t, std::move(canonical), std::move(local)};
}

ApproxResult gamma_lower(const PersistenceModule& m, std::size_t n) {
    const auto t = t_lower(m, n);
    auto im = image_of(t.canonical);
    return {ApproxKind::gamma_lower, n, im.module, std::move(im.into_target), {}};
}

ApproxResult gamma_upper(const PersistenceModule& m, std::size_t n) {
    const auto t = t_upper(m, n);
    auto im = image_of(t.canonical);
    return {ApproxKind::gamma_upper, n, im.module, std::move(im.from_source), {}};
}

ApproxResult cr_lower(const PersistenceModule& m, std::size_t n) {
    const auto t = t_lower(m, n);
    auto cok = cokernel_of(t.canonical);
    return {ApproxKind::cr_lower, n, cok.module, std::move(cok.projection), {}};
}

ApproxResult cr_upper(const PersistenceModule& m, std::size_t n) {
    const auto t = t_upper(m, n);
    auto ker = kernel_of(t.canonical);
    return {ApproxKind::cr_upper, n, ker.module, std::move(ker.inclusion), {}};
}

ApproxResult approximate(const PersistenceModule& m, ApproxKind kind, std::size_t n) {
    switch (kind) {
        case ApproxKind::t_lower:
            return t_lower(m, n);
        case ApproxKind::t_upper:
            return t_upper(m, n);
        case ApproxKind::gamma_lower:
            return gamma_lower(m, n);
        case ApproxKind::gamma_upper:
            return gamma_upper(m, n);
        case ApproxKind::cr_lower:
            return cr_lower(m, n);
        case ApproxKind::cr_upper:
            return cr_upper(m, n);
    }
    throw InternalError("unknown approximation kind");
}

NatTrans t_lower_map(const ApproxResult& f, const ApproxResult& g, const NatTrans& alpha) {
    require_same_shape(f, g, ApproxKind::t_lower);
    auto comps = component_list(f.local.size());
    for (Element x = 0; x < comps.size(); ++x)
        comps[x] = g.local[x].presentation * block_alpha(alpha, f.local[x], g.local[x]) * f.local[x].section;
    return {f.module, g.module, std::move(comps)};
}

NatTrans t_upper_map(const ApproxResult& f, const ApproxResult& g, const NatTrans& alpha) {
    require_same_shape(f, g, ApproxKind::t_upper);
    auto comps = component_list(f.local.size());
    for (Element x = 0; x < comps.size(); ++x) {
        auto c = solve(g.local[x].presentation, block_alpha(alpha, f.local[x], g.local[x]) * f.local[x].presentation);
        if (!c) throw InternalError("T^n(alpha) does not land in the limit");
        comps[x] = *std::move(c);
    }
    return {f.module, g.module, std::move(comps)};
}

NatTrans gamma_lower_map(const ApproxResult& f, const ApproxResult& g, const NatTrans& alpha) {
    require_same_shape(f, g, ApproxKind::gamma_lower);
    auto comps = component_list(alpha.components().size());
    for (Element x = 0; x < comps.size(); ++x)
        comps[x] = factor_through(alpha.component(x) * f.canonical.component(x), g.canonical.component(x));
    return {f.module, g.module, std::move(comps)};
}

NatTrans gamma_upper_map(const ApproxResult& f, const ApproxResult& g, const NatTrans& alpha) {
    require_same_shape(f, g, ApproxKind::gamma_upper);
    auto comps = component_list(alpha.components().size());
    for (Element x = 0; x < comps.size(); ++x)
        comps[x] = g.canonical.component(x) * alpha.component(x) * right_inverse(f.canonical.component(x));
    return {f.module, g.module, std::move(comps)};
}

NatTrans gamma_lower_map(const NatTrans& alpha, std::size_t n) {
    return gamma_lower_map(gamma_lower(alpha.source(), n), gamma_lower(alpha.target(), n), alpha);
}

NatTrans gamma_upper_map(const NatTrans& alpha, std::size_t n) {
    return gamma_upper_map(gamma_upper(alpha.source(), n), gamma_upper(alpha.target(), n), alpha);
}

bool is_cocartesian(const VecCube& cube) {
    const auto h = koszul_homologies(koszul(cube));
    return h[0] == 0 && (h.size() < 2 || h[1] == 0);
}

bool is_cartesian(const VecCube& cube) {
    const auto h = koszul_homologies(koszul(cube));
    const std::size_t k = cube.arity();
    return h[k] == 0 && (k == 0 || h[k - 1] == 0);
}

namespace {

PredicateResult brute_force(const PersistenceModule& m, std::size_t n, const std::function<bool(const VecCube&)>& ok) {
    PredicateResult result;
    const TransportTable tr(m);
    for_each_bicartesian_cube(m.lattice(), n + 1, [&](const LatticeCube& cube) {
        const std::size_t k = cube.arity;
        std::vector<std::size_t> dims(std::size_t{1} << k);
        std::vector<Matrix> edges(dims.size() * k);
        for (Subset s = 0; s < dims.size(); ++s) {
            dims[s] = m.dim(cube.at(s));
            for (std::size_t i = 0; i < k; ++i)
                if (!(s & (Subset{1} << i))) edges[s * k + i] = tr(cube.at(s), cube.at(s | (Subset{1} << i)));
        }
        if (ok(VecCube(m.field(), k, std::move(dims), std::move(edges)))) return true;
        result.holds = false;
        result.witness = cube;
        return false;
    });
    return result;
}

PredicateResult from_bool(bool b) {
    PredicateResult r;
    r.holds = b;
    return r;
}

template <class Pred>
std::size_t least_n(const PersistenceModule& m, Pred pred, const char* what) {
    const std::size_t dim = m.lattice().dimension();
    for (std::size_t n = 0; n <= dim; ++n)
        if (pred(n)) return n;
    throw InternalError(std::string(what) + " exceeds the lattice dimension");
}

}  // namespace

PredicateResult is_codegree(const PersistenceModule& m, std::size_t n, PredicatePath path) {
    if (path == PredicatePath::fast) return from_bool(is_iso(t_lower(m, n).canonical));
    return brute_force(m, n, [](const VecCube& c) { return is_cocartesian(c); });
}

PredicateResult is_degree(const PersistenceModule& m, std::size_t n, PredicatePath path) {
    if (path == PredicatePath::fast) return from_bool(is_iso(t_upper(m, n).canonical));
    return brute_force(m, n, [](const VecCube& c) { return is_cartesian(c); });
}

PredicateResult is_cross_codegree(const PersistenceModule& m, std::size_t n, PredicatePath path) {
    if (path == PredicatePath::fast) return from_bool(is_epi(t_lower(m, n).canonical));
    return brute_force(m, n, [](const VecCube& c) { return tcofib(c) == 0; });
}

PredicateResult is_cross_degree(const PersistenceModule& m, std::size_t n, PredicatePath path) {
    if (path == PredicatePath::fast) return from_bool(is_mono(t_upper(m, n).canonical));
    return brute_force(m, n, [](const VecCube& c) { return tfib(c) == 0; });
}

std::size_t min_degree(const PersistenceModule& m, PredicatePath path) {
    return least_n(m, [&](std::size_t n) { return is_degree(m, n, path).holds; }, "degree");
}

std::size_t min_codegree(const PersistenceModule& m, PredicatePath path) {
    return least_n(m, [&](std::size_t n) { return is_codegree(m, n, path).holds; }, "codegree");
}

std::size_t min_cross_degree(const PersistenceModule& m, PredicatePath path) {
    return least_n(m, [&](std::size_t n) { return is_cross_degree(m, n, path).holds; }, "cross-degree");
}

std::size_t min_cross_codegree(const PersistenceModule& m, PredicatePath path) {
    return least_n(m, [&](std::size_t n) { return is_cross_codegree(m, n, path).holds; }, "cross-codegree");
}

}  // namespace crosscalc
