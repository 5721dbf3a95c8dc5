#include "crosscalc/module.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "crosscalc/errors.hpp"

namespace crosscalc {

namespace {

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_same_lattice(const PersistenceModule& a, const PersistenceModule& b, const char* what) {
    if (a.lattice_ptr() != b.lattice_ptr() && !(a.lattice() == b.lattice()))
        throw LatticeMismatch(std::string(what) + ": modules live on different lattices");
    if (!(a.field() == b.field())) throw LatticeMismatch(std::string(what) + ": modules live over different fields");
}

}  // namespace

PersistenceModule::PersistenceModule(LatticePtr lattice, Field field, std::vector<std::size_t> dims,
                                     std::vector<Matrix> cover_maps) {
    if (!lattice) throw InvalidArgument("persistence module needs a lattice");
    const auto& l = *lattice;
    if (dims.size() != l.size())
        throw ShapeMismatch("expected " + std::to_string(l.size()) + " dimensions, got " + std::to_string(dims.size()));
    if (cover_maps.size() != l.covers().size())
        throw ShapeMismatch("expected " + std::to_string(l.covers().size()) + " cover maps, got " +
                            std::to_string(cover_maps.size()));
    for (std::size_t i = 0; i < cover_maps.size(); ++i) {
        const auto [u, v] = l.covers()[i];
        const auto& m = cover_maps[i];
        if (m.rows() != dims[v] || m.cols() != dims[u])
            throw ShapeMismatch("map " + l.name(u) + "<" + l.name(v) + " has shape " + shape(m) + ", expected " +
                                std::to_string(dims[v]) + "x" + std::to_string(dims[u]));
        if (!(m.field() == field)) throw ShapeMismatch("map " + l.name(u) + "<" + l.name(v) + " is over another field");
    }
    data_ = std::make_shared<const Data>(Data{std::move(lattice), field, std::move(dims), std::move(cover_maps)});
}

PersistenceModule PersistenceModule::zero(LatticePtr lattice, Field field) {
    const auto n = lattice->size();
    std::vector<Matrix> maps(lattice->covers().size(), Matrix(field, 0, 0));
    return {std::move(lattice), field, std::vector<std::size_t>(n, 0), std::move(maps)};
}

std::size_t PersistenceModule::total_dim() const noexcept {
    return std::accumulate(data_->dims.begin(), data_->dims.end(), std::size_t{0});
}

const Matrix& PersistenceModule::cover_map(Element lower, Element upper) const {
    const auto idx = lattice().cover_index(lower, upper);
    if (!idx) throw NotComparable(lattice().name(lower) + " < " + lattice().name(upper) + " is not a cover");
    return data_->maps[*idx];
}

Matrix PersistenceModule::transport(Element u, Element v) const {
    const auto& l = lattice();
    if (!l.leq(u, v)) throw NotComparable(l.name(u) + " is not below " + l.name(v));
    std::vector<std::size_t> chain;
    for (Element cur = v; cur != u;) {
        const auto& ps = l.parents(cur);
        auto it = std::find_if(ps.begin(), ps.end(), [&](Element w) { return l.leq(u, w); });
        chain.push_back(*l.cover_index(*it, cur));
        cur = *it;
    }
    Matrix m = Matrix::identity(field(), dim(u));
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) m = data_->maps[*it] * m;
    return m;
}

bool operator==(const PersistenceModule& a, const PersistenceModule& b) {
    if (a.data_ == b.data_) return true;
    if (a.lattice_ptr() != b.lattice_ptr() && !(a.lattice() == b.lattice())) return false;
    return a.field() == b.field() && a.dims() == b.dims() && a.cover_maps() == b.cover_maps();
}

std::optional<FunctorViolation> validate_functor(const PersistenceModule& m) {
    const auto& l = m.lattice();
    const auto& topo = l.topological_order();
    std::vector<std::optional<Matrix>> from_u(l.size());
    std::vector<Element> via(l.size());
    for (Element u = 0; u < l.size(); ++u) {
        std::fill(from_u.begin(), from_u.end(), std::nullopt);
        from_u[u] = Matrix::identity(m.field(), m.dim(u));
        for (Element v : topo) {
            if (!l.lt(u, v)) continue;
            for (Element w : l.parents(v)) {
                if (!l.leq(u, w)) continue;
                Matrix candidate = m.cover_map(w, v) * *from_u[w];
                if (!from_u[v]) {
                    from_u[v] = std::move(candidate);
                    via[v] = w;
                } else if (!(candidate == *from_u[v])) {
                    return FunctorViolation{u, v, via[v], w,
                                            "transport " + l.name(u) + " -> " + l.name(v) + " differs through " +
                                                l.name(via[v]) + " and " + l.name(w)};
                }
            }
        }
    }
    return std::nullopt;
}

void require_functor(const PersistenceModule& m) {
    if (auto bad = validate_functor(m)) throw NonCommutingSquare(bad->message);
}

NatTrans::NatTrans(PersistenceModule source, PersistenceModule target, std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    require_same_lattice(source_, target_, "natural transformation");
    const auto& l = source_.lattice();
    if (components_.size() != l.size()) throw ShapeMismatch("one component per element expected");
    for (Element x = 0; x < l.size(); ++x)
        if (components_[x].rows() != target_.dim(x) || components_[x].cols() != source_.dim(x))
            throw ShapeMismatch("component at " + l.name(x) + " has shape " + shape(components_[x]) + ", expected " +
                                std::to_string(target_.dim(x)) + "x" + std::to_string(source_.dim(x)));
}

NatTrans NatTrans::identity(const PersistenceModule& m) {
    std::vector<Matrix> comps;
    for (Element x = 0; x < m.lattice().size(); ++x) comps.push_back(Matrix::identity(m.field(), m.dim(x)));
    return {m, m, std::move(comps)};
}

NatTrans NatTrans::zero(const PersistenceModule& source, const PersistenceModule& target) {
    std::vector<Matrix> comps;
    for (Element x = 0; x < source.lattice().size(); ++x)
        comps.emplace_back(source.field(), target.dim(x), source.dim(x));
    return {source, target, std::move(comps)};
}

std::optional<Cover> naturality_violation(const NatTrans& nt) {
    const auto& l = nt.source().lattice();
    for (std::size_t i = 0; i < l.covers().size(); ++i) {
        const auto c = l.covers()[i];
        if (!(nt.target().cover_map(i) * nt.component(c.lower) == nt.component(c.upper) * nt.source().cover_map(i)))
            return c;
    }
    return std::nullopt;
}

void require_natural(const NatTrans& nt) {
    if (auto c = naturality_violation(nt)) {
        const auto& l = nt.source().lattice();
        throw NotNatural("naturality square fails on " + l.name(c->lower) + " < " + l.name(c->upper));
    }
}

NatTrans compose(const NatTrans& second, const NatTrans& first) {
    if (!(first.target() == second.source())) throw LatticeMismatch("compose: target and source differ");
    std::vector<Matrix> comps;
    for (Element x = 0; x < first.source().lattice().size(); ++x)
        comps.push_back(second.component(x) * first.component(x));
    return {first.source(), second.target(), std::move(comps)};
}

NatTrans direct_sum(const NatTrans& a, const NatTrans& b) {
    std::vector<Matrix> comps;
    for (Element x = 0; x < a.source().lattice().size(); ++x)
        comps.push_back(direct_sum(a.component(x), b.component(x)));
    return {direct_sum(a.source(), b.source()), direct_sum(a.target(), b.target()), std::move(comps)};
}

bool is_iso(const NatTrans& nt) {
    return std::all_of(nt.components().begin(), nt.components().end(), [](const Matrix& m) { return is_invertible(m); });
}

bool is_mono(const NatTrans& nt) {
    return std::all_of(nt.components().begin(), nt.components().end(), [](const Matrix& m) { return is_injective(m); });
}

bool is_epi(const NatTrans& nt) {
    return std::all_of(nt.components().begin(), nt.components().end(),
                       [](const Matrix& m) { return is_surjective(m); });
}

std::vector<std::size_t> ranks(const NatTrans& nt) {
    std::vector<std::size_t> out;
    for (const auto& m : nt.components()) out.push_back(rank(m));
    return out;
}

namespace {

/// Cover maps of a pointwise subspace given by bases, induced from `ambient`.
std::vector<Matrix> induced_sub_maps(const PersistenceModule& ambient, const std::vector<Matrix>& bases) {
    const auto& l = ambient.lattice();
    std::vector<Matrix> maps;
    maps.reserve(l.covers().size());
    for (std::size_t i = 0; i < l.covers().size(); ++i) {
        const auto [u, v] = l.covers()[i];
        auto h = solve(bases[v], ambient.cover_map(i) * bases[u]);
        if (!h) throw InternalError("subspace at " + l.name(u) + " does not map into subspace at " + l.name(v));
        maps.push_back(*std::move(h));
    }
    return maps;
}

std::vector<std::size_t> column_counts(const std::vector<Matrix>& ms) {
    std::vector<std::size_t> out;
    for (const auto& m : ms) out.push_back(m.cols());
    return out;
}

}  // namespace

ImageResult image_of(const NatTrans& nt) {
    require_natural(nt);
    const auto& target = nt.target();
    std::vector<Matrix> bases;
    for (const auto& c : nt.components()) bases.push_back(image_basis(c));
    PersistenceModule im(target.lattice_ptr(), target.field(), column_counts(bases), induced_sub_maps(target, bases));
    std::vector<Matrix> onto;
    for (Element x = 0; x < bases.size(); ++x) onto.push_back(factor_through(nt.component(x), bases[x]));
    NatTrans from(nt.source(), im, std::move(onto));
    NatTrans into(im, target, std::move(bases));
    return {im, std::move(from), std::move(into)};
}

KernelResult kernel_of(const NatTrans& nt) {
    require_natural(nt);
    const auto& source = nt.source();
    std::vector<Matrix> bases;
    for (const auto& c : nt.components()) bases.push_back(kernel_basis(c));
    PersistenceModule ker(source.lattice_ptr(), source.field(), column_counts(bases), induced_sub_maps(source, bases));
    NatTrans inc(ker, source, std::move(bases));
    return {ker, std::move(inc)};
}

CokernelResult cokernel_of(const NatTrans& nt) {
    require_natural(nt);
    const auto& target = nt.target();
    const auto& l = target.lattice();
    std::vector<Matrix> proj, sections;
    std::vector<std::size_t> dims;
    for (const auto& c : nt.components()) {
        proj.push_back(cokernel_projection(c));
        sections.push_back(right_inverse(proj.back()));
        dims.push_back(proj.back().rows());
    }
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i < l.covers().size(); ++i) {
        const auto [u, v] = l.covers()[i];
        Matrix m = proj[v] * target.cover_map(i) * sections[u];
        if (!(m * proj[u] == proj[v] * target.cover_map(i)))
            throw InternalError("cokernel map on " + l.name(u) + " < " + l.name(v) + " is not well defined");
        maps.push_back(std::move(m));
    }
    PersistenceModule cok(target.lattice_ptr(), target.field(), std::move(dims), std::move(maps));
    NatTrans q(target, cok, std::move(proj));
    return {cok, std::move(q)};
}

PersistenceModule interval_module(LatticePtr lattice, Field field, std::span<const Element> support) {
    const auto& l = *lattice;
    std::vector<bool> in(l.size(), false);
    for (Element e : support) {
        if (e >= l.size()) throw UnknownElement("element index " + std::to_string(e) + " out of range");
        in[e] = true;
    }
    std::vector<Element> members;
    for (Element e = 0; e < l.size(); ++e)
        if (in[e]) members.push_back(e);
    if (members.empty()) throw NotConnected("interval support is empty");
    for (Element x : members)
        for (Element z : members)
            if (l.leq(x, z))
                for (Element y : l.interval(x, z))
                    if (!in[y])
                        throw NotConvex(l.name(y) + " lies between " + l.name(x) + " and " + l.name(z) +
                                        " but is not in the support");
    // connectivity through Hasse edges inside the support
    std::vector<bool> seen(l.size(), false);
    std::vector<Element> stack{members.front()};
    seen[members.front()] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
        const Element x = stack.back();
        stack.pop_back();
        ++reached;
        auto visit = [&](Element y) {
            if (in[y] && !seen[y]) {
                seen[y] = true;
                stack.push_back(y);
            }
        };
        for (Element y : l.parents(x)) visit(y);
        for (Element y : l.children(x)) visit(y);
    }
    if (reached != members.size()) throw NotConnected("interval support is not connected");

    std::vector<std::size_t> dims(l.size());
    for (Element e = 0; e < l.size(); ++e) dims[e] = in[e] ? 1 : 0;
    std::vector<Matrix> maps;
    for (const auto [u, v] : l.covers())
        maps.push_back(in[u] && in[v] ? Matrix::identity(field, 1) : Matrix(field, dims[v], dims[u]));
    return {std::move(lattice), field, std::move(dims), std::move(maps)};
}

PersistenceModule free_module(LatticePtr lattice, Field field, std::span<const Generator> generators) {
    const auto& l = *lattice;
    // basis at x: generator copies with site <= x, in input order
    auto basis_at = [&](Element x) {
        std::vector<std::size_t> ids;
        std::size_t id = 0;
        for (const auto& g : generators) {
            for (std::size_t k = 0; k < g.multiplicity; ++k, ++id)
                if (l.leq(g.at, x)) ids.push_back(id);
        }
        return ids;
    };
    std::vector<std::vector<std::size_t>> bases;
    std::vector<std::size_t> dims;
    for (Element x = 0; x < l.size(); ++x) {
        bases.push_back(basis_at(x));
        dims.push_back(bases.back().size());
    }
    std::vector<Matrix> maps;
    for (const auto [u, v] : l.covers()) {
        Matrix m(field, dims[v], dims[u]);
        for (std::size_t c = 0; c < bases[u].size(); ++c) {
            auto it = std::lower_bound(bases[v].begin(), bases[v].end(), bases[u][c]);
            m.set(static_cast<std::size_t>(it - bases[v].begin()), c, 1);
        }
        maps.push_back(std::move(m));
    }
    return {std::move(lattice), field, std::move(dims), std::move(maps)};
}

NatTrans free_presentation_map(LatticePtr lattice, Field field, std::span<const Element> generator_sites,
                               std::span<const Element> relation_sites,
                               const std::vector<std::vector<Field::Scalar>>& coefficients) {
    std::vector<Generator> g0, g1;
    for (Element a : generator_sites) g0.push_back({a, 1});
    for (Element b : relation_sites) g1.push_back({b, 1});
    const auto q0 = free_module(lattice, field, g0);
    const auto q1 = free_module(lattice, field, g1);
    const auto& l = *lattice;
    std::vector<Matrix> comps;
    for (Element x = 0; x < l.size(); ++x) {
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < generator_sites.size(); ++i)
            if (l.leq(generator_sites[i], x)) rows.push_back(i);
        for (std::size_t j = 0; j < relation_sites.size(); ++j)
            if (l.leq(relation_sites[j], x)) cols.push_back(j);
        Matrix m(field, rows.size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const auto i = rows[r];
                const auto j = cols[c];
                if (l.leq(generator_sites[i], relation_sites[j])) m.set(r, c, field.reduce(coefficients.at(j).at(i)));
            }
        comps.push_back(std::move(m));
    }
    return {q1, q0, std::move(comps)};
}

PersistenceModule direct_sum(const PersistenceModule& a, const PersistenceModule& b) {
    require_same_lattice(a, b, "direct_sum");
    std::vector<std::size_t> dims;
    for (Element x = 0; x < a.lattice().size(); ++x) dims.push_back(a.dim(x) + b.dim(x));
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i < a.cover_maps().size(); ++i) maps.push_back(direct_sum(a.cover_map(i), b.cover_map(i)));
    return {a.lattice_ptr(), a.field(), std::move(dims), std::move(maps)};
}

PersistenceModule random_module(LatticePtr lattice, Field field, std::uint64_t seed, RandomModuleParams params) {
    Rng rng(seed);
    const auto n = lattice->size();
    const auto g0 = rng.below(params.max_generators + 1);
    const auto g1 = rng.below(params.max_relations + 1);
    std::vector<Element> gens, rels;
    for (std::size_t i = 0; i < g0; ++i) gens.push_back(rng.below(n));
    for (std::size_t j = 0; j < g1; ++j) rels.push_back(rng.below(n));
    std::vector<std::vector<Field::Scalar>> coeffs(g1, std::vector<Field::Scalar>(g0, 0));
    for (std::size_t j = 0; j < g1; ++j)
        for (std::size_t i = 0; i < g0; ++i)
            if (lattice->leq(gens[i], rels[j])) coeffs[j][i] = static_cast<Field::Scalar>(rng.below(field.p()));
    return cokernel_of(free_presentation_map(lattice, field, gens, rels, coeffs)).module;
}

std::vector<NatTrans> hom_basis(const PersistenceModule& source, const PersistenceModule& target) {
    require_same_lattice(source, target, "hom_basis");
    const auto& l = source.lattice();
    const Field f = source.field();
    std::vector<std::size_t> offset(l.size() + 1, 0);
    for (Element x = 0; x < l.size(); ++x) offset[x + 1] = offset[x] + target.dim(x) * source.dim(x);
    const std::size_t unknowns = offset.back();
    auto var = [&](Element x, std::size_t r, std::size_t c) { return offset[x] + r * source.dim(x) + c; };

    std::size_t equations = 0;
    for (const auto [u, v] : l.covers()) equations += target.dim(v) * source.dim(u);
    Matrix system(f, equations, unknowns);
    std::size_t row = 0;
    for (std::size_t i = 0; i < l.covers().size(); ++i) {
        const auto [u, v] = l.covers()[i];
        const auto& tf = target.cover_map(i);
        const auto& sg = source.cover_map(i);
        // (T A_u - A_v S)[r, c] = 0
        for (std::size_t r = 0; r < target.dim(v); ++r)
            for (std::size_t c = 0; c < source.dim(u); ++c, ++row) {
                for (std::size_t k = 0; k < target.dim(u); ++k)
                    if (tf(r, k)) system.set(row, var(u, k, c), f.add(system(row, var(u, k, c)), tf(r, k)));
                for (std::size_t k = 0; k < source.dim(v); ++k)
                    if (sg(k, c)) system.set(row, var(v, r, k), f.sub(system(row, var(v, r, k)), sg(k, c)));
            }
    }
    const Matrix basis = kernel_basis(system);
    std::vector<NatTrans> out;
    for (std::size_t b = 0; b < basis.cols(); ++b) {
        std::vector<Matrix> comps;
        for (Element x = 0; x < l.size(); ++x) {
            Matrix m(f, target.dim(x), source.dim(x));
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, basis(var(x, r, c), b));
            comps.push_back(std::move(m));
        }
        out.emplace_back(source, target, std::move(comps));
    }
    return out;
}

NatTrans random_natural_transformation(const PersistenceModule& source, const PersistenceModule& target, Rng& rng) {
    const auto basis = hom_basis(source, target);
    const Field f = source.field();
    std::vector<Matrix> comps = NatTrans::zero(source, target).components();
    for (const auto& b : basis) {
        const auto s = static_cast<Field::Scalar>(rng.below(f.p()));
        if (s == 0) continue;
        for (Element x = 0; x < comps.size(); ++x) comps[x] = comps[x] + scale(b.component(x), s);
    }
    return {source, target, std::move(comps)};
}

PersistenceModule dual_module(const PersistenceModule& m) {
    auto op = m.lattice().opposite();
    std::vector<Matrix> maps;
    for (const auto [lower, upper] : op->covers()) maps.push_back(m.cover_map(upper, lower).transpose());
    return {op, m.field(), m.dims(), std::move(maps)};
}

}  // namespace crosscalc
