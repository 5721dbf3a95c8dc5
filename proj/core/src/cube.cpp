#include "crosscalc/cube.hpp"

#include <algorithm>
#include <bit>

#include "crosscalc/errors.hpp"

namespace crosscalc {

VecCube::VecCube(Field field, std::size_t arity, std::vector<std::size_t> dims, std::vector<Matrix> edges)
    : field_(field), arity_(arity), dims_(std::move(dims)), edges_(std::move(edges)) {
    if (arity_ >= 31) throw UnsupportedDimension("cube arity " + std::to_string(arity_) + " is too large");
    const std::size_t n = std::size_t{1} << arity_;
    if (dims_.size() != n) throw ShapeMismatch("cube needs " + std::to_string(n) + " dimensions");
    if (edges_.size() != n * arity_) throw ShapeMismatch("cube needs " + std::to_string(n * arity_) + " edge slots");
    for (Subset s = 0; s < n; ++s)
        for (std::size_t i = 0; i < arity_; ++i) {
            if (s & (Subset{1} << i)) continue;
            const auto& e = edges_[s * arity_ + i];
            const Subset t = s | (Subset{1} << i);
            if (e.rows() != dims_[t] || e.cols() != dims_[s])
                throw ShapeMismatch("cube edge " + std::to_string(s) + " -> " + std::to_string(t) + " has wrong shape");
        }
}

const Matrix& VecCube::edge(Subset s, std::size_t i) const {
    if (i >= arity_ || (s & (Subset{1} << i))) throw NotComparable("no cube edge in direction " + std::to_string(i));
    return edges_.at(s * arity_ + i);
}

Matrix VecCube::map(Subset s, Subset t) const {
    if ((s & ~t) != 0) throw NotComparable("cube vertex is not a subset");
    Matrix m = Matrix::identity(field_, dim(s));
    Subset cur = s;
    for (std::size_t i = 0; i < arity_; ++i) {
        if ((t & ~s) & (Subset{1} << i)) {
            m = edge(cur, i) * m;
            cur |= Subset{1} << i;
        }
    }
    return m;
}

bool VecCube::is_functorial() const {
    const Subset n = Subset{1} << arity_;
    for (Subset s = 0; s < n; ++s)
        for (std::size_t i = 0; i < arity_; ++i)
            for (std::size_t j = i + 1; j < arity_; ++j) {
                const Subset bi = Subset{1} << i, bj = Subset{1} << j;
                if ((s & bi) || (s & bj)) continue;
                if (!(edge(s | bi, j) * edge(s, i) == edge(s | bj, i) * edge(s, j))) return false;
            }
    return true;
}

VecCube restrict_along_cube(const PersistenceModule& m, const LatticeCube& cube) {
    const std::size_t k = cube.arity;
    const std::size_t n = std::size_t{1} << k;
    std::vector<std::size_t> dims(n);
    std::vector<Matrix> edges(n * k);
    for (Subset s = 0; s < n; ++s) {
        dims[s] = m.dim(cube.at(s));
        for (std::size_t i = 0; i < k; ++i)
            if (!(s & (Subset{1} << i))) edges[s * k + i] = m.transport(cube.at(s), cube.at(s | (Subset{1} << i)));
    }
    return {m.field(), k, std::move(dims), std::move(edges)};
}

PersistenceModule module_of_cube(const VecCube& cube) {
    auto l = Lattice::boolean(cube.arity());
    std::vector<std::size_t> dims;
    for (Subset s = 0; s <= cube.full(); ++s) dims.push_back(cube.dim(s));
    std::vector<Matrix> maps;
    for (const auto [lower, upper] : l->covers()) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(static_cast<Subset>(upper ^ lower)));
        maps.push_back(cube.edge(static_cast<Subset>(lower), bit));
    }
    return {l, cube.field(), std::move(dims), std::move(maps)};
}

KoszulComplex koszul(const VecCube& cube) {
    const std::size_t k = cube.arity();
    const Field f = cube.field();
    KoszulComplex out;
    out.length = k;
    out.blocks.assign(k + 1, {});
    for (Subset s = 0; s <= cube.full(); ++s) out.blocks[k - static_cast<std::size_t>(std::popcount(s))].push_back(s);

    std::vector<std::vector<std::size_t>> offset(k + 1);
    out.chain_dims.assign(k + 1, 0);
    for (std::size_t i = 0; i <= k; ++i)
        for (Subset s : out.blocks[i]) {
            offset[i].push_back(out.chain_dims[i]);
            out.chain_dims[i] += cube.dim(s);
        }

    out.differentials.clear();
    out.differentials.emplace_back(f, 0, out.chain_dims[0]);
    for (std::size_t i = 1; i <= k; ++i) {
        Matrix d(f, out.chain_dims[i - 1], out.chain_dims[i]);
        for (std::size_t b = 0; b < out.blocks[i].size(); ++b) {
            const Subset s = out.blocks[i][b];
            std::size_t position = 0;
            for (std::size_t t = 0; t < k; ++t) {
                if (s & (Subset{1} << t)) continue;
                const Subset target = s | (Subset{1} << t);
                const auto& blocks = out.blocks[i - 1];
                const auto tb = static_cast<std::size_t>(std::lower_bound(blocks.begin(), blocks.end(), target) - blocks.begin());
                const Matrix& e = cube.edge(s, t);
                Matrix signed_e = position % 2 == 0 ? e : scale(e, f.neg(1));
                d.place(offset[i - 1][tb], offset[i][b], signed_e);
                ++position;
            }
        }
        out.differentials.push_back(std::move(d));
    }
    for (std::size_t i = 1; i < k; ++i)
        if (!(out.differentials[i] * out.differentials[i + 1]).is_zero())
            throw NotAComplex("d_" + std::to_string(i) + " d_" + std::to_string(i + 1) + " != 0");
    return out;
}

std::size_t koszul_homology(const KoszulComplex& k, std::size_t i) {
    if (i > k.length) return 0;
    const std::size_t r_in = i == 0 ? 0 : rank(k.differentials[i]);
    const std::size_t r_out = i == k.length ? 0 : rank(k.differentials[i + 1]);
    return k.chain_dims[i] - r_in - r_out;
}

std::vector<std::size_t> koszul_homologies(const KoszulComplex& k) {
    std::vector<std::size_t> ranks(k.length + 2, 0);
    for (std::size_t i = 1; i <= k.length; ++i) ranks[i] = rank(k.differentials[i]);
    std::vector<std::size_t> h;
    for (std::size_t i = 0; i <= k.length; ++i) h.push_back(k.chain_dims[i] - ranks[i] - ranks[i + 1]);
    return h;
}

std::size_t tfib(const VecCube& cube) {
    const std::size_t k = cube.arity();
    std::vector<Matrix> blocks;
    for (std::size_t i = 0; i < k; ++i) blocks.push_back(cube.edge(0, i));
    const Matrix stacked = vstack(blocks, cube.field(), cube.dim(0));
    return cube.dim(0) - rank(stacked);
}

std::size_t tcofib(const VecCube& cube) {
    const std::size_t k = cube.arity();
    const Subset full = cube.full();
    std::vector<Matrix> blocks;
    for (std::size_t i = 0; i < k; ++i) blocks.push_back(cube.edge(full & ~(Subset{1} << i), i));
    const Matrix joined = hstack(blocks, cube.field(), cube.dim(full));
    return cube.dim(full) - rank(joined);
}

}  // namespace crosscalc
