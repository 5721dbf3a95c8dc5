#pragma once

// Reference computations used only by the tests. They avoid the library's
// echelon routines and cover structure so disagreements point at real bugs.

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "crosscalc/lattice.hpp"
#include "crosscalc/linalg.hpp"
#include "crosscalc/module.hpp"

namespace oracle {

using crosscalc::Element;
using crosscalc::Lattice;
using crosscalc::Matrix;
using crosscalc::PersistenceModule;

/// Rank by enumerating the column span; only for p^cols small.
inline std::size_t rank_by_enumeration(const Matrix& m) {
    const auto p = m.field().p();
    std::set<std::vector<std::uint32_t>> span;
    std::vector<std::uint32_t> coeff(m.cols(), 0);
    while (true) {
        std::vector<std::uint32_t> v(m.rows(), 0);
        for (std::size_t c = 0; c < m.cols(); ++c)
            for (std::size_t r = 0; r < m.rows(); ++r)
                v[r] = static_cast<std::uint32_t>((v[r] + std::uint64_t{coeff[c]} * m(r, c)) % p);
        span.insert(v);
        std::size_t i = 0;
        while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 0;
        if (i == coeff.size()) break;
    }
    std::size_t r = 0;
    for (std::size_t size = 1; size < span.size(); size *= p) ++r;
    return r;
}

/// Gaussian elimination written independently of the library (no pivoting order guarantees).
inline std::size_t rank_by_elimination(Matrix m) {
    const auto& f = m.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t k = 0; k < m.cols(); ++k) {
            auto t = m(r, k);
            m.set(r, k, m(piv, k));
            m.set(piv, k, t);
        }
        const auto inv = f.inv(m(r, c));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            const auto factor = f.mul(m(i, c), inv);
            if (factor == 0) continue;
            for (std::size_t k = 0; k < m.cols(); ++k) m.set(i, k, f.sub(m(i, k), f.mul(factor, m(r, k))));
        }
        ++r;
    }
    return r;
}

/// Minimal number of join-irreducibles joining to v (0 for the bottom).
inline std::size_t jdim_by_search(const Lattice& l, Element v) {
    if (v == l.bottom()) return 0;
    std::vector<Element> ji;
    for (Element e = 0; e < l.size(); ++e) {
        if (e == l.bottom() || !l.leq(e, v)) continue;
        bool reducible = false;
        for (Element a = 0; a < l.size() && !reducible; ++a)
            for (Element b = 0; b < l.size() && !reducible; ++b)
                if (l.lt(a, e) && l.lt(b, e) && l.join(a, b) == e) reducible = true;
        if (!reducible) ji.push_back(e);
    }
    std::size_t best = ji.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ji.size()); ++mask) {
        Element j = l.bottom();
        std::size_t count = 0;
        for (std::size_t i = 0; i < ji.size(); ++i)
            if (mask >> i & 1) {
                j = l.join(j, ji[i]);
                ++count;
            }
        if (j == v && count < best) best = count;
    }
    return best;
}

/// Composite of cover maps along an arbitrary saturated chain, found by search
/// through upper covers that stay below v.
inline Matrix chain_transport(const PersistenceModule& m, Element u, Element v) {
    const auto& l = m.lattice();
    Matrix t = Matrix::identity(m.field(), m.dim(u));
    Element cur = u;
    while (cur != v) {
        const auto& ch = l.children(cur);
        Element next = cur;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it)
            if (l.leq(*it, v)) {
                next = *it;
                break;
            }
        t = m.cover_map(cur, next) * t;
        cur = next;
    }
    return t;
}

/// dim colim of F over `subset` as dim(sum) - rank of all relations x - F(u <= w) x, u < w in subset.
inline std::size_t colimit_dim(const PersistenceModule& m, const std::vector<Element>& subset) {
    const auto& l = m.lattice();
    std::vector<std::size_t> off;
    std::size_t total = 0;
    for (Element e : subset) {
        off.push_back(total);
        total += m.dim(e);
    }
    std::vector<Matrix> rels;
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = 0; j < subset.size(); ++j) {
            if (!l.lt(subset[i], subset[j])) continue;
            Matrix r(m.field(), total, m.dim(subset[i]));
            r.place(off[i], 0, Matrix::identity(m.field(), m.dim(subset[i])));
            r.place(off[j], 0, scale(chain_transport(m, subset[i], subset[j]), m.field().p() - 1));
            rels.push_back(r);
        }
    std::size_t cols = 0;
    for (const auto& r : rels) cols += r.cols();
    Matrix all(m.field(), total, cols);
    std::size_t c = 0;
    for (const auto& r : rels) {
        all.place(0, c, r);
        c += r.cols();
    }
    return total - rank_by_elimination(all);
}

/// dim lim of F over `subset`: compatible families, kernel of all differences.
inline std::size_t limit_dim(const PersistenceModule& m, const std::vector<Element>& subset) {
    const auto& l = m.lattice();
    std::vector<std::size_t> off;
    std::size_t total = 0;
    for (Element e : subset) {
        off.push_back(total);
        total += m.dim(e);
    }
    std::vector<Matrix> rows;
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = 0; j < subset.size(); ++j) {
            if (!l.lt(subset[i], subset[j])) continue;
            Matrix r(m.field(), m.dim(subset[j]), total);
            r.place(0, off[i], chain_transport(m, subset[i], subset[j]));
            r.place(0, off[j], scale(Matrix::identity(m.field(), m.dim(subset[j])), m.field().p() - 1));
            rows.push_back(r);
        }
    std::size_t nrows = 0;
    for (const auto& r : rows) nrows += r.rows();
    Matrix all(m.field(), nrows, total);
    std::size_t rr = 0;
    for (const auto& r : rows) {
        all.place(rr, 0, r);
        rr += r.rows();
    }
    return total - rank_by_elimination(all);
}

/// Total fiber of the cube F|<bottom, top> on a boolean-lattice module: the
/// intersection of the kernels of the edges out of the bottom, computed edge by edge.
inline std::size_t iterated_fiber(const PersistenceModule& m) {
    const auto& l = m.lattice();
    const Element b = l.bottom();
    Matrix stacked(m.field(), 0, m.dim(b));
    for (Element c : l.children(b)) {
        Matrix e = m.cover_map(b, c);
        Matrix next(m.field(), stacked.rows() + e.rows(), m.dim(b));
        next.place(0, 0, stacked);
        next.place(stacked.rows(), 0, e);
        stacked = next;
    }
    return m.dim(b) - rank_by_elimination(stacked);
}

/// Total cofiber: dim F(top) minus the dimension of the sum of images from the coatoms.
inline std::size_t iterated_cofiber(const PersistenceModule& m) {
    const auto& l = m.lattice();
    const Element t = l.top();
    Matrix joined(m.field(), m.dim(t), 0);
    for (Element p : l.parents(t)) {
        Matrix e = m.cover_map(p, t);
        Matrix next(m.field(), m.dim(t), joined.cols() + e.cols());
        next.place(0, 0, joined);
        next.place(0, joined.cols(), e);
        joined = next;
    }
    return m.dim(t) - rank_by_elimination(joined);
}

}  // namespace oracle
