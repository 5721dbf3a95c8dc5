#include "crosscalc/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "crosscalc/errors.hpp"

namespace crosscalc {

LatticeReport Lattice::build(std::vector<std::string> names,
                             std::span<const std::pair<std::string, std::string>> relations, Lattice& out) {
    const std::size_t n = names.size();
    LatticeReport report;
    auto fail = [&](LatticeViolation v, std::string msg) {
        report.violation = v;
        report.message = std::move(msg);
        return report;
    };

    if (n == 0) return fail(LatticeViolation::no_bottom, "empty poset has no least element");

    std::map<std::string, Element, std::less<>> index;
    for (Element i = 0; i < n; ++i)
        if (!index.emplace(names[i], i).second) return fail(LatticeViolation::not_a_poset, "duplicate element '" + names[i] + "'");

    std::vector<std::uint8_t> leq(n * n, 0);
    for (Element i = 0; i < n; ++i) leq[i * n + i] = 1;
    for (const auto& [u, v] : relations) {
        auto iu = index.find(u);
        auto iv = index.find(v);
        if (iu == index.end() || iv == index.end())
            return fail(LatticeViolation::not_a_poset, "relation " + u + "<" + v + " names an unknown element");
        leq[iu->second * n + iv->second] = 1;
    }
    // transitive closure
    for (Element k = 0; k < n; ++k)
        for (Element i = 0; i < n; ++i)
            if (leq[i * n + k])
                for (Element j = 0; j < n; ++j)
                    if (leq[k * n + j]) leq[i * n + j] = 1;

    for (Element i = 0; i < n; ++i)
        for (Element j = i + 1; j < n; ++j)
            if (leq[i * n + j] && leq[j * n + i])
                return fail(LatticeViolation::not_a_poset, "cycle through '" + names[i] + "' and '" + names[j] + "'");

    std::vector<Element> minima;
    for (Element i = 0; i < n; ++i) {
        bool least = true;
        for (Element j = 0; j < n && least; ++j) least = leq[i * n + j];
        if (least) minima.push_back(i);
    }
    if (minima.size() != 1) return fail(LatticeViolation::no_bottom, "poset has no least element");

    auto le = [&](Element a, Element b) { return leq[a * n + b] != 0; };
    std::vector<Element> join(n * n), meet(n * n);
    for (Element a = 0; a < n; ++a) {
        for (Element b = a; b < n; ++b) {
            std::optional<Element> lub, glb;
            for (Element z = 0; z < n; ++z) {
                if (le(a, z) && le(b, z)) {
                    bool least = true;
                    for (Element w = 0; w < n && least; ++w)
                        if (le(a, w) && le(b, w) && !le(z, w)) least = false;
                    if (least) lub = z;
                }
                if (le(z, a) && le(z, b)) {
                    bool greatest = true;
                    for (Element w = 0; w < n && greatest; ++w)
                        if (le(w, a) && le(w, b) && !le(w, z)) greatest = false;
                    if (greatest) glb = z;
                }
            }
            if (!lub) return fail(LatticeViolation::not_lattice, "'" + names[a] + "' and '" + names[b] + "' have no join");
            if (!glb) return fail(LatticeViolation::not_lattice, "'" + names[a] + "' and '" + names[b] + "' have no meet");
            join[a * n + b] = join[b * n + a] = *lub;
            meet[a * n + b] = meet[b * n + a] = *glb;
        }
    }

    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z) {
                const Element lhs = meet[x * n + join[y * n + z]];
                const Element rhs = join[meet[x * n + y] * n + meet[x * n + z]];
                if (lhs != rhs) {
                    report.triple = std::array<std::string, 3>{names[x], names[y], names[z]};
                    return fail(LatticeViolation::not_distributive, "x ^ (y v z) != (x ^ y) v (x ^ z) for x='" + names[x] +
                                                                        "', y='" + names[y] + "', z='" + names[z] + "'");
                }
            }

    out.names_ = std::move(names);
    out.leq_ = std::move(leq);
    out.join_ = std::move(join);
    out.meet_ = std::move(meet);
    out.bottom_ = minima.front();
    out.top_ = out.bottom_;
    for (Element i = 0; i < n; ++i)
        if (out.leq(out.top_, i)) out.top_ = i;

    out.parents_.assign(n, {});
    out.children_.assign(n, {});
    for (Element u = 0; u < n; ++u)
        for (Element v = 0; v < n; ++v) {
            if (!out.lt(u, v)) continue;
            bool cover = true;
            for (Element w = 0; w < n && cover; ++w)
                if (out.lt(u, w) && out.lt(w, v)) cover = false;
            if (cover) {
                out.parents_[v].push_back(u);
                out.children_[u].push_back(v);
            }
        }
    out.finish();
    return report;
}

LatticeReport validate_lattice(const std::vector<std::string>& names,
                               std::span<const std::pair<std::string, std::string>> relations) {
    Lattice scratch;
    return Lattice::build(names, relations, scratch);
}

LatticePtr Lattice::from_relations(std::vector<std::string> names,
                                   std::span<const std::pair<std::string, std::string>> relations) {
    auto l = std::shared_ptr<Lattice>(new Lattice());
    const auto report = build(std::move(names), relations, *l);
    switch (report.violation) {
        case LatticeViolation::none:
            return l;
        case LatticeViolation::not_a_poset:
        case LatticeViolation::not_lattice:
            throw NotLattice(report.message);
        case LatticeViolation::no_bottom:
            throw NoBottom(report.message);
        case LatticeViolation::not_distributive:
            throw NotDistributive(report.message);
    }
    throw InternalError("unreachable lattice violation");
}

LatticePtr Lattice::grid(std::vector<std::size_t> extents) {
    auto l = std::shared_ptr<Lattice>(new Lattice());
    const std::size_t d = extents.size();
    std::vector<std::size_t> stride(d, 1);
    std::size_t n = 1;
    for (std::size_t i = 0; i < d; ++i) {
        stride[i] = n;
        n *= extents[i] + 1;
    }
    auto coords = [&](Element e) {
        std::vector<std::size_t> c(d);
        for (std::size_t i = 0; i < d; ++i) c[i] = (e / stride[i]) % (extents[i] + 1);
        return c;
    };
    auto encode = [&](const std::vector<std::size_t>& c) {
        Element e = 0;
        for (std::size_t i = 0; i < d; ++i) e += c[i] * stride[i];
        return e;
    };

    l->names_.resize(n);
    l->leq_.assign(n * n, 0);
    l->join_.assign(n * n, 0);
    l->meet_.assign(n * n, 0);
    l->parents_.assign(n, {});
    l->children_.assign(n, {});
    std::vector<std::vector<std::size_t>> all(n);
    for (Element e = 0; e < n; ++e) {
        all[e] = coords(e);
        std::string name;
        for (std::size_t i = 0; i < d; ++i) name += (i ? "," : "") + std::to_string(all[e][i]);
        l->names_[e] = name;
    }
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            bool le = true;
            std::vector<std::size_t> hi(d), lo(d);
            for (std::size_t i = 0; i < d; ++i) {
                le = le && all[a][i] <= all[b][i];
                hi[i] = std::max(all[a][i], all[b][i]);
                lo[i] = std::min(all[a][i], all[b][i]);
            }
            l->leq_[a * n + b] = le;
            l->join_[a * n + b] = encode(hi);
            l->meet_[a * n + b] = encode(lo);
        }
        for (std::size_t i = 0; i < d; ++i)
            if (all[a][i] > 0) l->parents_[a].push_back(a - stride[i]);
        std::sort(l->parents_[a].begin(), l->parents_[a].end());
        for (std::size_t i = 0; i < d; ++i)
            if (all[a][i] < extents[i]) l->children_[a].push_back(a + stride[i]);
    }
    l->bottom_ = 0;
    l->top_ = n - 1;
    l->extents_ = std::move(extents);
    l->finish();
    return l;
}

void Lattice::finish() {
    const std::size_t n = size();
    covers_.clear();
    for (Element u = 0; u < n; ++u)
        for (Element v : children_[u]) covers_.push_back({u, v});
    std::sort(covers_.begin(), covers_.end(),
              [](const Cover& a, const Cover& b) { return std::tie(a.lower, a.upper) < std::tie(b.lower, b.upper); });

    dimension_ = 0;
    for (Element v = 0; v < n; ++v) dimension_ = std::max(dimension_, parents_[v].size());

    // Kahn's algorithm, smallest index first
    std::vector<std::size_t> pending(n);
    for (Element v = 0; v < n; ++v) pending[v] = parents_[v].size();
    std::vector<Element> ready;
    for (Element v = 0; v < n; ++v)
        if (pending[v] == 0) ready.push_back(v);
    topo_.clear();
    while (!ready.empty()) {
        auto it = std::min_element(ready.begin(), ready.end());
        const Element v = *it;
        ready.erase(it);
        topo_.push_back(v);
        for (Element c : children_[v])
            if (--pending[c] == 0) ready.push_back(c);
    }
}

LatticePtr Lattice::opposite() const {
    auto l = std::shared_ptr<Lattice>(new Lattice());
    const std::size_t n = size();
    l->names_ = names_;
    l->leq_.assign(n * n, 0);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) l->leq_[a * n + b] = leq_[b * n + a];
    l->join_ = meet_;
    l->meet_ = join_;
    l->bottom_ = top_;
    l->top_ = bottom_;
    l->parents_ = children_;
    l->children_ = parents_;
    l->finish();
    return l;
}

std::optional<Element> Lattice::find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Element>(it - names_.begin());
}

Element Lattice::at(std::string_view name) const {
    if (auto e = find(name)) return *e;
    throw UnknownElement("unknown element '" + std::string(name) + "'");
}

Element Lattice::join(std::span<const Element> xs) const {
    Element acc = bottom_;
    for (Element x : xs) acc = join(acc, x);
    return acc;
}

Element Lattice::meet(std::span<const Element> xs) const {
    Element acc = top_;
    for (Element x : xs) acc = meet(acc, x);
    return acc;
}

std::optional<std::size_t> Lattice::cover_index(Element lower, Element upper) const {
    const Cover key{lower, upper};
    auto it = std::lower_bound(covers_.begin(), covers_.end(), key, [](const Cover& a, const Cover& b) {
        return std::tie(a.lower, a.upper) < std::tie(b.lower, b.upper);
    });
    if (it == covers_.end() || !(*it == key)) return std::nullopt;
    return static_cast<std::size_t>(it - covers_.begin());
}

std::vector<Element> Lattice::join_irreducibles() const {
    std::vector<Element> out;
    for (Element v = 0; v < size(); ++v) {
        if (v == bottom_) continue;
        bool irreducible = true;
        for (Element x = 0; x < size() && irreducible; ++x) {
            if (!lt(x, v)) continue;
            for (Element y = x; y < size() && irreducible; ++y)
                if (lt(y, v) && join(x, y) == v) irreducible = false;
        }
        if (irreducible) out.push_back(v);
    }
    return out;
}

std::vector<Element> Lattice::meet_irreducibles() const { return opposite()->join_irreducibles(); }

std::vector<Element> Lattice::interval(Element lo, Element hi) const {
    std::vector<Element> out;
    for (Element z = 0; z < size(); ++z)
        if (leq(lo, z) && leq(z, hi)) out.push_back(z);
    return out;
}

std::vector<Element> Lattice::down_set(Element x) const { return interval(bottom_, x); }
std::vector<Element> Lattice::up_set(Element x) const { return interval(x, top_); }

std::vector<Cover> Lattice::induced_covers(std::span<const Element> subset) const {
    std::vector<Cover> out;
    for (Element u : subset)
        for (Element v : subset) {
            if (!lt(u, v)) continue;
            bool cover = true;
            for (Element w : subset)
                if (lt(u, w) && lt(w, v)) {
                    cover = false;
                    break;
                }
            if (cover) out.push_back({u, v});
        }
    return out;
}

bool is_pairwise_cover(const Lattice& l, const PairwiseCover& c) {
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        if (c.parts[i] >= l.size() || !l.leq(c.parts[i], c.top)) return false;
        for (std::size_t j = i + 1; j < c.parts.size(); ++j)
            if (l.join(c.parts[i], c.parts[j]) != c.top) return false;
    }
    return c.top < l.size();
}

LatticeCube cube_from_cover(const Lattice& l, const PairwiseCover& c) {
    if (!is_pairwise_cover(l, c)) throw NotPairwiseCover("parts do not form a pairwise cover of the top element");
    const std::size_t k = c.parts.size();
    LatticeCube cube;
    cube.arity = k;
    cube.vertices.resize(std::size_t{1} << k);
    const Subset full = cube.full();
    for (Subset s = 0; s <= full; ++s) {
        if (s == full) {
            cube.vertices[s] = c.top;
            continue;
        }
        Element m = l.top();
        for (std::size_t i = 0; i < k; ++i)
            if (!(s & (Subset{1} << i))) m = l.meet(m, c.parts[i]);
        cube.vertices[s] = m;
    }
    return cube;
}

PairwiseCover cover_of_cube(const LatticeCube& cube) {
    PairwiseCover c{cube.top(), {}};
    for (std::size_t i = 0; i < cube.arity; ++i) c.parts.push_back(cube.at(cube.full() & ~(Subset{1} << i)));
    return c;
}

bool is_strongly_bicartesian(const Lattice& l, const LatticeCube& cube) {
    const Subset full = cube.full();
    for (Subset s = 0; s <= full; ++s)
        for (Subset t = s; t <= full; ++t) {
            if (cube.at(s | t) != l.join(cube.at(s), cube.at(t))) return false;
            if (cube.at(s & t) != l.meet(cube.at(s), cube.at(t))) return false;
        }
    return true;
}

LatticeCube parent_cube(const Lattice& l, Element a) { return cube_from_cover(l, {a, l.parents(a)}); }

LatticeCube child_cube(const Lattice& l, Element a) {
    const auto& kids = l.children(a);
    LatticeCube cube;
    cube.arity = kids.size();
    cube.vertices.resize(std::size_t{1} << cube.arity);
    for (Subset s = 0; s <= cube.full(); ++s) {
        Element j = a;
        for (std::size_t i = 0; i < cube.arity; ++i)
            if (s & (Subset{1} << i)) j = l.join(j, kids[i]);
        cube.vertices[s] = j;
    }
    return cube;
}

namespace {

bool extend_cover(const Lattice& l, Element top, const std::vector<Element>& below, std::size_t start,
                  std::size_t arity, std::vector<Element>& parts,
                  const std::function<bool(const LatticeCube&)>& visit) {
    if (parts.size() == arity) return visit(cube_from_cover(l, {top, parts}));
    for (std::size_t i = start; i < below.size(); ++i) {
        const Element x = below[i];
        bool ok = true;
        for (Element p : parts)
            if (l.join(p, x) != top) {
                ok = false;
                break;
            }
        if (!ok) continue;
        parts.push_back(x);
        const bool keep_going = extend_cover(l, top, below, i, arity, parts, visit);
        parts.pop_back();
        if (!keep_going) return false;
    }
    return true;
}

}  // namespace

bool for_each_bicartesian_cube(const Lattice& l, std::size_t arity,
                               const std::function<bool(const LatticeCube&)>& visit) {
    std::vector<Element> parts;
    for (Element top = 0; top < l.size(); ++top) {
        const auto below = l.down_set(top);
        if (!extend_cover(l, top, below, 0, arity, parts, visit)) return false;
    }
    return true;
}

std::vector<LatticeCube> enumerate_bicartesian_cubes(const Lattice& l, std::size_t arity) {
    std::vector<LatticeCube> out;
    for_each_bicartesian_cube(l, arity, [&](const LatticeCube& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

}  // namespace crosscalc
