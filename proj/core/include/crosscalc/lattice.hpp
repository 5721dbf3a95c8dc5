#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace crosscalc {

using Element = std::size_t;

/// A subset of [k-1] encoded as a bitmask; bit i set means i is in S.
using Subset = std::uint32_t;

struct Cover {
    Element lower;
    Element upper;
    friend bool operator==(const Cover&, const Cover&) = default;
};

enum class LatticeViolation { none, not_a_poset, no_bottom, not_lattice, not_distributive };

struct LatticeReport {
    LatticeViolation violation = LatticeViolation::none;
    std::string message;
    /// The first failing triple (x, y, z) when violation == not_distributive.
    std::optional<std::array<std::string, 3>> triple;

    [[nodiscard]] bool ok() const noexcept { return violation == LatticeViolation::none; }
};

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// Finite distributive lattice with precomputed order, join, meet and Hasse
/// tables. Instances are immutable and only built through the factories,
/// which reject anything that is not a finite distributive lattice.
class Lattice {
public:
    /// `relations` are pairs (u, v) with u < v; they generate the order and
    /// need not be covers. Throws NotLattice, NoBottom or NotDistributive.
    static LatticePtr from_relations(std::vector<std::string> names,
                                     std::span<const std::pair<std::string, std::string>> relations);

    /// The product [m1] x ... x [mn] with [m] = {0, ..., m}. Element names are
    /// "i,j,...". Coordinate 0 varies fastest in the element numbering, so
    /// grid({1,...,1}) numbers the elements of P([k-1]) by their bitmask.
    static LatticePtr grid(std::vector<std::size_t> extents);

    /// P([k-1]) ordered by inclusion, element index == subset bitmask.
    static LatticePtr boolean(std::size_t k) { return grid(std::vector<std::size_t>(k, 1)); }

    /// Same elements and names with the order reversed.
    [[nodiscard]] LatticePtr opposite() const;

    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] const std::string& name(Element e) const { return names_.at(e); }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] std::optional<Element> find(std::string_view name) const;
    /// Throws UnknownElement.
    [[nodiscard]] Element at(std::string_view name) const;

    [[nodiscard]] bool leq(Element a, Element b) const noexcept { return leq_[a * size() + b] != 0; }
    [[nodiscard]] bool lt(Element a, Element b) const noexcept { return a != b && leq(a, b); }
    [[nodiscard]] bool comparable(Element a, Element b) const noexcept { return leq(a, b) || leq(b, a); }
    [[nodiscard]] Element join(Element a, Element b) const noexcept { return join_[a * size() + b]; }
    [[nodiscard]] Element meet(Element a, Element b) const noexcept { return meet_[a * size() + b]; }
    [[nodiscard]] Element join(std::span<const Element> xs) const;
    [[nodiscard]] Element meet(std::span<const Element> xs) const;
    [[nodiscard]] Element bottom() const noexcept { return bottom_; }
    [[nodiscard]] Element top() const noexcept { return top_; }

    /// Lower covers of v in element order ("parents": y covers x means x is a parent of y).
    [[nodiscard]] const std::vector<Element>& parents(Element v) const { return parents_.at(v); }
    /// Upper covers of v in element order.
    [[nodiscard]] const std::vector<Element>& children(Element v) const { return children_.at(v); }
    [[nodiscard]] const std::vector<Cover>& covers() const noexcept { return covers_; }
    [[nodiscard]] std::optional<std::size_t> cover_index(Element lower, Element upper) const;

    /// Join-dimension; equals the number of parents in a finite distributive lattice.
    [[nodiscard]] std::size_t jdim(Element v) const { return parents(v).size(); }
    [[nodiscard]] std::size_t mdim(Element v) const { return children(v).size(); }
    /// Order dimension, max over elements of jdim.
    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }

    /// Elements that are not the join of two strictly smaller elements (bottom excluded).
    [[nodiscard]] std::vector<Element> join_irreducibles() const;
    [[nodiscard]] std::vector<Element> meet_irreducibles() const;

    /// A linear extension of the order.
    [[nodiscard]] const std::vector<Element>& topological_order() const noexcept { return topo_; }

    [[nodiscard]] const std::optional<std::vector<std::size_t>>& grid_extents() const noexcept { return extents_; }

    /// Elements of <lo, hi>, in element order.
    [[nodiscard]] std::vector<Element> interval(Element lo, Element hi) const;
    [[nodiscard]] std::vector<Element> down_set(Element x) const;
    [[nodiscard]] std::vector<Element> up_set(Element x) const;

    /// Cover pairs of the order induced on `subset` (transitive reduction).
    [[nodiscard]] std::vector<Cover> induced_covers(std::span<const Element> subset) const;

    friend bool operator==(const Lattice& a, const Lattice& b) noexcept {
        return a.names_ == b.names_ && a.leq_ == b.leq_;
    }

private:
    Lattice() = default;
    void finish();  // derives covers, dimension and topological order from parents_

    std::vector<std::string> names_;
    std::vector<std::uint8_t> leq_;
    std::vector<Element> join_;
    std::vector<Element> meet_;
    Element bottom_ = 0;
    Element top_ = 0;
    std::vector<std::vector<Element>> parents_;
    std::vector<std::vector<Element>> children_;
    std::vector<Cover> covers_;
    std::vector<Element> topo_;
    std::size_t dimension_ = 0;
    std::optional<std::vector<std::size_t>> extents_;

    static LatticeReport build(std::vector<std::string> names,
                               std::span<const std::pair<std::string, std::string>> relations, Lattice& out);
    friend LatticeReport validate_lattice(const std::vector<std::string>&,
                                          std::span<const std::pair<std::string, std::string>>);
};

/// Checks partial order, unique minimum, lattice axioms and distributivity,
/// in that order, and reports the first violation.
LatticeReport validate_lattice(const std::vector<std::string>& names,
                               std::span<const std::pair<std::string, std::string>> relations);

/// Elements x^0..x^k below `top` with x^i v x^j = top for all i != j.
struct PairwiseCover {
    Element top;
    std::vector<Element> parts;
};

/// A functor P([k-1]) -> lattice; vertices are indexed by subset bitmask.
struct LatticeCube {
    std::size_t arity = 0;
    std::vector<Element> vertices;

    [[nodiscard]] Element at(Subset s) const { return vertices.at(s); }
    [[nodiscard]] Element bottom() const { return vertices.front(); }
    [[nodiscard]] Element top() const { return vertices.back(); }
    [[nodiscard]] Subset full() const noexcept { return static_cast<Subset>((Subset{1} << arity) - 1); }
    friend bool operator==(const LatticeCube&, const LatticeCube&) = default;
};

bool is_pairwise_cover(const Lattice& l, const PairwiseCover& c);

/// X(S) = meet of x^i over i not in S, X(full) = top. Throws NotPairwiseCover.
LatticeCube cube_from_cover(const Lattice& l, const PairwiseCover& c);

/// x^i = X([k] \ {i}); inverse of cube_from_cover on strongly bicartesian cubes.
PairwiseCover cover_of_cube(const LatticeCube& cube);

/// Join- and meet-preservation over all pairs of subsets.
bool is_strongly_bicartesian(const Lattice& l, const LatticeCube& cube);

LatticeCube parent_cube(const Lattice& l, Element a);
LatticeCube child_cube(const Lattice& l, Element a);

/// Visits every strongly bicartesian cube of the given arity once per
/// unordered pairwise cover (tops in element order, parts as sorted
/// multisets). Degenerate covers with some x^i = top are included. The
/// visitor returns false to stop early; the function returns false if it did.
bool for_each_bicartesian_cube(const Lattice& l, std::size_t arity,
                               const std::function<bool(const LatticeCube&)>& visit);

std::vector<LatticeCube> enumerate_bicartesian_cubes(const Lattice& l, std::size_t arity);

}  // namespace crosscalc
