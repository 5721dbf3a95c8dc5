#pragma once

#include <cstddef>
#include <vector>

#include "crosscalc/lattice.hpp"
#include "crosscalc/linalg.hpp"
#include "crosscalc/module.hpp"

namespace crosscalc {

/// A functor P([k-1]) -> Vec_F, stored on the edges S -> S + {i}.
class VecCube {
public:
    /// `edges[S * arity + i]` is the map X(S) -> X(S + {i}) for i not in S; entries for
    /// i in S are ignored. Throws ShapeMismatch.
    VecCube(Field field, std::size_t arity, std::vector<std::size_t> dims, std::vector<Matrix> edges);

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] Subset full() const noexcept { return static_cast<Subset>((Subset{1} << arity_) - 1); }
    [[nodiscard]] std::size_t dim(Subset s) const { return dims_.at(s); }
    [[nodiscard]] const Matrix& edge(Subset s, std::size_t i) const;
    /// X(S subset T), composed along increasing coordinates. Throws NotComparable.
    [[nodiscard]] Matrix map(Subset s, Subset t) const;

    /// Every 2-face commutes.
    [[nodiscard]] bool is_functorial() const;

private:
    Field field_;
    std::size_t arity_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> edges_;
};

/// (F o X)(S) = F(X(S)) with transports as edge maps.
VecCube restrict_along_cube(const PersistenceModule& m, const LatticeCube& cube);

/// The cube as a module over P([k-1]) = Lattice::boolean(k).
PersistenceModule module_of_cube(const VecCube& cube);

/// Chain complex K_i = sum over |S| = k - i of X(S), subsets in bitmask order.
struct KoszulComplex {
    std::size_t length = 0;
    std::vector<std::size_t> chain_dims;  // K_0 .. K_k
    /// differentials[i] = d_i : K_i -> K_{i-1} for 1 <= i <= k; entry 0 is unused.
    std::vector<Matrix> differentials;
    /// Subsets contributing to K_i, in block order.
    std::vector<std::vector<Subset>> blocks;
};

/// The X(S -> S + t_j) block carries sign (-1)^j, j the position of t_j in the
/// sorted complement of S. Throws NotAComplex if some d_i d_{i+1} != 0.
KoszulComplex koszul(const VecCube& cube);

/// dim ker d_i - rank d_{i+1}, with d_0 = d_{k+1} = 0.
std::size_t koszul_homology(const KoszulComplex& k, std::size_t i);
std::vector<std::size_t> koszul_homologies(const KoszulComplex& k);

/// dim ker(X(0) -> sum of X({i})).
std::size_t tfib(const VecCube& cube);
/// dim coker(sum over |S| = k-1 of X(S) -> X(full)).
std::size_t tcofib(const VecCube& cube);

}  // namespace crosscalc
