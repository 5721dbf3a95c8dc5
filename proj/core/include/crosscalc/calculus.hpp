#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "crosscalc/cube.hpp"
#include "crosscalc/lattice.hpp"
#include "crosscalc/linalg.hpp"
#include "crosscalc/module.hpp"

namespace crosscalc {

/// A (co)limit of F over a finite subposet, presented inside the direct sum
/// of the F(v). For a colimit `presentation` is the projection q from the
/// sum onto the colimit and `section` a right inverse of q; for a limit
/// `presentation` is a kernel basis K (columns in the sum) and `section` is
/// unused. `offsets[i]` locates F(elements[i]) in the sum.
struct LocalDiagram {
    std::vector<Element> elements;
    std::vector<std::size_t> offsets;
    std::size_t sum_dim = 0;
    bool is_limit = false;
    Matrix presentation;
    Matrix section;

    /// Cocone leg F(v) -> colim (or cone leg lim -> F(v)).
    [[nodiscard]] Matrix leg(std::size_t index, const PersistenceModule& m) const;
    [[nodiscard]] std::optional<std::size_t> index_of(Element v) const;
};

/// colim of F restricted to `subset`, via the cokernel of the incidence map
/// over the induced covers. Every element of `subset` must lie below x
/// (throws NotBelow); the cocone legs map into the colimit.
LocalDiagram colim_over_downset(const PersistenceModule& m, Element x, std::span<const Element> subset);
/// lim of F restricted to `subset`, via the kernel of the incidence map. Throws NotAbove.
LocalDiagram lim_over_upset(const PersistenceModule& m, Element x, std::span<const Element> subset);

/// Elements v <= x with jdim v <= n, in element order.
std::vector<Element> lower_index(const Lattice& l, Element x, std::size_t n);
/// Elements v >= x with mdim v <= n, in element order.
std::vector<Element> upper_index(const Lattice& l, Element x, std::size_t n);

enum class ApproxKind { t_lower, t_upper, gamma_lower, gamma_upper, cr_lower, cr_upper };

/// An approximation of F together with its canonical transformation:
///   t_lower      eps_n : T_n F -> F
///   t_upper      eta_n : F -> T^n F
///   gamma_lower  the mono Gamma_n F -> F
///   gamma_upper  the epi  F -> Gamma^n F
///   cr_lower     the projection F -> Cr_n F
///   cr_upper     the inclusion  Cr^n F -> F
/// `local` holds the per-element (co)limit data for t_lower / t_upper.
struct ApproxResult {
    ApproxKind kind;
    std::size_t n;
    PersistenceModule module;
    NatTrans canonical;
    std::vector<LocalDiagram> local;
};

ApproxResult t_lower(const PersistenceModule& m, std::size_t n);
ApproxResult t_upper(const PersistenceModule& m, std::size_t n);
ApproxResult gamma_lower(const PersistenceModule& m, std::size_t n);
ApproxResult gamma_upper(const PersistenceModule& m, std::size_t n);
ApproxResult cr_lower(const PersistenceModule& m, std::size_t n);
ApproxResult cr_upper(const PersistenceModule& m, std::size_t n);
ApproxResult approximate(const PersistenceModule& m, ApproxKind kind, std::size_t n);

/// Functoriality: given approximations of F and G of the same kind and n,
/// and alpha : F -> G, the induced transformation between them.
NatTrans t_lower_map(const ApproxResult& f, const ApproxResult& g, const NatTrans& alpha);
NatTrans t_upper_map(const ApproxResult& f, const ApproxResult& g, const NatTrans& alpha);
NatTrans gamma_lower_map(const ApproxResult& f, const ApproxResult& g, const NatTrans& alpha);
NatTrans gamma_upper_map(const ApproxResult& f, const ApproxResult& g, const NatTrans& alpha);
/// Convenience forms computing both approximations.
NatTrans gamma_lower_map(const NatTrans& alpha, std::size_t n);
NatTrans gamma_upper_map(const NatTrans& alpha, std::size_t n);

struct PredicateResult {
    bool holds = true;
    /// First failing cube in enumeration order (brute-force path only).
    std::optional<LatticeCube> witness;

    explicit operator bool() const noexcept { return holds; }
};

enum class PredicatePath { fast, brute_force };

/// codegree n: strongly bicartesian (n+1)-cubes go to cocartesian cubes.
PredicateResult is_codegree(const PersistenceModule& m, std::size_t n, PredicatePath path = PredicatePath::fast);
/// degree n: strongly bicartesian (n+1)-cubes go to cartesian cubes.
PredicateResult is_degree(const PersistenceModule& m, std::size_t n, PredicatePath path = PredicatePath::fast);
/// cross-codegree n: strongly bicartesian (n+1)-cubes have zero total cofiber.
PredicateResult is_cross_codegree(const PersistenceModule& m, std::size_t n,
                                  PredicatePath path = PredicatePath::fast);
/// cross-degree n: strongly bicartesian (n+1)-cubes have zero total fiber.
PredicateResult is_cross_degree(const PersistenceModule& m, std::size_t n, PredicatePath path = PredicatePath::fast);

/// Least n in [0, dimension] for which the predicate holds.
std::size_t min_degree(const PersistenceModule& m, PredicatePath path = PredicatePath::fast);
std::size_t min_codegree(const PersistenceModule& m, PredicatePath path = PredicatePath::fast);
std::size_t min_cross_degree(const PersistenceModule& m, PredicatePath path = PredicatePath::fast);
std::size_t min_cross_codegree(const PersistenceModule& m, PredicatePath path = PredicatePath::fast);

/// Cocartesian: colim over the punctured cube -> X(full) is an iso (H_0 = H_1 = 0).
bool is_cocartesian(const VecCube& cube);
/// Cartesian: X(0) -> lim over the punctured cube is an iso (H_k = H_{k-1} = 0).
bool is_cartesian(const VecCube& cube);

}  // namespace crosscalc
