#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crosscalc/lattice.hpp"
#include "crosscalc/linalg.hpp"
#include "crosscalc/random.hpp"

namespace crosscalc {

/// A functor lattice -> Vec_F, stored as a dimension per element and a
/// matrix per Hasse cover (shape dim(upper) x dim(lower)). Transports along
/// longer relations are derived by composing covers. Cheap to copy.
class PersistenceModule {
public:
    /// `cover_maps` follows the order of `lattice->covers()`. Throws ShapeMismatch.
    PersistenceModule(LatticePtr lattice, Field field, std::vector<std::size_t> dims, std::vector<Matrix> cover_maps);

    static PersistenceModule zero(LatticePtr lattice, Field field);

    [[nodiscard]] const Lattice& lattice() const noexcept { return *data_->lattice; }
    [[nodiscard]] const LatticePtr& lattice_ptr() const noexcept { return data_->lattice; }
    [[nodiscard]] const Field& field() const noexcept { return data_->field; }
    [[nodiscard]] std::size_t dim(Element x) const { return data_->dims.at(x); }
    [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return data_->dims; }
    [[nodiscard]] std::size_t total_dim() const noexcept;
    [[nodiscard]] bool is_zero() const noexcept { return total_dim() == 0; }

    [[nodiscard]] const Matrix& cover_map(std::size_t cover_index) const { return data_->maps.at(cover_index); }
    /// Throws NotComparable if (lower, upper) is not a cover.
    [[nodiscard]] const Matrix& cover_map(Element lower, Element upper) const;
    [[nodiscard]] const std::vector<Matrix>& cover_maps() const noexcept { return data_->maps; }

    /// F(u <= v), composed along a maximal chain. Throws NotComparable.
    [[nodiscard]] Matrix transport(Element u, Element v) const;

    friend bool operator==(const PersistenceModule& a, const PersistenceModule& b);

private:
    struct Data {
        LatticePtr lattice;
        Field field;
        std::vector<std::size_t> dims;
        std::vector<Matrix> maps;
    };
    std::shared_ptr<const Data> data_;
};

struct FunctorViolation {
    Element u, v, w, w2;
    std::string message;
};

/// Checks that transports are path-independent: for every u <= v and parents
/// w, w' of v above u, F(w < v) F(u <= w) = F(w' < v) F(u <= w').
std::optional<FunctorViolation> validate_functor(const PersistenceModule& m);
/// Throws NonCommutingSquare.
void require_functor(const PersistenceModule& m);

/// A family of matrices source(x) -> target(x), one per lattice element.
class NatTrans {
public:
    /// Throws LatticeMismatch or ShapeMismatch; naturality is checked separately.
    NatTrans(PersistenceModule source, PersistenceModule target, std::vector<Matrix> components);

    static NatTrans identity(const PersistenceModule& m);
    static NatTrans zero(const PersistenceModule& source, const PersistenceModule& target);

    [[nodiscard]] const PersistenceModule& source() const noexcept { return source_; }
    [[nodiscard]] const PersistenceModule& target() const noexcept { return target_; }
    [[nodiscard]] const Matrix& component(Element x) const { return components_.at(x); }
    [[nodiscard]] const std::vector<Matrix>& components() const noexcept { return components_; }

private:
    PersistenceModule source_;
    PersistenceModule target_;
    std::vector<Matrix> components_;
};

/// First cover (u, v) whose naturality square fails, if any.
std::optional<Cover> naturality_violation(const NatTrans& nt);
[[nodiscard]] inline bool is_natural(const NatTrans& nt) { return !naturality_violation(nt); }
/// Throws NotNatural.
void require_natural(const NatTrans& nt);

/// second after first.
NatTrans compose(const NatTrans& second, const NatTrans& first);
NatTrans direct_sum(const NatTrans& a, const NatTrans& b);

bool is_iso(const NatTrans& nt);
bool is_mono(const NatTrans& nt);
bool is_epi(const NatTrans& nt);
/// Pointwise ranks of the components.
std::vector<std::size_t> ranks(const NatTrans& nt);

struct ImageResult {
    PersistenceModule module;
    NatTrans from_source;  // epi
    NatTrans into_target;  // mono
};
struct KernelResult {
    PersistenceModule module;
    NatTrans inclusion;
};
struct CokernelResult {
    PersistenceModule module;
    NatTrans projection;
};

/// Pointwise image with cover maps obtained by factoring target maps through
/// the image bases. Throws NotNatural on a non-natural input.
ImageResult image_of(const NatTrans& nt);
KernelResult kernel_of(const NatTrans& nt);
CokernelResult cokernel_of(const NatTrans& nt);

/// Indicator module of a convex, connected support. Throws NotConvex / NotConnected.
PersistenceModule interval_module(LatticePtr lattice, Field field, std::span<const Element> support);

struct Generator {
    Element at;
    std::size_t multiplicity = 1;
};
using FreeModuleSpec = std::vector<Generator>;

/// sum of multiplicity * [a, -); the basis at x lists the generators below x in input order.
PersistenceModule free_module(LatticePtr lattice, Field field, std::span<const Generator> generators);

/// The natural map between free modules given by coefficients c[j][i] from
/// relation j (at relation_sites[j]) to generator i (at generator_sites[i]);
/// only entries with generator_sites[i] <= relation_sites[j] are used.
NatTrans free_presentation_map(LatticePtr lattice, Field field, std::span<const Element> generator_sites,
                               std::span<const Element> relation_sites,
                               const std::vector<std::vector<Field::Scalar>>& coefficients);

/// Throws LatticeMismatch.
PersistenceModule direct_sum(const PersistenceModule& a, const PersistenceModule& b);

struct RandomModuleParams {
    std::size_t max_generators = 3;
    std::size_t max_relations = 3;
};

/// coker of a random map between random free modules Q1 -> Q0. Deterministic in the seed.
PersistenceModule random_module(LatticePtr lattice, Field field, std::uint64_t seed,
                                RandomModuleParams params = {});

/// Basis of Hom(source, target), solved as the kernel of the naturality constraints.
std::vector<NatTrans> hom_basis(const PersistenceModule& source, const PersistenceModule& target);
/// Random linear combination of hom_basis(source, target).
NatTrans random_natural_transformation(const PersistenceModule& source, const PersistenceModule& target, Rng& rng);

/// Pointwise linear dual F* over the opposite lattice.
PersistenceModule dual_module(const PersistenceModule& m);

}  // namespace crosscalc
