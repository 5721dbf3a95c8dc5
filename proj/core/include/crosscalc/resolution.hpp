#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crosscalc/module.hpp"

namespace crosscalc {

/// beta^i_a for every element a and 0 <= i <= jdim(a).
class BettiDiagram {
public:
    explicit BettiDiagram(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {}

    [[nodiscard]] std::size_t at(Element a, std::size_t i) const {
        const auto& row = table_.at(a);
        return i < row.size() ? row[i] : 0;
    }
    [[nodiscard]] const std::vector<std::size_t>& row(Element a) const { return table_.at(a); }
    [[nodiscard]] std::size_t elements() const noexcept { return table_.size(); }
    /// Sum of beta^i over all elements.
    [[nodiscard]] std::size_t total(std::size_t i) const;
    /// Largest i with a nonzero entry; -1 when all entries vanish.
    [[nodiscard]] int max_degree() const;

private:
    std::vector<std::vector<std::size_t>> table_;
};

/// Koszul homology of F restricted to each parent cube.
BettiDiagram betti(const PersistenceModule& m);

/// Projective dimension; -1 for the zero module.
int pdim(const PersistenceModule& m);

/// Betti diagram of the minimal injective resolution, via the dual module.
BettiDiagram injective_betti(const PersistenceModule& m);
int injective_dimension(const PersistenceModule& m);

struct PdimReport {
    std::size_t n = 0;
    /// False when n overrides the lattice dimension; the theorem then makes no claim.
    bool hypothesis_holds = true;
    std::array<bool, 3> conditions{};

    [[nodiscard]] bool consistent() const noexcept {
        return conditions[0] == conditions[1] && conditions[1] == conditions[2];
    }
    [[nodiscard]] std::string describe() const;
};

/// For a lattice of dimension n >= 1, compares
///   pdim F <= n - 1,  F cross-degree n - 1,  F -> Gamma^{n-1} F iso.
/// Throws EquivalenceViolated if they disagree while the hypothesis holds,
/// UnsupportedDimension if n < 1.
PdimReport check_pdim_theorem_1(const PersistenceModule& m, std::optional<std::size_t> n = std::nullopt);

/// For a lattice of dimension n >= 2, compares
///   pdim F <= n - 2,  F degree n - 1 and cross-degree n - 2,  F -> T^{n-1} Gamma^{n-2} F iso.
PdimReport check_pdim_theorem_2(const PersistenceModule& m, std::optional<std::size_t> n = std::nullopt);

}  // namespace crosscalc
