#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "crosscalc/linalg.hpp"
#include "crosscalc/module.hpp"

namespace crosscalc {

struct PmodOptions {
    /// Replaces the file's field; entries are reduced modulo the new prime.
    std::optional<std::uint32_t> field;
    /// Run validate_functor on the result (throws NonCommutingSquare).
    bool validate = true;
};

/// Reads the PMOD text format (see docs/PMOD.md). Throws ParseError for
/// syntax and shape problems, NotLattice / NotDistributive / NoBottom for bad
/// posets and NonCommutingSquare for non-functorial data.
PersistenceModule parse_pmod(std::istream& in, const PmodOptions& options = {});
PersistenceModule parse_pmod(std::string_view text, const PmodOptions& options = {});

/// Canonical form: nonzero dims in element order, maps with both sides
/// nonzero in cover order. parse_pmod(print_pmod(m)) == m.
std::string print_pmod(const PersistenceModule& m);
void write_pmod(std::ostream& out, const PersistenceModule& m);

/// "RxC [a b; c d]". Throws ParseError.
Matrix parse_matrix(std::string_view text, Field field);
std::string format_matrix(const Matrix& m);

}  // namespace crosscalc
