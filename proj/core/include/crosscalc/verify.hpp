#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crosscalc/module.hpp"

namespace crosscalc {

struct Counterexample {
    std::string label;
    std::optional<std::uint64_t> seed;
    std::string detail;
    std::string pmod;
};

struct PropertyResult {
    std::string name;
    /// The canonical map whose isomorphism (or mono/epi-ness) the property tests, if any.
    std::string tested_map;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::optional<Counterexample> first_failure;
};

/// Logged data that is reported but never asserted.
struct Observation {
    std::string label;
    std::string value;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<PropertyResult> properties;
    std::vector<Observation> observations;
    double wall_seconds = 0;

    [[nodiscard]] bool passed() const noexcept;
    [[nodiscard]] std::size_t failures() const noexcept;
    [[nodiscard]] const PropertyResult* find(const std::string& name) const;
};

/// Registered suite names, then the groups "theorems" (both theorem suites) and "all".
const std::vector<std::string>& suite_names();

/// Deterministic in (name, seed, trials) apart from wall_seconds. trials = 0
/// gives an empty passing report. Throws UnknownSuite.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t trials);

std::string report_json(const SuiteReport& report, bool include_timing = true);

/// is_cross_codegree(F, n) implies is_cross_codegree(T_k F, n).
bool t_lower_preserves_cross_codegree(const PersistenceModule& m, std::size_t k, std::size_t n);
/// is_cross_degree(F, n) implies is_cross_degree(T^k F, n).
bool t_upper_preserves_cross_degree(const PersistenceModule& m, std::size_t k, std::size_t n);

// Fixed corpus members.

struct LabelledModule {
    std::string label;
    PersistenceModule module;
    std::optional<std::uint64_t> seed;
};

/// The eleven convex connected supports on {0,1}^2 with their
/// (degree, cross-degree, codegree, cross-codegree).
struct IntervalRow {
    std::vector<std::string> support;
    std::array<std::size_t, 4> expected;
};
const std::vector<IntervalRow>& square_interval_rows();
std::vector<LabelledModule> square_interval_corpus(Field field = Field(2));

/// The module over {0,1}^3 that is F at the three coatoms, F^2 at the top and
/// 0 elsewhere, with maps (1,0)^T, (0,1)^T, (1,1)^T into the top.
PersistenceModule nonexample_module(Field field = Field(2));

/// F supported at the top of {0,1}^2, G constant, alpha the inclusion F -> G.
NatTrans colimit_example(Field field = Field(2));

/// Random modules with seeds mixed from `seed`; fields alternate between 2 and 3.
std::vector<LabelledModule> random_corpus(const LatticePtr& lattice, std::uint64_t seed, std::size_t count);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace crosscalc
