#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "crosscalc/module.hpp"

namespace crosscalc {

/// Multi-channel integer image; values[c][y * width + x] in [0, max_value].
struct ImageGrid {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 1;
    std::size_t max_value = 1;
    std::vector<std::vector<std::size_t>> values;

    [[nodiscard]] std::size_t at(std::size_t c, std::size_t x, std::size_t y) const { return values[c][y * width + x]; }
};

/// Throws InvalidArgument on ragged or out-of-range data.
void validate_image(const ImageGrid& img);

/// Header line "width,height,channels,max" of integers, then channels * height rows of
/// width comma-separated values (channel 0 first, top row first). Blank lines and
/// lines starting with '#' are skipped. Throws ParseError.
ImageGrid parse_image_csv(std::istream& in);

ImageGrid random_image(std::size_t width, std::size_t height, std::size_t channels, std::size_t max_value,
                       std::uint64_t seed);

/// Background values below max_value with one to three interior pixels raised
/// to max_value in each channel, so the sublevel complexes have loops.
ImageGrid random_peaked_image(std::size_t width, std::size_t height, std::size_t channels, std::size_t max_value,
                              std::uint64_t seed);

/// Cubical complex of the pixel grid: pixels are vertices, 4-neighbours span
/// edges, 2x2 blocks span squares. Each cell carries the componentwise max of
/// its vertex values.
struct CubicalComplex {
    struct Cell {
        std::vector<std::size_t> value;    // one entry per channel
        std::vector<std::size_t> faces;    // codimension-1 faces, indices into the lower dimension
        std::vector<int> signs;            // boundary coefficients of the faces
    };
    std::size_t channels = 1;
    std::size_t max_value = 1;
    std::array<std::vector<Cell>, 3> cells;  // by dimension

    [[nodiscard]] bool in_sublevel(const Cell& c, const std::vector<std::size_t>& threshold) const;
};

CubicalComplex cubical_complex(const ImageGrid& img);

/// Checks cells(a ^ b) = cells(a) n cells(b) for every pair of thresholds of `lattice`.
bool sublevel_meets_are_intersections(const CubicalComplex& cx, const Lattice& lattice);

struct GeneratedModule {
    PersistenceModule module;
    /// true for sublevel filtrations of a single function; unset when not claimed.
    std::optional<bool> one_critical;
};

/// Threshold vector of a grid element (its coordinates).
std::vector<std::size_t> grid_coordinates(const Lattice& l, Element e);

/// H_i of the sublevel bifiltration over [max]^channels, i in {0, 1}.
/// Throws UnsupportedDimension for i > 1 or more than three channels.
GeneratedModule image_bifiltration_homology(const ImageGrid& img, std::size_t degree, Field field);

struct MetricFunctionSpace {
    std::vector<std::vector<double>> distances;
    std::vector<double> values;
    std::vector<double> a_thresholds;  // on f, strictly increasing
    std::vector<double> r_thresholds;  // on distance, strictly increasing
};

/// Throws InvalidArgument on asymmetric distances, nonzero diagonal or unsorted thresholds.
void validate_metric_space(const MetricFunctionSpace& space);

/// Distance matrix as CSV rows, values as one CSV row (or one value per line).
MetricFunctionSpace parse_metric_csv(std::istream& distances, std::istream& values, std::vector<double> a_thresholds,
                                     std::vector<double> r_thresholds);

/// Random points in the unit square with random function values; thresholds at evenly spaced quantiles.
MetricFunctionSpace random_metric_space(std::size_t points, std::size_t a_count, std::size_t r_count,
                                        std::uint64_t seed);

/// H_0 of the sublevel-Rips bifiltration over grid({|a| - 1, |r| - 1}); coordinate 0 indexes a.
/// Components are ordered by their smallest point index.
GeneratedModule sublevel_rips_h0(const MetricFunctionSpace& space, Field field);

/// The one-critical tag of a generated filtration (unset means unknown).
[[nodiscard]] inline std::optional<bool> onecritical_check(const GeneratedModule& g) { return g.one_critical; }

}  // namespace crosscalc
