#include "crosscalc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>

#include "crosscalc/errors.hpp"
#include "crosscalc/random.hpp"

namespace crosscalc {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t\r");
        const auto e = item.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    return out;
}

bool content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        return true;
    }
    return false;
}

template <class T>
T parse_number(const std::string& s, std::size_t lineno) {
    std::istringstream ss(s);
    T v{};
    if (!(ss >> v) || !(ss >> std::ws).eof())
        throw ParseError("line " + std::to_string(lineno) + ": '" + s + "' is not a number");
    return v;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

void require_increasing(const std::vector<double>& t, const char* what) {
    if (t.empty()) throw InvalidArgument(std::string(what) + " thresholds are empty");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i - 1] < t[i])) throw InvalidArgument(std::string(what) + " thresholds are not strictly increasing");
}

}  // namespace

void validate_image(const ImageGrid& img) {
    if (img.width == 0 || img.height == 0) throw InvalidArgument("image has no pixels");
    if (img.channels == 0) throw InvalidArgument("image has no channels");
    if (img.values.size() != img.channels) throw InvalidArgument("image channel count does not match data");
    for (const auto& ch : img.values) {
        if (ch.size() != img.width * img.height) throw InvalidArgument("image channel is not width x height");
        for (auto v : ch)
            if (v > img.max_value)
                throw InvalidArgument("pixel value " + std::to_string(v) + " exceeds max " +
                                      std::to_string(img.max_value));
    }
}

ImageGrid parse_image_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!content_line(in, line, lineno)) throw ParseError("image: missing header");
    auto header = split_csv(line);
    if (header.size() != 4) throw ParseError("image header: expected width,height,channels,max");
    ImageGrid img;
    img.width = parse_number<std::size_t>(header[0], lineno);
    img.height = parse_number<std::size_t>(header[1], lineno);
    img.channels = parse_number<std::size_t>(header[2], lineno);
    img.max_value = parse_number<std::size_t>(header[3], lineno);
    img.values.assign(img.channels, {});
    for (std::size_t c = 0; c < img.channels; ++c) {
        for (std::size_t y = 0; y < img.height; ++y) {
            if (!content_line(in, line, lineno))
                throw ParseError("image: expected " + std::to_string(img.channels * img.height) + " rows");
            auto row = split_csv(line);
            if (row.size() != img.width)
                throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(img.width) +
                                 " values");
            for (const auto& v : row) img.values[c].push_back(parse_number<std::size_t>(v, lineno));
        }
    }
    if (content_line(in, line, lineno)) throw ParseError("line " + std::to_string(lineno) + ": trailing data");
    try {
        validate_image(img);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("image: ") + e.what());
    }
    return img;
}

ImageGrid random_image(std::size_t width, std::size_t height, std::size_t channels, std::size_t max_value,
                       std::uint64_t seed) {
    Rng rng(seed);
    ImageGrid img{width, height, channels, max_value, {}};
    img.values.assign(channels, std::vector<std::size_t>(width * height));
    for (auto& ch : img.values)
        for (auto& v : ch) v = rng.below(max_value + 1);
    return img;
}

ImageGrid random_peaked_image(std::size_t width, std::size_t height, std::size_t channels, std::size_t max_value,
                              std::uint64_t seed) {
    if (max_value == 0) throw InvalidArgument("peaked images need max_value >= 1");
    Rng rng(seed);
    ImageGrid img{width, height, channels, max_value, {}};
    img.values.assign(channels, std::vector<std::size_t>(width * height));
    for (auto& ch : img.values)
        for (auto& v : ch) v = rng.below(max_value);
    if (width < 3 || height < 3) return img;
    std::vector<std::size_t> shared;
    const std::size_t peaks = 1 + rng.below(3);
    for (std::size_t k = 0; k < peaks; ++k)
        shared.push_back((1 + rng.below(height - 2)) * width + 1 + rng.below(width - 2));
    for (auto& ch : img.values)
        for (auto p : shared)
            ch[rng.chance(1, 3) ? (1 + rng.below(height - 2)) * width + 1 + rng.below(width - 2) : p] = max_value;
    return img;
}

bool CubicalComplex::in_sublevel(const Cell& c, const std::vector<std::size_t>& threshold) const {
    for (std::size_t i = 0; i < channels; ++i)
        if (c.value[i] > threshold[i]) return false;
    return true;
}

CubicalComplex cubical_complex(const ImageGrid& img) {
    validate_image(img);
    const std::size_t w = img.width, h = img.height;
    CubicalComplex cx;
    cx.channels = img.channels;
    cx.max_value = img.max_value;
    auto vmax = [&](std::initializer_list<std::size_t> vs) {
        std::vector<std::size_t> out(img.channels, 0);
        for (auto v : vs)
            for (std::size_t c = 0; c < img.channels; ++c) out[c] = std::max(out[c], img.values[c][v]);
        return out;
    };
    auto vid = [&](std::size_t x, std::size_t y) { return y * w + x; };
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) cx.cells[0].push_back({vmax({vid(x, y)}), {}, {}});
    // horizontal edges, then vertical edges
    const std::size_t horizontal = (w - 1) * h;
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x + 1 < w; ++x)
            cx.cells[1].push_back({vmax({vid(x, y), vid(x + 1, y)}), {vid(x, y), vid(x + 1, y)}, {-1, 1}});
    for (std::size_t y = 0; y + 1 < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            cx.cells[1].push_back({vmax({vid(x, y), vid(x, y + 1)}), {vid(x, y), vid(x, y + 1)}, {-1, 1}});
    auto hid = [&](std::size_t x, std::size_t y) { return y * (w - 1) + x; };
    auto vert = [&](std::size_t x, std::size_t y) { return horizontal + y * w + x; };
    for (std::size_t y = 0; y + 1 < h; ++y)
        for (std::size_t x = 0; x + 1 < w; ++x)
            cx.cells[2].push_back({vmax({vid(x, y), vid(x + 1, y), vid(x, y + 1), vid(x + 1, y + 1)}),
                                   {hid(x, y), vert(x + 1, y), hid(x, y + 1), vert(x, y)},
                                   {1, 1, -1, -1}});
    return cx;
}

std::vector<std::size_t> grid_coordinates(const Lattice& l, Element e) {
    const auto& ext = l.grid_extents();
    if (!ext) throw InvalidArgument("lattice is not a grid");
    std::vector<std::size_t> c;
    for (auto m : *ext) {
        c.push_back(e % (m + 1));
        e /= m + 1;
    }
    return c;
}

bool sublevel_meets_are_intersections(const CubicalComplex& cx, const Lattice& lattice) {
    for (Element a = 0; a < lattice.size(); ++a)
        for (Element b = 0; b < lattice.size(); ++b) {
            const auto ta = grid_coordinates(lattice, a);
            const auto tb = grid_coordinates(lattice, b);
            const auto tm = grid_coordinates(lattice, lattice.meet(a, b));
            for (const auto& dim : cx.cells)
                for (const auto& cell : dim)
                    if (cx.in_sublevel(cell, tm) != (cx.in_sublevel(cell, ta) && cx.in_sublevel(cell, tb)))
                        return false;
        }
    return true;
}

GeneratedModule image_bifiltration_homology(const ImageGrid& img, std::size_t degree, Field field) {
    if (degree > 1) throw UnsupportedDimension("only H_0 and H_1 of 2D images are supported");
    if (img.channels > 3) throw UnsupportedDimension("at most three channels are supported");
    const auto cx = cubical_complex(img);
    auto lattice = Lattice::grid(std::vector<std::size_t>(img.channels, img.max_value));
    const auto& l = *lattice;

    auto boundary = [&](std::size_t d) {
        Matrix m(field, cx.cells[d - 1].size(), cx.cells[d].size());
        for (std::size_t j = 0; j < cx.cells[d].size(); ++j) {
            const auto& c = cx.cells[d][j];
            for (std::size_t k = 0; k < c.faces.size(); ++k) m.set(c.faces[k], j, field.reduce(c.signs[k]));
        }
        return m;
    };
    const std::size_t nd = cx.cells[degree].size();
    const Matrix d_in = degree == 0 ? Matrix(field, 0, nd) : boundary(degree);  // C_i -> C_{i-1}
    const Matrix d_out = boundary(degree + 1);                                   // C_{i+1} -> C_i

    std::vector<Matrix> boundaries, reps;
    std::vector<std::size_t> dims;
    for (Element x = 0; x < l.size(); ++x) {
        const auto t = grid_coordinates(l, x);
        std::vector<std::size_t> present, present_up;
        for (std::size_t j = 0; j < nd; ++j)
            if (cx.in_sublevel(cx.cells[degree][j], t)) present.push_back(j);
        for (std::size_t j = 0; j < cx.cells[degree + 1].size(); ++j)
            if (cx.in_sublevel(cx.cells[degree + 1][j], t)) present_up.push_back(j);
        // cycles of the sublevel complex, written in ambient chain coordinates
        const Matrix local_kernel = kernel_basis(d_in.select_columns(present));
        Matrix z(field, nd, local_kernel.cols());
        for (std::size_t r = 0; r < present.size(); ++r)
            for (std::size_t c = 0; c < local_kernel.cols(); ++c) z.set(present[r], c, local_kernel(r, c));
        const Matrix b = d_out.select_columns(present_up);
        const auto e = rref(hstack(b, z));
        std::vector<std::size_t> b_cols, z_cols;
        for (auto pc : e.pivot_cols) (pc < b.cols() ? b_cols : z_cols).push_back(pc < b.cols() ? pc : pc - b.cols());
        boundaries.push_back(b.select_columns(b_cols));
        reps.push_back(z.select_columns(z_cols));
        dims.push_back(z_cols.size());
    }

    std::vector<Matrix> maps;
    for (const auto [x, y] : l.covers()) {
        auto coords = solve(hstack(boundaries[y], reps[y]), reps[x]);
        if (!coords) throw InternalError("cycle at " + l.name(x) + " is not a cycle at " + l.name(y));
        maps.push_back(coords->rows_range(boundaries[y].cols(), reps[y].cols()));
    }
    return {PersistenceModule(lattice, field, std::move(dims), std::move(maps)), true};
}

void validate_metric_space(const MetricFunctionSpace& space) {
    const auto n = space.values.size();
    if (space.distances.size() != n) throw InvalidArgument("distance matrix size does not match the point count");
    for (std::size_t i = 0; i < n; ++i) {
        if (space.distances[i].size() != n) throw InvalidArgument("distance matrix is not square");
        if (space.distances[i][i] != 0) throw InvalidArgument("d(x, x) must be 0");
        for (std::size_t j = 0; j < n; ++j)
            if (space.distances[i][j] != space.distances[j][i]) throw InvalidArgument("distance matrix is not symmetric");
    }
    require_increasing(space.a_thresholds, "function");
    require_increasing(space.r_thresholds, "distance");
}

MetricFunctionSpace parse_metric_csv(std::istream& distances, std::istream& values, std::vector<double> a_thresholds,
                                     std::vector<double> r_thresholds) {
    MetricFunctionSpace space;
    std::string line;
    std::size_t lineno = 0;
    while (content_line(distances, line, lineno)) {
        std::vector<double> row;
        for (const auto& v : split_csv(line)) row.push_back(parse_number<double>(v, lineno));
        space.distances.push_back(std::move(row));
    }
    lineno = 0;
    while (content_line(values, line, lineno))
        for (const auto& v : split_csv(line)) space.values.push_back(parse_number<double>(v, lineno));
    space.a_thresholds = std::move(a_thresholds);
    space.r_thresholds = std::move(r_thresholds);
    try {
        validate_metric_space(space);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("metric space: ") + e.what());
    }
    return space;
}

MetricFunctionSpace random_metric_space(std::size_t points, std::size_t a_count, std::size_t r_count,
                                        std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t resolution = 1000;
    std::vector<std::pair<double, double>> xy;
    MetricFunctionSpace space;
    for (std::size_t i = 0; i < points; ++i) {
        xy.emplace_back(rng.below(resolution + 1) / double(resolution), rng.below(resolution + 1) / double(resolution));
        space.values.push_back(rng.below(resolution + 1) / double(resolution));
    }
    space.distances.assign(points, std::vector<double>(points, 0.0));
    std::vector<double> all_d;
    for (std::size_t i = 0; i < points; ++i)
        for (std::size_t j = i + 1; j < points; ++j) {
            const double d = std::hypot(xy[i].first - xy[j].first, xy[i].second - xy[j].second);
            space.distances[i][j] = space.distances[j][i] = d;
            all_d.push_back(d);
        }
    auto quantiles = [](std::vector<double> xs, std::size_t count) {
        std::sort(xs.begin(), xs.end());
        std::vector<double> out;
        for (std::size_t k = 1; k <= count; ++k) {
            const double q = xs.empty() ? double(k) : xs[std::min(xs.size() - 1, k * xs.size() / (count + 1))];
            if (out.empty() || q > out.back()) out.push_back(q);
            else out.push_back(std::nextafter(out.back(), 2.0 + out.back()));
        }
        return out;
    };
    space.a_thresholds = quantiles(space.values, a_count);
    space.r_thresholds = quantiles(all_d, r_count);
    return space;
}

GeneratedModule sublevel_rips_h0(const MetricFunctionSpace& space, Field field) {
    validate_metric_space(space);
    const std::size_t n = space.values.size();
    const std::size_t na = space.a_thresholds.size(), nr = space.r_thresholds.size();
    auto lattice = Lattice::grid({na - 1, nr - 1});
    const auto& l = *lattice;
    constexpr std::size_t absent = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> component(l.size(), std::vector<std::size_t>(n, absent));
    std::vector<std::vector<std::size_t>> representative(l.size());
    for (Element e = 0; e < l.size(); ++e) {
        const auto c = grid_coordinates(l, e);
        const double a = space.a_thresholds[c[0]], r = space.r_thresholds[c[1]];
        UnionFind uf(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (space.values[i] <= a && space.values[j] <= a && space.distances[i][j] <= r) uf.unite(i, j);
        std::vector<std::size_t> id_of_root(n, absent);
        for (std::size_t p = 0; p < n; ++p) {
            if (space.values[p] > a) continue;
            const auto root = uf.find(p);
            if (id_of_root[root] == absent) {
                id_of_root[root] = representative[e].size();
                representative[e].push_back(p);
            }
            component[e][p] = id_of_root[root];
        }
    }
    std::vector<std::size_t> dims;
    for (Element e = 0; e < l.size(); ++e) dims.push_back(representative[e].size());
    std::vector<Matrix> maps;
    for (const auto [x, y] : l.covers()) {
        Matrix m(field, dims[y], dims[x]);
        for (std::size_t c = 0; c < dims[x]; ++c) m.set(component[y][representative[x][c]], c, 1);
        maps.push_back(std::move(m));
    }
    return {PersistenceModule(lattice, field, std::move(dims), std::move(maps)), std::nullopt};
}

}  // namespace crosscalc
