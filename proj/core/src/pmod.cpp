#include "crosscalc/pmod.hpp"

#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "crosscalc/errors.hpp"

namespace crosscalc {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream ss{std::string(s)};
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

std::int64_t parse_int(const std::string& s, const std::string& where) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw ParseError(where + ": '" + s + "' is not an integer");
    }
    if (used != s.size()) throw ParseError(where + ": '" + s + "' is not an integer");
    return v;
}

struct Entry {
    std::string key;
    std::string value;
    std::size_t line;
};

struct Document {
    std::optional<Entry> version, field, grid, elements, covers;
    std::vector<Entry> dims, maps;
};

Document read_document(std::istream& in) {
    Document doc;
    std::string raw;
    std::size_t lineno = 0;
    enum class Section { top, dims, maps } section = Section::top;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        if (trim(line).empty()) continue;
        const bool indented = line[0] == ' ' || line[0] == '\t';
        const std::string where = "line " + std::to_string(lineno);
        if (indented && section != Section::top) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(where + ": expected 'key = value'");
            Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
            if (e.key.empty()) throw ParseError(where + ": empty key");
            (section == Section::dims ? doc.dims : doc.maps).push_back(std::move(e));
            continue;
        }
        if (indented) throw ParseError(where + ": indented entry outside dims/maps");
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError(where + ": expected 'key: value'");
        const std::string key = trim(line.substr(0, colon));
        const std::string value = trim(line.substr(colon + 1));
        auto set_once = [&](std::optional<Entry>& slot) {
            if (slot) throw ParseError(where + ": duplicate key '" + key + "'");
            slot = Entry{key, value, lineno};
        };
        section = Section::top;
        if (key == "pmod") set_once(doc.version);
        else if (key == "field") set_once(doc.field);
        else if (key == "grid") set_once(doc.grid);
        else if (key == "elements") set_once(doc.elements);
        else if (key == "covers") set_once(doc.covers);
        else if (key == "dims" || key == "maps") {
            if (!value.empty()) throw ParseError(where + ": '" + key + ":' takes indented entries");
            section = key == "dims" ? Section::dims : Section::maps;
        } else {
            throw ParseError(where + ": unknown key '" + key + "'");
        }
    }
    return doc;
}

LatticePtr read_lattice(const Document& doc) {
    if (doc.grid && (doc.elements || doc.covers)) throw ParseError("give either 'grid' or 'elements'/'covers', not both");
    if (doc.grid) {
        const std::string where = "line " + std::to_string(doc.grid->line) + " (grid)";
        std::string v = doc.grid->value;
        if (v.size() < 2 || v.front() != '[' || v.back() != ']') throw ParseError(where + ": expected [m1,m2,...]");
        std::vector<std::size_t> extents;
        std::stringstream ss(v.substr(1, v.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto n = parse_int(trim(item), where);
            if (n < 0) throw ParseError(where + ": extents must be non-negative");
            extents.push_back(static_cast<std::size_t>(n));
        }
        if (extents.empty()) throw ParseError(where + ": empty grid");
        return Lattice::grid(std::move(extents));
    }
    if (!doc.elements) throw ParseError("missing poset: give 'grid' or 'elements'");
    auto names = words(doc.elements->value);
    for (const auto& n : names)
        if (n.find_first_of("<=:[]") != std::string::npos)
            throw ParseError("line " + std::to_string(doc.elements->line) + ": element name '" + n +
                             "' contains a reserved character");
    std::vector<std::pair<std::string, std::string>> relations;
    if (doc.covers) {
        for (const auto& w : words(doc.covers->value)) {
            const auto lt = w.find('<');
            if (lt == std::string::npos || lt == 0 || lt + 1 == w.size())
                throw ParseError("line " + std::to_string(doc.covers->line) + ": cover '" + w + "' is not 'u<v'");
            relations.emplace_back(w.substr(0, lt), w.substr(lt + 1));
        }
    }
    return Lattice::from_relations(std::move(names), relations);
}

}  // namespace

Matrix parse_matrix(std::string_view text, Field field) {
    const std::string s = trim(text);
    const auto x = s.find('x');
    const auto open = s.find('[');
    if (x == std::string::npos || open == std::string::npos || s.back() != ']' || x > open)
        throw ParseError("matrix '" + s + "' is not 'RxC [..]'");
    const auto rows = parse_int(trim(s.substr(0, x)), "matrix rows");
    const auto cols = parse_int(trim(s.substr(x + 1, open - x - 1)), "matrix cols");
    if (rows < 0 || cols < 0) throw ParseError("matrix shape must be non-negative");
    std::vector<std::int64_t> values;
    const std::string body = s.substr(open + 1, s.size() - open - 2);
    std::stringstream rs(body);
    std::string row;
    std::size_t row_count = 0;
    bool any = false;
    while (std::getline(rs, row, ';')) {
        const auto ws = words(row);
        any = any || !ws.empty();
        if (ws.size() != static_cast<std::size_t>(cols) && !(cols == 0 && ws.empty()))
            throw ParseError("matrix row " + std::to_string(row_count) + " has " + std::to_string(ws.size()) +
                             " entries, expected " + std::to_string(cols));
        for (const auto& w : ws) values.push_back(parse_int(w, "matrix entry"));
        ++row_count;
    }
    if (!any) row_count = (rows == 0 || cols == 0) ? static_cast<std::size_t>(rows) : 0;
    if (row_count != static_cast<std::size_t>(rows))
        throw ParseError("matrix has " + std::to_string(row_count) + " rows, expected " + std::to_string(rows));
    return Matrix(field, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), values);
}

std::string format_matrix(const Matrix& m) {
    std::ostringstream os;
    os << m;
    return os.str();
}

PersistenceModule parse_pmod(std::istream& in, const PmodOptions& options) {
    const Document doc = read_document(in);
    if (!doc.version) throw ParseError("missing 'pmod: 1' header");
    if (doc.version->value != "1") throw ParseError("unsupported pmod version '" + doc.version->value + "'");

    std::uint32_t p = 2;
    if (doc.field) {
        const auto v = parse_int(doc.field->value, "field");
        if (v < 2 || v >= (std::int64_t{1} << 31)) throw ParseError("field '" + doc.field->value + "' out of range");
        p = static_cast<std::uint32_t>(v);
    }
    if (options.field) p = *options.field;
    const Field field(p);
    const LatticePtr lattice = read_lattice(doc);
    const auto& l = *lattice;

    std::vector<std::size_t> dims(l.size(), 0);
    std::set<Element> seen_dims;
    for (const auto& e : doc.dims) {
        const std::string where = "line " + std::to_string(e.line) + " (dims " + e.key + ")";
        const auto x = l.find(e.key);
        if (!x) throw ParseError(where + ": unknown element");
        if (!seen_dims.insert(*x).second) throw ParseError(where + ": duplicate element");
        const auto d = parse_int(e.value, where);
        if (d < 0) throw ParseError(where + ": negative dimension");
        dims[*x] = static_cast<std::size_t>(d);
    }

    std::vector<std::optional<Matrix>> maps(l.covers().size());
    for (const auto& e : doc.maps) {
        const std::string where = "line " + std::to_string(e.line) + " (map " + e.key + ")";
        const auto lt = e.key.find('<');
        if (lt == std::string::npos) throw ParseError(where + ": key is not 'u<v'");
        const auto u = l.find(trim(e.key.substr(0, lt)));
        const auto v = l.find(trim(e.key.substr(lt + 1)));
        if (!u || !v) throw ParseError(where + ": unknown element");
        const auto idx = l.cover_index(*u, *v);
        if (!idx) throw ParseError(where + ": not a cover relation");
        if (maps[*idx]) throw ParseError(where + ": duplicate map");
        Matrix m = [&] {
            try {
                return parse_matrix(e.value, field);
            } catch (const ParseError& err) {
                throw ParseError(where + ": " + err.what());
            }
        }();
        if (m.rows() != dims[*v] || m.cols() != dims[*u])
            throw ParseError(where + ": shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             " does not match dims " + std::to_string(dims[*v]) + "x" + std::to_string(dims[*u]));
        maps[*idx] = std::move(m);
    }
    std::vector<Matrix> cover_maps;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto [u, v] = l.covers()[i];
        if (maps[i]) {
            cover_maps.push_back(*maps[i]);
        } else if (dims[u] == 0 || dims[v] == 0) {
            cover_maps.emplace_back(field, dims[v], dims[u]);
        } else {
            throw ParseError("missing map " + l.name(u) + "<" + l.name(v));
        }
    }
    PersistenceModule module(lattice, field, std::move(dims), std::move(cover_maps));
    if (options.validate) require_functor(module);
    return module;
}

PersistenceModule parse_pmod(std::string_view text, const PmodOptions& options) {
    std::istringstream in{std::string(text)};
    return parse_pmod(in, options);
}

void write_pmod(std::ostream& out, const PersistenceModule& m) {
    const auto& l = m.lattice();
    out << "pmod: 1\n";
    out << "field: " << m.field().p() << '\n';
    if (const auto& ext = l.grid_extents()) {
        out << "grid: [";
        for (std::size_t i = 0; i < ext->size(); ++i) out << (i ? "," : "") << (*ext)[i];
        out << "]\n";
    } else {
        out << "elements:";
        for (const auto& n : l.names()) out << ' ' << n;
        out << "\ncovers:";
        for (const auto& c : l.covers()) out << ' ' << l.name(c.lower) << '<' << l.name(c.upper);
        out << '\n';
    }
    out << "dims:\n";
    for (Element x = 0; x < l.size(); ++x)
        if (m.dim(x) != 0) out << "  " << l.name(x) << " = " << m.dim(x) << '\n';
    out << "maps:\n";
    for (std::size_t i = 0; i < l.covers().size(); ++i) {
        const auto [u, v] = l.covers()[i];
        if (m.dim(u) == 0 || m.dim(v) == 0) continue;
        out << "  " << l.name(u) << '<' << l.name(v) << " = " << m.cover_map(i) << '\n';
    }
}

std::string print_pmod(const PersistenceModule& m) {
    std::ostringstream os;
    write_pmod(os, m);
    return os.str();
}

}  // namespace crosscalc
