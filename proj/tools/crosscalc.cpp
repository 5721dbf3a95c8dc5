#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "crosscalc/calculus.hpp"
#include "crosscalc/errors.hpp"
#include "crosscalc/generators.hpp"
#include "crosscalc/pmod.hpp"
#include "crosscalc/resolution.hpp"
#include "crosscalc/verify.hpp"

namespace {

using namespace crosscalc;
using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

/// Thrown for bad flag combinations detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<std::size_t> parse_extents(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& s : split(text, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size() || s.empty() || s[0] == '-') throw UsageError("bad grid extent '" + s + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty grid");
    return out;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    for (const auto& s : split(text, ',')) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != s.size()) throw UsageError("bad number '" + s + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<Element> parse_sites(const Lattice& l, const std::string& text) {
    std::vector<Element> out;
    for (const auto& n : split(text, ';')) out.push_back(l.at(n));
    return out;
}

PersistenceModule load_module(const std::string& path, std::optional<std::uint32_t> field) {
    PmodOptions options;
    options.field = field;
    if (path == "-") return parse_pmod(std::cin, options);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_pmod(in, options);
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

// ---- analyze ---------------------------------------------------------------

struct TheoremRow {
    std::string name;
    PdimReport report;
    std::array<const char*, 3> labels;
};

int cmd_analyze(const std::string& path, std::optional<std::uint32_t> field, bool as_json) {
    const auto m = load_module(path, field);
    const auto& l = m.lattice();
    const std::size_t deg = min_degree(m), xdeg = min_cross_degree(m), codeg = min_codegree(m),
                      xcodeg = min_cross_codegree(m);
    const auto b = betti(m);
    const int p = pdim(m);
    if (m.is_zero()) std::cerr << "warning: zero module, pdim and injective dimension reported as -1\n";
    const int inj = injective_dimension(m);

    std::vector<TheoremRow> theorems;
    bool consistent = true;
    if (l.dimension() >= 1) {
        theorems.push_back({"pdim-theorem-1", check_pdim_theorem_1(m), {"pdim<=n-1", "cross-degree(n-1)", "F->Gamma^{n-1}F-iso"}});
    }
    if (l.dimension() >= 2) {
        theorems.push_back({"pdim-theorem-2", check_pdim_theorem_2(m),
                            {"pdim<=n-2", "degree(n-1)&cross-degree(n-2)", "F->T^{n-1}Gamma^{n-2}F-iso"}});
    }
    for (const auto& t : theorems) consistent = consistent && t.report.consistent();

    if (as_json) {
        json j;
        j["field"] = m.field().p();
        j["elements"] = l.size();
        j["dimension"] = l.dimension();
        j["total_dim"] = m.total_dim();
        j["min_degree"] = deg;
        j["min_cross_degree"] = xdeg;
        j["min_codegree"] = codeg;
        j["min_cross_codegree"] = xcodeg;
        json rows = json::object();
        for (Element a = 0; a < l.size(); ++a) {
            bool any = false;
            for (auto v : b.row(a)) any = any || v != 0;
            if (any) rows[l.name(a)] = b.row(a);
        }
        j["betti"] = std::move(rows);
        j["pdim"] = p;
        j["injective_dimension"] = inj;
        j["pdim_theorems"] = json::array();
        for (const auto& t : theorems) {
            json e;
            e["theorem"] = t.name;
            e["n"] = t.report.n;
            e["conditions"] = json::object();
            for (std::size_t i = 0; i < 3; ++i) e["conditions"][t.labels[i]] = t.report.conditions[i];
            e["consistent"] = t.report.consistent();
            j["pdim_theorems"].push_back(std::move(e));
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "degree " << deg << " cross-degree " << xdeg << " codegree " << codeg << " cross-codegree "
                  << xcodeg << "\n";
        std::cout << "field " << m.field().p() << " elements " << l.size() << " dimension " << l.dimension()
                  << " total-dim " << m.total_dim() << "\n";
        std::cout << "betti\n";
        for (Element a = 0; a < l.size(); ++a) {
            bool any = false;
            for (auto v : b.row(a)) any = any || v != 0;
            if (!any) continue;
            std::cout << "  " << l.name(a);
            for (auto v : b.row(a)) std::cout << " " << v;
            std::cout << "\n";
        }
        std::cout << "pdim " << p << "\n";
        std::cout << "injective-dimension " << inj << "\n";
        for (const auto& t : theorems) {
            std::cout << t.name << " n=" << t.report.n;
            for (std::size_t i = 0; i < 3; ++i)
                std::cout << " " << t.labels[i] << "=" << (t.report.conditions[i] ? "yes" : "no");
            std::cout << "\n";
        }
    }
    return consistent ? exit_ok : exit_failure;
}

// ---- approx ----------------------------------------------------------------

ApproxKind parse_kind(const std::string& op) {
    static const std::pair<const char*, ApproxKind> kinds[] = {
        {"t_lower", ApproxKind::t_lower},         {"t_upper", ApproxKind::t_upper},
        {"gamma_lower", ApproxKind::gamma_lower}, {"gamma_upper", ApproxKind::gamma_upper},
        {"cr_lower", ApproxKind::cr_lower},       {"cr_upper", ApproxKind::cr_upper},
    };
    for (const auto& [name, kind] : kinds)
        if (op == name) return kind;
    throw UsageError("unknown --op '" + op + "'");
}

int cmd_approx(const std::string& path, std::optional<std::uint32_t> field, const std::string& op, long long n) {
    const auto kind = parse_kind(op);
    if (n < 0) throw UsageError("--n must be non-negative");
    const auto m = load_module(path, field);
    const auto r = approximate(m, kind, static_cast<std::size_t>(n));
    write_pmod(std::cout, r.module);
    const auto rk = ranks(r.canonical);
    const auto& l = m.lattice();
    for (Element x = 0; x < l.size(); ++x) std::cout << "# canonical-rank " << l.name(x) << " " << rk[x] << "\n";
    return exit_ok;
}

// ---- gen -------------------------------------------------------------------

struct GenFlags {
    std::string grid = "1,1";
    std::string support;
    std::string generators;
    std::uint32_t field = 2;
    std::uint64_t seed = 0;
    std::size_t max_generators = 3;
    std::size_t max_relations = 3;
    std::string csv;
    std::size_t width = 5, height = 5, channels = 2, max_value = 2;
    std::size_t degree = 1;
    std::string distances, values, a_thresholds, r_thresholds;
    std::size_t points = 6, a_count = 3, r_count = 3;
};

int cmd_gen(const std::string& kind, const GenFlags& g) {
    const Field f(g.field);
    if (kind == "interval") {
        auto l = Lattice::grid(parse_extents(g.grid));
        if (g.support.empty()) throw UsageError("gen interval needs --support");
        write_pmod(std::cout, interval_module(l, f, parse_sites(*l, g.support)));
    } else if (kind == "free") {
        auto l = Lattice::grid(parse_extents(g.grid));
        if (g.generators.empty()) throw UsageError("gen free needs --generators");
        std::vector<Generator> gens;
        for (Element e : parse_sites(*l, g.generators)) gens.push_back({e, 1});
        write_pmod(std::cout, free_module(l, f, gens));
    } else if (kind == "random") {
        auto l = Lattice::grid(parse_extents(g.grid));
        RandomModuleParams params;
        params.max_generators = g.max_generators;
        params.max_relations = g.max_relations;
        write_pmod(std::cout, random_module(l, f, g.seed, params));
    } else if (kind == "image") {
        ImageGrid img;
        if (!g.csv.empty()) {
            auto in = open_input(g.csv);
            img = parse_image_csv(in);
        } else {
            img = random_peaked_image(g.width, g.height, g.channels, g.max_value, g.seed);
        }
        write_pmod(std::cout, image_bifiltration_homology(img, g.degree, f).module);
    } else if (kind == "rips") {
        MetricFunctionSpace space;
        if (!g.distances.empty() || !g.values.empty()) {
            if (g.distances.empty() || g.values.empty() || g.a_thresholds.empty() || g.r_thresholds.empty())
                throw UsageError("gen rips from files needs --distances, --values, --a and --r");
            auto d = open_input(g.distances);
            auto v = open_input(g.values);
            space = parse_metric_csv(d, v, parse_doubles(g.a_thresholds), parse_doubles(g.r_thresholds));
        } else {
            space = random_metric_space(g.points, g.a_count, g.r_count, g.seed);
        }
        write_pmod(std::cout, sublevel_rips_h0(space, f).module);
    } else {
        throw UsageError("unknown generator '" + kind + "'");
    }
    return exit_ok;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t trials, bool timing) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw UsageError("unknown suite '" + suite + "'");
    const auto report = run_suite(suite, seed, trials);
    std::cout << report_json(report, timing) << "\n";
    return report.passed() ? exit_ok : exit_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degree, cross-degree and projective dimension of persistence modules over finite distributive lattices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "crosscalc 0.1.0");

    std::string file;
    std::optional<std::uint32_t> field;
    bool as_json = false;

    auto* analyze = app.add_subcommand("analyze", "Print degree statistics, Betti diagram and pdim conditions");
    analyze->add_option("file", file, "PMOD file, or - for stdin")->required();
    analyze->add_option("--field", field, "Override the field prime");
    analyze->add_flag("--json", as_json, "Emit JSON");

    std::string op;
    long long n = 0;
    auto* approx = app.add_subcommand("approx", "Apply an approximation functor and print the result as PMOD");
    approx->add_option("file", file, "PMOD file, or - for stdin")->required();
    approx->add_option("--field", field, "Override the field prime");
    approx->add_option("--op", op, "t_lower, t_upper, gamma_lower, gamma_upper, cr_lower or cr_upper")->required();
    approx->add_option("--n", n, "Order of the approximation")->required();

    std::string gen_kind;
    GenFlags g;
    auto* gen = app.add_subcommand("gen", "Generate a module as PMOD");
    gen->add_option("kind", gen_kind, "interval, free, random, image or rips")->required();
    gen->add_option("--grid", g.grid, "Grid extents, e.g. 1,1 for {0,1}^2");
    gen->add_option("--support", g.support, "interval: ';'-separated element names");
    gen->add_option("--generators", g.generators, "free: ';'-separated generator sites");
    gen->add_option("--field", g.field, "Field prime");
    gen->add_option("--seed", g.seed, "Random seed");
    gen->add_option("--max-generators", g.max_generators, "random: generator bound");
    gen->add_option("--max-relations", g.max_relations, "random: relation bound");
    gen->add_option("--csv", g.csv, "image: CSV image file (random image when omitted)");
    gen->add_option("--width", g.width, "image: random image width");
    gen->add_option("--height", g.height, "image: random image height");
    gen->add_option("--channels", g.channels, "image: random image channels");
    gen->add_option("--max", g.max_value, "image: largest pixel value");
    gen->add_option("--degree", g.degree, "image: homology degree, 0 or 1");
    gen->add_option("--distances", g.distances, "rips: distance matrix CSV");
    gen->add_option("--values", g.values, "rips: function values CSV");
    gen->add_option("--a", g.a_thresholds, "rips: comma-separated function thresholds");
    gen->add_option("--r", g.r_thresholds, "rips: comma-separated distance thresholds");
    gen->add_option("--points", g.points, "rips: random point count");
    gen->add_option("--a-count", g.a_count, "rips: random function threshold count");
    gen->add_option("--r-count", g.r_count, "rips: random distance threshold count");

    std::string suite;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    bool no_timing = false;
    auto* verify = app.add_subcommand("verify", "Run a property suite and print its JSON report");
    verify->add_option("--suite", suite, "Suite name")->required();
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--trials", trials, "Random modules per corpus");
    verify->add_flag("--no-timing", no_timing, "Omit wall_seconds from the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*analyze) return cmd_analyze(file, field, as_json);
        if (*approx) return cmd_approx(file, field, op, n);
        if (*gen) return cmd_gen(gen_kind, g);
        if (*verify) return cmd_verify(suite, seed, trials, !no_timing);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_usage;
    } catch (const EquivalenceViolated& e) {
        std::cerr << "analysis failure: " << e.what() << "\n";
        return exit_failure;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_failure;
    } catch (const Error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
