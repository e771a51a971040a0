#pragma once

// Command-line front end. Every subcommand prints one JSON report:
// {command, matrix_digest, config, result, tiers, ms}.

#include "gkz/ekranks.hpp"
#include "gkz/io.hpp"
#include "gkz/lattice_ideal.hpp"
#include "gkz/oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

namespace gkz::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
    std::int64_t window_radius = 0;  // 0: 6 * max |entry|
    std::int64_t weight_cap = Semigroup::default_weight_cap;
    std::int64_t markov_horizon = 0;  // 0: 6 * max_j (w . a_j)
    std::uint64_t max_degrees = 2'000'000;
    unsigned threads = 1;
    std::string format = "json";
    bool timing = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BoundTooLarge : public DomainError {
public:
    BoundTooLarge(const std::string& what, std::int64_t value, std::int64_t limit)
        : DomainError("BoundTooLarge",
                      what + " " + std::to_string(value) + " exceeds the oracle limit " + std::to_string(limit)) {}
};

namespace detail {

inline Json to_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(x));
    return Json(x.str());
}

inline Json to_json(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json to_json(const RatVector& v) {
    Json a = Json::array();
    for (const auto& x : v) {
        if (is_integral(x))
            a.push_back(to_json(Integer(boost::multiprecision::numerator(x))));
        else
            a.push_back(boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str());
    }
    return a;
}

inline Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
    return rows;
}

inline Json to_json(const RankVector& r) { return Json{{"convention", to_string(r.convention)}, {"ranks", r.ranks}}; }

inline Json columns_json(ColumnSet c) {
    Json a = Json::array();
    for (auto j : c.members()) a.push_back(j + 1);
    return a;
}

inline Json window_json(const Window& w) {
    if (w.empty()) return Json(nullptr);
    return Json{{"lower", w.lower()}, {"upper", w.upper()}};
}

inline std::vector<std::int64_t> trim(std::vector<std::int64_t> h, std::size_t len) {
    for (std::size_t i = len; i < h.size(); ++i)
        if (h[i] != 0) throw std::logic_error("local cohomology above the dimension");
    if (h.size() > len) h.resize(len);
    return h;
}

inline Json binomial_json(const Binomial& b) {
    return Json{{"plus", to_json(b.v_plus)}, {"minus", to_json(b.v_minus)}, {"text", to_string(b)}};
}

inline Json fit_json(const QuasiDegreeFit& fit) {
    Json comps = Json::array();
    for (const auto& c : fit.components)
        comps.push_back(Json{{"shift", to_json(c.shift)}, {"face", columns_json(c.face)}, {"dimension", c.dimension}});
    Json res = Json::array();
    for (const auto& r : fit.residuals) res.push_back(to_json(r));
    return Json{{"components", comps}, {"residuals", res}, {"heuristic", fit.heuristic}};
}

inline ToricModuleSpec module_from(const std::string& name, std::size_t dim) {
    if (name == "S") return ToricModuleSpec::semigroup_ring();
    if (name == "m") return ToricModuleSpec::maximal_ideal();
    if (name == "k") return ToricModuleSpec::residue_field(DegreeVector(dim));
    throw UsageError("--module must be one of S, m, k (got '" + name + "')");
}

// Shared per-subcommand options.
struct Options {
    std::string matrix;
    std::string degree;
    std::string box;
    std::int64_t window = 0;
    std::vector<std::size_t> columns;
    std::size_t column = 0;
    std::string module = "S";
    std::string kind;
    std::int64_t bound = 0;
};

struct Context {
    IntMatrix a;
    RunConfig cfg;
    Options opt;
    std::string command;
};

inline std::int64_t default_radius(const IntMatrix& a) {
    Integer m = 1;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, abs(a(i, j)));
    return 6 * to_int64(m);
}

inline Window window_of(const Context& c) {
    if (!c.opt.box.empty()) {
        Window w;
        try {
            w = parse_box(c.opt.box);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--box: ") + e.what());
        }
        if (w.dim() != c.a.rows()) throw UsageError("--box: expected " + std::to_string(c.a.rows()) + " ranges");
        return w;
    }
    std::int64_t r = c.opt.window > 0 ? c.opt.window : (c.cfg.window_radius > 0 ? c.cfg.window_radius : default_radius(c.a));
    return Window::symmetric(c.a.rows(), r);
}

inline RatVector parameter_of(const Context& c, bool required = true) {
    if (c.opt.degree.empty()) {
        if (required) throw UsageError("--beta/--degree is required");
        return {};
    }
    RatVector b;
    try {
        b = parse_parameter(c.opt.degree);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--beta: ") + e.what());
    }
    if (b.size() != c.a.rows())
        throw UsageError("--beta: expected " + std::to_string(c.a.rows()) + " entries, got " + std::to_string(b.size()));
    return b;
}

inline DegreeVector integral_parameter_of(const Context& c) {
    auto b = integral_point(parameter_of(c));
    if (!b) throw UsageError("--degree must be integral for this command");
    return *b;
}

inline ColumnSet columns_of(const Context& c) {
    ColumnSet s;
    for (auto j : c.opt.columns) {
        if (j < 1 || j > c.a.cols()) throw UsageError("--columns: index " + std::to_string(j) + " out of range");
        s.insert(j - 1);
    }
    return s.empty() ? ColumnSet::all(c.a.cols()) : s;
}

struct Outcome {
    Json result = Json::object();
    Json tiers = Json::object();
    int exit_code = 0;
    Json config_extra = Json::object();
};

inline void require_pointed(const IntMatrix& a) {
    if (!validate_matrix(a).pointed) throw DomainError("NotPointed", "no functional is positive on every column");
}

inline Outcome cmd_check(const Context& c) {
    Outcome o;
    auto f = validate_matrix(c.a);
    o.result["pointed"] = f.pointed;
    o.result["homogeneous"] = f.homogeneous;
    o.result["saturated"] = f.pointed ? Json(is_saturated(Semigroup(c.a, c.cfg.weight_cap))) : Json(nullptr);
    o.result["full_rank"] = f.full_rank;
    o.result["minors_gcd_one"] = f.minors_gcd_one;
    o.result["rank"] = f.rank;
    o.result["witness"] = f.pointed ? to_json(f.witness) : Json(nullptr);
    return o;
}

inline Outcome cmd_faces(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Cone cone(c.a);
    Json facets = Json::array();
    for (const auto& f : cone.facets()) facets.push_back(to_json(f));
    Json faces = Json::array();
    for (const auto& f : cone.faces())
        faces.push_back(Json{{"columns", columns_json(f.columns)}, {"dimension", f.dimension}});
    o.result["facets"] = facets;
    o.result["faces"] = faces;
    return o;
}

inline Outcome cmd_markov(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    MarkovOptions mo;
    mo.horizon = c.cfg.markov_horizon;
    mo.threads = c.cfg.threads;
    auto mb = markov_basis(c.a, mo);
    Json bins = Json::array();
    for (const auto& b : mb.binomials) bins.push_back(binomial_json(b));
    Json lat = Json::array();
    for (const auto& b : lattice_binomials(c.a)) lat.push_back(binomial_json(b));
    o.result["lattice_binomials"] = lat;
    o.result["binomials"] = bins;
    o.result["certified"] = mb.certified;
    o.result["horizon"] = mb.horizon;
    o.result["last_new_weight"] = mb.last_new_weight;
    o.config_extra["markov_horizon"] = mb.horizon;
    if (!mb.certified) {
        o.result["error"] = Json{{"name", "HorizonExceeded"},
                                 {"message", "Markov completion did not stabilize within the weight horizon"}};
        o.exit_code = 1;
    }
    return o;
}

inline Outcome cmd_lc(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    ColumnSet tau = columns_of(c);
    auto spec = module_from(c.opt.module, c.a.rows());
    const std::size_t len = std::min(tau.size(), torus_dim(s)) + 1;
    o.result["columns"] = columns_json(tau);
    o.result["module"] = to_string(spec);
    o.result["convention"] = "cech";
    if (!c.opt.degree.empty()) {
        auto alpha = integral_parameter_of(c);
        o.result["degree"] = to_json(alpha);
        o.result["H"] = trim(lc_dims_at(s, alpha, tau, spec).ranks, len);
        return o;
    }
    Window w = window_of(c);
    ScanOptions so;
    so.tau = tau;
    so.spec = spec;
    so.threads = c.cfg.threads;
    so.max_degrees = c.cfg.max_degrees;
    Json rows = Json::array();
    for (const auto& r : lc_scan(s, w, so)) rows.push_back(Json{{"degree", to_json(r.degree)}, {"H", trim(r.ranks, len)}});
    o.result["window"] = window_json(w);
    o.result["rows"] = rows;
    return o;
}

inline Outcome cmd_restrict(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    auto beta = parameter_of(c);
    auto spec = module_from(c.opt.module, c.a.rows());
    o.result["beta"] = to_json(beta);
    o.result["module"] = to_string(spec);
    o.result["integral"] = integral_point(beta).has_value();
    o.result["ranks"] = to_json(restriction_dims(s, spec, beta));
    return o;
}

inline Outcome cmd_derham(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    auto beta = parameter_of(c);
    auto spec = module_from(c.opt.module, c.a.rows());
    auto d = derham_ranks(s, spec, beta);
    o.result["beta"] = to_json(beta);
    o.result["module"] = to_string(spec);
    o.result["dim_X"] = c.a.cols();
    o.result["cech"] = to_json(d.cech);
    o.result["raw"] = to_json(d.raw);
    o.result["shifted"] = to_json(d.shifted);
    return o;
}

inline Outcome cmd_ext(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    auto beta = parameter_of(c);
    Window w = window_of(c);
    auto sol = solution_ext_dims(s, beta, w, c.cfg.threads);
    auto van = o_ext_vanishing(s, beta, w, c.cfg.threads);
    o.result["beta"] = to_json(beta);
    o.result["solution_ext"] = to_json(sol.ranks);
    o.result["hypothesis_holds"] = sol.hypothesis_holds;
    o.result["caveat"] = sol.caveat.empty() ? Json(nullptr) : Json(sol.caveat);
    o.result["o_ext"] = Json{{"verdict", van.text()}, {"reason", van.reason}};
    o.result["window"] = window_json(w);
    o.tiers["solution_ext"] = to_string(sol.tier);
    o.tiers["o_ext_vanishing"] = to_string(van.tier);
    return o;
}

inline Json four_term_json(const FourTermReport& r) {
    return Json{{"beta", to_json(r.beta)},
                {"left_outer", r.left_outer},
                {"right_outer", r.right_outer},
                {"in_semigroup", r.in_semigroup},
                {"tor_left", to_json(r.tor_left)},
                {"tor_middle", to_json(r.tor_middle)},
                {"tor_hypergeometric", to_json(r.tor_hypergeometric)},
                {"tor_right", to_json(r.tor_right)},
                {"consistent", r.consistent},
                {"note", r.note}};
}

inline Outcome cmd_fourterm(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    o.result = four_term_json(four_term_report(s, parameter_of(c)));
    return o;
}

inline Outcome cmd_gm(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    auto g = gm_report(s, window_of(c), c.cfg.threads);
    Json rows = Json::array();
    for (const auto& r : g.rows)
        rows.push_back(Json{{"name", r.name}, {"terms", r.terms}, {"ranks", r.ranks}, {"alternating_sum", r.alternating_sum()}});
    o.result["B"] = to_json(g.b);
    o.result["H_d_dR_T_B"] = g.torus_b_top;
    o.result["H_d-1_dR_T_B"] = g.torus_b_next;
    o.result["volume"] = g.volume;
    o.result["rows"] = rows;
    o.result["four_term"] = four_term_json(g.four_term);
    o.result["lower_left_matches_residue"] = g.lower_left_matches_residue;
    o.result["quotient_relation"] = g.quotient_relation;
    o.result["consistent"] = g.consistent;
    o.result["extension"] = Json{{"ext_O_V", to_json(g.extension.ext_o_v)},
                                 {"ext_O_O", to_json(g.extension.ext_o_o)},
                                 {"split", g.extension.split}};
    o.tiers["o_ext_vanishing"] = to_string(g.extension.hypothesis.tier);
    return o;
}

inline Outcome cmd_sres(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    auto beta = parameter_of(c);
    auto b = integral_point(beta);
    std::vector<std::size_t> cols;
    if (c.opt.column > 0) {
        if (c.opt.column > c.a.cols()) throw UsageError("--column out of range");
        cols.push_back(c.opt.column - 1);
    } else {
        for (std::size_t j = 0; j < c.a.cols(); ++j) cols.push_back(j);
    }
    Json rows = Json::array();
    for (auto j : cols) rows.push_back(Json{{"column", j + 1}, {"degree", b ? sres_degree_test(s, *b, j) : false}});
    o.result["beta"] = to_json(beta);
    o.result["columns"] = rows;
    o.tiers["sres_degree"] = "exact";
    return o;
}

inline Outcome cmd_exceptional(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    auto beta = parameter_of(c);
    Window w = window_of(c);
    auto r = exceptional_report(s, beta, w, c.cfg.threads);
    Json lower = Json::array();
    for (const auto& row : r.lower)
        lower.push_back(Json{{"degree", to_json(row.degree)}, {"H", trim(row.ranks, torus_dim(s) + 1)}});
    o.result["beta"] = to_json(beta);
    o.result["degree_member"] = r.degree_member;
    o.result["fitted_member"] = r.fitted_member;
    o.result["saturated"] = r.saturated;
    o.result["window"] = window_json(w);
    o.result["lower_local_cohomology"] = lower;
    o.result["fit"] = fit_json(r.fit);
    o.tiers["degree_member"] = "exact";
    o.tiers["fitted_member"] = r.saturated ? "exact" : "heuristic-fit";
    return o;
}

inline Outcome cmd_oracle(const Context& c) {
    require_pointed(c.a);
    Outcome o;
    Semigroup s(c.a, c.cfg.weight_cap);
    const std::string& kind = c.opt.kind;
    Json mismatches = Json::array();
    std::int64_t checked = 0;
    auto w = s.cone().positive_functional();
    oracle::NaiveSemigroup naive(c.a);
    if (kind == "membership") {
        std::int64_t bound = c.opt.bound > 0 ? c.opt.bound : 10;
        if (bound > 40) throw BoundTooLarge("weight bound", bound, 40);
        std::set<oracle::Point> elems;
        for (const auto& u : oracle::exponents_up_to(c.a, w, bound)) elems.insert(oracle::image(c.a, u));
        // Candidates: every point of the saturation up to the bound, produced
        // from its Hilbert basis; the verdicts come from the two methods.
        IntMatrix hb = IntMatrix::from_columns(hilbert_basis(c.a), c.a.rows());
        std::set<oracle::Point> candidates;
        for (const auto& u : oracle::exponents_up_to(hb, w, bound)) candidates.insert(oracle::image(hb, u));
        for (const auto& pt : candidates) {
            IntVector p(pt.begin(), pt.end());
            ++checked;
            bool fast = s.member(p);
            bool slow = elems.count(pt) > 0;
            if (fast != slow) mismatches.push_back(Json{{"degree", to_json(p)}, {"main", fast}, {"oracle", slow}});
        }
    } else if (kind == "restriction") {
        std::int64_t bound = c.opt.bound > 0 ? c.opt.bound : 2;
        if (bound > 4) throw BoundTooLarge("window radius", bound, 4);
        auto pts = Window::symmetric(c.a.rows(), bound).points();
        for (const auto& beta : pts) {
            std::vector<std::int64_t> total(torus_dim(s) + 1, 0);
            for (const auto& alpha : pts) {
                std::vector<Rational> scalars;
                for (std::size_t i = 0; i < alpha.size(); ++i) scalars.emplace_back(alpha[i] - beta[i]);
                auto h = oracle::koszul_homology(scalars, graded_dim(s, ToricModuleSpec::semigroup_ring(), alpha));
                for (std::size_t j = 0; j < h.size() && j < total.size(); ++j) total[j] += h[j];
            }
            ++checked;
            auto fast = restriction_dims(s, ToricModuleSpec::semigroup_ring(), to_rational(beta)).ranks;
            if (fast != total) mismatches.push_back(Json{{"degree", to_json(beta)}, {"main", fast}, {"oracle", total}});
        }
    } else if (kind == "localization") {
        std::int64_t bound = c.opt.bound > 0 ? c.opt.bound : 2;
        if (bound > 3) throw BoundTooLarge("window radius", bound, 3);
        const std::int64_t boxes[] = {0, 32, 24, 6, 4, 3, 2, 2, 1, 1, 1, 1, 1};
        for (const auto& p : Window::symmetric(c.a.rows(), bound).points()) {
            for (std::uint32_t f = 0; f < (1u << c.a.cols()); ++f) {
                ColumnSet cols(f);
                ++checked;
                bool fast = s.loc_member(p, cols);
                bool slow = naive.loc_member(oracle::to_point(p), cols.members(), boxes[std::min<std::size_t>(cols.size(), 12)]);
                if (fast != slow)
                    mismatches.push_back(Json{{"degree", to_json(p)}, {"columns", columns_json(cols)}, {"main", fast}, {"oracle", slow}});
            }
        }
    } else if (kind == "markov") {
        std::int64_t bound = c.opt.bound > 0 ? c.opt.bound : 4;
        if (bound > 12) throw BoundTooLarge("horizon", bound, 12);
        auto mb = markov_basis(c.a, {.horizon = c.cfg.markov_horizon, .threads = c.cfg.threads});
        std::vector<std::pair<oracle::Point, oracle::Point>> moves;
        for (const auto& b : mb.binomials) moves.emplace_back(oracle::to_point(b.v_plus), oracle::to_point(b.v_minus));
        std::set<oracle::Point> degrees;
        for (const auto& u : oracle::exponents_up_to(c.a, w, bound)) degrees.insert(oracle::image(c.a, u));
        for (const auto& alpha : degrees) {
            ++checked;
            if (!oracle::fiber_connected(oracle::fiber(c.a, w, alpha), moves))
                mismatches.push_back(Json{{"degree", alpha}, {"connected", false}});
        }
        o.result["binomials"] = mb.binomials.size();
    } else {
        throw UsageError("oracle kind must be membership, restriction, localization or markov");
    }
    o.result["kind"] = kind;
    o.result["checked"] = checked;
    o.result["mismatches"] = mismatches;
    o.result["match"] = mismatches.empty();
    if (!mismatches.empty()) o.exit_code = 1;
    return o;
}

inline void emit_text(std::ostream& out, const Json& j, const std::string& prefix = "") {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) emit_text(out, v, prefix.empty() ? k : prefix + "." + k);
    } else {
        out << prefix << ": " << j.dump() << "\n";
    }
}

}  // namespace detail

/// Runs one subcommand, writing the report to `out` and diagnostics to
/// `err`. Returns 0 on success, 1 on a domain error, 2 on a usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Combinatorial invariants of A-hypergeometric systems"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    cfg.threads = default_threads();
    app.add_option("--threads", cfg.threads, "worker threads (GKZ_THREADS overrides the default)")->check(CLI::PositiveNumber);
    app.add_option("--weight-cap", cfg.weight_cap, "membership weight cap")->check(CLI::PositiveNumber);
    app.add_option("--markov-horizon", cfg.markov_horizon, "Markov completion weight horizon")->check(CLI::PositiveNumber);
    app.add_option("--max-degrees", cfg.max_degrees, "largest window a scan may visit")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", cfg.timing, "report wall time in ms (breaks byte-identical output)");

    Options opt;
    struct Sub {
        const char* name;
        const char* help;
        Outcome (*fn)(const Context&);
        bool degree, window, columns, module, column, kind;
    };
    const Sub subs[] = {
        {"check", "validate the matrix", cmd_check, false, false, false, false, false, false},
        {"faces", "facets and face lattice of the cone", cmd_faces, false, false, false, false, false, false},
        {"markov", "lattice binomials and a Markov basis", cmd_markov, false, false, false, false, false, false},
        {"lc", "graded local cohomology at a degree or over a window", cmd_lc, true, true, true, true, false, false},
        {"restrict", "restriction ranks of the Euler-Koszul complex", cmd_restrict, true, false, false, true, false, false},
        {"derham", "de Rham ranks of the Euler-Koszul complex", cmd_derham, true, false, false, true, false, false},
        {"ext", "solution Ext ranks and Ext(O, M) vanishing", cmd_ext, true, true, false, false, false, false},
        {"fourterm", "Tor ranks along the four-term toric sequence", cmd_fourterm, true, false, false, false, false, false},
        {"gm", "rank rows of the Gauss-Manin sequences", cmd_gm, false, true, false, false, false, false},
        {"sres", "strong resonance degree test", cmd_sres, true, false, false, false, true, false},
        {"exceptional", "exceptional locus report", cmd_exceptional, true, true, false, false, false, false},
        {"oracle", "diff main algorithms against brute force", cmd_oracle, false, false, false, false, false, true},
    };
    std::map<CLI::App*, const Sub*> by_app;
    for (const auto& sub : subs) {
        CLI::App* sc = app.add_subcommand(sub.name, sub.help);
        sc->add_option("--matrix", opt.matrix, "matrix file (JSON or text)")->required();
        if (sub.degree) {
            sc->add_option("--degree,--beta", opt.degree, "comma separated integers or p/q");
            if (std::string(sub.name) != "lc") sc->get_option("--degree")->required();
        }
        if (sub.window) {
            auto* wopt = sc->add_option("--window", opt.window, "symmetric window radius")->check(CLI::PositiveNumber);
            sc->add_option("--box", opt.box, "lo1:hi1,lo2:hi2,...")->excludes(wopt);
        }
        if (sub.columns) sc->add_option("--columns", opt.columns, "1-based variable set (default all)")->delimiter(',');
        if (sub.module) sc->add_option("--module", opt.module, "S, m or k");
        if (sub.column) sc->add_option("--column", opt.column, "1-based column (default all)");
        if (sub.kind) {
            sc->add_option("kind", opt.kind, "membership | restriction | localization | markov")->required();
            sc->add_option("--bound", opt.bound, "oracle search bound")->check(CLI::PositiveNumber);
        }
        by_app[sc] = &sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const Sub* sub = nullptr;
    for (auto* sc : app.get_subcommands()) sub = by_app.at(sc);
    Context ctx;
    ctx.cfg = cfg;
    ctx.opt = opt;
    ctx.command = sub->name;
    auto t0 = std::chrono::steady_clock::now();
    Json report;
    report["command"] = sub->name;
    int code = 0;
    try {
        ctx.a = parse_matrix(opt.matrix);
        report["matrix_digest"] = matrix_digest(ctx.a);
        Json config{{"window_radius", cfg.window_radius > 0 ? cfg.window_radius : default_radius(ctx.a)},
                    {"weight_cap", cfg.weight_cap},
                    {"markov_horizon", cfg.markov_horizon > 0 ? Json(cfg.markov_horizon) : Json("auto")},
                    {"max_degrees", cfg.max_degrees},
                    {"format", cfg.format}};
        Outcome res = sub->fn(ctx);
        for (const auto& [k, v] : res.config_extra.items()) config[k] = v;
        report["config"] = config;
        report["result"] = res.result;
        report["tiers"] = res.tiers;
        code = res.exit_code;
        if (res.result.contains("error"))
            err << res.result["error"]["name"].get<std::string>() << ": "
                << res.result["error"]["message"].get<std::string>() << "\n";
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        report["error"] = Json{{"name", e.name()}, {"message", e.what()}};
        err << e.name() << ": " << e.what() << "\n";
        code = 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (cfg.timing)
        report["ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    else
        report["ms"] = nullptr;
    if (cfg.format == "text")
        emit_text(out, report);
    else
        out << report.dump(2) << "\n";
    return code;
}

}  // namespace gkz::cli
