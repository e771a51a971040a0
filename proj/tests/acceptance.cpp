// Acceptance run: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; `acceptance AC3` runs a single one. The exit status is
// nonzero if any selected criterion fails.

#include "gkz/cli.hpp"
#include "gkz/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace gkz;
using Json = nlohmann::ordered_json;

namespace {

const IntMatrix A1{{1, 1, 1, 1}, {0, 1, 3, 4}};
const IntMatrix A2{{2, 1, 0, 1, 0}, {0, 1, 1, 0, 1}, {0, 0, 0, 1, 1}};
const IntMatrix A3{{1, 1, 1, 1}, {0, 1, 2, 3}};

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail.clear();
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

struct Criterion {
    std::string id;
    double seconds;  // wall-time limit
    std::function<Outcome()> check;
};

std::string str(const std::vector<std::int64_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string str(const IntVector& v) { return to_string(v); }

struct CliResult {
    int code;
    std::string out;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "gkz");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

std::string sample(const std::string& name) { return std::string(GKZ_SAMPLES_DIR) + "/" + name; }

Outcome ac1() {
    Outcome o;
    Semigroup s(A1);
    auto at = lc_dims_at(s, DegreeVector{1, 2});
    // The apex-to-full Cech complex has n+1 slots; H^i vanishes for i > dim T_A = 2.
    o.require(at.ranks == std::vector<std::int64_t>{0, 1, 0, 0, 0}, "H at (1,2) is " + str(at.ranks));
    // -R_+A1 interior: -alpha = (x, y) with y > 0 and 4x - y > 0.
    auto interior_neg = [](const DegreeVector& a) {
        Integer x = -a[0], y = -a[1];
        return y > 0 && 4 * x - y > 0;
    };
    std::size_t top = 0;
    for (const auto& p : Window::symmetric(2, 6).points()) {
        auto h = lc_dims_at(s, p).ranks;
        bool want_top = interior_neg(p);
        top += want_top;
        o.require(h[2] == (want_top ? 1 : 0), "H^2 at " + str(p) + " is " + std::to_string(h[2]));
        bool hole = p == DegreeVector{1, 2};
        o.require(h[0] == 0 && h[1] == (hole ? 1 : 0), "lower LC at " + str(p) + " is " + str(h));
        o.require(h[3] == 0 && h[4] == 0, "H above dim T_A at " + str(p) + " is " + str(h));
    }
    if (o.pass) o.detail = "H^1 only at (1,2); H^2 = 1 at exactly the " + std::to_string(top) + " points of -int(R_+A)";
    return o;
}

Outcome ac2() {
    Outcome o;
    Semigroup s(A1);
    auto r = restriction_dims(s, ToricModuleSpec::semigroup_ring(), RatVector{1, 2});
    o.require(r.is_zero(), "restriction at (1,2) is " + str(r.ranks));
    // Documented value for the restriction of M_A^beta itself; not computed here.
    const std::vector<std::int64_t> literature_hypergeometric{0, 0, 1, 0, 0};
    if (o.pass)
        o.detail = "restriction of S_A at (1,2) is " + str(r.ranks) + "; M_A^beta value " +
                   str(literature_hypergeometric) + " is documented, not computed";
    return o;
}

Outcome ac3() {
    Outcome o;
    Semigroup s(A2);
    Window w = Window::symmetric(3, 6);
    ScanOptions opt;
    opt.below = torus_dim(s);
    opt.threads = default_threads();
    auto rows = lc_scan(s, w, opt);
    std::vector<DegreeVector> degrees;
    for (const auto& r : rows) degrees.push_back(r.degree);
    o.require(!degrees.empty(), "no degree of lower local cohomology in [-6..6]^3");
    for (const auto& p : degrees)
        o.require(p[1] == 0 && p[2] == 0 && p[0] % 2 == 0, "degree " + str(p) + " is off Z(2,0,0)");
    auto fit = qdeg_fit(s, degrees, w);
    bool single_line = fit.components.size() == 1 && fit.components[0].dimension == 1 &&
                       fit.components[0].face == ColumnSet::single(0);
    o.require(single_line, "fit has " + std::to_string(fit.components.size()) + " components, expected the line through a1");
    if (o.pass) o.detail = std::to_string(degrees.size()) + " degrees, fit is the line Z a1";
    return o;
}

Outcome ac4() {
    Outcome o;
    std::size_t checks = 0, violations = 0;
    for (const IntMatrix* a : {&A1, &A2, &A3}) {
        Semigroup s(*a);
        auto w = validate_matrix(*a).witness;
        auto elems = oracle::semigroup_elements(*a, w, 20);
        for (const Face& f : s.cone().faces()) {
            if (f.columns.empty()) continue;
            for (const auto& pt : elems) {
                IntVector alpha(pt.begin(), pt.end());
                ++checks;
                auto h = lc_dims_at(s, alpha, f.columns);
                if (!h.is_zero() && violations++ < 3) {
                    std::vector<std::int64_t> cols;
                    for (auto j : f.columns.members()) cols.push_back(static_cast<std::int64_t>(j) + 1);
                    o.require(false, "nonzero at " + str(alpha) + " on columns " + str(cols));
                }
            }
        }
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    if (o.pass) o.detail = std::to_string(checks) + " (face, alpha) pairs, zero violations";
    return o;
}

Outcome ac5() {
    Outcome o;
    Semigroup s(A3);
    auto r = four_term_report(s, RatVector{0, 0});
    const auto& tor = r.tor_middle;
    o.require(tor.at(4) == 2 && tor.at(3) == 1, "Tor_4, Tor_3 = " + std::to_string(tor.at(4)) + ", " + std::to_string(tor.at(3)));
    for (std::int64_t t = 0; t < 3; ++t) o.require(tor.at(t) == 0, "Tor_" + std::to_string(t) + " nonzero");
    o.require(r.left_outer == 2 && r.right_outer == 1,
              "outer terms O^" + std::to_string(r.left_outer) + ", O^" + std::to_string(r.right_outer));
    auto q = four_term_report(s, RatVector{1, 2});
    bool all_zero = q.left_outer == 0 && q.right_outer == 0 && q.tor_left.is_zero() && q.tor_middle.is_zero() &&
                    q.tor_hypergeometric.is_zero() && q.tor_right.is_zero();
    o.require(all_zero, "beta = (1,2) does not vanish");
    if (o.pass) o.detail = "beta=0: Tor " + str(tor.ranks) + ", outer O^2, O^1; beta=(1,2): all zero";
    return o;
}

Outcome ac6() {
    Outcome o;
    Semigroup s(A3);
    oracle::NaiveSemigroup naive(A3);
    Window w = Window::symmetric(2, 6);
    std::mt19937 rng(20261014);
    std::uniform_int_distribution<int> expo(0, 4), coord(-8, 8);
    std::vector<IntVector> inside, outside;
    while (inside.size() < 10) {
        oracle::Point u{expo(rng), expo(rng), expo(rng), expo(rng)};
        auto p = oracle::image(A3, u);
        inside.emplace_back(p.begin(), p.end());
    }
    // Z A3 = Z^2, so every integer point outside NA is in ZA \ NA.
    while (outside.size() < 10) {
        oracle::Point p{coord(rng), coord(rng)};
        if (!naive.member(p)) outside.emplace_back(p.begin(), p.end());
    }
    for (const auto& b : inside) {
        auto e = solution_ext_dims(s, to_rational(b), w);
        o.require(e.ranks.ranks == std::vector<std::int64_t>{1, 2, 1}, "beta " + str(b) + " gives " + str(e.ranks.ranks));
    }
    for (const auto& b : outside) {
        auto e = solution_ext_dims(s, to_rational(b), w);
        o.require(e.ranks.is_zero(), "beta " + str(b) + " gives " + str(e.ranks.ranks));
    }
    if (o.pass) o.detail = "10 in NA give (1,2,1), 10 in ZA\\NA give 0";
    return o;
}

Outcome ac7() {
    Outcome o;
    Semigroup s(A3);
    auto g = gm_report(s, Window::symmetric(2, 6));
    for (const auto& row : g.rows)
        o.require(row.alternating_sum() == 0, row.name + " alternating sum " + std::to_string(row.alternating_sum()));
    const SequenceRow* lower = nullptr;
    for (const auto& row : g.rows)
        if (row.name == "gauss-manin") lower = &row;
    const std::int64_t d = static_cast<std::int64_t>(torus_dim(s)) - 1;
    o.require(lower && lower->ranks[0] == binomial(d + 1, 1), "lower-row left rank is not C(d+1,1)");
    const auto& ext = g.extension.ext_o_v;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ext.ranks.size()); ++i)
        o.require(ext.at(i) == (i == 1 ? 1 : 0), "Ext^" + std::to_string(i) + "(O,V) = " + std::to_string(ext.at(i)));
    o.require(!g.extension.split, "extension reported split");
    if (o.pass)
        o.detail = std::to_string(g.rows.size()) + " sequences with alternating sum 0, lower left " +
                   std::to_string(lower->ranks[0]) + ", Ext(O,V) " + str(ext.ranks) + ", non-split";
    return o;
}

Outcome ac8() {
    Outcome o;
    struct Job {
        std::string label, file, kind, bound;
    };
    const std::vector<Job> jobs{
        {"membership A1", "a1.json", "membership", "20"}, {"membership A2", "a2.json", "membership", "20"},
        {"membership A3", "a3.json", "membership", "20"}, {"localization A1", "a1.json", "localization", "3"},
        {"localization A2", "a2.json", "localization", "2"}, {"localization A3", "a3.json", "localization", "3"},
        {"restriction A1", "a1.json", "restriction", "3"}, {"restriction A3", "a3.json", "restriction", "3"},
        {"markov A3", "a3.json", "markov", "12"},
    };
    std::int64_t total = 0;
    for (const auto& j : jobs) {
        auto r = run_cli({"oracle", j.kind, "--matrix", sample(j.file), "--bound", j.bound});
        if (r.code != 0 && r.out.empty()) {
            o.require(false, j.label + " exited " + std::to_string(r.code));
            continue;
        }
        auto res = Json::parse(r.out)["result"];
        o.require(res["match"] == true, j.label + " mismatched");
        total += res["checked"].get<std::int64_t>();
    }
    if (o.pass) o.detail = std::to_string(jobs.size()) + " oracle runs, " + std::to_string(total) + " verdicts, all equal";
    return o;
}

Outcome ac9() {
    Outcome o;
    const std::vector<std::vector<std::string>> commands{
        {"check", "--matrix", sample("a1.json")},
        {"faces", "--matrix", sample("a2.json")},
        {"markov", "--matrix", sample("a2.json")},
        {"lc", "--matrix", sample("a1.json"), "--window", "4"},
        {"lc", "--matrix", sample("a1.json"), "--degree", "1,2"},
        {"restrict", "--matrix", sample("a1.json"), "--beta", "1,2"},
        {"derham", "--matrix", sample("a1.json"), "--beta", "-1,-1"},
        {"ext", "--matrix", sample("a3.json"), "--beta", "3,4"},
        {"fourterm", "--matrix", sample("a3.json"), "--beta", "0,0"},
        {"gm", "--matrix", sample("a3.txt")},
        {"sres", "--matrix", sample("a1.json"), "--beta", "1,2"},
        {"exceptional", "--matrix", sample("a2.json"), "--beta", "4,0,0", "--window", "4"},
        {"oracle", "markov", "--matrix", sample("a3.json")},
        {"--format", "text", "lc", "--matrix", sample("a2.json"), "--window", "3"},
    };
    std::size_t compared = 0;
    for (const auto& cmd : commands) {
        std::string label = cmd[0] == "--format" ? cmd[2] + " (text)" : cmd[0];
        std::vector<std::string> base;
        for (const char* threads : {"1", "4", "1", "8"}) {
            std::vector<std::string> args{"--threads", threads};
            args.insert(args.end(), cmd.begin(), cmd.end());
            auto r = run_cli(args);
            o.require(r.code == 0, label + " exited " + std::to_string(r.code));
            if (base.empty())
                base.push_back(r.out);
            else
                o.require(r.out == base.front(), label + " differs at --threads " + threads);
            ++compared;
        }
#ifdef GKZ_CLI_PATH
        // Separate processes, with the thread count taken from the environment.
        for (const char* threads : {"1", "4"}) {
            std::string line = "GKZ_THREADS=" + std::string(threads) + " '" + GKZ_CLI_PATH + "'";
            for (const auto& a : cmd) line += " '" + a + "'";
            std::string out;
            if (FILE* p = popen(line.c_str(), "r")) {
                char buf[4096];
                std::size_t n;
                while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
                pclose(p);
            }
            o.require(out == base.front(), label + " differs in a subprocess with GKZ_THREADS=" + threads);
            ++compared;
        }
#endif
    }
    if (o.pass) o.detail = std::to_string(commands.size()) + " commands, " + std::to_string(compared) + " runs byte-identical";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {"AC1", 5, ac1},   {"AC2", 1, ac2}, {"AC3", 60, ac3}, {"AC4", 600, ac4}, {"AC5", 1, ac5},
        {"AC6", 600, ac6}, {"AC7", 600, ac7}, {"AC8", 120, ac8}, {"AC9", 600, ac9},
    };
    std::vector<std::string> wanted(argv + 1, argv + argc);
    bool ok = true;
    std::size_t ran = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        ++ran;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("threw: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.seconds) o.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(c.seconds) + " s");
        char timing[64];
        std::snprintf(timing, sizeof timing, " [%.2f s / %.0f s]", secs, c.seconds);
        std::cout << c.id << (o.pass ? " PASS: " : " FAIL: ") << o.detail << timing << std::endl;
        ok = ok && o.pass;
    }
    if (ran == 0) {
        std::cerr << "unknown criterion\n";
        return 2;
    }
    return ok ? 0 : 1;
}
