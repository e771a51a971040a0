#pragma once

// Rank tables for Euler-Koszul homology and the exact sequences attached
// to the toric sequence 0 -> S_A d_A -> S_A -> k -> 0.

#include "gkz/localcoh.hpp"

namespace gkz {

/// Index convention of a RankVector.
///  koszul: homological degree j of a (Euler-)Koszul complex, 0..m.
///  shifted: homological degree of D/dD (x)^L K(N; E - beta), i.e. the
///           Koszul index moved by dim X_A and the Cech index.
///  ext: cohomological degree of an Ext group.
///  cech: cohomological degree of local cohomology.
enum class IndexConvention { Koszul, Shifted, Ext, Cech };

inline std::string to_string(IndexConvention c) {
    switch (c) {
        case IndexConvention::Koszul: return "koszul";
        case IndexConvention::Shifted: return "shifted";
        case IndexConvention::Ext: return "ext";
        case IndexConvention::Cech: return "cech";
    }
    return "?";
}

struct RankVector {
    IndexConvention convention = IndexConvention::Koszul;
    std::vector<std::int64_t> ranks;  // ranks[i] belongs to index i

    std::int64_t at(std::int64_t i) const {
        return i < 0 || i >= static_cast<std::int64_t>(ranks.size()) ? 0 : ranks[static_cast<std::size_t>(i)];
    }
    std::int64_t total() const { return std::accumulate(ranks.begin(), ranks.end(), std::int64_t{0}); }
    bool is_zero() const { return total() == 0; }
    /// sum (-1)^i r_i
    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (std::size_t i = 0; i < ranks.size(); ++i) chi += (i % 2 ? -1 : 1) * ranks[i];
        return chi;
    }
    friend bool operator==(const RankVector&, const RankVector&) = default;
};

inline RankVector zero_ranks(IndexConvention c, std::size_t len) { return {c, std::vector<std::int64_t>(len, 0)}; }

/// de Rham ranks of an m-torus: C(m, j).
struct ExteriorRanks {
    std::size_t m = 0;
    std::vector<std::int64_t> ranks;

    explicit ExteriorRanks(std::size_t m_) : m(m_) {
        for (std::size_t j = 0; j <= m; ++j)
            ranks.push_back(binomial(static_cast<std::int64_t>(m), static_cast<std::int64_t>(j)));
    }
};

enum class Tier { Exact, HeuristicFit, Assumed };

inline std::string to_string(Tier t) {
    switch (t) {
        case Tier::Exact: return "exact";
        case Tier::HeuristicFit: return "heuristic-fit";
        case Tier::Assumed: return "assumed";
    }
    return "?";
}

/// Homology of the Koszul complex of multiplication by the scalars on a
/// fiber_dim-dimensional space: exact unless every scalar vanishes.
inline RankVector koszul_scalar_ranks(const std::vector<Rational>& scalars, std::int64_t fiber_dim) {
    const auto m = static_cast<std::int64_t>(scalars.size());
    bool zero = std::all_of(scalars.begin(), scalars.end(), [](const Rational& x) { return x == 0; });
    RankVector r{IndexConvention::Koszul, {}};
    for (std::int64_t j = 0; j <= m; ++j) r.ranks.push_back(zero ? fiber_dim * binomial(m, j) : 0);
    return r;
}

/// Ranks of the restriction to the origin of K(N; E - beta), which is
/// wedge(kA) (x) N_beta with zero differential.
inline RankVector restriction_dims(const Semigroup& s, const ToricModuleSpec& spec, const RatVector& beta) {
    const std::size_t m = torus_dim(s);
    auto b = integral_point(beta);
    std::int64_t g = b ? graded_dim(s, spec, *b) : 0;
    return koszul_scalar_ranks(std::vector<Rational>(m, Rational(0)), g);
}

/// H_i(k; E - beta) for i >= 0: O_A^{C(d+1, i)} at beta = 0, else 0.
inline RankVector ek_residue_ranks(const Semigroup& s, const RatVector& beta) {
    const auto m = static_cast<std::int64_t>(torus_dim(s));
    bool zero = std::all_of(beta.begin(), beta.end(), [](const Rational& x) { return x == 0; });
    RankVector r{IndexConvention::Koszul, {}};
    for (std::int64_t i = 0; i <= m; ++i) r.ranks.push_back(zero ? binomial(m, i) : 0);
    return r;
}

struct DerhamRanks {
    /// dim H^i_{d_A}(N)_beta, i = 0..n+1.
    RankVector cech;
    /// sum_i dim H^i * C(d+1, j) by Koszul index j.
    RankVector raw;
    /// Contribution of Cech index i sits in degree (n+1) + (d+1-i) - j.
    RankVector shifted;
};

inline DerhamRanks derham_ranks(const Semigroup& s, const ToricModuleSpec& spec, const RatVector& beta) {
    const std::size_t m = torus_dim(s);
    const std::size_t n1 = s.num_columns();
    DerhamRanks out;
    out.cech = zero_ranks(IndexConvention::Cech, n1 + 1);
    out.raw = zero_ranks(IndexConvention::Koszul, m + 1);
    out.shifted = zero_ranks(IndexConvention::Shifted, n1 + m + 1);
    auto b = integral_point(beta);
    if (!b) return out;
    auto h = lc_dims_at(s, *b, ColumnSet::all(n1), spec).ranks;
    ExteriorRanks ext(m);
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] == 0) continue;
        out.cech.ranks[i] = h[i];
        if (i > m) throw std::logic_error("local cohomology above the dimension");
        for (std::size_t j = 0; j <= m; ++j) {
            out.raw.ranks[j] += h[i] * ext.ranks[j];
            out.shifted.ranks[n1 + (m - i) - j] += h[i] * ext.ranks[j];
        }
    }
    return out;
}

/// Whether beta avoids the exceptional locus, with the certainty of the claim.
struct ExceptionalVerdict {
    bool exceptional = false;
    Tier tier = Tier::Exact;
    std::string reason;
    ExceptionalReport report;
};

inline ExceptionalVerdict exceptional_verdict(const Semigroup& s, const RatVector& beta, const Window& window,
                                              unsigned threads = 1) {
    ExceptionalVerdict v;
    v.report = exceptional_report(s, beta, window, threads);
    if (v.report.saturated) {
        v.reason = "saturated, hence Cohen-Macaulay with empty exceptional locus";
    } else if (v.report.degree_member) {
        v.exceptional = true;
        v.reason = "beta is a degree of lower local cohomology";
    } else if (v.report.fitted_member) {
        v.exceptional = true;
        v.tier = Tier::HeuristicFit;
        v.reason = "beta lies on a fitted component of lower local cohomology";
    } else {
        v.tier = Tier::HeuristicFit;
        v.reason = "no fitted component of lower local cohomology contains beta";
    }
    return v;
}

struct SolutionExt {
    RankVector ranks;  // Ext^i(M_A^beta, O), i = 0..d+1
    Tier tier = Tier::Exact;
    bool hypothesis_holds = true;
    std::string caveat;
};

/// Ext^i(M_A^beta, O) = H^i_dR(T_A) when beta in NA, 0 otherwise, valid
/// away from the exceptional locus.
inline SolutionExt solution_ext_dims(const Semigroup& s, const RatVector& beta, const Window& window,
                                     unsigned threads = 1) {
    SolutionExt out;
    const std::size_t m = torus_dim(s);
    auto b = integral_point(beta);
    bool in_na = b && s.member(*b);
    out.ranks = {IndexConvention::Ext, ExteriorRanks(m).ranks};
    if (!in_na) out.ranks = zero_ranks(IndexConvention::Ext, m + 1);
    auto v = exceptional_verdict(s, beta, window, threads);
    out.hypothesis_holds = !v.exceptional;
    out.tier = v.exceptional ? Tier::Assumed : v.tier;
    if (v.exceptional) out.caveat = "assumes beta not in E_A (" + v.reason + ")";
    return out;
}

struct VanishingVerdict {
    bool must_vanish = false;
    Tier tier = Tier::Exact;
    std::string reason;
    std::string text() const { return must_vanish ? "must vanish" : "possibly nonzero"; }
};

/// Tor(D/dD, M_A^beta) and Ext(O_A, M_A^beta) can only be nonzero for
/// exceptional beta or degrees of top local cohomology.
inline VanishingVerdict o_ext_vanishing(const Semigroup& s, const RatVector& beta, const Window& window,
                                        unsigned threads = 1) {
    VanishingVerdict out;
    auto v = exceptional_verdict(s, beta, window, threads);
    const std::size_t m = torus_dim(s);
    auto b = integral_point(beta);
    bool top = b && lc_dims_at(s, *b).ranks.at(m) != 0;
    out.tier = v.tier;
    if (v.exceptional) {
        out.reason = v.reason;
    } else if (top) {
        out.reason = "beta is a degree of top local cohomology";
    } else {
        out.must_vanish = true;
        out.reason = v.reason;
    }
    return out;
}

class NotSaturated : public DomainError {
public:
    NotSaturated() : DomainError("NotSaturated", "NA is not saturated") {}
};

/// Tor_t(D/dD, -) of the four modules in
/// 0 -> H_1(k;E-beta) -> M -> M_A^beta -> H_0(k;E-beta) -> 0,
/// with M = H_0(S_A d_A; E - beta).
struct FourTermReport {
    RatVector beta;
    std::int64_t left_outer = 0;   // H_1(k;E-beta) = O_A^left_outer
    std::int64_t right_outer = 0;  // H_0(k;E-beta) = O_A^right_outer
    RankVector tor_left, tor_middle, tor_hypergeometric, tor_right;
    bool in_semigroup = false;
    bool consistent = false;
    std::string note;
};

inline FourTermReport four_term_report(const Semigroup& s, const RatVector& beta) {
    if (!is_saturated(s)) throw NotSaturated();
    const std::size_t m = torus_dim(s);
    const std::size_t n1 = s.num_columns();
    const std::size_t len = n1 + m + 1;
    FourTermReport r;
    r.beta = beta;
    auto b = integral_point(beta);
    r.in_semigroup = b && s.member(*b);
    bool zero = b && is_zero(*b);
    auto at_top = [&](std::int64_t k) {
        RankVector v = zero_ranks(IndexConvention::Shifted, len);
        v.ranks[n1] = k;
        return v;
    };
    r.left_outer = zero ? static_cast<std::int64_t>(m) : 0;
    r.right_outer = zero ? 1 : 0;
    r.tor_left = at_top(r.left_outer);
    r.tor_right = at_top(r.right_outer);
    r.tor_hypergeometric = derham_ranks(s, ToricModuleSpec::semigroup_ring(), beta).shifted;
    if (!zero) {
        r.tor_middle = r.tor_hypergeometric;
        r.note = r.in_semigroup || !b ? "outer terms vanish" : "outer terms vanish; beta is outside NA";
    } else if (r.tor_hypergeometric.is_zero()) {
        // With Tor(M_A^0) = 0 the image I of M in M_A^0 has Tor(I)_t = Tor(O)_{t+1},
        // and 0 -> O^{d+1} -> M -> I -> 0 has room for no connecting maps.
        r.tor_middle = zero_ranks(IndexConvention::Shifted, len);
        for (std::size_t t = 0; t < len; ++t)
            r.tor_middle.ranks[t] = r.tor_left.ranks[t] + (t + 1 < len ? r.tor_right.ranks[t + 1] : 0);
        r.note = "Tor of M from the two short exact sequences";
    } else {
        r.tor_middle = zero_ranks(IndexConvention::Shifted, len);
        r.note = "Tor of M_A^0 is nonzero; middle term undetermined from ranks";
        return r;
    }
    std::int64_t chi = r.tor_left.euler_characteristic() - r.tor_middle.euler_characteristic() +
                       r.tor_hypergeometric.euler_characteristic() - r.tor_right.euler_characteristic();
    r.consistent = chi == 0;
    return r;
}

/// Normalized volume of A for homogeneous A: the height-k part of NA is
/// the k-fold sumset of the columns, whose size L(k) is the Ehrhart
/// polynomial for saturated NA, and vol = d-th finite difference of L at 0.
inline std::int64_t normalized_volume(const Semigroup& s) {
    const std::size_t d = torus_dim(s) - 1;
    std::set<IntVector> level{IntVector(s.dim())};
    std::vector<std::int64_t> count{1};
    for (std::size_t k = 1; k <= d; ++k) {
        std::set<IntVector> next;
        for (const auto& x : level)
            for (std::size_t j = 0; j < s.num_columns(); ++j) next.insert(x + s.matrix().column(j));
        level = std::move(next);
        count.push_back(static_cast<std::int64_t>(level.size()));
    }
    std::int64_t vol = 0;
    for (std::size_t k = 0; k <= d; ++k)
        vol += ((d - k) % 2 ? -1 : 1) * binomial(static_cast<std::int64_t>(d), static_cast<std::int64_t>(k)) * count[k];
    return vol;
}

/// One exact sequence 0 -> X1 -> X2 -> X3 -> X4 -> 0 at the level of
/// generic (holonomic) ranks.
struct SequenceRow {
    std::string name;
    std::vector<std::string> terms;
    std::vector<std::int64_t> ranks;

    std::int64_t alternating_sum() const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < ranks.size(); ++i) s += (i % 2 ? -1 : 1) * ranks[i];
        return s;
    }
};

class HypothesisUncertain : public DomainError {
public:
    explicit HypothesisUncertain(const std::string& why) : DomainError("HypothesisUncertain", why) {}
};

struct ExtReport {
    RankVector ext_o_v;  // Ext^i(O, V), i = 0..n+2
    RankVector ext_o_o;  // Ext^i(O, O), i = 0..n+1
    bool split = true;
    VanishingVerdict hypothesis;
};

struct GMReport {
    IntMatrix b;
    std::int64_t torus_b_top = 0;   // dim H^d_dR(T_B)
    std::int64_t torus_b_next = 0;  // dim H^{d-1}_dR(T_B)
    std::int64_t volume = 0;        // holonomic rank of M_A^0
    std::vector<SequenceRow> rows;
    FourTermReport four_term;
    bool lower_left_matches_residue = false;
    bool quotient_relation = false;
    bool consistent = false;
    ExtReport extension;
};

namespace detail {

inline void require_gm_hypotheses(const Semigroup& s) {
    if (!validate_matrix(s.matrix()).homogeneous)
        throw DomainError("NotHomogeneous", "(1,...,1) is not in the row span of A");
    if (!is_saturated(s)) throw NotSaturated();
}

}  // namespace detail

/// Ext^i(O, V) = Ext^{i-1}(O, O) at beta = 0, where Ext^j(O_A, O_A) is
/// Tor_{n+1-j}(D/dD, O_A).
inline ExtReport extension_report(const Semigroup& s, const Window& window, unsigned threads = 1) {
    detail::require_gm_hypotheses(s);
    ExtReport r;
    r.hypothesis = o_ext_vanishing(s, RatVector(s.dim(), Rational(0)), window, threads);
    if (!r.hypothesis.must_vanish)
        throw HypothesisUncertain("Ext(O_A, M_A^0) is not known to vanish: " + r.hypothesis.reason);
    const std::size_t n1 = s.num_columns();
    r.ext_o_o = zero_ranks(IndexConvention::Ext, n1 + 1);
    RankVector tor_o = zero_ranks(IndexConvention::Shifted, n1 + 1);
    tor_o.ranks[n1] = 1;
    for (std::size_t j = 0; j <= n1; ++j) r.ext_o_o.ranks[j] = tor_o.ranks[n1 - j];
    r.ext_o_v = zero_ranks(IndexConvention::Ext, n1 + 2);
    for (std::size_t i = 1; i <= n1 + 1; ++i) r.ext_o_v.ranks[i] = r.ext_o_o.ranks[i - 1];
    r.split = r.ext_o_v.at(1) == 0;
    return r;
}

inline GMReport gm_report(const Semigroup& s, const Window& window, unsigned threads = 1) {
    detail::require_gm_hypotheses(s);
    GMReport g;
    g.b = homogeneous_shape(s.matrix()).b;
    const auto m = static_cast<std::int64_t>(torus_dim(s));
    const std::int64_t d = m - 1;
    g.torus_b_top = binomial(d, d);
    g.torus_b_next = binomial(d, d - 1);
    g.volume = normalized_volume(s);
    const RatVector zero(s.dim(), Rational(0));
    g.four_term = four_term_report(s, zero);
    auto residue = ek_residue_ranks(s, zero);

    const std::int64_t left = g.four_term.left_outer, right = g.four_term.right_outer;
    const std::int64_t middle = left + g.volume - right;  // forced by exactness
    g.rows.push_back({"toric", {"H_1(k;E)", "H_0(S_A d_A;E)", "M_A^0", "H_0(k;E)"}, {left, middle, g.volume, right}});
    const std::int64_t lower_left = g.torus_b_top + g.torus_b_next;
    g.rows.push_back({"gauss-manin",
                      {"H^d_dR(T_B) + H^{d-1}_dR(T_B)", "H^0 q_{U+} O_U", "H^0 q_+ j_{U!} O_U", "H^d_dR(T_B)"},
                      {lower_left, lower_left + g.volume - g.torus_b_top, g.volume, g.torus_b_top}});
    const SequenceRow& lower = g.rows.back();
    SequenceRow identity{"identity", {"H^d_dR(T_B)", "H^d_dR(T_B)", "0", "0"}, {g.torus_b_top, g.torus_b_top, 0, 0}};
    SequenceRow graph{"graph",
                      {"H^{d-1}_dR(T_B)", "H^0 q_{Gamma+} O_Gamma", "H^0 q_+ j_{U!} O_U", "H^d_dR(T_B)"},
                      {g.torus_b_next, g.torus_b_next + g.volume - g.torus_b_top, g.volume, g.torus_b_top}};
    SequenceRow laurent{"laurent-family",
                        {"H^{d-1}_dR(T_B)", "H^0 phi_{B+} O", "M_A^0", "H^d_dR(T_B)"},
                        {g.torus_b_next, graph.ranks[1], g.volume, g.torus_b_top}};
    SequenceRow vanishing{"vanishing", {"V", "M_A^0", "H^d_dR(T_B)"}, {g.volume - g.torus_b_top, g.volume, g.torus_b_top}};
    g.quotient_relation = true;
    for (std::size_t i = 0; i < 4; ++i)
        if (lower.ranks[i] - identity.ranks[i] != graph.ranks[i]) g.quotient_relation = false;
    g.rows.push_back(identity);
    g.rows.push_back(graph);
    g.rows.push_back(laurent);
    g.rows.push_back(vanishing);

    g.lower_left_matches_residue = lower_left == residue.at(1) && lower_left == binomial(m, 1) &&
                                   g.rows[0].ranks[0] == lower_left && g.rows[0].ranks[3] == g.rows[1].ranks[3];
    g.consistent = g.four_term.consistent && g.lower_left_matches_residue && g.quotient_relation;
    for (const auto& row : g.rows)
        if (row.alternating_sum() != 0) g.consistent = false;
    g.extension = extension_report(s, window, threads);
    return g;
}

}  // namespace gkz
