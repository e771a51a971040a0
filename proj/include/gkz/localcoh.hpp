#pragma once

// Graded pieces of local cohomology of S_A and the toric modules built from
// it, computed from the degree-alpha strand of the Cech complex.

#include "gkz/parallel.hpp"
#include "gkz/semigroup.hpp"

#include <numeric>

namespace gkz {

/// Degree-alpha strand of the Cech complex on the variables tau. The basis
/// in cochain degree k is the set of k-subsets F of tau for which the
/// localization at F is nonzero in degree alpha. For S_A and its maximal
/// ideal this family is closed under supersets.
class CechPieceComplex {
public:
    CechPieceComplex(const Semigroup& s, DegreeVector alpha, ColumnSet tau,
                     const ToricModuleSpec& spec = ToricModuleSpec::semigroup_ring())
        : alpha_(std::move(alpha)), tau_(tau), basis_(tau.size() + 1) {
        if (!tau.subset_of(ColumnSet::all(s.num_columns()))) throw std::invalid_argument("variable set exceeds columns");
        if (alpha_.size() != s.dim()) throw std::invalid_argument("degree has wrong length");
        auto members = tau.members();
        for (std::uint32_t sub = 0; sub < (1u << members.size()); ++sub) {
            ColumnSet f;
            for (std::size_t k = 0; k < members.size(); ++k)
                if ((sub >> k) & 1u) f.insert(members[k]);
            if (admissible(s, spec, f)) basis_[f.size()].push_back(f);
        }
        for (auto& b : basis_) std::sort(b.begin(), b.end(), [](ColumnSet x, ColumnSet y) { return lex_less(x, y); });
    }

    const DegreeVector& degree() const noexcept { return alpha_; }
    ColumnSet variables() const noexcept { return tau_; }
    std::size_t length() const noexcept { return tau_.size(); }
    const std::vector<ColumnSet>& basis(std::size_t k) const { return basis_.at(k); }

    /// d^k : C^k -> C^{k+1}, e_F -> sum_{j in tau \ F} (-1)^{#(i in F, i < j)} e_{F + j}.
    IntMatrix differential(std::size_t k) const {
        static const std::vector<ColumnSet> none;
        const auto& src = basis_.at(k);
        const auto& dst = k + 1 < basis_.size() ? basis_[k + 1] : none;
        IntMatrix d(dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            for (std::size_t j : tau_.members()) {
                if (src[c].contains(j)) continue;
                ColumnSet g = src[c];
                g.insert(j);
                auto it = std::find(dst.begin(), dst.end(), g);
                if (it == dst.end()) continue;  // the localized term vanishes in this degree
                int below = std::popcount(src[c].bits() & ((1u << j) - 1u));
                d(static_cast<std::size_t>(it - dst.begin()), c) = below % 2 ? -1 : 1;
            }
        }
        return d;
    }

    /// Cohomology ranks, index i = 0..|tau|.
    std::vector<std::int64_t> cohomology() const {
        const std::size_t n = basis_.size();
        std::vector<std::size_t> rk(n + 1, 0);  // rk[k] = rank of d^{k-1}
        for (std::size_t k = 0; k + 1 < n; ++k)
            if (!basis_[k].empty() && !basis_[k + 1].empty()) rk[k + 1] = rank(differential(k));
        std::vector<std::int64_t> h(n);
        for (std::size_t k = 0; k < n; ++k)
            h[k] = static_cast<std::int64_t>(basis_[k].size() - rk[k] - (k + 1 < n ? rk[k + 1] : 0));
        return h;
    }

    /// Alternating count of admissible subsets.
    std::int64_t euler_characteristic() const {
        std::int64_t chi = 0;
        for (std::size_t k = 0; k < basis_.size(); ++k)
            chi += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(basis_[k].size());
        return chi;
    }

private:
    // Inverting any variable kills k, and the maximal ideal agrees with S_A
    // after localization, so only the F = {} term depends on the module.
    bool admissible(const Semigroup& s, const ToricModuleSpec& spec, ColumnSet f) const {
        switch (spec.kind) {
            case ToricModuleSpec::Kind::SemigroupRing: return s.loc_member(alpha_, f);
            case ToricModuleSpec::Kind::MaximalIdeal:
                return f.empty() ? graded_dim(s, spec, alpha_) == 1 : s.loc_member(alpha_, f);
            case ToricModuleSpec::Kind::ResidueField: return f.empty() && graded_dim(s, spec, alpha_) == 1;
        }
        return false;
    }

    DegreeVector alpha_;
    ColumnSet tau_;
    std::vector<std::vector<ColumnSet>> basis_;
};

/// Ranks of H^i_{d_tau}(N)_alpha for i = 0..|tau|.
struct CohTable {
    DegreeVector degree;
    std::vector<std::int64_t> ranks;

    bool is_zero() const {
        return std::all_of(ranks.begin(), ranks.end(), [](std::int64_t r) { return r == 0; });
    }
    /// True if some H^i with i < bound is nonzero.
    bool nonzero_below(std::size_t bound) const {
        for (std::size_t i = 0; i < ranks.size() && i < bound; ++i)
            if (ranks[i] != 0) return true;
        return false;
    }
};

inline CohTable lc_dims_at(const Semigroup& s, const DegreeVector& alpha, ColumnSet tau,
                           const ToricModuleSpec& spec = ToricModuleSpec::semigroup_ring()) {
    return {alpha, CechPieceComplex(s, alpha, tau, spec).cohomology()};
}

inline CohTable lc_dims_at(const Semigroup& s, const DegreeVector& alpha) {
    return lc_dims_at(s, alpha, ColumnSet::all(s.num_columns()));
}

/// dim T_A = rank A.
inline std::size_t torus_dim(const Semigroup& s) { return rank(s.matrix()); }

class WindowTooLarge : public DomainError {
public:
    WindowTooLarge(std::uint64_t count, std::uint64_t cap)
        : DomainError("WindowTooLarge",
                      "window has " + std::to_string(count) + " degrees, cap is " + std::to_string(cap)) {}
};

struct ScanOptions {
    ColumnSet tau;  // empty selects all columns
    ToricModuleSpec spec = ToricModuleSpec::semigroup_ring();
    std::uint64_t max_degrees = 2'000'000;
    unsigned threads = 1;
    /// Keep a row only if some H^i with i < below is nonzero; 0 keeps every nonzero row.
    std::size_t below = 0;
};

/// lc_dims_at over a window, nonzero rows only, in the window's lex order.
inline std::vector<CohTable> lc_scan(const Semigroup& s, const Window& window, ScanOptions opt = {}) {
    if (window.empty()) return {};
    if (window.dim() != s.dim()) throw std::invalid_argument("window dimension does not match the matrix");
    if (window.count() > opt.max_degrees) throw WindowTooLarge(window.count(), opt.max_degrees);
    ColumnSet tau = opt.tau.empty() ? ColumnSet::all(s.num_columns()) : opt.tau;
    auto pts = window.points();
    std::vector<CohTable> rows(pts.size());
    parallel_for(pts.size(), opt.threads, [&](std::size_t i) { rows[i] = lc_dims_at(s, pts[i], tau, opt.spec); });
    std::vector<CohTable> out;
    for (auto& r : rows) {
        bool keep = opt.below == 0 ? !r.is_zero() : r.nonzero_below(opt.below);
        if (keep) out.push_back(std::move(r));
    }
    return out;
}

/// beta is a degree of H^1_{d_j}(S_A): outside NA but inside NA + Z a_j.
inline bool sres_degree_test(const Semigroup& s, const DegreeVector& beta, std::size_t j) {
    if (j >= s.num_columns()) throw std::invalid_argument("column index out of range");
    return s.loc_member(beta, ColumnSet::single(j)) && !s.member(beta);
}

/// gamma + lattice generated by the face columns.
struct QuasiDegreeComponent {
    DegreeVector shift;
    ColumnSet face;
    std::size_t dimension = 0;
};

struct QuasiDegreeFit {
    std::vector<QuasiDegreeComponent> components;
    /// Observed degrees outside the window, which the fit cannot place.
    std::vector<DegreeVector> residuals;
    bool heuristic = true;
};

/// Greedy fit of the observed degrees by translates of face lattices,
/// largest faces first. A translate is accepted when all its window points
/// were observed and they affinely span the face. Leftover degrees become
/// isolated components.
inline QuasiDegreeFit qdeg_fit(const Semigroup& s, const std::vector<DegreeVector>& observed, const Window& window) {
    QuasiDegreeFit fit;
    if (observed.empty()) return fit;
    std::set<DegreeVector> obs(observed.begin(), observed.end());
    std::set<DegreeVector> covered;
    const auto& faces = s.cone().faces();
    std::vector<std::size_t> order(faces.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return faces[x].dimension > faces[y].dimension; });
    auto pts = window.points();
    for (std::size_t fi : order) {
        const Face& face = faces[fi];
        if (face.dimension == 0) continue;
        QuotientMap q(s.dim(), s.matrix().select_columns(face.columns.members()));
        std::map<IntVector, std::vector<DegreeVector>> cosets;
        for (const auto& p : pts) cosets[q.key(p)].push_back(p);
        for (const auto& [key, members] : cosets) {
            if (!std::all_of(members.begin(), members.end(), [&](const DegreeVector& p) { return obs.count(p) > 0; }))
                continue;
            if (std::all_of(members.begin(), members.end(), [&](const DegreeVector& p) { return covered.count(p) > 0; }))
                continue;
            std::vector<IntVector> diffs;
            for (std::size_t k = 1; k < members.size(); ++k) diffs.push_back(members[k] - members[0]);
            if (diffs.empty() || rank(IntMatrix::from_rows(diffs)) < face.dimension) continue;
            fit.components.push_back({members.front(), face.columns, face.dimension});
            covered.insert(members.begin(), members.end());
        }
    }
    for (const auto& p : obs)
        if (!covered.count(p)) fit.components.push_back({p, ColumnSet{}, 0});
    for (const auto& p : obs)
        if (!window.contains(p)) fit.residuals.push_back(p);
    return fit;
}

/// Does the rational point lie on the affine span of some fitted component?
inline bool on_component(const Semigroup& s, const QuasiDegreeComponent& c, const RatVector& beta) {
    RatVector diff(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) diff[i] = beta[i] - Rational(c.shift[i]);
    if (c.face.empty()) return std::all_of(diff.begin(), diff.end(), [](const Rational& x) { return x == 0; });
    RatMatrix gens = to_rational(s.matrix().select_columns(c.face.members()));
    return solve_rational(gens, diff).has_value();
}

inline RatVector to_rational(const IntVector& v) {
    RatVector r;
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

inline std::optional<DegreeVector> integral_point(const RatVector& beta) {
    DegreeVector out;
    for (const auto& x : beta) {
        if (!is_integral(x)) return std::nullopt;
        out.push_back(boost::multiprecision::numerator(x));
    }
    return out;
}

struct ExceptionalReport {
    bool degree_member = false;
    bool fitted_member = false;
    /// Normal S_A is Cohen-Macaulay, so the locus is empty without any fit.
    bool saturated = false;
    std::vector<CohTable> lower;  // observed rows of lower local cohomology
    QuasiDegreeFit fit;
};

/// Lower local cohomology means H^i with i < dim T_A.
inline ExceptionalReport exceptional_report(const Semigroup& s, const RatVector& beta, const Window& window,
                                            unsigned threads = 1) {
    ExceptionalReport r;
    r.saturated = is_saturated(s);
    const std::size_t dimt = torus_dim(s);
    if (auto b = integral_point(beta)) r.degree_member = lc_dims_at(s, *b).nonzero_below(dimt);
    if (!r.saturated) {
        ScanOptions opt;
        opt.threads = threads;
        opt.below = dimt;
        r.lower = lc_scan(s, window, opt);
        std::vector<DegreeVector> degs;
        for (const auto& row : r.lower) degs.push_back(row.degree);
        r.fit = qdeg_fit(s, degs, window);
        for (const auto& c : r.fit.components)
            if (on_component(s, c, beta)) r.fitted_member = true;
    }
    return r;
}

}  // namespace gkz
