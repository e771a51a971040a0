#pragma once

// The semigroup NA: membership, membership in localizations NA + ZA_F,
// Hilbert basis of the saturation, and graded dimensions of toric modules.

#include "gkz/cone.hpp"

#include <boost/container_hash/hash.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_set>

namespace gkz {

/// Finite box of degrees, lower <= upper componentwise.
class Window {
public:
    Window() = default;
    Window(std::vector<std::int64_t> lower, std::vector<std::int64_t> upper)
        : lower_(std::move(lower)), upper_(std::move(upper)) {
        if (lower_.size() != upper_.size()) throw std::invalid_argument("Window: dimension mismatch");
        for (std::size_t i = 0; i < lower_.size(); ++i)
            if (lower_[i] > upper_[i]) throw std::invalid_argument("Window: lower bound exceeds upper bound");
    }

    static Window symmetric(std::size_t dim, std::int64_t radius) {
        return Window(std::vector<std::int64_t>(dim, -radius), std::vector<std::int64_t>(dim, radius));
    }

    /// A window containing no degrees.
    static Window none(std::size_t dim) {
        Window w(std::vector<std::int64_t>(dim, 0), std::vector<std::int64_t>(dim, 0));
        w.empty_ = true;
        return w;
    }

    std::size_t dim() const noexcept { return lower_.size(); }
    bool empty() const noexcept { return empty_; }
    const std::vector<std::int64_t>& lower() const noexcept { return lower_; }
    const std::vector<std::int64_t>& upper() const noexcept { return upper_; }

    std::uint64_t count() const {
        if (empty_) return 0;
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < dim(); ++i) {
            auto len = static_cast<std::uint64_t>(upper_[i] - lower_[i] + 1);
            if (c > std::numeric_limits<std::uint64_t>::max() / len) return std::numeric_limits<std::uint64_t>::max();
            c *= len;
        }
        return c;
    }

    bool contains(const DegreeVector& x) const {
        if (empty_ || x.size() != dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
        return true;
    }

    /// All degrees in lexicographic order.
    std::vector<DegreeVector> points() const {
        std::vector<DegreeVector> out;
        if (empty_) return out;
        std::vector<std::int64_t> cur = lower_;
        while (true) {
            DegreeVector p;
            for (auto c : cur) p.emplace_back(c);
            out.push_back(std::move(p));
            std::size_t i = dim();
            while (i > 0) {
                --i;
                if (cur[i] < upper_[i]) {
                    ++cur[i];
                    for (std::size_t k = i + 1; k < dim(); ++k) cur[k] = lower_[k];
                    break;
                }
                if (i == 0) return out;
            }
            if (dim() == 0) return out;
        }
    }

private:
    std::vector<std::int64_t> lower_, upper_;
    bool empty_ = false;
};

/// The three toric modules of the sequence 0 -> S_A d_A -> S_A -> k -> 0.
struct ToricModuleSpec {
    enum class Kind { SemigroupRing, MaximalIdeal, ResidueField };
    Kind kind = Kind::SemigroupRing;
    DegreeVector shift;  // ResidueField only: the degree carrying k

    static ToricModuleSpec semigroup_ring() { return {Kind::SemigroupRing, {}}; }
    static ToricModuleSpec maximal_ideal() { return {Kind::MaximalIdeal, {}}; }
    static ToricModuleSpec residue_field(DegreeVector at) { return {Kind::ResidueField, std::move(at)}; }
};

inline std::string to_string(const ToricModuleSpec& s) {
    switch (s.kind) {
        case ToricModuleSpec::Kind::SemigroupRing: return "semigroup_ring";
        case ToricModuleSpec::Kind::MaximalIdeal: return "maximal_ideal";
        case ToricModuleSpec::Kind::ResidueField: return "residue_field" + to_string(s.shift);
    }
    return "?";
}

using SmallVector = std::vector<std::int64_t>;

struct SmallVectorHash {
    std::size_t operator()(const SmallVector& v) const noexcept { return boost::hash_range(v.begin(), v.end()); }
};

inline SmallVector to_small(const IntVector& v) {
    SmallVector s;
    s.reserve(v.size());
    for (const auto& x : v) s.push_back(to_int64(x));
    return s;
}

/// Memo of (degree, localized column set) -> membership verdict. A second
/// insert with a different verdict means a solver bug and throws.
class MembershipCache {
public:
    using Key = std::pair<SmallVector, std::uint32_t>;

    std::optional<bool> find(const Key& k) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(k);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void insert(const Key& k, bool value) {
        std::unique_lock lock(mutex_);
        auto [it, fresh] = map_.emplace(k, value);
        if (!fresh && it->second != value) throw std::logic_error("MembershipCache: conflicting verdicts for one key");
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, bool> map_;
};

namespace detail {

/// Reachability table for the image of NA in G = Z^m / ZA_tau, graded by a
/// functional that vanishes on tau and is positive on all other columns.
class LocalizedSemigroup {
public:
    LocalizedSemigroup(const Cone& cone, std::size_t face_index) {
        const Face& face = cone.faces()[face_index];
        const std::size_t m = cone.dim();
        weight_ = cone.face_functional(face_index);
        auto tau = face.columns.members();
        if (!tau.empty()) {
            NormalFormResult s = smith_form(cone.matrix().select_columns(tau));
            projection_ = s.left;
            for (std::size_t i = 0; i < m; ++i) {
                if (i < s.rank) {
                    if (s.divisors[i] != 1) {
                        coords_.push_back(i);
                        moduli_.push_back(to_int64(s.divisors[i]));
                    }
                } else {
                    coords_.push_back(i);
                    moduli_.push_back(0);
                }
            }
        } else {
            projection_ = IntMatrix::identity(m);
            for (std::size_t i = 0; i < m; ++i) {
                coords_.push_back(i);
                moduli_.push_back(0);
            }
        }
        std::set<std::pair<std::int64_t, SmallVector>> gens;
        for (std::size_t j = 0; j < cone.num_columns(); ++j) {
            if (face.columns.contains(j)) continue;
            IntVector a = cone.column(j);
            gens.emplace(to_int64(dot(weight_, a)), image(a));
        }
        gens_.assign(gens.begin(), gens.end());
        levels_.push_back({SmallVector(coords_.size(), 0)});
    }

    bool contains(const DegreeVector& alpha, std::int64_t weight_cap) {
        Integer w = dot(weight_, alpha);
        if (w < 0) return false;
        SmallVector key = image(alpha);
        std::int64_t level = to_int64(w);
        if (level > weight_cap)
            throw DomainError("WeightCapExceeded",
                              "membership query needs weight " + w.str() + " beyond cap " + std::to_string(weight_cap));
        std::lock_guard lock(mutex_);
        extend(level);
        return levels_[static_cast<std::size_t>(level)].count(key) > 0;
    }

private:
    SmallVector image(const IntVector& x) const {
        IntVector y = projection_ * x;
        SmallVector out(coords_.size());
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            Integer v = y[coords_[k]];
            if (moduli_[k] != 0) {
                v %= moduli_[k];
                if (v < 0) v += moduli_[k];
            }
            out[k] = to_int64(v);
        }
        return out;
    }

    void extend(std::int64_t level) {
        while (static_cast<std::int64_t>(levels_.size()) <= level) {
            const auto w = static_cast<std::int64_t>(levels_.size());
            std::unordered_set<SmallVector, SmallVectorHash> next;
            for (const auto& [c, g] : gens_) {
                if (c > w) continue;
                for (const auto& x : levels_[static_cast<std::size_t>(w - c)]) {
                    SmallVector y = x;
                    for (std::size_t k = 0; k < y.size(); ++k) {
                        y[k] += g[k];
                        if (moduli_[k] != 0) y[k] %= moduli_[k];
                    }
                    next.insert(std::move(y));
                }
            }
            levels_.push_back(std::move(next));
        }
    }

    IntVector weight_;
    IntMatrix projection_;
    std::vector<std::size_t> coords_;
    std::vector<std::int64_t> moduli_;  // 0 marks a free coordinate
    std::vector<std::pair<std::int64_t, SmallVector>> gens_;
    std::vector<std::unordered_set<SmallVector, SmallVectorHash>> levels_;
    std::mutex mutex_;
};

}  // namespace detail

/// NA together with memoized membership machinery. Queries are logically
/// const and safe to issue from several threads.
class Semigroup {
public:
    static constexpr std::int64_t default_weight_cap = 100000;

    explicit Semigroup(IntMatrix a, std::int64_t weight_cap = default_weight_cap)
        : cone_(std::move(a)), weight_cap_(weight_cap) {
        for (std::size_t f = 0; f < cone_.faces().size(); ++f)
            tables_.push_back(std::make_unique<detail::LocalizedSemigroup>(cone_, f));
    }

    const Cone& cone() const noexcept { return cone_; }
    const IntMatrix& matrix() const noexcept { return cone_.matrix(); }
    std::size_t dim() const noexcept { return cone_.dim(); }
    std::size_t num_columns() const noexcept { return cone_.num_columns(); }
    const MembershipCache& cache() const noexcept { return cache_; }

    /// alpha in NA.
    bool member(const DegreeVector& alpha) const { return loc_member(alpha, ColumnSet{}); }

    /// alpha in NA + ZA_F, the support of S_A[d_F^{-1}]. The localization
    /// only depends on the smallest face containing F.
    bool loc_member(const DegreeVector& alpha, ColumnSet f) const {
        if (alpha.size() != dim()) throw std::invalid_argument("degree has wrong length");
        MembershipCache::Key key{to_small(alpha), f.bits()};
        if (auto hit = cache_.find(key)) return *hit;
        std::size_t face = cone_.face_index(cone_.face_closure(f));
        bool v = tables_[face]->contains(alpha, weight_cap_);
        cache_.insert(key, v);
        return v;
    }

    bool interior_degree(const DegreeVector& alpha) const { return member(alpha) && cone_.is_interior(alpha); }

private:
    Cone cone_;
    std::int64_t weight_cap_;
    std::vector<std::unique_ptr<detail::LocalizedSemigroup>> tables_;
    mutable MembershipCache cache_;
};

inline bool member(const Semigroup& s, const DegreeVector& alpha) { return s.member(alpha); }

inline bool loc_member(const Semigroup& s, const DegreeVector& alpha, ColumnSet f) { return s.loc_member(alpha, f); }

inline bool interior_degree(const Semigroup& s, const DegreeVector& alpha) { return s.interior_degree(alpha); }

/// Dimension (0 or 1) of the degree-alpha piece of a toric module.
inline int graded_dim(const Semigroup& s, const ToricModuleSpec& spec, const DegreeVector& alpha) {
    switch (spec.kind) {
        case ToricModuleSpec::Kind::SemigroupRing: return s.member(alpha) ? 1 : 0;
        case ToricModuleSpec::Kind::MaximalIdeal: return (!is_zero(alpha) && s.member(alpha)) ? 1 : 0;
        case ToricModuleSpec::Kind::ResidueField:
            return alpha == (spec.shift.empty() ? DegreeVector(alpha.size()) : spec.shift) ? 1 : 0;
    }
    return 0;
}

namespace detail {

/// Hilbert basis of cone(A) cap Z^m when ZA = Z^m.
inline std::vector<IntVector> hilbert_basis_unimodular(const IntMatrix& a) {
    Cone cone(a);
    const std::size_t m = cone.dim();
    const auto& rays = cone.ray_generators();
    std::set<IntVector> candidates(rays.begin(), rays.end());
    std::vector<std::size_t> pick;
    auto visit = [&](auto&& self, std::size_t start) -> void {
        if (pick.size() == m) {
            IntMatrix r(m, m);
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t i = 0; i < m; ++i) r(i, k) = rays[pick[k]][i];
            if (determinant(r) == 0) return;
            NormalFormResult s = smith_form(r);
            IntMatrix pinv = inverse_unimodular(s.left);
            RatMatrix rq = to_rational(r);
            // Coset representatives of Z^m / R Z^m, folded into the half-open parallelepiped.
            std::vector<std::int64_t> digit(m, 0);
            while (true) {
                IntVector y(m);
                for (std::size_t i = 0; i < m; ++i) y[i] = digit[i];
                IntVector x = pinv * y;
                RatVector xq(x.begin(), x.end());
                RatVector lambda = *solve_rational(rq, xq);
                IntVector shift(m);
                for (std::size_t k = 0; k < m; ++k) shift[k] = floor(lambda[k]);
                IntVector folded = x - r * shift;
                if (!is_zero(folded)) candidates.insert(folded);
                std::size_t i = 0;
                for (; i < m; ++i) {
                    if (++digit[i] < to_int64(s.divisors[i])) break;
                    digit[i] = 0;
                }
                if (i == m) break;
            }
            return;
        }
        for (std::size_t j = start; j < rays.size(); ++j) {
            pick.push_back(j);
            self(self, j + 1);
            pick.pop_back();
        }
    };
    visit(visit, 0);
    std::vector<IntVector> out;
    for (const auto& x : candidates) {
        bool reducible = false;
        for (const auto& y : candidates) {
            if (y == x) continue;
            IntVector diff = x - y;
            if (cone.contains(diff)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) out.push_back(x);
    }
    return out;
}

}  // namespace detail

/// Minimal generators of the saturation cone(A) cap ZA, sorted.
inline std::vector<DegreeVector> hilbert_basis(const IntMatrix& a) {
    MatrixFlags flags = validate_matrix(a);
    if (!flags.pointed || !flags.full_rank) throw DomainError("NotPointed", "matrix is not pointed of full row rank");
    Lattice za = Lattice::column_span(a);
    const std::size_t m = a.rows();
    IntMatrix basis(m, m);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i) basis(i, k) = za.basis()[k][i];
    if (abs(determinant(basis)) == 1) return detail::hilbert_basis_unimodular(a);
    // Rewrite A in coordinates of a basis of ZA, where the lattice becomes Z^m.
    RatMatrix bq = to_rational(basis);
    IntMatrix coords(m, a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        IntVector col = a.column(j);
        RatVector c = *solve_rational(bq, RatVector(col.begin(), col.end()));
        for (std::size_t i = 0; i < m; ++i) coords(i, j) = boost::multiprecision::numerator(c[i]);
    }
    std::vector<DegreeVector> out;
    for (const auto& h : detail::hilbert_basis_unimodular(coords)) out.push_back(basis * h);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_saturated(const Semigroup& s) {
    for (const auto& h : hilbert_basis(s.matrix()))
        if (!s.member(h)) return false;
    return true;
}

}  // namespace gkz
