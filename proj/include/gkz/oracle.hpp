#pragma once

// Brute-force reference computations. These deliberately avoid the face,
// quotient-group and closed-form machinery of the main modules so that the
// two can be diffed against each other.

#include "gkz/intlin.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gkz::oracle {

using Point = std::vector<std::int64_t>;

inline Point to_point(const IntVector& v) {
    Point p;
    for (const auto& x : v) p.push_back(to_int64(x));
    return p;
}

inline std::vector<std::int64_t> column_weights(const IntMatrix& a, const IntVector& w) {
    std::vector<std::int64_t> c;
    for (std::size_t j = 0; j < a.cols(); ++j) c.push_back(to_int64(dot(w, a.column(j))));
    return c;
}

/// Every exponent vector u in N^n with sum_j u_j (w.a_j) <= max_weight.
inline std::vector<Point> exponents_up_to(const IntMatrix& a, const IntVector& w, std::int64_t max_weight) {
    auto c = column_weights(a, w);
    std::vector<Point> out;
    Point u(a.cols(), 0);
    auto rec = [&](auto&& self, std::size_t j, std::int64_t budget) -> void {
        if (j == a.cols()) {
            out.push_back(u);
            return;
        }
        for (std::int64_t k = 0; k * c[j] <= budget; ++k) {
            u[j] = k;
            self(self, j + 1, budget - k * c[j]);
        }
        u[j] = 0;
    };
    rec(rec, 0, max_weight);
    return out;
}

inline Point image(const IntMatrix& a, const Point& u) {
    Point p(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) p[i] += to_int64(a(i, j)) * u[j];
    return p;
}

/// All elements of NA of w-weight at most max_weight.
inline std::set<Point> semigroup_elements(const IntMatrix& a, const IntVector& w, std::int64_t max_weight) {
    std::set<Point> s;
    for (const auto& u : exponents_up_to(a, w, max_weight)) s.insert(image(a, u));
    return s;
}

/// Naive enumeration of NA up to a weight bound, queried by set lookup.
class NaiveSemigroup {
public:
    explicit NaiveSemigroup(const IntMatrix& a) : a_(a), w_(validate_matrix(a).witness) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Point c(a.rows());
            for (std::size_t i = 0; i < a.rows(); ++i) c[i] = to_int64(a(i, j));
            cols_.push_back(std::move(c));
        }
    }

    std::int64_t weight(const Point& p) const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < p.size(); ++i) s += to_int64(w_[i]) * p[i];
        return s;
    }

    /// p in NA iff p = 0 or p - a_j in NA for some j; each step lowers the weight.
    bool member(const Point& p) const {
        if (auto it = memo_.find(p); it != memo_.end()) return it->second;
        bool r;
        if (std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; }))
            r = true;
        else if (weight(p) <= 0)
            r = false;
        else {
            r = false;
            for (const auto& c : cols_) {
                Point q = p;
                for (std::size_t i = 0; i < q.size(); ++i) q[i] -= c[i];
                if (member(q)) {
                    r = true;
                    break;
                }
            }
        }
        memo_.emplace(p, r);
        return r;
    }

    /// Search alpha - A_F v in NA over v in [-bound, bound]^F.
    bool loc_member(const Point& alpha, const std::vector<std::size_t>& f, std::int64_t bound) const {
        Point v(f.size(), -bound);
        while (true) {
            Point b = alpha;
            for (std::size_t k = 0; k < f.size(); ++k)
                for (std::size_t i = 0; i < b.size(); ++i) b[i] -= cols_[f[k]][i] * v[k];
            if (member(b)) return true;
            std::size_t k = 0;
            for (; k < f.size(); ++k) {
                if (++v[k] <= bound) break;
                v[k] = -bound;
            }
            if (k == f.size()) return false;
        }
    }

private:
    IntMatrix a_;
    IntVector w_;
    std::vector<Point> cols_;
    mutable std::map<Point, bool> memo_;
};

/// Homology ranks of the Koszul complex of multiplication by `scalars` on
/// k^fiber, built as explicit matrices on the exterior algebra basis.
inline std::vector<std::int64_t> koszul_homology(const std::vector<Rational>& scalars, std::int64_t fiber) {
    const std::size_t m = scalars.size();
    std::vector<std::vector<std::uint32_t>> by_size(m + 1);
    for (std::uint32_t s = 0; s < (1u << m); ++s) by_size[static_cast<std::size_t>(std::popcount(s))].push_back(s);
    // d_k : wedge^k -> wedge^{k-1}, e_S -> sum_{i in S} (-1)^{pos} c_i e_{S \ i}
    std::vector<std::size_t> ranks(m + 2, 0);
    for (std::size_t k = 1; k <= m; ++k) {
        RatMatrix d(by_size[k - 1].size(), by_size[k].size());
        for (std::size_t c = 0; c < by_size[k].size(); ++c) {
            std::uint32_t s = by_size[k][c];
            int pos = 0;
            for (std::size_t i = 0; i < m; ++i) {
                if (!((s >> i) & 1u)) continue;
                std::uint32_t t = s & ~(1u << i);
                auto row = std::find(by_size[k - 1].begin(), by_size[k - 1].end(), t) - by_size[k - 1].begin();
                d(static_cast<std::size_t>(row), c) = (pos % 2 ? -1 : 1) * scalars[i];
                ++pos;
            }
        }
        // rank over Q via elimination on a scaled integer copy
        std::size_t r = 0;
        RatMatrix e = d;
        for (std::size_t col = 0; col < e.cols() && r < e.rows(); ++col) {
            std::size_t p = r;
            while (p < e.rows() && e(p, col) == 0) ++p;
            if (p == e.rows()) continue;
            e.swap_rows(r, p);
            for (std::size_t i = r + 1; i < e.rows(); ++i)
                if (e(i, col) != 0) e.add_row(i, r, Rational(-e(i, col) / e(r, col)));
            ++r;
        }
        ranks[k] = r;
    }
    std::vector<std::int64_t> h(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
        auto dim = static_cast<std::int64_t>(by_size[k].size());
        h[k] = fiber * (dim - static_cast<std::int64_t>(ranks[k]) - static_cast<std::int64_t>(k + 1 <= m ? ranks[k + 1] : 0));
    }
    return h;
}

/// Fiber A^{-1}(alpha) cap N^n, sorted.
inline std::vector<Point> fiber(const IntMatrix& a, const IntVector& w, const Point& alpha) {
    std::int64_t target = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) target += to_int64(w[i]) * alpha[i];
    std::vector<Point> out;
    if (target < 0) return out;
    for (const auto& u : exponents_up_to(a, w, target))
        if (image(a, u) == alpha) out.push_back(u);
    std::sort(out.begin(), out.end());
    return out;
}

/// Is the fiber graph with edges u -> u - plus + minus connected?
inline bool fiber_connected(const std::vector<Point>& fib, const std::vector<std::pair<Point, Point>>& moves) {
    if (fib.size() <= 1) return true;
    std::map<Point, std::size_t> index;
    for (std::size_t i = 0; i < fib.size(); ++i) index[fib[i]] = i;
    std::vector<std::size_t> parent(fib.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < fib.size(); ++i)
        for (const auto& [plus, minus] : moves)
            for (int dir = 0; dir < 2; ++dir) {
                const Point& take = dir ? minus : plus;
                const Point& give = dir ? plus : minus;
                Point v = fib[i];
                bool ok = true;
                for (std::size_t j = 0; j < v.size(); ++j) {
                    v[j] -= take[j];
                    if (v[j] < 0) ok = false;
                    v[j] += give[j];
                }
                if (!ok) continue;
                auto it = index.find(v);
                if (it != index.end()) parent[find(i)] = find(it->second);
            }
    std::size_t root = find(0);
    for (std::size_t i = 1; i < fib.size(); ++i)
        if (find(i) != root) return false;
    return true;
}

}  // namespace gkz::oracle
