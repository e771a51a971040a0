#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal forms,
// integer kernels, lattice membership, rational feasibility.

#include "gkz/matrix.hpp"

#include <optional>

namespace gkz {

struct NormalFormResult {
    IntMatrix form;    // H (Hermite) or S (Smith)
    IntMatrix left;    // U with U*M = H, or P with P*M*Q = S
    IntMatrix right;   // Q (Smith only)
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // Hermite pivot columns
    IntVector divisors;               // Smith elementary divisors d1 | d2 | ...
};

/// Row-style Hermite normal form: pivots positive, entries above a pivot
/// reduced into [0, pivot), zero rows at the bottom.
inline NormalFormResult hermite_form(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        bool have_pivot = false;
        while (true) {
            std::size_t best = m.rows();
            for (std::size_t i = r; i < m.rows(); ++i)
                if (h(i, c) != 0 && (best == m.rows() || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == m.rows()) break;
            have_pivot = true;
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m.rows(); ++i) {
                if (h(i, c) == 0) continue;
                Integer q = floor_div(h(i, c), h(r, c));
                h.add_row(i, r, -q);
                u.add_row(i, r, -q);
                if (h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (!have_pivot) continue;
        if (h(r, c) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(h(i, c), h(r, c));
            h.add_row(i, r, -q);
            u.add_row(i, r, -q);
        }
        pivots.push_back(c);
        ++r;
    }
    NormalFormResult out;
    out.form = std::move(h);
    out.left = std::move(u);
    out.rank = r;
    out.pivots = std::move(pivots);
    return out;
}

/// Smith normal form P*M*Q = S with S diagonal and d1 | d2 | ... .
inline NormalFormResult smith_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix s = m;
    IntMatrix p = IntMatrix::identity(rows);
    IntMatrix q = IntMatrix::identity(cols);
    std::size_t t = 0;
    while (t < rows && t < cols) {
        std::size_t bi = rows, bj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (s(i, j) != 0 && (bi == rows || abs(s(i, j)) < abs(s(bi, bj)))) {
                    bi = i;
                    bj = j;
                }
        if (bi == rows) break;
        s.swap_rows(t, bi);
        p.swap_rows(t, bi);
        s.swap_cols(t, bj);
        q.swap_cols(t, bj);
        while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0) continue;
                Integer f = s(i, t) / s(t, t);
                s.add_row(i, t, -f);
                p.add_row(i, t, -f);
                if (s(i, t) != 0) {
                    s.swap_rows(i, t);
                    p.swap_rows(i, t);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0) continue;
                Integer f = s(t, j) / s(t, t);
                s.add_col(j, t, -f);
                q.add_col(j, t, -f);
                if (s(t, j) != 0) {
                    s.swap_cols(j, t);
                    q.swap_cols(j, t);
                    dirty = true;
                }
            }
            if (dirty) continue;
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            s.add_row(t, bad, 1);
            p.add_row(t, bad, 1);
        }
        if (s(t, t) < 0) {
            s.negate_row(t);
            p.negate_row(t);
        }
        ++t;
    }
    NormalFormResult out;
    out.rank = t;
    for (std::size_t i = 0; i < t; ++i) out.divisors.push_back(s(i, i));
    out.form = std::move(s);
    out.left = std::move(p);
    out.right = std::move(q);
    return out;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Rank over the rationals (fraction-free elimination).
inline std::size_t rank(IntMatrix m) {
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(r, piv);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            for (std::size_t j = c + 1; j < m.cols(); ++j)
                m(i, j) = (m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

struct LatticeBasis {
    std::size_t ambient = 0;
    std::vector<IntVector> basis;
};

/// Z-basis of {v in Z^cols : M v = 0}, in Hermite normal form.
inline LatticeBasis kernel_lattice(const IntMatrix& m) {
    NormalFormResult h = hermite_form(m.transpose());
    LatticeBasis out;
    out.ambient = m.cols();
    if (h.rank == m.cols()) return out;
    IntMatrix k(m.cols() - h.rank, m.cols());
    for (std::size_t i = h.rank; i < m.cols(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) k(i - h.rank, j) = h.left(i, j);
    NormalFormResult canon = hermite_form(k);
    for (std::size_t i = 0; i < canon.rank; ++i) out.basis.push_back(canon.form.row(i));
    return out;
}

/// The subgroup of Z^n spanned by a list of generators, kept in Hermite form.
class Lattice {
public:
    Lattice() = default;
    Lattice(std::size_t ambient, const std::vector<IntVector>& generators) : ambient_(ambient) {
        IntMatrix g(generators.size(), ambient);
        for (std::size_t i = 0; i < generators.size(); ++i)
            for (std::size_t j = 0; j < ambient; ++j) g(i, j) = generators[i][j];
        NormalFormResult h = hermite_form(g);
        for (std::size_t i = 0; i < h.rank; ++i) basis_.push_back(h.form.row(i));
        pivots_ = h.pivots;
    }

    /// Lattice spanned by the columns of `m`.
    static Lattice column_span(const IntMatrix& m) {
        std::vector<IntVector> gens;
        for (std::size_t j = 0; j < m.cols(); ++j) gens.push_back(m.column(j));
        return Lattice(m.rows(), gens);
    }

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    const std::vector<IntVector>& basis() const noexcept { return basis_; }

    bool contains(IntVector x) const {
        for (std::size_t k = 0; k < basis_.size(); ++k) {
            const Integer& piv = basis_[k][pivots_[k]];
            if (x[pivots_[k]] % piv != 0) return false;
            Integer f = x[pivots_[k]] / piv;
            for (std::size_t j = 0; j < ambient_; ++j) x[j] -= f * basis_[k][j];
        }
        return is_zero(x);
    }

private:
    std::size_t ambient_ = 0;
    std::vector<IntVector> basis_;
    std::vector<std::size_t> pivots_;
};

/// Integer row vector y with y*M = b, if one exists.
inline std::optional<IntVector> solve_left_integer(const IntMatrix& m, const IntVector& b) {
    NormalFormResult h = hermite_form(m);
    IntVector z(m.rows());
    IntVector residual = b;
    for (std::size_t k = 0; k < h.rank; ++k) {
        std::size_t c = h.pivots[k];
        if (residual[c] % h.form(k, c) != 0) return std::nullopt;
        z[k] = residual[c] / h.form(k, c);
        for (std::size_t j = 0; j < m.cols(); ++j) residual[j] -= z[k] * h.form(k, j);
    }
    if (!is_zero(residual)) return std::nullopt;
    IntVector y(m.rows());
    for (std::size_t k = 0; k < m.rows(); ++k)
        for (std::size_t i = 0; i < m.rows(); ++i) y[i] += z[k] * h.left(k, i);
    return y;
}

/// Rational solution of M x = b, if the system is consistent.
inline std::optional<RatVector> solve_rational(const RatMatrix& m, const RatVector& b) {
    const std::size_t rows = m.rows(), cols = m.cols();
    RatMatrix aug(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug(i, j) = m(i, j);
        aug(i, cols) = b[i];
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && aug(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        aug.swap_rows(r, piv);
        Rational inv = Rational(1) / aug(r, c);
        for (std::size_t j = 0; j <= cols; ++j) aug(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && aug(i, c) != 0) aug.add_row(i, r, Rational(-aug(i, c)));
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (aug(i, cols) != 0) return std::nullopt;
    RatVector x(cols);
    for (std::size_t k = 0; k < r; ++k) x[pivot_cols[k]] = aug(k, cols);
    return x;
}

/// Is `v` in the rational row span of `m`?
inline bool in_rational_row_span(const IntMatrix& m, const IntVector& v) {
    IntMatrix row(1, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) row(0, j) = v[j];
    return rank(vstack(m, row)) == rank(m);
}

/// coeffs . x >= rhs
struct Inequality {
    RatVector coeffs;
    Rational rhs;
};

namespace detail {

inline void normalize(Inequality& q) {
    for (const auto& c : q.coeffs)
        if (c != 0) {
            Rational s = c < 0 ? Rational(-c) : c;
            for (auto& x : q.coeffs) x /= s;
            q.rhs /= s;
            return;
        }
}

inline bool add_unique(std::vector<Inequality>& sys, Inequality q) {
    normalize(q);
    bool zero = std::all_of(q.coeffs.begin(), q.coeffs.end(), [](const Rational& c) { return c == 0; });
    if (zero) return q.rhs <= 0;
    for (auto& e : sys)
        if (e.coeffs == q.coeffs) {
            if (q.rhs > e.rhs) e.rhs = q.rhs;
            return true;
        }
    sys.push_back(std::move(q));
    return true;
}

inline Rational pick_value(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    if (!lo && !hi) return 0;
    if (lo && !hi) return *lo <= 0 ? Rational(0) : Rational(ceil(*lo));
    if (!lo && hi) return *hi >= 0 ? Rational(0) : Rational(floor(*hi));
    if (*lo <= 0 && *hi >= 0) return 0;
    Integer c = ceil(*lo);
    if (Rational(c) <= *hi) {
        Integer f = floor(*hi);
        return *lo > 0 ? Rational(c) : Rational(f);
    }
    return *lo;
}

}  // namespace detail

/// A rational point of {x : c.x >= b for all constraints}, or nullopt if the
/// system is infeasible. Fourier-Motzkin elimination with back-substitution;
/// the chosen point prefers zero, then small integers.
inline std::optional<RatVector> find_feasible_point(std::size_t vars, const std::vector<Inequality>& constraints) {
    std::vector<std::vector<Inequality>> stages(vars + 1);
    for (const auto& q : constraints)
        if (!detail::add_unique(stages[vars], q)) return std::nullopt;
    for (std::size_t k = vars; k-- > 0;) {
        const auto& cur = stages[k + 1];
        auto& next = stages[k];
        std::vector<const Inequality*> pos, neg;
        for (const auto& q : cur) {
            if (q.coeffs[k] > 0)
                pos.push_back(&q);
            else if (q.coeffs[k] < 0)
                neg.push_back(&q);
            else if (!detail::add_unique(next, q))
                return std::nullopt;
        }
        for (const auto* p : pos)
            for (const auto* n : neg) {
                Rational sp = p->coeffs[k], sn = -n->coeffs[k];
                Inequality comb;
                comb.coeffs.resize(p->coeffs.size());
                for (std::size_t j = 0; j < comb.coeffs.size(); ++j)
                    comb.coeffs[j] = p->coeffs[j] * sn + n->coeffs[j] * sp;
                comb.coeffs[k] = 0;
                comb.rhs = p->rhs * sn + n->rhs * sp;
                if (!detail::add_unique(next, std::move(comb))) return std::nullopt;
            }
    }
    RatVector x(vars);
    for (std::size_t k = 0; k < vars; ++k) {
        std::optional<Rational> lo, hi;
        for (const auto& q : stages[k + 1]) {
            if (q.coeffs[k] == 0) continue;
            Rational rest = q.rhs;
            for (std::size_t j = 0; j < k; ++j) rest -= q.coeffs[j] * x[j];
            Rational bound = rest / q.coeffs[k];
            if (q.coeffs[k] > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo && hi && *lo > *hi) return std::nullopt;
        x[k] = detail::pick_value(lo, hi);
    }
    return x;
}

struct MatrixFlags {
    bool pointed = false;
    IntVector witness;  // w with w.a_j >= 1 for every column (when pointed)
    bool full_rank = false;
    bool minors_gcd_one = false;
    bool homogeneous = false;
    std::size_t rank = 0;
};

/// Structural checks on A. Never throws on mathematical grounds.
inline MatrixFlags validate_matrix(const IntMatrix& a) {
    MatrixFlags f;
    if (a.rows() == 0 || a.cols() == 0) return f;
    f.rank = rank(a);
    f.full_rank = f.rank == a.rows();
    if (f.full_rank) {
        NormalFormResult s = smith_form(a);
        f.minors_gcd_one = std::all_of(s.divisors.begin(), s.divisors.end(), [](const Integer& d) { return d == 1; });
    }
    f.homogeneous = in_rational_row_span(a, IntVector(a.cols(), Integer(1)));

    std::vector<Inequality> cons;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Inequality q;
        for (std::size_t i = 0; i < a.rows(); ++i) q.coeffs.emplace_back(a(i, j));
        q.rhs = 1;
        cons.push_back(std::move(q));
    }
    if (auto w = find_feasible_point(a.rows(), cons)) {
        Integer den = 1;
        for (const auto& x : *w) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
        IntVector wi;
        for (const auto& x : *w) wi.push_back(boost::multiprecision::numerator(x) * (den / boost::multiprecision::denominator(x)));
        f.witness = primitive(std::move(wi));
        f.pointed = true;
    }
    return f;
}

/// Canonical coordinates on Z^m / L for the lattice L spanned by the
/// columns of `gens`: torsion coordinates reduced mod their divisor, free
/// coordinates kept as is. Equal keys mean equal cosets.
class QuotientMap {
public:
    QuotientMap(std::size_t ambient, const IntMatrix& gens) : ambient_(ambient) {
        if (gens.cols() == 0) {
            projection_ = IntMatrix::identity(ambient);
            moduli_.assign(ambient, 0);
            return;
        }
        NormalFormResult s = smith_form(gens);
        projection_ = s.left;
        for (std::size_t i = 0; i < ambient; ++i) moduli_.push_back(i < s.rank ? s.divisors[i] : Integer(0));
    }

    IntVector key(const IntVector& x) const {
        IntVector y = projection_ * x;
        IntVector out;
        for (std::size_t i = 0; i < ambient_; ++i) {
            if (moduli_[i] == 1) continue;
            out.push_back(moduli_[i] == 0 ? y[i] : Integer(y[i] - floor_div(y[i], moduli_[i]) * moduli_[i]));
        }
        return out;
    }

private:
    std::size_t ambient_;
    IntMatrix projection_;
    IntVector moduli_;
};

}  // namespace gkz
