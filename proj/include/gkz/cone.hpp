#pragma once

// The rational polyhedral cone R_+ A, its faces, and the homogeneous
// normal form A -> (1 ... 1 ; 0 B).

#include "gkz/intlin.hpp"

#include <bit>
#include <compare>
#include <set>

namespace gkz {

/// Subset of the column indices of A (at most 32 columns).
class ColumnSet {
public:
    static constexpr std::size_t max_columns = 32;

    constexpr ColumnSet() = default;
    constexpr explicit ColumnSet(std::uint32_t bits) : bits_(bits) {}

    static ColumnSet all(std::size_t n) {
        check(n == 0 ? 0 : n - 1);
        return ColumnSet(n == max_columns ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
    }
    static ColumnSet single(std::size_t j) {
        check(j);
        return ColumnSet(std::uint32_t{1} << j);
    }
    static ColumnSet of(const std::vector<std::size_t>& idx) {
        ColumnSet s;
        for (auto j : idx) s.insert(j);
        return s;
    }

    bool contains(std::size_t j) const noexcept { return j < max_columns && ((bits_ >> j) & 1u); }
    void insert(std::size_t j) {
        check(j);
        bits_ |= std::uint32_t{1} << j;
    }
    std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    bool empty() const noexcept { return bits_ == 0; }
    std::uint32_t bits() const noexcept { return bits_; }
    bool subset_of(ColumnSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> m;
        for (std::size_t j = 0; j < max_columns; ++j)
            if (contains(j)) m.push_back(j);
        return m;
    }

    friend ColumnSet operator&(ColumnSet a, ColumnSet b) { return ColumnSet(a.bits_ & b.bits_); }
    friend ColumnSet operator|(ColumnSet a, ColumnSet b) { return ColumnSet(a.bits_ | b.bits_); }
    friend bool operator==(ColumnSet, ColumnSet) = default;
    /// Lexicographic on sorted member lists.
    friend bool lex_less(ColumnSet a, ColumnSet b) { return a.members() < b.members(); }
    friend bool operator<(ColumnSet a, ColumnSet b) { return a.bits_ < b.bits_; }

private:
    static void check(std::size_t j) {
        if (j >= max_columns) throw std::invalid_argument("ColumnSet: at most 32 columns supported");
    }
    std::uint32_t bits_ = 0;
};

struct Face {
    ColumnSet columns;
    std::vector<std::size_t> facets;  // indices into Cone::facets vanishing on the face
    std::size_t dimension = 0;
};

class Cone {
public:
    /// Facets of cone(A) by enumerating rank-(m-1) column subsets; throws
    /// NotPointed unless A is pointed of full row rank.
    explicit Cone(IntMatrix a) : a_(std::move(a)) {
        MatrixFlags flags = validate_matrix(a_);
        if (!flags.pointed || !flags.full_rank)
            throw DomainError("NotPointed", "matrix is not pointed of full row rank");
        witness_ = flags.witness;
        compute_facets();
        compute_faces();
    }

    const IntMatrix& matrix() const noexcept { return a_; }
    std::size_t dim() const noexcept { return a_.rows(); }
    std::size_t num_columns() const noexcept { return a_.cols(); }
    const std::vector<IntVector>& facets() const noexcept { return facets_; }
    const std::vector<Face>& faces() const noexcept { return faces_; }
    const IntVector& positive_functional() const noexcept { return witness_; }

    /// Columns lying on extreme rays.
    const std::vector<std::size_t>& extreme_columns() const noexcept { return extreme_columns_; }
    /// One primitive generator per extreme ray, sorted.
    const std::vector<IntVector>& ray_generators() const noexcept { return rays_; }

    bool contains(const IntVector& x) const {
        for (const auto& h : facets_)
            if (dot(h, x) < 0) return false;
        return true;
    }

    bool is_interior(const IntVector& x) const {
        for (const auto& h : facets_)
            if (dot(h, x) <= 0) return false;
        return true;
    }

    /// Smallest face containing the given columns.
    ColumnSet face_closure(ColumnSet cols) const {
        ColumnSet out = ColumnSet::all(num_columns());
        for (std::size_t f = 0; f < facets_.size(); ++f)
            if (cols.subset_of(zero_sets_[f])) out = out & zero_sets_[f];
        return out;
    }

    /// Index into faces() of the face with exactly these columns.
    std::size_t face_index(ColumnSet face) const {
        for (std::size_t i = 0; i < faces_.size(); ++i)
            if (faces_[i].columns == face) return i;
        throw std::invalid_argument("face_index: not a face");
    }

    /// Sum of the facet functionals containing the face: vanishes on the
    /// face, strictly positive on every other column. For the apex this is
    /// replaced by the validated positive functional.
    IntVector face_functional(std::size_t face) const {
        const Face& f = faces_[face];
        if (f.columns.empty()) return witness_;
        IntVector h(dim());
        for (auto k : f.facets) h = h + facets_[k];
        return h;
    }

    IntVector column(std::size_t j) const { return a_.column(j); }

private:
    void compute_facets() {
        const std::size_t m = dim(), n = num_columns();
        std::set<IntVector> found;
        std::vector<std::size_t> pick;
        auto visit = [&](auto&& self, std::size_t start) -> void {
            if (pick.size() + 1 == m) {
                IntMatrix sub(m - 1, m);
                for (std::size_t r = 0; r < pick.size(); ++r)
                    for (std::size_t i = 0; i < m; ++i) sub(r, i) = a_(i, pick[r]);
                if (rank(sub) != m - 1) return;
                LatticeBasis k = kernel_lattice(sub);
                IntVector h = primitive(k.basis.front());
                bool pos = false, neg = false;
                for (std::size_t j = 0; j < n; ++j) {
                    Integer v = dot(h, a_.column(j));
                    pos = pos || v > 0;
                    neg = neg || v < 0;
                }
                if (pos && neg) return;
                found.insert(neg ? -h : h);
                return;
            }
            for (std::size_t j = start; j < n; ++j) {
                pick.push_back(j);
                self(self, j + 1);
                pick.pop_back();
            }
        };
        visit(visit, 0);
        facets_.assign(found.begin(), found.end());
        for (const auto& h : facets_) {
            ColumnSet z;
            for (std::size_t j = 0; j < n; ++j)
                if (dot(h, a_.column(j)) == 0) z.insert(j);
            zero_sets_.push_back(z);
        }
    }

    void compute_faces() {
        const std::size_t n = num_columns();
        std::set<ColumnSet> sets{ColumnSet::all(n)};
        for (ColumnSet z : zero_sets_) {
            std::vector<ColumnSet> snapshot(sets.begin(), sets.end());
            for (ColumnSet s : snapshot) sets.insert(s & z);
        }
        for (ColumnSet s : sets) {
            Face f;
            f.columns = s;
            for (std::size_t k = 0; k < zero_sets_.size(); ++k)
                if (s.subset_of(zero_sets_[k])) f.facets.push_back(k);
            f.dimension = s.empty() ? 0 : rank(a_.select_columns(s.members()));
            faces_.push_back(std::move(f));
        }
        std::sort(faces_.begin(), faces_.end(), [](const Face& x, const Face& y) {
            if (x.dimension != y.dimension) return x.dimension < y.dimension;
            return lex_less(x.columns, y.columns);
        });
        std::set<IntVector> rays;
        for (const Face& f : faces_)
            if (f.dimension == 1) {
                auto cols = f.columns.members();
                for (auto j : cols) extreme_columns_.push_back(j);
                rays.insert(primitive(a_.column(cols.front())));
            }
        std::sort(extreme_columns_.begin(), extreme_columns_.end());
        rays_.assign(rays.begin(), rays.end());
    }

    IntMatrix a_;
    IntVector witness_;
    std::vector<IntVector> facets_;
    std::vector<ColumnSet> zero_sets_;
    std::vector<Face> faces_;
    std::vector<std::size_t> extreme_columns_;
    std::vector<IntVector> rays_;
};

inline Cone facets(const IntMatrix& a) { return Cone(a); }

inline std::vector<Face> face_lattice(const IntMatrix& a) { return Cone(a).faces(); }

inline bool is_interior(const Cone& cone, const DegreeVector& alpha) { return cone.is_interior(alpha); }

struct HomogeneousShape {
    IntMatrix transformed;  // first row (1,...,1), first column e_1
    IntMatrix b;            // rows 2..d+1, columns 2..n+1 of `transformed`
    IntMatrix transform;    // unimodular, transform * A = transformed
    std::size_t unit_column = 0;  // the column sent to e_1
    bool first_column_normalized = false;
};

/// Inverse of a unimodular integer matrix.
inline IntMatrix inverse_unimodular(const IntMatrix& u) {
    NormalFormResult h = hermite_form(u);
    if (h.rank != u.rows() || !(h.form == IntMatrix::identity(u.rows())))
        throw std::invalid_argument("inverse_unimodular: matrix is not unimodular");
    return h.left;
}

/// Row-reduce a homogeneous A to the shape with first row (1,...,1) and
/// first column e_1. Throws NotHomogeneous when (1,...,1) is not in the
/// rational row span and NotNormalizable when it is not in the integer one.
inline HomogeneousShape homogeneous_shape(const IntMatrix& a) {
    IntVector ones(a.cols(), Integer(1));
    if (!in_rational_row_span(a, ones))
        throw DomainError("NotHomogeneous", "(1,...,1) is not in the row span of A");
    auto y = solve_left_integer(a, ones);
    if (!y)
        throw DomainError("NotNormalizable", "(1,...,1) is in the rational but not the integer row span of A");
    const std::size_t m = a.rows();
    IntMatrix ycol(m, 1);
    for (std::size_t i = 0; i < m; ++i) ycol(i, 0) = (*y)[i];
    // y is primitive (y.A = 1), so U0 y = e_1 and y is the first column of U0^-1.
    IntMatrix v = inverse_unimodular(hermite_form(ycol).left).transpose();
    IntMatrix t = v * a;
    for (std::size_t i = 1; i < m; ++i) {
        Integer f = -t(i, 0);
        t.add_row(i, 0, f);
        v.add_row(i, 0, f);
    }
    HomogeneousShape out;
    out.first_column_normalized = true;
    for (std::size_t i = 1; i < m; ++i)
        if (t(i, 0) != 0) out.first_column_normalized = false;
    out.b = IntMatrix(m - 1, a.cols() - 1);
    for (std::size_t i = 1; i < m; ++i)
        for (std::size_t j = 1; j < a.cols(); ++j) out.b(i - 1, j - 1) = t(i, j);
    out.transformed = std::move(t);
    out.transform = std::move(v);
    return out;
}

}  // namespace gkz
