#pragma once

// Binomial generators of the toric ideal I_A.

#include "gkz/intlin.hpp"
#include "gkz/parallel.hpp"

#include <map>
#include <numeric>

namespace gkz {

/// d^{v_plus} - d^{v_minus}, normalized so that v_plus >= v_minus lexicographically.
struct Binomial {
    IntVector v_plus;
    IntVector v_minus;

    static Binomial from_move(const IntVector& v) {
        Binomial b{IntVector(v.size()), IntVector(v.size())};
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] > 0) b.v_plus[j] = v[j];
            if (v[j] < 0) b.v_minus[j] = -v[j];
        }
        if (b.v_plus < b.v_minus) std::swap(b.v_plus, b.v_minus);
        return b;
    }

    IntVector move() const { return v_plus - v_minus; }

    friend bool operator==(const Binomial&, const Binomial&) = default;
    friend bool operator<(const Binomial& a, const Binomial& b) {
        return std::tie(a.v_plus, a.v_minus) < std::tie(b.v_plus, b.v_minus);
    }
};

/// Monomial notation, e.g. "d1*d3 - d2^2".
inline std::string to_string(const Binomial& b) {
    auto mono = [](const IntVector& e) {
        std::string s;
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] == 0) continue;
            if (!s.empty()) s += "*";
            s += "d" + std::to_string(j + 1);
            if (e[j] > 1) s += "^" + e[j].str();
        }
        return s.empty() ? std::string("1") : s;
    };
    return mono(b.v_plus) + " - " + mono(b.v_minus);
}

inline std::ostream& operator<<(std::ostream& os, const Binomial& b) { return os << to_string(b); }

/// Binomials of a basis of ker(A).
inline std::vector<Binomial> lattice_binomials(const IntMatrix& a) {
    std::vector<Binomial> out;
    for (const auto& v : kernel_lattice(a).basis) out.push_back(Binomial::from_move(v));
    return out;
}

struct MarkovBasis {
    std::vector<Binomial> binomials;
    bool certified = false;
    std::int64_t horizon = 0;
    /// Largest w-weight at which a move was added, 0 if none.
    std::int64_t last_new_weight = 0;
};

class HorizonExceeded : public DomainError {
public:
    explicit HorizonExceeded(MarkovBasis partial)
        : DomainError("HorizonExceeded", "Markov completion did not stabilize within the weight horizon"),
          partial_(std::move(partial)) {}
    const MarkovBasis& partial() const noexcept { return partial_; }

private:
    MarkovBasis partial_;
};

namespace detail {

using Exponent = std::vector<std::int64_t>;

/// Fibers A^{-1}(alpha) cap N^n for every alpha of w-weight <= horizon,
/// ordered by (weight, alpha); each fiber is sorted lexicographically.
struct FiberTable {
    std::vector<std::int64_t> weights;
    std::vector<std::vector<Exponent>> fibers;
};

inline FiberTable fibers_up_to(const IntMatrix& a, const IntVector& w, std::int64_t horizon) {
    std::vector<std::int64_t> cw;
    for (std::size_t j = 0; j < a.cols(); ++j) cw.push_back(to_int64(dot(w, a.column(j))));
    std::map<std::pair<std::int64_t, Exponent>, std::vector<Exponent>> by_degree;
    Exponent u(a.cols(), 0);
    auto rec = [&](auto&& self, std::size_t j, std::int64_t used) -> void {
        if (j == a.cols()) {
            Exponent img(a.rows(), 0);
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t k = 0; k < a.cols(); ++k) img[i] += to_int64(a(i, k)) * u[k];
            by_degree[{used, img}].push_back(u);
            return;
        }
        for (std::int64_t k = 0; used + k * cw[j] <= horizon; ++k) {
            u[j] = k;
            self(self, j + 1, used + k * cw[j]);
        }
        u[j] = 0;
    };
    rec(rec, 0, 0);
    FiberTable t;
    for (auto& [key, fib] : by_degree) {
        std::sort(fib.begin(), fib.end());
        t.weights.push_back(key.first);
        t.fibers.push_back(std::move(fib));
    }
    return t;
}

struct Move {
    Exponent plus, minus;
};

/// Connected components of a fiber under +-moves; returns the component
/// label of each element (labels are indices of the lex-smallest member).
inline std::vector<std::size_t> fiber_components(const std::vector<Exponent>& fib, const std::vector<Move>& moves) {
    std::vector<std::size_t> parent(fib.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < fib.size(); ++i) {
        for (const auto& mv : moves) {
            for (int sign = 0; sign < 2; ++sign) {
                const Exponent& take = sign ? mv.minus : mv.plus;
                const Exponent& give = sign ? mv.plus : mv.minus;
                Exponent v = fib[i];
                bool ok = true;
                for (std::size_t j = 0; j < v.size() && ok; ++j) {
                    v[j] -= take[j];
                    ok = v[j] >= 0;
                    v[j] += give[j];
                }
                if (!ok) continue;
                auto it = std::lower_bound(fib.begin(), fib.end(), v);
                if (it == fib.end() || *it != v) continue;
                std::size_t a = find(i), b = find(static_cast<std::size_t>(it - fib.begin()));
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    for (std::size_t i = 0; i < fib.size(); ++i) parent[i] = find(i);
    return parent;
}

inline Move to_move(const Binomial& b) {
    Move m;
    for (const auto& x : b.v_plus) m.plus.push_back(to_int64(x));
    for (const auto& x : b.v_minus) m.minus.push_back(to_int64(x));
    return m;
}

}  // namespace detail

struct MarkovOptions {
    /// Weight horizon; 0 selects 6 * max_j (w . a_j).
    std::int64_t horizon = 0;
    unsigned threads = 1;
};

inline std::int64_t default_markov_horizon(const IntMatrix& a, const IntVector& w) {
    std::int64_t m = 1;
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, to_int64(dot(w, a.column(j))));
    return 6 * m;
}

/// Degrees (as lex-smallest fiber elements) of w-weight <= horizon whose
/// fiber graph under the given binomials is disconnected.
inline std::vector<IntVector> disconnected_fibers(const IntMatrix& a, const std::vector<Binomial>& basis,
                                                  std::int64_t horizon, unsigned threads = 1) {
    auto flags = validate_matrix(a);
    if (!flags.pointed) throw DomainError("NotPointed", "matrix is not pointed");
    auto table = detail::fibers_up_to(a, flags.witness, horizon);
    std::vector<detail::Move> moves;
    for (const auto& b : basis) moves.push_back(detail::to_move(b));
    std::vector<char> bad(table.fibers.size(), 0);
    parallel_for(table.fibers.size(), threads, [&](std::size_t i) {
        auto comp = detail::fiber_components(table.fibers[i], moves);
        bad[i] = std::any_of(comp.begin(), comp.end(), [](std::size_t c) { return c != 0; });
    });
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < bad.size(); ++i) {
        if (!bad[i]) continue;
        IntVector e;
        for (auto x : table.fibers[i].front()) e.push_back(x);
        out.push_back(e);
    }
    return out;
}

/// Completion: walk the fibers in increasing weight and join the
/// components of each fiber to the one holding its lex-smallest element.
/// Certified when the moves span ker(A) and nothing was added in the upper
/// half of the horizon.
inline MarkovBasis markov_basis(const IntMatrix& a, MarkovOptions opt = {}) {
    auto flags = validate_matrix(a);
    if (!flags.pointed) throw DomainError("NotPointed", "matrix is not pointed");
    MarkovBasis mb;
    mb.horizon = opt.horizon > 0 ? opt.horizon : default_markov_horizon(a, flags.witness);
    auto table = detail::fibers_up_to(a, flags.witness, mb.horizon);
    std::vector<detail::Move> moves;
    std::set<Binomial> seen;
    for (std::size_t f = 0; f < table.fibers.size(); ++f) {
        const auto& fib = table.fibers[f];
        if (fib.size() < 2) continue;
        auto comp = detail::fiber_components(fib, moves);
        std::vector<std::size_t> roots;
        for (std::size_t i = 0; i < fib.size(); ++i)
            if (comp[i] == i && i != 0) roots.push_back(i);
        for (auto r : roots) {
            IntVector v(fib[0].size());
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = fib[0][j] - fib[r][j];
            auto b = Binomial::from_move(v);
            if (!seen.insert(b).second) continue;
            mb.binomials.push_back(b);
            moves.push_back(detail::to_move(b));
            mb.last_new_weight = table.weights[f];
        }
    }
    std::vector<IntVector> gens;
    for (const auto& b : mb.binomials) gens.push_back(b.move());
    const auto kernel = kernel_lattice(a);
    Lattice spanned(a.cols(), gens);
    bool spans = spanned.rank() == kernel.basis.size() &&
                 std::all_of(kernel.basis.begin(), kernel.basis.end(), [&](const IntVector& v) { return spanned.contains(v); });
    mb.certified = spans && 2 * mb.last_new_weight <= mb.horizon;
    return mb;
}

}  // namespace gkz
