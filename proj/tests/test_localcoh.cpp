#include "gkz/localcoh.hpp"
#include "gkz/oracle.hpp"

#include <gtest/gtest.h>

using namespace gkz;

namespace {

const IntMatrix A1{{1, 1, 1, 1}, {0, 1, 3, 4}};
const IntMatrix A2{{2, 1, 0, 1, 0}, {0, 1, 1, 0, 1}, {0, 0, 0, 1, 1}};
const IntMatrix A3{{1, 1, 1, 1}, {0, 1, 2, 3}};

DegreeVector deg(std::initializer_list<long long> xs) { return make_vector(xs); }

std::vector<std::int64_t> head(std::vector<std::int64_t> v, std::size_t n) {
    v.resize(n);
    return v;
}

const std::vector<ToricModuleSpec> all_specs{ToricModuleSpec::semigroup_ring(), ToricModuleSpec::maximal_ideal(),
                                             ToricModuleSpec::residue_field(DegreeVector{})};

}  // namespace

TEST(LcDims, A1Golden) {
    Semigroup s(A1);
    EXPECT_EQ(lc_dims_at(s, deg({1, 2})).ranks, (std::vector<std::int64_t>{0, 1, 0, 0, 0}));
    EXPECT_EQ(lc_dims_at(s, deg({-1, -1})).ranks, (std::vector<std::int64_t>{0, 0, 1, 0, 0}));
    EXPECT_TRUE(lc_dims_at(s, deg({0, 0})).is_zero());
}

TEST(LcDims, SingleVariable) {
    Semigroup s(A1);
    // H^1_{d_1}(S)_{(1,2)}: (1,2) is not in NA but (2,2) is.
    EXPECT_EQ(lc_dims_at(s, deg({1, 2}), ColumnSet::single(0)).ranks, (std::vector<std::int64_t>{0, 1}));
    EXPECT_EQ(lc_dims_at(s, deg({1, 1}), ColumnSet::single(0)).ranks, (std::vector<std::int64_t>{0, 0}));
    EXPECT_EQ(lc_dims_at(s, deg({0, -1}), ColumnSet::single(0)).ranks, (std::vector<std::int64_t>{0, 0}));
}

TEST(LcDims, ResidueAndMaximalIdeal) {
    Semigroup s(A3);
    auto all = ColumnSet::all(4);
    EXPECT_EQ(lc_dims_at(s, deg({0, 0}), all, ToricModuleSpec::residue_field(deg({0, 0}))).ranks[0], 1);
    EXPECT_TRUE(lc_dims_at(s, deg({1, 1}), all, ToricModuleSpec::residue_field(deg({0, 0}))).is_zero());
    // H^1_m(m)_0 = H^0_m(k)_0 = k.
    EXPECT_EQ(head(lc_dims_at(s, deg({0, 0}), all, ToricModuleSpec::maximal_ideal()).ranks, 3),
              (std::vector<std::int64_t>{0, 1, 0}));
}

TEST(CechComplex, SignsAndShape) {
    Semigroup s(A1);
    CechPieceComplex c(s, deg({1, 2}), ColumnSet::all(4));
    EXPECT_EQ(c.basis(0).size(), 0u);
    EXPECT_EQ(c.basis(1).size(), 4u);
    EXPECT_EQ(c.basis(4).size(), 1u);
    // d^0 on the full complex at a member degree is the column of ones.
    CechPieceComplex full(s, deg({2, 2}), ColumnSet::all(3));
    IntMatrix d0 = full.differential(0);
    EXPECT_EQ(d0, (IntMatrix{{1}, {1}, {1}}));
    // e_0 -> -e_01 - e_02, e_1 -> e_01 - e_12, e_2 -> e_02 + e_12
    IntMatrix d1 = full.differential(1);
    EXPECT_EQ(d1, (IntMatrix{{-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}}));
    EXPECT_TRUE((d1 * d0).is_zero());
}

TEST(Scan, A1SmallWindow) {
    Semigroup s(A1);
    auto rows = lc_scan(s, Window::symmetric(2, 2));
    std::vector<DegreeVector> h2;
    for (const auto& r : rows) {
        if (r.degree == deg({1, 2})) {
            EXPECT_EQ(head(r.ranks, 3), (std::vector<std::int64_t>{0, 1, 0}));
            continue;
        }
        EXPECT_EQ(head(r.ranks, 3), (std::vector<std::int64_t>{0, 0, 1}));
        EXPECT_TRUE(s.cone().is_interior(-r.degree));
        h2.push_back(r.degree);
    }
    EXPECT_EQ(h2, (std::vector<DegreeVector>{deg({-2, -2}), deg({-2, -1}), deg({-1, -2}), deg({-1, -1})}));
    EXPECT_TRUE(lc_scan(s, Window::none(2)).empty());
}

TEST(Scan, A3OnlyTopCohomology) {
    Semigroup s(A3);
    for (const auto& r : lc_scan(s, Window::symmetric(2, 3))) {
        EXPECT_FALSE(r.nonzero_below(2)) << to_string(r.degree);
        EXPECT_EQ(r.ranks[2], 1);
    }
}

TEST(Scan, CapAndParallelAgreement) {
    Semigroup s(A1);
    ScanOptions small;
    small.max_degrees = 10;
    EXPECT_THROW(lc_scan(s, Window::symmetric(2, 3), small), WindowTooLarge);
    ScanOptions par;
    par.threads = 4;
    auto a = lc_scan(s, Window::symmetric(2, 5));
    auto b = lc_scan(s, Window::symmetric(2, 5), par);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].degree, b[i].degree);
        EXPECT_EQ(a[i].ranks, b[i].ranks);
    }
}

TEST(Scan, A2HasNoLowerLocalCohomology) {
    // The holes of NA for this matrix are (1,0,0) + N{a1, a4}, a free module
    // of rank one over the two-dimensional face ring, so S_A is Cohen-Macaulay.
    Semigroup s(A2);
    oracle::NaiveSemigroup naive(A2);
    std::vector<oracle::Point> holes;
    for (const auto& p : Window({0, 0, 0}, {4, 2, 4}).points())
        if (s.cone().contains(p) && !naive.member(oracle::to_point(p))) holes.push_back(oracle::to_point(p));
    for (const auto& h : holes) {
        EXPECT_EQ(h[1], 0);
        EXPECT_EQ((h[0] - h[2]) % 2, 1);
    }
    EXPECT_FALSE(holes.empty());
    ScanOptions opt;
    opt.below = 3;
    EXPECT_TRUE(lc_scan(s, Window::symmetric(3, 3), opt).empty());
}

TEST(Sres, Examples) {
    Semigroup s1(A1), s3(A3);
    EXPECT_TRUE(sres_degree_test(s1, deg({1, 2}), 0));
    EXPECT_FALSE(sres_degree_test(s1, deg({0, 0}), 0));
    EXPECT_FALSE(sres_degree_test(s3, deg({0, 0}), 2));
    for (const auto& p : Window::symmetric(2, 3).points())
        if (s3.member(p)) {
            for (std::size_t j = 0; j < 4; ++j) EXPECT_FALSE(sres_degree_test(s3, p, j));
        }
}

TEST(QdegFit, A1IsolatedPoint) {
    Semigroup s(A1);
    Window w = Window::symmetric(2, 6);
    ScanOptions opt;
    opt.below = 2;
    std::vector<DegreeVector> obs;
    for (const auto& r : lc_scan(s, w, opt)) obs.push_back(r.degree);
    EXPECT_EQ(obs, (std::vector<DegreeVector>{deg({1, 2})}));
    auto fit = qdeg_fit(s, obs, w);
    ASSERT_EQ(fit.components.size(), 1u);
    EXPECT_EQ(fit.components[0].shift, deg({1, 2}));
    EXPECT_TRUE(fit.components[0].face.empty());
    EXPECT_TRUE(fit.heuristic);
    EXPECT_TRUE(qdeg_fit(s, {}, w).components.empty());
}

TEST(QdegFit, RecoversALine) {
    // A synthetic observation: every window point of the coset (1,0,0) + Z a1.
    Semigroup s(A2);
    Window w = Window::symmetric(3, 4);
    std::vector<DegreeVector> obs;
    for (long long x = -3; x <= 3; x += 2) obs.push_back(deg({x, 0, 0}));
    obs.push_back(deg({2, 2, 2}));
    auto fit = qdeg_fit(s, obs, w);
    ASSERT_EQ(fit.components.size(), 2u);
    EXPECT_EQ(fit.components[0].face, ColumnSet::single(0));
    EXPECT_EQ(fit.components[0].dimension, 1u);
    EXPECT_TRUE(on_component(s, fit.components[0], to_rational(deg({7, 0, 0}))));
    EXPECT_TRUE(on_component(s, fit.components[0], RatVector{Rational(1, 2), 0, 0}));
    EXPECT_FALSE(on_component(s, fit.components[0], to_rational(deg({1, 1, 0}))));
    EXPECT_TRUE(fit.components[1].face.empty());
}

TEST(Exceptional, Examples) {
    Semigroup s1(A1);
    Window w = Window::symmetric(2, 6);
    auto r = exceptional_report(s1, to_rational(deg({1, 2})), w);
    EXPECT_TRUE(r.degree_member);
    EXPECT_TRUE(r.fitted_member);
    EXPECT_FALSE(exceptional_report(s1, to_rational(deg({0, 0})), w).degree_member);
    EXPECT_FALSE(exceptional_report(s1, RatVector{Rational(1, 2), 0}, w).degree_member);
}

TEST(Property, CechComplexesAreComplexes) {
    for (const auto& a : {A1, A2, A3}) {
        Semigroup s(a);
        auto all = ColumnSet::all(a.cols());
        for (const auto& p : Window::symmetric(a.rows(), a.rows() == 3 ? 2 : 3).points()) {
            for (const auto& spec : all_specs) {
                CechPieceComplex c(s, p, all, spec);
                for (std::size_t k = 0; k + 1 < c.length(); ++k) {
                    if (c.basis(k).empty() || c.basis(k + 2).empty()) continue;
                    ASSERT_TRUE((c.differential(k + 1) * c.differential(k)).is_zero());
                }
                if (spec.kind != ToricModuleSpec::Kind::ResidueField)
                for (std::size_t k = 0; k < c.length(); ++k)
                    for (ColumnSet f : c.basis(k))
                        for (std::size_t j : all.members()) {
                            if (f.contains(j)) continue;
                            ColumnSet g = f;
                            g.insert(j);
                            const auto& up = c.basis(k + 1);
                            ASSERT_NE(std::find(up.begin(), up.end(), g), up.end());
                        }
                auto h = c.cohomology();
                std::int64_t chi = 0;
                for (std::size_t i = 0; i < h.size(); ++i) {
                    ASSERT_GE(h[i], 0);
                    chi += (i % 2 ? -1 : 1) * h[i];
                }
                ASSERT_EQ(chi, c.euler_characteristic());
            }
        }
    }
}

TEST(Property, SemigroupElementsAreNotDegrees) {
    for (const auto& a : {A1, A2, A3}) {
        Semigroup s(a);
        auto w = s.cone().positive_functional();
        std::set<oracle::Point> elems;
        for (const auto& u : oracle::exponents_up_to(a, w, 8)) elems.insert(oracle::image(a, u));
        for (const auto& face : s.cone().faces()) {
            if (face.columns.empty()) continue;
            for (const auto& e : elems) {
                IntVector alpha(e.begin(), e.end());
                ASSERT_TRUE(lc_dims_at(s, alpha, face.columns).is_zero()) << to_string(alpha);
            }
        }
    }
}

TEST(Property, NormalCaseLocalDuality) {
    for (const auto& a : {A3, IntMatrix{{1, 1, 1}, {0, 1, 0}, {0, 0, 1}}, IntMatrix{{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}}) {
        Semigroup s(a);
        ASSERT_TRUE(is_saturated(s));
        const std::size_t top = torus_dim(s);
        for (const auto& p : Window::symmetric(a.rows(), 3).points()) {
            auto h = lc_dims_at(s, p).ranks;
            ASSERT_FALSE(lc_dims_at(s, p).nonzero_below(top)) << to_string(p);
            ASSERT_LE(h[top], 1);
            ASSERT_EQ(h[top] == 1, s.interior_degree(-p)) << to_string(p);
        }
    }
}
