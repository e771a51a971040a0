#include "gkz/lattice_ideal.hpp"
#include "gkz/oracle.hpp"

#include <gtest/gtest.h>

using namespace gkz;

namespace {

const IntMatrix A1{{1, 1, 1, 1}, {0, 1, 3, 4}};
const IntMatrix A2{{2, 1, 0, 1, 0}, {0, 1, 1, 0, 1}, {0, 0, 0, 1, 1}};
const IntMatrix A3{{1, 1, 1, 1}, {0, 1, 2, 3}};

Binomial bin(std::initializer_list<long long> plus, std::initializer_list<long long> minus) {
    return Binomial{make_vector(plus), make_vector(minus)};
}

void expect_valid(const IntMatrix& a, const Binomial& b) {
    EXPECT_TRUE(is_zero(a * b.move()));
    for (std::size_t j = 0; j < b.v_plus.size(); ++j) {
        EXPECT_GE(b.v_plus[j], 0);
        EXPECT_GE(b.v_minus[j], 0);
        EXPECT_TRUE(b.v_plus[j] == 0 || b.v_minus[j] == 0);
    }
    EXPECT_FALSE(is_zero(b.v_plus) && is_zero(b.v_minus));
    EXPECT_GE(b.v_plus, b.v_minus);
}

// Every fiber A^{-1}(alpha) with w.alpha <= bound connected under the moves.
bool all_fibers_connected(const IntMatrix& a, const std::vector<Binomial>& basis, std::int64_t bound) {
    auto w = validate_matrix(a).witness;
    std::vector<std::pair<oracle::Point, oracle::Point>> moves;
    for (const auto& b : basis) moves.emplace_back(oracle::to_point(b.v_plus), oracle::to_point(b.v_minus));
    std::set<oracle::Point> degrees;
    for (const auto& u : oracle::exponents_up_to(a, w, bound)) degrees.insert(oracle::image(a, u));
    for (const auto& alpha : degrees)
        if (!oracle::fiber_connected(oracle::fiber(a, w, alpha), moves)) return false;
    return true;
}

}  // namespace

TEST(LatticeBinomials, Examples) {
    auto one = lattice_binomials(IntMatrix{{1, 1}});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], bin({1, 0}, {0, 1}));
    EXPECT_TRUE(lattice_binomials(IntMatrix::identity(3)).empty());
    auto a1 = lattice_binomials(A1);
    ASSERT_EQ(a1.size(), 2u);
    for (const auto& b : a1) expect_valid(A1, b);
}

TEST(BinomialTest, NormalFormAndPrinting) {
    auto b = Binomial::from_move(make_vector({0, 2, -1, -1}));
    EXPECT_EQ(b, bin({0, 2, 0, 0}, {0, 0, 1, 1}));
    EXPECT_EQ(to_string(bin({1, 0, 1, 0}, {0, 2, 0, 0})), "d1*d3 - d2^2");
}

TEST(Markov, IdentityIsEmpty) {
    auto mb = markov_basis(IntMatrix::identity(3));
    EXPECT_TRUE(mb.binomials.empty());
    EXPECT_TRUE(mb.certified);
}

TEST(Markov, TwistedCubic) {
    auto mb = markov_basis(A3);
    std::set<Binomial> got(mb.binomials.begin(), mb.binomials.end());
    std::set<Binomial> want{bin({1, 0, 1, 0}, {0, 2, 0, 0}), bin({0, 1, 0, 1}, {0, 0, 2, 0}),
                            bin({1, 0, 0, 1}, {0, 1, 1, 0})};
    EXPECT_EQ(got, want);
    EXPECT_EQ(mb.binomials.size(), 3u);
    EXPECT_TRUE(mb.certified);
    EXPECT_TRUE(all_fibers_connected(A3, mb.binomials, 4));
}

TEST(Markov, ThreeVariablesOneRow) {
    IntMatrix a{{1, 1, 1}};
    auto mb = markov_basis(a);
    EXPECT_EQ(mb.binomials.size(), 2u);
    EXPECT_TRUE(mb.certified);
    EXPECT_TRUE(all_fibers_connected(a, mb.binomials, 4));
}

TEST(Markov, OracleConnectivityAndValidity) {
    for (const auto& a : {A1, A2, A3, IntMatrix{{1, 2, 3}}, IntMatrix{{1, 1, 1, 1}, {0, 1, 2, 4}}}) {
        auto mb = markov_basis(a);
        EXPECT_TRUE(mb.certified) << a;
        for (const auto& b : mb.binomials) expect_valid(a, b);
        EXPECT_TRUE(all_fibers_connected(a, mb.binomials, mb.horizon)) << a;
        EXPECT_TRUE(disconnected_fibers(a, mb.binomials, mb.horizon, 3).empty());
    }
}

TEST(Markov, LatticeBasisAloneIsNotMarkov) {
    // For the twisted cubic a kernel basis has two moves, too few to connect every fiber.
    auto lb = lattice_binomials(A3);
    EXPECT_FALSE(disconnected_fibers(A3, lb, 6).empty());
}

TEST(Markov, TinyHorizonIsUncertified) {
    auto mb = markov_basis(A3, {.horizon = 2});
    EXPECT_FALSE(mb.certified);
}
