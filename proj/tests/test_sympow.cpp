#include <catch2/catch_amalgamated.hpp>

#include "dalg/parse.hpp"
#include "test_support.hpp"

using namespace dalg;
using dalg::testing::Rng;
using Op = LinearDifferentialOperator;

namespace {
unsigned binom(unsigned n, unsigned k) {
    return static_cast<unsigned>(binomial(n, k).to_long());
}
}  // namespace

TEST_CASE("sym^1 is the operator itself") {
    Rng rng(20240813);
    for (int i = 0; i < 5; ++i) {
        Op L = testing::random_operator(rng, 2, 2);
        CHECK(sym_power(L, 1) == L);
    }
}

TEST_CASE("sym^2(D^2) = D^3") {
    auto L = to_operator(parse_expression("D^2"));
    auto S = sym_power(L, 2);
    CHECK(S.order() == 3);
    for (int i = 0; i < 3; ++i) CHECK(S.coeff(static_cast<std::size_t>(i)).is_zero());
}

TEST_CASE("sym^2(D^2 - 1) = D^3 - 4D") {
    auto L = to_operator(parse_expression("D^2 - 1"));
    auto S = sym_power(L, 2);
    auto expect = to_operator(parse_expression("D^3 - 4*D"));
    CHECK(S == expect);
}

TEST_CASE("sym_power order stays within the monomial-space bound") {
    Rng rng(20240814);
    for (int i = 0; i < 8; ++i) {
        unsigned n = 2, d = 2 + (i % 2);
        Op L = testing::random_operator(rng, n, 2);
        auto S = sym_power(L, d);
        CHECK(S.order() >= 1);
        CHECK(S.order() <= static_cast<int>(binom(n + d - 1, d)));
        CHECK(S.is_monic());
    }
}

TEST_CASE("sym_power annihilates all d-fold products of solutions") {
    Rng rng(20240815);
    const std::size_t N = 18;
    for (int i = 0; i < 10; ++i) {
        Op L = testing::random_operator(rng, 2, 2);
        if (!L.is_ordinary_point(BigRat(0))) continue;
        auto basis = L.series_solutions(BigRat(0), N);
        for (unsigned d : {2u, 3u}) {
            auto S = sym_power(L, d);
            // all degree-d products of the two basis solutions
            for (unsigned a = 0; a <= d; ++a) {
                TruncatedSeries prod = TruncatedSeries::constant(BigRat(1), N);
                for (unsigned k = 0; k < a; ++k) prod = prod * basis[0];
                for (unsigned k = a; k < d; ++k) prod = prod * basis[1];
                REQUIRE(S.apply(prod).is_zero_to_truncation());
            }
        }
    }
}
