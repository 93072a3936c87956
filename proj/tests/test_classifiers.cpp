#include <catch2/catch_amalgamated.hpp>

#include "dalg/classifiers.hpp"
#include "test_support.hpp"

using namespace dalg;
using dalg::testing::Rng;

namespace {
const std::vector<std::string> TV{"t"};
Poly T() { return Poly::variable("t", TV); }
Poly C(long n, long d = 1) { return Poly::constant(BigRat(n, d), TV); }
}  // namespace

TEST_CASE("poizat_classify on the worked examples") {
    auto r1 = poizat_classify(RationalFunction(Poly::one(TV), T()), "t");
    CHECK(r1.generic_exists);
    CHECK_FALSE(r1.g);

    auto r2 = poizat_classify(RationalFunction(BigRat(2) * T()), "t");
    CHECK_FALSE(r2.generic_exists);
    REQUIRE(r2.g);
    CHECK(*r2.g == RationalFunction(T().pow(2)));

    auto r3 = poizat_classify(RationalFunction(BigRat(3) * T().pow(2)), "t");
    CHECK_FALSE(r3.generic_exists);
    CHECK(*r3.g == RationalFunction(T().pow(3)));

    CHECK_THROWS_AS(poizat_classify(RationalFunction::zero(TV), "t"), std::invalid_argument);
}

TEST_CASE("statement (A) is a literal equivalence") {
    Rng rng(20240825);
    for (int i = 0; i < 200; ++i) {
        RationalFunction h = testing::random_nonzero_rf(rng, "t", 3);
        auto rep = poizat_classify(h, "t");
        REQUIRE(rep.generic_exists == !rational_antiderivative(h, "t").has_value());
        if (rep.g) REQUIRE(rep.g->derivative("t") == h);
    }
}

TEST_CASE("reduced family on the worked examples") {
    // g = t^3, c = 0: 1/t^3 is exact
    auto v1 = reduced_family_classify(RationalFunction(T().pow(3)), BigRat(0), "t");
    CHECK(v1.verdict.status == SolutionSetStatus::Singleton);
    REQUIRE(v1.antiderivative);

    // g = t^3, c = 1: mixed residues on both branches
    auto v2 = reduced_family_classify(RationalFunction(T().pow(3)), BigRat(1), "t");
    CHECK(v2.verdict.status == SolutionSetStatus::Infinite);
    CHECK(*v2.scaled.certificate == CertTag::MixedResidues);

    // g = t^2, c = -1: symmetric pair on 1/(t^2+1)
    auto v3 = reduced_family_classify(RationalFunction(T().pow(2)), BigRat(-1), "t");
    CHECK(v3.verdict.status == SolutionSetStatus::Singleton);
    CHECK(*v3.scaled.certificate == CertTag::SymmetricPairRule);
    CHECK(*v3.scaled.witness->symmetric_pair_b == BigRat(-1, 4));

    CHECK_THROWS_AS(reduced_family_classify(RationalFunction::constant(BigRat(5), TV), BigRat(5), "t"),
                    std::invalid_argument);
}

TEST_CASE("reduced family agrees with the Rosenlicht criterion on t' = g - c") {
    Rng rng(20240826);
    int done = 0;
    for (int i = 0; done < 60 && i < 500; ++i) {
        RationalFunction g = testing::random_rational_function(rng, "t", 3);
        BigRat c = testing::random_rational(rng);
        RationalFunction f = g - RationalFunction::constant(c, TV);
        if (f.is_zero()) continue;
        ++done;
        auto fam = reduced_family_classify(g, c, "t");
        auto ros = rosenlicht_new_constants(f, "t");
        switch (fam.verdict.status) {
            case SolutionSetStatus::Singleton:
                REQUIRE(ros.status == VerdictStatus::Yes);
                break;
            case SolutionSetStatus::Infinite:
                REQUIRE(ros.status == VerdictStatus::No);
                break;
            case SolutionSetStatus::Undecided:
                REQUIRE(ros.status == VerdictStatus::Undecided);
                break;
            default:
                FAIL("Finite is never emitted");
        }
    }
    REQUIRE(done == 60);
}

TEST_CASE("lotka_volterra_classify matches the alpha/gamma dichotomy") {
    auto inf = lotka_volterra_classify(BigRat(1), BigRat(1), BigRat(2), BigRat(1));
    CHECK(inf.verdict.status == SolutionSetStatus::Infinite);
    CHECK_FALSE(inf.witness);

    auto w1 = lotka_volterra_classify(BigRat(1), BigRat(2), BigRat(1), BigRat(3));
    REQUIRE(w1.witness);
    CHECK(w1.witness->z == BigRat(3) * RationalFunction::variable("x1", {"x1", "x2"}) -
                               BigRat(2) * RationalFunction::variable("x2", {"x1", "x2"}));
    CHECK(*w1.witness->c == BigRat(1));

    auto w2 = lotka_volterra_classify(BigRat(1), BigRat(1), BigRat(1), BigRat(1));
    REQUIRE(w2.witness);
    CHECK(w2.witness->z == RationalFunction::variable("x1", {"x1", "x2"}) -
                               RationalFunction::variable("x2", {"x1", "x2"}));

    CHECK_THROWS_AS(lotka_volterra_classify(BigRat(0), BigRat(1), BigRat(1), BigRat(1)),
                    std::invalid_argument);
}

TEST_CASE("lotka-volterra witnesses satisfy Dz = alpha z exactly") {
    Rng rng(20240827);
    for (int i = 0; i < 20; ++i) {
        BigRat a = testing::random_nonzero_rational(rng);
        BigRat b = testing::random_nonzero_rational(rng);
        BigRat d = testing::random_nonzero_rational(rng);
        auto rep = lotka_volterra_classify(a, b, a, d);
        REQUIRE(rep.witness);
        REQUIRE(apply_derivation(rep.derivation, rep.witness->z) == a * rep.witness->z);
    }
}

TEST_CASE("rosenlicht family classifier on the worked examples") {
    // (a2, a3, a4) = (t, t, 1): both have antiderivatives
    std::vector<RationalFunction> tt{RationalFunction(T()), RationalFunction(T()),
                                     RationalFunction::one(TV)};
    auto v1 = rosenlicht_family_classify(tt, false, "t");
    CHECK(v1.verdict.status == SolutionSetStatus::Undecided);

    // (a2, a3) = (1/t, 1/t), a4 = 1: no rational antiderivatives
    RationalFunction inv_t(Poly::one(TV), T());
    auto v2 = rosenlicht_family_classify({inv_t, inv_t, RationalFunction::one(TV)}, false, "t");
    CHECK(v2.verdict.status == SolutionSetStatus::Infinite);

    // constants base: a2 = -1, a3 = 1: z' = -1 unsolvable among constants
    auto v3 = rosenlicht_family_classify(
        {RationalFunction::constant(BigRat(-1), TV), RationalFunction::constant(BigRat(1), TV)},
        true, "t");
    CHECK(v3.verdict.status == SolutionSetStatus::Infinite);

    CHECK_THROWS_AS(rosenlicht_family_classify({inv_t}, false, "t"), std::invalid_argument);
    CHECK_THROWS_AS(rosenlicht_family_classify({inv_t, inv_t, RationalFunction::zero(TV)}, false, "t"),
                    std::invalid_argument);
}
