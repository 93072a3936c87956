#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/constant_search.hpp"
#include "dalg/integrate.hpp"

namespace dalg {

// ---------------------------------------------------------------------------
// Poizat equation t'' = t' h(t)
// ---------------------------------------------------------------------------

/// Generic solutions exist iff h has no rational antiderivative; when one
/// exists, every solution satisfies the reduced first-order family.
struct PoizatReport {
    RationalFunction h;
    bool generic_exists = false;
    std::optional<RationalFunction> g;  // antiderivative when it exists
    std::string family_note;
};

inline PoizatReport poizat_classify(const RationalFunction& h, const std::string& var = "t") {
    if (h.is_zero()) throw std::invalid_argument("poizat_classify: h must be nonzero");
    PoizatReport rep;
    rep.h = h;
    auto anti = rational_antiderivative(h, var);
    rep.generic_exists = !anti.has_value();
    if (rep.generic_exists) {
        rep.family_note =
            "h has no rational antiderivative, so generic solutions exist and the solution set of "
            "any generic solution is infinite";
    } else {
        rep.g = *anti;
        rep.family_note = "h = g' for g = " + anti->to_string() +
                          "; every solution satisfies the reduced family " + var + "' = g(" + var +
                          ") - c for a constant c";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Solution-set verdicts
// ---------------------------------------------------------------------------

enum class SolutionSetStatus { Singleton, Finite, Infinite, Undecided };

inline std::string to_string(SolutionSetStatus s) {
    switch (s) {
        case SolutionSetStatus::Singleton: return "Singleton";
        case SolutionSetStatus::Finite: return "Finite";
        case SolutionSetStatus::Infinite: return "Infinite";
        default: return "Undecided";
    }
}

struct SolutionSetVerdict {
    SolutionSetStatus status = SolutionSetStatus::Undecided;
    std::string reason;
};

/// Reduced family t' = g(t) - c: the solution set of a nonconstant
/// solution is a singleton iff 1/(g-c) is an exact derivative or a scaled
/// logarithmic derivative.
struct ReducedFamilyReport {
    SolutionSetVerdict verdict;
    std::optional<RationalFunction> antiderivative;
    LogDerivVerdict scaled;
};

inline ReducedFamilyReport reduced_family_classify(const RationalFunction& g, const BigRat& c,
                                                   const std::string& var = "t") {
    RationalFunction shifted = g - RationalFunction::constant(c, g.vars());
    if (shifted.is_zero())
        throw std::invalid_argument("reduced_family_classify: g - c vanishes identically");
    RationalFunction F = shifted.inverse();

    ReducedFamilyReport rep;
    auto anti = rational_antiderivative(F, var);
    if (anti) {
        rep.antiderivative = *anti;
        rep.verdict.status = SolutionSetStatus::Singleton;
        rep.verdict.reason = "1/(g - c) is exact: u = " + anti->to_string();
        return rep;
    }
    rep.scaled = is_scaled_log_derivative(F, var);
    switch (rep.scaled.status) {
        case VerdictStatus::Yes:
            rep.verdict.status = SolutionSetStatus::Singleton;
            rep.verdict.reason = "1/(g - c) is a scaled logarithmic derivative (" +
                                 to_string(*rep.scaled.certificate) + ")";
            break;
        case VerdictStatus::No:
            rep.verdict.status = SolutionSetStatus::Infinite;
            rep.verdict.reason =
                "1/(g - c) is neither exact (nonzero logarithmic part) nor a scaled logarithmic "
                "derivative (" +
                to_string(*rep.scaled.certificate) + ")";
            break;
        default:
            rep.verdict.status = SolutionSetStatus::Undecided;
            rep.verdict.reason = "scaled-logarithmic-derivative test undecided: " + rep.scaled.detail;
            break;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Lotka-Volterra
// ---------------------------------------------------------------------------

struct LotkaVolterraReport {
    SolutionSetVerdict verdict;
    std::optional<ConstantWitness> witness;
    VectorFieldDerivation derivation{{"x1", "x2"},
                                     {RationalFunction::zero({"x1", "x2"}),
                                      RationalFunction::zero({"x1", "x2"})}};
};

/// x1' = a x1 + b x1 x2, x2' = g x2 + d x1 x2. For a != g the system has a
/// generic solution with infinite solution set; for a = g the Eigen
/// element d x1 - b x2 obstructs that and is returned as certificate.
inline LotkaVolterraReport lotka_volterra_classify(const BigRat& alpha, const BigRat& beta,
                                                   const BigRat& gamma, const BigRat& delta) {
    if (alpha.is_zero() || beta.is_zero() || gamma.is_zero() || delta.is_zero())
        throw std::invalid_argument("lotka_volterra_classify: all four parameters must be nonzero");
    std::vector<std::string> xy{"x1", "x2"};
    RationalFunction x1 = RationalFunction::variable("x1", xy);
    RationalFunction x2 = RationalFunction::variable("x2", xy);
    LotkaVolterraReport rep;
    rep.derivation = VectorFieldDerivation(
        xy, {alpha * x1 + beta * x1 * x2, gamma * x2 + delta * x1 * x2});

    if (alpha != gamma) {
        rep.verdict.status = SolutionSetStatus::Infinite;
        rep.verdict.reason =
            "alpha != gamma: a generic solution exists whose field carries no element with z' = 1 "
            "or z' = cz, so its solution set is infinite";
        return rep;
    }
    auto w = poly_constant_search(rep.derivation, 1);
    if (!w || w->kind != WitnessKind::Eigen)
        throw std::logic_error("lotka_volterra_classify: expected a degree-1 Eigen witness");
    if (*w->c != alpha) throw std::logic_error("lotka_volterra_classify: witness constant != alpha");
    rep.witness = *w;
    rep.verdict.status = SolutionSetStatus::Undecided;
    rep.verdict.reason = "alpha = gamma: the element z = " + w->z.to_string() +
                         " satisfies Dz = alpha z, so no generic solution avoids new constants; "
                         "finiteness is not decided by this criterion";
    return rep;
}

// ---------------------------------------------------------------------------
// Rosenlicht family t' + a_n t^n + ... + a_3 t^3 + a_2 t^2 = 0
// ---------------------------------------------------------------------------

struct RosenlichtFamilyReport {
    SolutionSetVerdict verdict;
    std::string a2_note;
    std::string a3_note;
};

/// Coefficients a_2..a_n. If neither a_2 nor a_3 has an antiderivative in
/// the base field, nonalgebraic solutions avoid every iterated strongly
/// normal extension and the solution set is infinite; otherwise the
/// criterion is silent. constants_base = true interprets the base field
/// as plain Q with the zero derivation.
inline RosenlichtFamilyReport rosenlicht_family_classify(const std::vector<RationalFunction>& coeffs,
                                                         bool constants_base = false,
                                                         const std::string& var = "t") {
    if (coeffs.size() < 2)
        throw std::invalid_argument(
            "rosenlicht_family_classify: need coefficients a_2..a_n with n >= 3");
    if (coeffs.back().is_zero())
        throw std::invalid_argument("rosenlicht_family_classify: leading coefficient a_n is zero");

    const RationalFunction& a2 = coeffs[0];
    const RationalFunction& a3 = coeffs[1];
    RosenlichtFamilyReport rep;

    bool a2_solvable, a3_solvable;
    if (constants_base) {
        for (const auto& a : coeffs)
            if (!a.is_constant())
                throw std::invalid_argument(
                    "rosenlicht_family_classify: constants base requires constant coefficients");
        // In (Q, d=0) only 0 has an antiderivative.
        a2_solvable = a2.is_zero();
        a3_solvable = a3.is_zero();
        rep.a2_note = a2_solvable ? "a_2 = 0 is a derivative in the constants"
                                  : "z' = " + a2.to_string() + " has no solution among constants";
        rep.a3_note = a3_solvable ? "a_3 = 0 is a derivative in the constants"
                                  : "z' = " + a3.to_string() + " has no solution among constants";
    } else {
        auto s2 = rational_antiderivative(a2, var);
        auto s3 = rational_antiderivative(a3, var);
        a2_solvable = s2.has_value();
        a3_solvable = s3.has_value();
        rep.a2_note = a2_solvable ? "a_2 has antiderivative " + s2->to_string()
                                  : "a_2 has no rational antiderivative";
        rep.a3_note = a3_solvable ? "a_3 has antiderivative " + s3->to_string()
                                  : "a_3 has no rational antiderivative";
    }

    if (!a2_solvable && !a3_solvable) {
        rep.verdict.status = SolutionSetStatus::Infinite;
        rep.verdict.reason =
            "no element of the base field has derivative a_2 or a_3, so nonalgebraic solutions lie "
            "in no iterated strongly normal extension and the solution set is infinite";
    } else {
        rep.verdict.status = SolutionSetStatus::Undecided;
        rep.verdict.reason =
            "an antiderivative exists for a_2 or a_3; the criterion is one-directional and decides "
            "nothing here";
    }
    return rep;
}

}  // namespace dalg
