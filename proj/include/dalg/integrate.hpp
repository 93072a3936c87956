#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dalg/rational_function.hpp"

namespace dalg {

inline std::string infer_variable(const RationalFunction& f, const std::string& fallback = "t") {
    auto s = f.num().support_vars();
    auto sd = f.den().support_vars();
    s.insert(sd.begin(), sd.end());
    if (s.empty()) return f.vars().empty() ? fallback : f.vars().front();
    if (s.size() == 1) return *s.begin();
    throw std::invalid_argument("expected a univariate rational function, got " + f.to_string());
}

// ---------------------------------------------------------------------------
// Hermite reduction
// ---------------------------------------------------------------------------

/// input = poly_antiderivative' + rational_part' + log_part, with the
/// log part proper over a squarefree denominator.
struct HermiteResult {
    RationalFunction rational_part;
    RationalFunction log_part;
    Poly poly_antiderivative;
};

inline HermiteResult hermite_reduce(const RationalFunction& f, const std::string& var) {
    std::vector<std::string> vars = f.vars();
    auto [poly, proper] = f.split_proper(var);

    // Antiderivative of the polynomial part, termwise.
    Poly poly_anti = Poly::zero(vars);
    {
        auto c = poly.dense_coeffs(var);
        std::vector<BigRat> ac(c.size() + 1, BigRat(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            ac[i + 1] = c[i] / BigRat(static_cast<long>(i + 1));
        poly_anti = Poly::from_dense(ac, var, vars);
    }

    RationalFunction rational_part = RationalFunction::zero(vars);
    RationalFunction cur = proper;

    for (;;) {
        if (cur.is_zero()) break;
        Poly den = cur.den();
        auto sf = squarefree_decompose(den, var);
        // Highest multiplicity factor still above 1.
        const SquarefreePart* top = nullptr;
        for (const auto& part : sf)
            if (part.multiplicity > 1 && (!top || part.multiplicity > top->multiplicity)) top = &part;
        if (!top) break;

        const unsigned m = top->multiplicity;
        Poly V = top->factor;
        Poly U = *div_exact(den, V.pow(m));
        Poly A = cur.num();

        // Solve B*(U*V') + C*V = A with deg B < deg V.
        Poly UV = U * V.derivative(var);
        auto [g, s, tt] = extended_gcd_univar(UV, V, var);
        if (g.degree() != 0) throw std::logic_error("hermite_reduce: squarefree factor not coprime");
        Poly B = divrem_univar(s * A, V, var).second;
        auto Cq = div_exact(A - B * UV, V);
        if (!Cq) throw std::logic_error("hermite_reduce: inexact cofactor");
        Poly C = *Cq;

        BigRat j(static_cast<long>(m - 1));
        rational_part = rational_part + RationalFunction(-B, j * V.pow(m - 1));
        cur = RationalFunction(B.derivative(var) * U * j.inverse() + C, U * V.pow(m - 1));
    }

    return {rational_part, cur, poly_anti};
}

/// Some(g) with g' = f exactly, iff the Hermite log part vanishes.
inline std::optional<RationalFunction> rational_antiderivative(const RationalFunction& f,
                                                               const std::string& var) {
    HermiteResult h = hermite_reduce(f, var);
    if (!h.log_part.is_zero()) return std::nullopt;
    return RationalFunction(h.poly_antiderivative) + h.rational_part;
}

// ---------------------------------------------------------------------------
// Rothstein-Trager residues
// ---------------------------------------------------------------------------

/// Residue data of a proper rational function with squarefree denominator:
/// the resultant res_var(den, num - z den') and its rational roots.
struct ResidueData {
    Poly rt_resultant;  // in the fresh variable, integer-primitive
    std::string fresh_var;
    std::vector<std::pair<BigRat, unsigned>> rational_residues;
    bool has_irrational_residues = false;
};

inline ResidueData residues(const RationalFunction& f, const std::string& var) {
    if (f.is_zero()) throw std::invalid_argument("residues: zero input");
    auto [poly, proper] = f.split_proper(var);
    if (!poly.is_zero())
        throw std::invalid_argument("residues: input not proper (polynomial part " +
                                    poly.to_string() + ")");
    Poly den = proper.den();
    if (gcd_univar(den, den.derivative(var), var).degree() != 0)
        throw std::invalid_argument("residues: denominator " + den.to_string() +
                                    " is not squarefree");

    const std::string z = var == "z" ? "zz" : "z";
    std::vector<std::string> vars2{var, z};
    std::sort(vars2.begin(), vars2.end());
    Poly dz = proper.den().embed(vars2);
    Poly nz = proper.num().embed(vars2);
    Poly zz = Poly::variable(z, vars2);
    Poly res = resultant(dz, nz - zz * dz.derivative(var), var);
    res = res.integer_primitive();

    ResidueData out;
    out.fresh_var = z;
    out.rt_resultant = res;
    out.rational_residues = rational_roots(res, z);
    unsigned found = 0;
    for (const auto& [r, m] : out.rational_residues) found += m;
    out.has_irrational_residues = static_cast<int>(found) < res.degree_in(z);
    return out;
}

// ---------------------------------------------------------------------------
// Logarithmic-derivative verdicts
// ---------------------------------------------------------------------------

enum class VerdictStatus { Yes, No, Undecided };

enum class CertTag {
    HermitePartNonzero,
    PolyPartNonzero,
    MixedResidues,
    IrrationalResidues,
    SymmetricPairRule,
    AllResiduesRational,
};

inline std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Yes: return "Yes";
        case VerdictStatus::No: return "No";
        default: return "Undecided";
    }
}

inline std::string to_string(CertTag t) {
    switch (t) {
        case CertTag::HermitePartNonzero: return "HermitePartNonzero";
        case CertTag::PolyPartNonzero: return "PolyPartNonzero";
        case CertTag::MixedResidues: return "MixedResidues";
        case CertTag::IrrationalResidues: return "IrrationalResidues";
        case CertTag::SymmetricPairRule: return "SymmetricPairRule";
        default: return "AllResiduesRational";
    }
}

/// u as a factor-exponent list (never expanded, so negative exponents
/// stay exact), plus the constant c of the scaled form u'/(c u).
struct FactorExponent {
    Poly base;
    long exponent;
};

struct LogDerivWitness {
    std::vector<FactorExponent> factors;
    BigRat c = BigRat(1);
    /// Set for symmetric-pair verdicts: residues are +-sqrt(b).
    std::optional<BigRat> symmetric_pair_b;

    RationalFunction recombine(const std::string& var) const {
        if (factors.empty())
            return RationalFunction::zero({var});
        RationalFunction acc = RationalFunction::zero(factors.front().base.vars());
        for (const auto& fe : factors) {
            RationalFunction term(fe.base.derivative(var) * BigRat(fe.exponent), fe.base);
            acc = acc + term;
        }
        return acc * c.inverse();
    }

    std::string factors_string() const {
        if (factors.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (const auto& fe : factors) {
            if (!first) os << " * ";
            first = false;
            os << "(" << fe.base.to_string() << ")";
            if (fe.exponent != 1) os << "^" << fe.exponent;
        }
        return os.str();
    }
};

struct LogDerivVerdict {
    VerdictStatus status = VerdictStatus::Undecided;
    std::optional<LogDerivWitness> witness;
    std::optional<CertTag> certificate;
    std::string detail;
};

namespace detail {

/// Rothstein-Trager basis for one rational residue value.
inline Poly residue_base(const RationalFunction& proper, const BigRat& r, const std::string& var) {
    Poly shifted = proper.num() - Poly::constant(r, proper.num().vars()) * proper.den().derivative(var);
    return gcd_univar(proper.den(), shifted, var);
}

}  // namespace detail

/// Decides f = u'/u for some u in Q(var): the poly and Hermite parts must
/// vanish and every residue must be an integer.
inline LogDerivVerdict is_log_derivative(const RationalFunction& f, const std::string& var) {
    LogDerivVerdict v;
    if (f.is_zero()) {
        v.status = VerdictStatus::Yes;
        v.witness = LogDerivWitness{};
        v.detail = "zero input; u = 1";
        return v;
    }
    auto [poly, proper] = f.split_proper(var);
    if (!poly.is_zero()) {
        v.status = VerdictStatus::No;
        v.certificate = CertTag::PolyPartNonzero;
        v.detail = "polynomial part " + poly.to_string();
        return v;
    }
    HermiteResult h = hermite_reduce(proper, var);
    if (!h.rational_part.is_zero()) {
        v.status = VerdictStatus::No;
        v.certificate = CertTag::HermitePartNonzero;
        v.detail = "Hermite rational part " + h.rational_part.to_string() +
                   " (denominator not squarefree)";
        return v;
    }
    ResidueData rd = residues(h.log_part, var);
    if (rd.has_irrational_residues && !rd.rational_residues.empty()) {
        v.status = VerdictStatus::No;
        v.certificate = CertTag::MixedResidues;
        v.detail = "rational and irrational residues coexist";
        return v;
    }
    if (rd.has_irrational_residues) {
        v.status = VerdictStatus::No;
        v.certificate = CertTag::IrrationalResidues;
        v.detail = "irrational residues cannot be integers";
        return v;
    }
    for (const auto& [r, m] : rd.rational_residues) {
        if (!r.is_integer()) {
            v.status = VerdictStatus::No;
            v.certificate = CertTag::AllResiduesRational;
            v.detail = "non-integer residue " + r.to_string();
            return v;
        }
    }
    LogDerivWitness w;
    for (const auto& [r, m] : rd.rational_residues)
        w.factors.push_back({detail::residue_base(h.log_part, r, var), r.to_long()});
    if (w.recombine(var) != f)
        throw std::logic_error("is_log_derivative: witness failed recombination");
    v.status = VerdictStatus::Yes;
    v.witness = std::move(w);
    v.certificate = CertTag::AllResiduesRational;
    return v;
}

/// Decides f = u'/(c u) with c a nonzero constant. Sound over Q; when all
/// residues are irrational and not a symmetric pair, returns Undecided
/// (the witness may exist over a larger constant field).
inline LogDerivVerdict is_scaled_log_derivative(const RationalFunction& f, const std::string& var) {
    LogDerivVerdict v;
    if (f.is_zero()) {
        v.status = VerdictStatus::Yes;
        v.witness = LogDerivWitness{};
        v.detail = "zero input; u = 1, c = 1";
        return v;
    }
    auto [poly, proper] = f.split_proper(var);
    if (!poly.is_zero()) {
        v.status = VerdictStatus::No;
        v.certificate = CertTag::PolyPartNonzero;
        v.detail = "polynomial part " + poly.to_string();
        return v;
    }
    HermiteResult h = hermite_reduce(proper, var);
    if (!h.rational_part.is_zero()) {
        v.status = VerdictStatus::No;
        v.certificate = CertTag::HermitePartNonzero;
        v.detail = "Hermite rational part " + h.rational_part.to_string() +
                   " (denominator not squarefree)";
        return v;
    }
    ResidueData rd = residues(h.log_part, var);
    if (rd.has_irrational_residues && !rd.rational_residues.empty()) {
        v.status = VerdictStatus::No;
        v.certificate = CertTag::MixedResidues;
        v.detail = "rational and irrational residues coexist; their ratios cannot all be rational";
        return v;
    }
    if (!rd.has_irrational_residues) {
        // All residues rational: scale them to integers.
        mpz_class l(1);
        for (const auto& [r, m] : rd.rational_residues) {
            mpz_class t;
            mpz_lcm(t.get_mpz_t(), l.get_mpz_t(), r.den().get_mpz_t());
            l = t;
        }
        BigRat c = BigRat(l);
        LogDerivWitness w;
        w.c = c;
        for (const auto& [r, m] : rd.rational_residues)
            w.factors.push_back({detail::residue_base(h.log_part, r, var), (r * c).to_long()});
        if (w.recombine(var) != f)
            throw std::logic_error("is_scaled_log_derivative: witness failed recombination");
        v.status = VerdictStatus::Yes;
        v.witness = std::move(w);
        v.certificate = CertTag::AllResiduesRational;
        return v;
    }
    // Symmetric-pair rule: squarefree part of the resultant equal to z^2 - b.
    Poly s = squarefree_part(rd.rt_resultant, rd.fresh_var);
    if (s.degree_in(rd.fresh_var) == 2) {
        auto cs = s.dense_coeffs(rd.fresh_var);
        if (cs[1].is_zero() && !cs[0].is_zero()) {
            BigRat b = -cs[0];
            LogDerivWitness w;
            w.symmetric_pair_b = b;
            v.status = VerdictStatus::Yes;
            v.witness = std::move(w);
            v.certificate = CertTag::SymmetricPairRule;
            v.detail = "residues are +-sqrt(" + b.to_string() +
                       "); u is a conjugate factor ratio over that quadratic extension, c = 1/sqrt(" +
                       b.to_string() + ")";
            return v;
        }
    }
    v.status = VerdictStatus::Undecided;
    v.certificate = CertTag::IrrationalResidues;
    v.detail = "all residues irrational and not a symmetric pair; undecidable over rational constants";
    return v;
}

// ---------------------------------------------------------------------------
// Rosenlicht's new-constant criterion for x' = f(x)
// ---------------------------------------------------------------------------

enum class NewConstantKind { None, Exact, ScaledLog };

/// Combined verdict: new constants in k(x) exist iff 1/f is an exact
/// derivative or a scaled logarithmic derivative.
struct RosenlichtReport {
    VerdictStatus status = VerdictStatus::Undecided;
    NewConstantKind kind = NewConstantKind::None;
    std::optional<RationalFunction> antiderivative;  // exact branch witness
    LogDerivVerdict scaled;                          // scaled branch result
    std::string exact_obstruction;                   // why the exact branch failed
};

inline RosenlichtReport rosenlicht_new_constants(const RationalFunction& f, const std::string& var) {
    if (f.is_zero()) throw std::invalid_argument("rosenlicht_new_constants: zero field");
    RosenlichtReport rep;
    RationalFunction g = f.inverse();

    HermiteResult h = hermite_reduce(g, var);
    if (h.log_part.is_zero()) {
        rep.status = VerdictStatus::Yes;
        rep.kind = NewConstantKind::Exact;
        rep.antiderivative = RationalFunction(h.poly_antiderivative) + h.rational_part;
        RationalFunction check = rep.antiderivative->derivative(var);
        if (check != g) throw std::logic_error("rosenlicht: antiderivative failed verification");
        return rep;
    }
    {
        std::ostringstream os;
        os << "1/f has nonzero logarithmic part " << h.log_part.to_string()
           << ", so no rational antiderivative exists";
        Poly den = g.den();
        if (gcd_univar(den, den.derivative(var), var).degree() != 0)
            os << " (denominator not squarefree)";
        rep.exact_obstruction = os.str();
    }

    rep.scaled = is_scaled_log_derivative(g, var);
    if (rep.scaled.status == VerdictStatus::Yes) {
        rep.status = VerdictStatus::Yes;
        rep.kind = NewConstantKind::ScaledLog;
        return rep;
    }
    rep.status = rep.scaled.status;  // No with certificate, or Undecided
    return rep;
}

}  // namespace dalg
