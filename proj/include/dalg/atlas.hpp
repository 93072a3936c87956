#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dalg {

// ---------------------------------------------------------------------------
// Classical group arithmetic: dimensions, ranks, solvability tables
// ---------------------------------------------------------------------------

enum class GroupFamily { SL, SP, SO, G2, Gm, Ga, Product };

/// Named algebraic group, by family and rank. SL rank r is SL_{r+1},
/// SP rank m is SP_{2m}, SO rank r is the odd orthogonal group SO_{2r+1}.
struct GroupDescriptor {
    GroupFamily family;
    unsigned rank_ = 0;
    std::vector<GroupDescriptor> factors;

    static GroupDescriptor SL(unsigned rank) {
        if (rank == 0) throw std::invalid_argument("SL: rank must be positive");
        return {GroupFamily::SL, rank, {}};
    }
    static GroupDescriptor SL_n(unsigned n) {
        if (n < 2) throw std::invalid_argument("SL_n: n must be >= 2");
        return SL(n - 1);
    }
    static GroupDescriptor SP(unsigned rank) {
        if (rank == 0) throw std::invalid_argument("SP: rank must be positive");
        return {GroupFamily::SP, rank, {}};
    }
    static GroupDescriptor SO(unsigned rank) {
        if (rank == 0) throw std::invalid_argument("SO: rank must be positive");
        return {GroupFamily::SO, rank, {}};
    }
    static GroupDescriptor G2() { return {GroupFamily::G2, 2, {}}; }
    static GroupDescriptor Gm() { return {GroupFamily::Gm, 1, {}}; }
    static GroupDescriptor Ga() { return {GroupFamily::Ga, 0, {}}; }
    static GroupDescriptor product(std::vector<GroupDescriptor> fs) {
        GroupDescriptor g{GroupFamily::Product, 0, std::move(fs)};
        for (const auto& f : g.factors) g.rank_ += f.rank();
        return g;
    }

    unsigned rank() const { return rank_; }

    unsigned dimension() const {
        switch (family) {
            case GroupFamily::SL: return rank_ * (rank_ + 2);
            case GroupFamily::SP: return 2 * rank_ * rank_ + rank_;
            case GroupFamily::SO: return rank_ * (2 * rank_ + 1);
            case GroupFamily::G2: return 14;
            case GroupFamily::Gm: return 1;
            case GroupFamily::Ga: return 1;
            case GroupFamily::Product: {
                unsigned s = 0;
                for (const auto& f : factors) s += f.dimension();
                return s;
            }
        }
        throw std::invalid_argument("GroupDescriptor: unknown family");
    }

    std::string name() const {
        std::ostringstream os;
        switch (family) {
            case GroupFamily::SL: os << "SL" << rank_ + 1; break;
            case GroupFamily::SP: os << "SP" << 2 * rank_; break;
            case GroupFamily::SO: os << "SO" << 2 * rank_ + 1; break;
            case GroupFamily::G2: os << "G2"; break;
            case GroupFamily::Gm: os << "Gm"; break;
            case GroupFamily::Ga: os << "Ga"; break;
            case GroupFamily::Product: {
                for (std::size_t i = 0; i < factors.size(); ++i) {
                    if (i) os << " x ";
                    os << factors[i].name();
                }
                break;
            }
        }
        return os.str();
    }
};

inline unsigned dim_of(const GroupDescriptor& g) { return g.dimension(); }

/// r <= d <= r(r+2): the transcendence-degree window for irreducible
/// subfields under a semisimple classical Galois group of rank r.
inline bool rank_bound_check(unsigned r, unsigned d) {
    if (r < 1 || d < 1) throw std::invalid_argument("rank_bound_check: arguments must be positive");
    return r <= d && d <= r * (r + 2);
}

enum class BoundKind { d_plus, d_exact, d_plus_one };

inline std::string to_string(BoundKind k) {
    switch (k) {
        case BoundKind::d_plus: return "d_plus";
        case BoundKind::d_exact: return "d_exact";
        default: return "d_plus_one";
    }
}

/// Solvability classification for a solution of transcendence degree d,
/// with the candidate Galois groups of the enclosing Picard-Vessiot field.
struct SolvabilityVerdict {
    unsigned d = 0;
    BoundKind bound_kind = BoundKind::d_plus_one;
    std::vector<GroupDescriptor> candidate_groups;
    std::string citation;
};

inline SolvabilityVerdict solvability_bound(unsigned d) {
    if (d < 1) throw std::invalid_argument("solvability_bound: d must be positive");
    SolvabilityVerdict v;
    v.d = d;
    switch (d) {
        case 1:
            v.bound_kind = BoundKind::d_plus;
            v.candidate_groups = {GroupDescriptor::SL_n(2)};
            v.citation =
                "degree-1 case: liouvillian tower (order-1 operators, inhomogeneous parts allowed); "
                "the only parabolic-quotient candidate is SL2";
            break;
        case 2:
            v.bound_kind = BoundKind::d_exact;
            v.candidate_groups = {GroupDescriptor::SL_n(3)};
            v.citation = "codimension-2 maximal parabolic subgroups force a group isogenous to SL3";
            break;
        case 3:
            v.bound_kind = BoundKind::d_exact;
            v.candidate_groups = {GroupDescriptor::SL_n(3), GroupDescriptor::SL_n(4),
                                  GroupDescriptor::SP(2)};
            v.citation =
                "codimension-3 maximal parabolics: SL3, SL4 or SP4, all subgroups of GL4 and "
                "4-solvable";
            break;
        case 4:
            v.bound_kind = BoundKind::d_exact;
            v.candidate_groups = {GroupDescriptor::SL_n(3), GroupDescriptor::SL_n(4),
                                  GroupDescriptor::SP(2), GroupDescriptor::SL_n(5)};
            v.citation = "codimension-4 maximal parabolics: SL3, SL4, SP4 or SL5, all 5-solvable";
            break;
        default:
            v.bound_kind = BoundKind::d_plus_one;
            v.citation =
                "general bound only: an irreducible subfield of transcendence degree d is "
                "(d+1)-solvable; no candidate-group classification is encoded for d >= 5";
            break;
    }
    return v;
}

/// The exceptional-group obstruction: a Picard-Vessiot field with Galois
/// group G2 has a solution subfield of transcendence degree 6 that is not
/// 6-solvable, even though the rank window admits it.
struct G2Report {
    GroupDescriptor group = GroupDescriptor::G2();
    GroupDescriptor maximal_reductive_subgroup = GroupDescriptor::SL_n(3);
    unsigned dim_group = 0;
    unsigned dim_subgroup = 0;
    unsigned trdeg = 0;
    bool six_solvable = false;
    bool rank_bound_satisfied = false;
    std::string note;
};

inline G2Report g2_counterexample() {
    G2Report r;
    r.dim_group = dim_of(r.group);
    r.dim_subgroup = dim_of(r.maximal_reductive_subgroup);
    r.trdeg = r.dim_group - r.dim_subgroup;
    r.six_solvable = false;
    r.rank_bound_satisfied = rank_bound_check(r.group.rank(), r.trdeg);
    std::ostringstream os;
    os << r.group.name() << " has dimension " << r.dim_group << "; its maximal reductive subgroup "
       << r.maximal_reductive_subgroup.name() << " has dimension " << r.dim_subgroup
       << ", so the fixed field has transcendence degree " << r.trdeg
       << " and is not 6-solvable, although the rank window " << r.group.rank() << " <= " << r.trdeg
       << " <= " << r.group.rank() * (r.group.rank() + 2) << " holds";
    r.note = os.str();
    return r;
}

}  // namespace dalg
