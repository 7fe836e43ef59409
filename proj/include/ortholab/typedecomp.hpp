#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ortholab/lattice.hpp"

namespace ortholab {

// Raised for unmet preconditions; `code` is host-not-separative or
// T-not-order-dense.
class TypeError : public std::runtime_error {
public:
    TypeError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code))
    {
    }
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Centre and central covers, computed once per lattice.
struct CentreData {
    ElemSet centre = 0;
    std::vector<Elem> cover;
};
CentreData centre_data(const Ortholattice& L);

inline bool very_orthogonal(const Ortholattice& L, const CentreData& C, Elem p, Elem q)
{
    return L.orthogonal(C.cover[p], C.cover[q]);
}

inline constexpr int kDefaultDepth = 3;

struct TypeIdeal {
    ElemSet members = 0;
    int verified_depth = 0;
};

struct IdealCheck {
    bool holds = true;
    std::vector<Elem> witness;  // violating very-orthogonal S; empty S means 0 is missing
    bool empty_set_violation = false;
};

// S ⊆ T <=> ⋁S ∈ T over pairwise very-orthogonal S of nonzero elements with
// 2 <= |S| <= k, then the empty family (0 ∈ T unless T is empty).
IdealCheck is_type_ideal(const Ortholattice& L, ElemSet T, int k);

// Joins of pairwise very-orthogonal subsets of T with at most kappa members.
TypeIdeal power_ideal(const Ortholattice& L, ElemSet T, int kappa);

struct CentralPair {
    Elem p = 0;  // ⋁(T ∩ centre)
    Elem q = 0;  // ⋁ c(T)
};

CentralPair decompose(const Ortholattice& L, ElemSet T);

// The four postconditions, checked for any candidate central elements.
bool lower_part_conditions(const Ortholattice& L, const CentreData& C, ElemSet T, Elem p);
bool upper_part_conditions(const Ortholattice& L, const CentreData& C, ElemSet T, Elem q);

struct HomogeneousPart {
    int order = 0;
    Elem part = 0;
    std::vector<Elem> family;  // orthogonal, inside T, each with central cover `part`
};

// Central parts of 1 with their orthogonal witness families, taken over the
// very-orthogonal join closure of T.
std::vector<HomogeneousPart> homogeneous_parts(const Ortholattice& L, ElemSet T);

// Elements that are the join of `order` orthogonal members of T sharing
// their central cover (0 counts for every order).
bool is_homogeneous(const Ortholattice& L, const CentreData& C, ElemSet T, Elem p, int order,
                    std::vector<Elem>* family = nullptr);

enum class TypeClass { D, M, O, EQ };
enum class TypeMode { Full, Relative };

ElemSet type_class_ideal(const Ortholattice& L, TypeClass cls, TypeMode mode);
const char* type_class_name(TypeClass cls);

struct Decomposition {
    Elem p_I = 0, p_II = 0, p_III = 0, p_IV = 0;
    Elem p_I_rel = 0, p_II_rel = 0, p_III_rel = 0, p_IV_rel = 0;
    std::vector<std::pair<int, Elem>> p_I_n;
    Elem p_II_1 = 0;
};

Decomposition type_profile(const Ortholattice& L);

// Largest orthogonal family of nonzero elements.
int max_orthogonal_family(const Ortholattice& L);

struct RelationCheck {
    bool holds = true;
    std::vector<std::pair<Elem, Elem>> witness;  // violating family of pairs
};

bool is_symmetric(const Relation& R);
bool is_reflexive(const Relation& R);
bool is_proper(const Ortholattice& L, const Relation& R);

// (∀α q_α R r_α) <=> ⋁q_α R ⋁r_α over families of at most k pairs whose
// joins q_α ∨ r_α are pairwise very orthogonal.
RelationCheck is_type_relation(const Ortholattice& L, const Relation& R, int k);

std::pair<ElemSet, ElemSet> finiteness_ideals(const Ortholattice& L, const Relation& R);

// c(p) = c(q), the weakest symmetric proper type relation.
Relation central_cover_relation(const Ortholattice& L);

bool precsim(const Ortholattice& L, const Relation& R, Elem p, Elem q);
bool precsim_rel(const Ortholattice& L, const Relation& R, Elem p, Elem q);

struct ComparisonReport {
    bool holds = true;         // generalized comparison for ≾_rel
    bool simgc_holds = true;   // the u, v characterisation
    bool forms_agree = true;   // pointwise agreement of the two
    std::optional<std::pair<Elem, Elem>> failing_pair;
    std::vector<std::pair<std::pair<Elem, Elem>, Elem>> central_witness;  // (q, r) -> p
};

ComparisonReport generalized_comparison_check(const Ortholattice& L, const Relation& R);

bool relative_centre_property(const Ortholattice& L);

struct BooleanTheoremReport {
    bool preconditions_met = false;
    std::string failed_precondition;
    bool conclusion1 = false, conclusion2 = false, conclusion3 = false;
};

BooleanTheoremReport boolean_theorem_check(const Ortholattice& L, const Relation& R, int depth = kDefaultDepth);

}  // namespace ortholab
