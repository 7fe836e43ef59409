#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ortholab/block.hpp"
#include "ortholab/lattice.hpp"
#include "ortholab/random.hpp"

namespace ortholab {

inline constexpr double kRankTol = 1e-10;     // singular values at or below count as zero
inline constexpr double kClusterGap = 1e-8;   // eigenvalues closer than this are merged
inline constexpr double kIdentityTol = 1e-9;  // default tolerance for asserted identities

// `code` is one of not-Hermitian, cap-exceeded, precondition-violated,
// lambda-one, not-proper-subset, zero-element, join-not-one.
class MatError : public std::runtime_error {
public:
    MatError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code))
    {
    }
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// ------------------------------------------------------------ spectral calculus

struct SpectralDecomposition {
    std::vector<double> values;       // ascending, one per cluster
    std::vector<Element> projections; // pairwise orthogonal, summing to 1
};

SpectralDecomposition eig_hermitian(const Element& h);

// Finite union of intervals; each end may be open or closed and infinite.
struct RealSet {
    struct Interval {
        double lo, hi;
        bool lo_closed, hi_closed;
    };
    std::vector<Interval> parts;

    bool contains(double x) const;
    static RealSet point(double x) { return {{{x, x, true, true}}}; }
    static RealSet closed(double lo, double hi) { return {{{lo, hi, true, true}}}; }
    static RealSet open(double lo, double hi) { return {{{lo, hi, false, false}}}; }
    static RealSet left_open(double lo, double hi) { return {{{lo, hi, false, true}}}; }
    static RealSet at_least(double s) { return {{{s, HUGE_VAL, true, false}}}; }
    static RealSet above(double s) { return {{{s, HUGE_VAL, false, false}}}; }
    static RealSet at_most(double s) { return {{{-HUGE_VAL, s, false, true}}}; }
    RealSet operator|(const RealSet& o) const;
};

Element spectral_projection(const Element& h, const RealSet& S);
Element functional_calculus(const Element& h, const std::function<double(double)>& f);

// f_{r,s}: 0 below r, linear on [r, s], 1 above s; f_delta = f_{delta/2, delta}.
double ramp(double r, double s, double t);
std::function<double(double)> ramp_fn(double r, double s);
std::function<double(double)> f_delta(double delta);

// ------------------------------------------------------------ projections

Element range_projection(const Element& a);
Element projection_from_basis(const BlockAlgebra& alg, const std::vector<CMatrix>& bases);
std::vector<CMatrix> range_basis(const Element& a);  // orthonormal columns per block
std::vector<int> rank_vector(const Element& p);

Element proj_perp(const Element& p);
Element proj_meet(const Element& p, const Element& q);
Element proj_join(const Element& p, const Element& q);
bool proj_leq(const Element& p, const Element& q, double tol = 1e-8);
bool same_projection(const Element& p, const Element& q, double tol = 1e-8);
bool is_projection(const Element& p, double tol = 1e-10);
bool is_zero(const Element& a, double tol = 1e-10);
double min_eigenvalue(const Element& h);

// ------------------------------------------------------------ annihilators

// The corner pAp of a support projection p.
struct Annihilator {
    Element support;
    bool operator==(const Annihilator& o) const { return same_projection(support, o.support); }
};

Annihilator corner(const Element& p);
// T^perp = (1 - q) A (1 - q) with q the join of the [t*].
Annihilator annihilator(const std::vector<Element>& T);
// ({a}^perp perp, {a*}^perp perp), with supports ([a*], [a]).
std::pair<Annihilator, Annihilator> biannihilator(const Element& a);

struct AnnihilatorLattice {
    Ortholattice lattice;
    std::vector<Element> supports;  // indexed by lattice element
};

// Closes the supports under meet, join and the complement relative to
// `unit` (default 1). Throws cap-exceeded past `cap` elements.
AnnihilatorLattice generate_annihilator_lattice(const std::vector<Annihilator>& gens, int cap,
                                                const std::optional<Element>& unit = std::nullopt);

// ------------------------------------------------------------ equivalence

struct Equivalence {
    bool holds = false;
    std::optional<Element> witness;  // [w*] = p_B and [w] = p_C
};

Equivalence equivalent(const Annihilator& B, const Annihilator& C);
// B is equivalent to a sub-annihilator of C.
Equivalence subequivalent(const Annihilator& B, const Annihilator& C);

struct Comparison {
    Element central;     // sum of block units where rank(p_B) <= rank(p_C)
    bool lower = false;  // B cap D below C cap D
    bool upper = false;  // C cap D^perp below B cap D^perp
};
Comparison compare(const Annihilator& B, const Annihilator& C);

struct CsbResult {
    Element fixed_point;
    int steps = 0;
    Element witness;
    bool verified = false;
};
// B = {b}^perp perp, C = {c}^perp perp; requires [b] <= p_C and [c] <= p_B.
CsbResult csb_witness(const Element& b, const Element& c);
Element csb_step(const Element& pB, const Element& pC, const Element& b, const Element& c, const Element& pD);

// (Ba)^perp perp, whose support is [a* p_B].
Annihilator translate(const Annihilator& B, const Element& a);

double orthonorm(const Annihilator& B, const Annihilator& C);

// ------------------------------------------------------------ projection geometry

// Eigenvalues of pqp together with 0.
std::vector<double> orthospectrum(const Element& p, const Element& q);
// r = (pqp)_{(0, lambda]} with lambda between theta and the next eigenvalue.
Element orthospectrum_witness(const Element& p, const Element& q, double theta);
// Norm of the product of the two Sasaki images; 0 when the side condition holds.
double orthospectrum_side_defect(const Element& p, const Element& q, const Element& r);

struct GeometryReport {
    double pq_sq = 0, pq_perp_sq = 0, pythagoras = 0;
    bool pythagoras_ok = false, pythagoras_singleton = false, singleton_spectrum = false;
    double distance = 0, corner_distance = 0;
    bool distance_ok = false;
    Element nearest;
    double nearest_sq = 0;
    bool nearest_ok = false, lower_bound_ok = false;
    bool sasaki_ok = false;
    bool all_ok() const
    {
        return pythagoras_ok && pythagoras_singleton && distance_ok && nearest_ok && lower_bound_ok && sasaki_ok;
    }
};
GeometryReport projection_geometry(const Element& p, const Element& q, double tol = kIdentityTol);

// ------------------------------------------------------------ separation

enum class LemmaKind { Lem1, Cor1, Lem2, Lem3 };
const char* lemma_name(LemmaKind k);

double separation_delta(double eps, double lambda, LemmaKind kind);

struct LemmaInstance {
    Element b, c, q;
    Element p;  // used by Lem3 only
};
struct LemmaReport {
    bool hypotheses_met = false;
    std::string failed_hypothesis;
    double delta = 0, lhs = 0, bound = 0;
    bool holds = false;
    double margin() const { return bound - lhs; }
};
LemmaReport check_separation_lemma(LemmaKind kind, const LemmaInstance& inst, double eps, double lambda);

struct SeparationResult {
    Annihilator D;
    double lambda = 0, delta = 0, mu = 0;
    double bd = 0, cd_sq = 0;
    bool ok = false;
};
SeparationResult separate(const Annihilator& B, const Annihilator& C, double eps);
SeparationResult epsilon_separate(const Annihilator& B, const Annihilator& C, double eps);

double gamma(const Element& b);
double sep(const Annihilator& B);

// ------------------------------------------------------------ homogeneity maps

class HomogeneityMaps {
public:
    explicit HomogeneityMaps(std::vector<Element> ps);
    Element F(const std::vector<Element>& qs) const;
    Element G(const std::vector<Element>& qs) const;
    const std::vector<double>& deltas() const { return deltas_; }
    int size() const { return static_cast<int>(ps_.size()); }

private:
    std::pair<Element, Element> eval(const std::vector<Element>& qs, int n) const;
    std::vector<Element> ps_;
    std::vector<double> deltas_;  // deltas_[k] for the level with k + 1 arguments
};

// ------------------------------------------------------------ algebra structure

struct AlgebraStructure {
    std::vector<Element> central_projections;  // sums of block units, in bitmask order
    std::vector<int> orders;                   // block sizes
};
AlgebraStructure algebra_structure(const BlockAlgebra& A);
bool is_central(const Element& p);
bool is_abelian(const Annihilator& B);
// Lattice of annihilators below B, generated by basis lines and their sums.
AnnihilatorLattice corner_lattice(const Annihilator& B, int cap);

// ------------------------------------------------------------ random elements

Element random_element(Rng& rng, const BlockAlgebra& A);
Element random_hermitian(Rng& rng, const BlockAlgebra& A);
Element random_positive_contraction(Rng& rng, const BlockAlgebra& A);
Element random_unitary(Rng& rng, const BlockAlgebra& A);
Element random_projection(Rng& rng, const BlockAlgebra& A);
Element random_projection_with_ranks(Rng& rng, const BlockAlgebra& A, const std::vector<int>& ranks);

// Rank-one projection onto (sin t, cos t) in M_2.
Element p_theta(double theta);

}  // namespace ortholab
