#pragma once

#include <boost/rational.hpp>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ortholab/lattice.hpp"
#include "ortholab/matalg.hpp"

namespace ortholab {

using Rational = boost::rational<long long>;

// `code` is one of inputs-not-regular, cap-exceeded, bad-complex.
class CellError : public std::runtime_error {
public:
    CellError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code))
    {
    }
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Subdivision 0 < x_1 < ... < x_k < 1 of [0,1]. Cells are, in order,
// {0}, (0,x_1), {x_1}, ..., {x_k}, (x_k,1), {1}: even indices are points,
// odd indices open intervals.
struct CellComplex {
    std::vector<Rational> breakpoints;

    CellComplex() = default;
    explicit CellComplex(std::vector<Rational> bps);
    int cell_count() const { return 2 * static_cast<int>(breakpoints.size()) + 3; }
    static bool is_point(int cell) { return cell % 2 == 0; }
    Rational point(int cell) const;             // location of a point cell
    int locate(const Rational& x) const;        // cell containing x
    int interval_containing(const Rational& lo, const Rational& hi) const;
    std::string describe(int cell) const;
    bool operator==(const CellComplex&) const = default;
};

CellComplex refine(const CellComplex& a, const CellComplex& b);

// Piecewise-constant map [0,1] -> M_n, one value per cell.
struct CellFunction {
    int n = 1;
    CellComplex complex;
    std::vector<Element> values;

    CellFunction() = default;
    CellFunction(int size, CellComplex cx, std::vector<Element> vals);
    static CellFunction constant(const Element& value);
    // Values given per interval and per breakpoint, ends included:
    // intervals[i] on (x_i, x_{i+1}), points[i] at x_i with x_0 = 0, x_{k+1} = 1.
    static CellFunction from_pieces(int size, const std::vector<Rational>& bps, const std::vector<Element>& points,
                                    const std::vector<Element>& intervals);

    const BlockAlgebra& algebra() const { return values.front().algebra(); }
    int cell_count() const { return complex.cell_count(); }
    CellFunction on(const CellComplex& finer) const;  // same function on a refinement
    bool is_projection_valued() const;
    std::vector<int> dims() const;
    bool operator==(const CellFunction& o) const;  // cellwise, after common refinement
};

// Pointwise operations, after common refinement.
CellFunction pointwise(const CellFunction& a, const CellFunction& b,
                       const std::function<Element(const Element&, const Element&)>& f);
CellFunction pointwise_product(const CellFunction& a, const CellFunction& b);
CellFunction pointwise_perp(const CellFunction& p);
CellFunction pointwise_meet(const CellFunction& p, const CellFunction& q);
CellFunction pointwise_join(const CellFunction& p, const CellFunction& q);
bool pointwise_leq(const CellFunction& p, const CellFunction& q);
CellFunction range(const CellFunction& f);

struct Semicontinuity {
    bool lsc = true, usc = true;
    std::vector<bool> lsc_at, usc_at;
    std::vector<bool> continuity;  // C_p as a cell mask
    bool open_dense = true;
};
Semicontinuity semicontinuity(const CellFunction& p);

CellFunction interior(const CellFunction& p);
CellFunction closure(const CellFunction& p);
CellFunction regularize(const CellFunction& p);
bool is_regular(const CellFunction& p);

// Equal on a set with dense interior / on a dense set. For piecewise-constant
// maps both reduce to equality on every interval cell.
bool od_equal(const CellFunction& a, const CellFunction& b);
bool d_equal(const CellFunction& a, const CellFunction& b);

struct ClosureEquivalence {
    bool closures_equal = false;       // closure(p) = closure(q)
    bool agree_on_continuity = false;  // C_p cap C_q inside {p = q}
    bool od = false, d = false;
    bool consistent() const
    {
        return closures_equal == agree_on_continuity && agree_on_continuity == od && od == d;
    }
};
ClosureEquivalence closure_equivalence(const CellFunction& p, const CellFunction& q);

// Operations in the lattice of regular maps; inputs must be regular.
CellFunction reg_perp(const CellFunction& p);
CellFunction reg_join(const CellFunction& p, const CellFunction& q);
CellFunction reg_meet(const CellFunction& p, const CellFunction& q);

bool reg_commutes(const CellFunction& p, const CellFunction& q);        // pq and qp agree on intervals
bool reg_lattice_commutes(const CellFunction& p, const CellFunction& q); // p = (p ^ q) v (p ^ q')
bool cell_equivalent(const CellFunction& p, const CellFunction& q);
// Regularized indicator of the cells where p is nonzero.
CellFunction cell_central_cover(const CellFunction& p);

struct CellLattice {
    Ortholattice lattice;
    std::vector<CellFunction> elements;  // indexed by lattice element
};
CellLattice export_lattice(const std::vector<CellFunction>& gens, int cap);

// Projection-valued map in M_n on random breakpoints k/denominator, values
// drawn from {0, 1} and a few random projections.
CellFunction random_projection_map(Rng& rng, int n, int denominator = 6);

// Fixture pairs in M_2, breakpoint 1/2.
struct CellPair {
    CellFunction p, q;
};
// p < q with closure(p) and q not commuting at 1/2.
CellPair closure_noncommuting_pair();
// pq != qp at 1/2, yet p, closure(q) commute and pq, qp agree on intervals.
CellPair od_commuting_pair();
// p < q regular with a zero value of p between P_0 and P_{pi/4}.
CellPair rigid_commuting_pair();

}  // namespace ortholab
