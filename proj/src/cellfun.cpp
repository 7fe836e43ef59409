#include "ortholab/cellfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ortholab {

namespace {

std::string rational_text(const Rational& r)
{
    std::ostringstream s;
    s << r.numerator();
    if (r.denominator() != 1) s << '/' << r.denominator();
    return s.str();
}

// Mixed rational/integer equality recurses forever in this boost under C++20,
// so comparisons always go through Rational on both sides.
const Rational kZero(0), kOne(1);

bool same_value(const Element& a, const Element& b) { return (a - b).norm() <= 1e-8; }

// Neighbouring interval cells of a point cell (one-sided at the ends).
std::vector<int> neighbours(const CellFunction& f, int cell)
{
    std::vector<int> out;
    if (cell > 0) out.push_back(cell - 1);
    if (cell + 1 < f.cell_count()) out.push_back(cell + 1);
    return out;
}

void require_regular(const CellFunction& p)
{
    if (!p.is_projection_valued() || !is_regular(p)) throw CellError("inputs-not-regular", "expected a regular map");
}

std::pair<CellFunction, CellFunction> common(const CellFunction& a, const CellFunction& b)
{
    if (a.n != b.n) throw std::invalid_argument("maps into different matrix sizes");
    CellComplex cx = refine(a.complex, b.complex);
    return {a.on(cx), b.on(cx)};
}

}  // namespace

// ------------------------------------------------------------ complexes

CellComplex::CellComplex(std::vector<Rational> bps) : breakpoints(std::move(bps))
{
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] <= kZero || breakpoints[i] >= kOne) throw CellError("bad-complex", "breakpoints must lie in (0,1)");
        if (i > 0 && breakpoints[i] <= breakpoints[i - 1])
            throw CellError("bad-complex", "breakpoints must increase strictly");
    }
}

Rational CellComplex::point(int cell) const
{
    if (!is_point(cell)) throw std::invalid_argument("not a point cell");
    const int i = cell / 2;
    if (i == 0) return kZero;
    if (i == static_cast<int>(breakpoints.size()) + 1) return kOne;
    return breakpoints[i - 1];
}

int CellComplex::locate(const Rational& x) const
{
    if (x < kZero || x > kOne) throw std::invalid_argument("point outside [0,1]");
    if (x == kZero) return 0;
    if (x == kOne) return cell_count() - 1;
    auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
    const int i = static_cast<int>(it - breakpoints.begin());
    if (it != breakpoints.end() && *it == x) return 2 * (i + 1);
    return 2 * i + 1;
}

int CellComplex::interval_containing(const Rational& lo, const Rational& hi) const
{
    return locate((lo + hi) / Rational(2));
}

std::string CellComplex::describe(int cell) const
{
    if (is_point(cell)) return "{" + rational_text(point(cell)) + "}";
    return "(" + rational_text(point(cell - 1)) + "," + rational_text(point(cell + 1)) + ")";
}

CellComplex refine(const CellComplex& a, const CellComplex& b)
{
    std::vector<Rational> all;
    std::set_union(a.breakpoints.begin(), a.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end(),
                   std::back_inserter(all));
    return CellComplex(all);
}

// ------------------------------------------------------------ functions

CellFunction::CellFunction(int size, CellComplex cx, std::vector<Element> vals)
    : n(size), complex(std::move(cx)), values(std::move(vals))
{
    if (static_cast<int>(values.size()) != complex.cell_count()) throw CellError("bad-complex", "one value per cell");
    for (const Element& v : values)
        if (!(v.algebra() == BlockAlgebra({n}))) throw CellError("bad-complex", "values must lie in M_n");
}

CellFunction CellFunction::constant(const Element& value)
{
    if (value.count() != 1) throw std::invalid_argument("values must lie in a single matrix block");
    return CellFunction(value.algebra().blocks[0], CellComplex(), std::vector<Element>(3, value));
}

CellFunction CellFunction::from_pieces(int size, const std::vector<Rational>& bps, const std::vector<Element>& points,
                                       const std::vector<Element>& intervals)
{
    if (points.size() != bps.size() + 2 || intervals.size() != bps.size() + 1)
        throw CellError("bad-complex", "piece counts do not match the breakpoints");
    std::vector<Element> vals;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        vals.push_back(points[i]);
        vals.push_back(intervals[i]);
    }
    vals.push_back(points.back());
    return CellFunction(size, CellComplex(bps), std::move(vals));
}

CellFunction CellFunction::on(const CellComplex& finer) const
{
    std::vector<Element> vals;
    for (int c = 0; c < finer.cell_count(); ++c) {
        int old = CellComplex::is_point(c) ? complex.locate(finer.point(c))
                                           : complex.interval_containing(finer.point(c - 1), finer.point(c + 1));
        vals.push_back(values[old]);
    }
    return CellFunction(n, finer, std::move(vals));
}

bool CellFunction::is_projection_valued() const
{
    return std::all_of(values.begin(), values.end(), [](const Element& v) { return is_projection(v, 1e-9); });
}

std::vector<int> CellFunction::dims() const
{
    std::vector<int> out;
    for (const Element& v : values) out.push_back(rank_vector(v)[0]);
    return out;
}

bool CellFunction::operator==(const CellFunction& o) const
{
    auto [a, b] = common(*this, o);
    for (int c = 0; c < a.cell_count(); ++c)
        if (!same_value(a.values[c], b.values[c])) return false;
    return true;
}

CellFunction pointwise(const CellFunction& a, const CellFunction& b,
                       const std::function<Element(const Element&, const Element&)>& f)
{
    auto [x, y] = common(a, b);
    for (int c = 0; c < x.cell_count(); ++c) x.values[c] = f(x.values[c], y.values[c]);
    return x;
}

CellFunction pointwise_product(const CellFunction& a, const CellFunction& b)
{
    return pointwise(a, b, [](const Element& x, const Element& y) { return x * y; });
}

CellFunction pointwise_perp(const CellFunction& p)
{
    CellFunction out = p;
    for (Element& v : out.values) v = proj_perp(v);
    return out;
}

CellFunction pointwise_meet(const CellFunction& p, const CellFunction& q) { return pointwise(p, q, proj_meet); }

CellFunction pointwise_join(const CellFunction& p, const CellFunction& q) { return pointwise(p, q, proj_join); }

bool pointwise_leq(const CellFunction& p, const CellFunction& q)
{
    auto [a, b] = common(p, q);
    for (int c = 0; c < a.cell_count(); ++c)
        if (!proj_leq(a.values[c], b.values[c])) return false;
    return true;
}

CellFunction range(const CellFunction& f)
{
    CellFunction out = f;
    for (Element& v : out.values) v = range_projection(v);
    return out;
}

// ------------------------------------------------------------ topology

Semicontinuity semicontinuity(const CellFunction& p)
{
    Semicontinuity s;
    const int m = p.cell_count();
    s.lsc_at.assign(m, true);
    s.usc_at.assign(m, true);
    s.continuity.assign(m, true);
    for (int c = 0; c < m; c += 2) {
        const Element& here = p.values[c];
        for (int nb : neighbours(p, c)) {
            if (!proj_leq(here, p.values[nb])) s.lsc_at[c] = false;
            if (!proj_leq(p.values[nb], here)) s.usc_at[c] = false;
            if (!same_value(here, p.values[nb])) s.continuity[c] = false;
        }
        s.lsc = s.lsc && s.lsc_at[c];
        s.usc = s.usc && s.usc_at[c];
    }
    for (int c = 1; c < m; c += 2) s.open_dense = s.open_dense && s.continuity[c];
    return s;
}

CellFunction interior(const CellFunction& p)
{
    CellFunction out = p;
    for (int c = 0; c < p.cell_count(); c += 2)
        for (int nb : neighbours(p, c)) out.values[c] = proj_meet(out.values[c], p.values[nb]);
    return out;
}

CellFunction closure(const CellFunction& p)
{
    CellFunction out = p;
    for (int c = 0; c < p.cell_count(); c += 2)
        for (int nb : neighbours(p, c)) out.values[c] = proj_join(out.values[c], p.values[nb]);
    return out;
}

CellFunction regularize(const CellFunction& p) { return interior(closure(p)); }

bool is_regular(const CellFunction& p) { return regularize(p) == p; }

bool od_equal(const CellFunction& a, const CellFunction& b)
{
    auto [x, y] = common(a, b);
    for (int c = 1; c < x.cell_count(); c += 2)
        if (!same_value(x.values[c], y.values[c])) return false;
    return true;
}

bool d_equal(const CellFunction& a, const CellFunction& b)
{
    // The equality set is a union of cells; it is dense iff it meets every
    // interval cell, and an interval cell is met only if it lies inside.
    auto [x, y] = common(a, b);
    std::vector<bool> equal(x.cell_count());
    for (int c = 0; c < x.cell_count(); ++c) equal[c] = same_value(x.values[c], y.values[c]);
    for (int c = 1; c < x.cell_count(); c += 2)
        if (!equal[c]) return false;
    return true;
}

ClosureEquivalence closure_equivalence(const CellFunction& p, const CellFunction& q)
{
    auto [a, b] = common(p, q);
    ClosureEquivalence r;
    r.closures_equal = closure(a) == closure(b);
    auto ca = semicontinuity(a).continuity, cb = semicontinuity(b).continuity;
    r.agree_on_continuity = true;
    for (int c = 0; c < a.cell_count(); ++c)
        if (ca[c] && cb[c] && !same_value(a.values[c], b.values[c])) r.agree_on_continuity = false;
    r.od = od_equal(a, b);
    r.d = d_equal(a, b);
    return r;
}

// ------------------------------------------------------------ regular lattice

CellFunction reg_perp(const CellFunction& p)
{
    require_regular(p);
    return interior(pointwise_perp(p));
}

CellFunction reg_join(const CellFunction& p, const CellFunction& q)
{
    require_regular(p);
    require_regular(q);
    return regularize(pointwise_join(p, q));
}

CellFunction reg_meet(const CellFunction& p, const CellFunction& q)
{
    return reg_perp(reg_join(reg_perp(p), reg_perp(q)));
}

bool reg_commutes(const CellFunction& p, const CellFunction& q)
{
    require_regular(p);
    require_regular(q);
    return od_equal(pointwise_product(p, q), pointwise_product(q, p));
}

bool reg_lattice_commutes(const CellFunction& p, const CellFunction& q)
{
    return reg_join(reg_meet(p, q), reg_meet(p, reg_perp(q))) == p;
}

bool cell_equivalent(const CellFunction& p, const CellFunction& q)
{
    auto [a, b] = common(p, q);
    auto da = a.dims(), db = b.dims();
    for (int c = 1; c < a.cell_count(); c += 2)
        if (da[c] != db[c]) return false;
    return true;
}

CellFunction cell_central_cover(const CellFunction& p)
{
    CellFunction out = p;
    const BlockAlgebra& alg = p.algebra();
    auto d = p.dims();
    for (int c = 0; c < p.cell_count(); ++c)
        out.values[c] = d[c] > 0 ? Element::identity(alg) : Element::zero(alg);
    return regularize(out);
}

CellLattice export_lattice(const std::vector<CellFunction>& gens, int cap)
{
    if (gens.empty()) throw std::invalid_argument("no generators");
    CellComplex cx = gens.front().complex;
    for (const auto& g : gens) {
        require_regular(g);
        cx = refine(cx, g.complex);
    }
    const int n = gens.front().n;
    const int limit = std::min(cap, 64);
    const BlockAlgebra alg({n});

    std::vector<CellFunction> elems;
    std::vector<std::string> names;
    auto index_of = [&](const CellFunction& f) -> int {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == f) return static_cast<int>(i);
        return -1;
    };
    auto add = [&](const CellFunction& f, const std::string& name) {
        if (index_of(f) >= 0) return false;
        if (static_cast<int>(elems.size()) >= limit)
            throw CellError("cap-exceeded", "closure passed " + std::to_string(limit) + " elements");
        elems.push_back(f.on(refine(cx, f.complex)));
        names.push_back(name);
        return true;
    };
    add(CellFunction::constant(Element::zero(alg)).on(cx), "0");
    add(CellFunction::constant(Element::identity(alg)).on(cx), "1");
    for (std::size_t g = 0; g < gens.size(); ++g) add(gens[g].on(cx), "g" + std::to_string(g));
    int fresh = 0;
    for (bool changed = true; changed;) {
        changed = false;
        const std::size_t m = elems.size();
        for (std::size_t i = 0; i < m; ++i)
            if (add(reg_perp(elems[i]), "r" + std::to_string(fresh))) {
                changed = true;
                ++fresh;
            }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                if (add(reg_meet(elems[i], elems[j]), "r" + std::to_string(fresh))) {
                    changed = true;
                    ++fresh;
                }
                if (add(reg_join(elems[i], elems[j]), "r" + std::to_string(fresh))) {
                    changed = true;
                    ++fresh;
                }
            }
    }

    const int m = static_cast<int>(elems.size());
    LatticeSpec spec;
    spec.names = names;
    spec.leq.assign(m, std::vector<int>(m, 0));
    spec.perp.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) spec.leq[i][j] = pointwise_leq(elems[i], elems[j]) ? 1 : 0;
        spec.perp[i] = index_of(reg_perp(elems[i]));
    }
    return {build_lattice(spec), elems};
}

// ------------------------------------------------------------ fixtures

namespace {

const double kQuarterTurn = std::acos(-1.0) / 4;

CellFunction halves(const Element& left, const Element& mid, const Element& right)
{
    return CellFunction::from_pieces(2, {Rational(1, 2)}, {left, mid, right}, {left, right});
}

}  // namespace

CellFunction random_projection_map(Rng& rng, int n, int denominator)
{
    std::vector<Rational> bps;
    for (int d = 1; d < denominator; ++d)
        if (rng.chance(0.35)) bps.push_back(Rational(d, denominator));
    const BlockAlgebra A({n});
    std::vector<Element> palette{Element::zero(A), Element::identity(A)};
    for (int k = 0; k < 3; ++k) palette.push_back(random_projection(rng, A));
    CellComplex cx(bps);
    std::vector<Element> vals;
    for (int c = 0; c < cx.cell_count(); ++c) vals.push_back(palette[rng.below(static_cast<int>(palette.size()))]);
    return CellFunction(n, std::move(cx), std::move(vals));
}

CellPair closure_noncommuting_pair()
{
    const Element zero = Element::zero(BlockAlgebra({2})), one = Element::identity(BlockAlgebra({2}));
    return {halves(zero, zero, p_theta(0)), halves(p_theta(kQuarterTurn), p_theta(kQuarterTurn), one)};
}

CellPair od_commuting_pair()
{
    const Element one = Element::identity(BlockAlgebra({2}));
    return {halves(one, p_theta(0), p_theta(0)), halves(p_theta(kQuarterTurn), p_theta(kQuarterTurn), one)};
}

CellPair rigid_commuting_pair()
{
    const Element zero = Element::zero(BlockAlgebra({2})), one = Element::identity(BlockAlgebra({2}));
    return {halves(p_theta(0), zero, p_theta(kQuarterTurn)), halves(p_theta(0), p_theta(0), one)};
}

}  // namespace ortholab
