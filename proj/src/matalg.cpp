#include "ortholab/matalg.hpp"

#include <algorithm>
#include <cmath>

namespace ortholab {

namespace {

struct EigenPair {
    double value;
    int block;
    Eigen::VectorXcd vector;
};

std::vector<EigenPair> block_eigenpairs(const Element& h)
{
    std::vector<EigenPair> out;
    for (int i = 0; i < h.count(); ++i) {
        auto e = jacobi_eigen<Complex>(h.block(i));
        for (int k = 0; k < e.values.size(); ++k) out.push_back({e.values(k), i, e.vectors.col(k)});
    }
    std::stable_sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
    return out;
}

void require_hermitian(const Element& h)
{
    double defect = h.hermitian_defect();
    if (defect > 1e-10 * std::max(1.0, h.norm()))
        throw MatError("not-Hermitian", "||h - h*|| = " + std::to_string(defect));
}

Element symmetrised(const Element& p)
{
    return p.map([](const CMatrix& m) -> CMatrix { return (m + m.adjoint()) * Complex(0.5); });
}

CMatrix basis_projection(const CMatrix& basis)
{
    CMatrix p = basis * basis.adjoint();
    return (p + p.adjoint()) * Complex(0.5);
}

CMatrix column_space(const CMatrix& m)
{
    const int n = static_cast<int>(m.rows());
    if (m.cols() == 0) return CMatrix(n, 0);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
    int r = 0;
    const auto& s = svd.singularValues();
    while (r < s.size() && s(r) > kRankTol) ++r;
    return svd.matrixU().leftCols(r);
}

}  // namespace

// ------------------------------------------------------------ spectral calculus

SpectralDecomposition eig_hermitian(const Element& h)
{
    require_hermitian(h);
    auto pairs = block_eigenpairs(h);
    for (auto& p : pairs)
        if (std::abs(p.value) <= 1e-10) p.value = 0;
    SpectralDecomposition out;
    std::size_t i = 0;
    while (i < pairs.size()) {
        std::size_t j = i + 1;
        while (j < pairs.size() && pairs[j].value - pairs[j - 1].value < kClusterGap) ++j;
        Element proj = Element::zero(h.algebra());
        double sum = 0;
        bool has_zero = false;
        for (std::size_t k = i; k < j; ++k) {
            proj.block(pairs[k].block) += pairs[k].vector * pairs[k].vector.adjoint();
            sum += pairs[k].value;
            has_zero = has_zero || pairs[k].value == 0;
        }
        out.values.push_back(has_zero ? 0.0 : sum / static_cast<double>(j - i));
        out.projections.push_back(symmetrised(proj));
        i = j;
    }
    return out;
}

bool RealSet::contains(double x) const
{
    for (const auto& iv : parts) {
        bool lo = iv.lo_closed ? x >= iv.lo : x > iv.lo;
        bool hi = iv.hi_closed ? x <= iv.hi : x < iv.hi;
        if (lo && hi) return true;
    }
    return false;
}

RealSet RealSet::operator|(const RealSet& o) const
{
    RealSet out = *this;
    out.parts.insert(out.parts.end(), o.parts.begin(), o.parts.end());
    return out;
}

Element spectral_projection(const Element& h, const RealSet& S)
{
    SpectralDecomposition d = eig_hermitian(h);
    Element out = Element::zero(h.algebra());
    for (std::size_t i = 0; i < d.values.size(); ++i)
        if (S.contains(d.values[i])) out = out + d.projections[i];
    return out;
}

Element functional_calculus(const Element& h, const std::function<double(double)>& f)
{
    SpectralDecomposition d = eig_hermitian(h);
    Element out = Element::zero(h.algebra());
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        double v = f(d.values[i]);
        if (v != 0) out = out + d.projections[i] * Complex(v);
    }
    return out;
}

double ramp(double r, double s, double t)
{
    if (t < r) return 0;
    if (t > s) return 1;
    return s > r ? (t - r) / (s - r) : 1;
}

std::function<double(double)> ramp_fn(double r, double s)
{
    return [r, s](double t) { return ramp(r, s, t); };
}

std::function<double(double)> f_delta(double delta) { return ramp_fn(delta / 2, delta); }

// ------------------------------------------------------------ projections

std::vector<CMatrix> range_basis(const Element& a)
{
    std::vector<CMatrix> out;
    for (int i = 0; i < a.count(); ++i) out.push_back(column_space(a.block(i)));
    return out;
}

Element projection_from_basis(const BlockAlgebra& alg, const std::vector<CMatrix>& bases)
{
    std::vector<CMatrix> mats;
    for (int i = 0; i < alg.count(); ++i) {
        if (bases[i].cols() == 0)
            mats.push_back(CMatrix::Zero(alg.blocks[i], alg.blocks[i]));
        else
            mats.push_back(basis_projection(bases[i]));
    }
    return Element(alg, std::move(mats));
}

Element range_projection(const Element& a) { return projection_from_basis(a.algebra(), range_basis(a)); }

std::vector<int> rank_vector(const Element& p)
{
    std::vector<int> out;
    for (const auto& b : range_basis(p)) out.push_back(static_cast<int>(b.cols()));
    return out;
}

Element proj_perp(const Element& p) { return Element::identity(p.algebra()) - p; }

Element proj_join(const Element& p, const Element& q)
{
    auto bp = range_basis(p), bq = range_basis(q);
    std::vector<CMatrix> out;
    for (int i = 0; i < p.count(); ++i) {
        CMatrix both(p.algebra().blocks[i], bp[i].cols() + bq[i].cols());
        both << bp[i], bq[i];
        out.push_back(column_space(both));
    }
    return projection_from_basis(p.algebra(), out);
}

Element proj_meet(const Element& p, const Element& q)
{
    return range_projection(proj_perp(proj_join(proj_perp(p), proj_perp(q))));
}

bool proj_leq(const Element& p, const Element& q, double tol) { return (proj_perp(q) * p).norm() <= tol; }

bool same_projection(const Element& p, const Element& q, double tol) { return (p - q).norm() <= tol; }

bool is_projection(const Element& p, double tol)
{
    return (p * p - p).norm() <= tol && p.hermitian_defect() <= tol;
}

bool is_zero(const Element& a, double tol) { return a.norm() <= tol; }

double min_eigenvalue(const Element& h)
{
    double best = HUGE_VAL;
    for (int i = 0; i < h.count(); ++i) best = std::min(best, jacobi_eigen<Complex>(h.block(i)).values(0));
    return best;
}

// ------------------------------------------------------------ annihilators

Annihilator corner(const Element& p) { return {range_projection(p)}; }

Annihilator annihilator(const std::vector<Element>& T)
{
    if (T.empty()) throw std::invalid_argument("annihilator of an empty set");
    Element q = Element::zero(T.front().algebra());
    for (const Element& t : T) q = proj_join(q, range_projection(t.adjoint()));
    return {range_projection(proj_perp(q))};
}

std::pair<Annihilator, Annihilator> biannihilator(const Element& a)
{
    Annihilator left = annihilator({annihilator({a}).support});
    Annihilator right = annihilator({annihilator({a.adjoint()}).support});
    return {left, right};
}

AnnihilatorLattice generate_annihilator_lattice(const std::vector<Annihilator>& gens, int cap,
                                                const std::optional<Element>& unit)
{
    if (gens.empty()) throw std::invalid_argument("no generators");
    const BlockAlgebra& alg = gens.front().support.algebra();
    const Element one = unit ? range_projection(*unit) : Element::identity(alg);
    const int limit = std::min(cap, 64);

    std::vector<Element> elems;
    std::vector<std::string> names;
    auto index_of = [&](const Element& x) -> int {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (same_projection(elems[i], x, 1e-7)) return static_cast<int>(i);
        return -1;
    };
    auto add = [&](const Element& x, const std::string& name) {
        Element canon = range_projection(x);
        if (index_of(canon) >= 0) return false;
        if (static_cast<int>(elems.size()) >= limit)
            throw MatError("cap-exceeded", "closure passed " + std::to_string(limit) + " elements");
        elems.push_back(canon);
        names.push_back(name);
        return true;
    };
    add(Element::zero(alg), "0");
    add(one, "1");
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (!proj_leq(gens[g].support, one)) throw std::invalid_argument("generator is not below the unit");
        add(gens[g].support, "g" + std::to_string(g));
    }
    int fresh = 0;
    for (bool changed = true; changed;) {
        changed = false;
        const std::size_t n = elems.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::string nm = names[i].size() && names[i].back() != '\'' && names[i][0] == 'g' ? names[i] + "'"
                                                                                            : "e" + std::to_string(fresh);
            if (add(one - elems[i], nm)) {
                changed = true;
                if (nm[0] == 'e') ++fresh;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (add(proj_meet(elems[i], elems[j]), "e" + std::to_string(fresh))) {
                    changed = true;
                    ++fresh;
                }
                if (add(proj_join(elems[i], elems[j]), "e" + std::to_string(fresh))) {
                    changed = true;
                    ++fresh;
                }
            }
    }

    const int n = static_cast<int>(elems.size());
    LatticeSpec spec;
    spec.names = names;
    spec.leq.assign(n, std::vector<int>(n, 0));
    spec.perp.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) spec.leq[i][j] = proj_leq(elems[i], elems[j], 1e-7) ? 1 : 0;
        spec.perp[i] = index_of(one - elems[i]);
    }
    return {build_lattice(spec), elems};
}

// ------------------------------------------------------------ equivalence

Equivalence equivalent(const Annihilator& B, const Annihilator& C)
{
    auto bb = range_basis(B.support), bc = range_basis(C.support);
    Equivalence out;
    std::vector<CMatrix> mats;
    for (std::size_t i = 0; i < bb.size(); ++i) {
        if (bb[i].cols() != bc[i].cols()) return out;
        const int n = static_cast<int>(bb[i].rows());
        mats.push_back(bb[i].cols() == 0 ? CMatrix(CMatrix::Zero(n, n)) : CMatrix(bc[i] * bb[i].adjoint()));
    }
    Element w(B.support.algebra(), std::move(mats));
    auto [left, right] = biannihilator(w);
    out.holds = left == B && right == C;
    out.witness = w;
    return out;
}

Equivalence subequivalent(const Annihilator& B, const Annihilator& C)
{
    auto rb = rank_vector(B.support);
    auto bc = range_basis(C.support);
    for (std::size_t i = 0; i < rb.size(); ++i) {
        if (rb[i] > bc[i].cols()) return {};
        bc[i] = bc[i].leftCols(rb[i]).eval();
    }
    return equivalent(B, {projection_from_basis(C.support.algebra(), bc)});
}

Comparison compare(const Annihilator& B, const Annihilator& C)
{
    const BlockAlgebra& alg = B.support.algebra();
    auto rb = rank_vector(B.support), rc = rank_vector(C.support);
    Comparison out;
    out.central = Element::zero(alg);
    for (int i = 0; i < alg.count(); ++i)
        if (rb[i] <= rc[i]) out.central = out.central + Element::block_unit(alg, i);
    const Element& D = out.central;
    const Element Dp = proj_perp(D);
    out.lower = subequivalent(corner(B.support * D), corner(C.support * D)).holds;
    out.upper = subequivalent(corner(C.support * Dp), corner(B.support * Dp)).holds;
    return out;
}

Element csb_step(const Element& pB, const Element& pC, const Element& b, const Element& c, const Element& pD)
{
    Element e = range_projection(pC - range_projection(b * pD));
    return range_projection(pB - range_projection(c * e));
}

CsbResult csb_witness(const Element& b, const Element& c)
{
    const Element pB = range_projection(b.adjoint());
    const Element pC = range_projection(c.adjoint());
    if (!proj_leq(range_projection(b), pC)) throw MatError("precondition-violated", "[b] is not below the support of C");
    if (!proj_leq(range_projection(c), pB)) throw MatError("precondition-violated", "[c] is not below the support of B");
    CsbResult out;
    Element D = Element::zero(b.algebra());
    const int limit = b.algebra().dimension() + 1;
    for (;;) {
        Element next = csb_step(pB, pC, b, c, D);
        ++out.steps;
        if (same_projection(next, D)) break;
        if (out.steps > limit) throw std::logic_error("csb iteration did not stabilise");
        D = next;
    }
    out.fixed_point = D;
    const Element E = range_projection(pC - range_projection(b * D));
    out.witness = b * D + E * c.adjoint();
    auto [left, right] = biannihilator(out.witness);
    out.verified = left == corner(pB) && right == corner(pC) && same_projection(csb_step(pB, pC, b, c, D), D);
    return out;
}

Annihilator translate(const Annihilator& B, const Element& a) { return corner(a.adjoint() * B.support); }

double orthonorm(const Annihilator& B, const Annihilator& C) { return (B.support * C.support).norm(); }

// ------------------------------------------------------------ algebra structure

AlgebraStructure algebra_structure(const BlockAlgebra& A)
{
    AlgebraStructure out;
    out.orders = A.blocks;
    for (int mask = 0; mask < (1 << A.count()); ++mask) {
        Element p = Element::zero(A);
        for (int i = 0; i < A.count(); ++i)
            if (mask >> i & 1) p = p + Element::block_unit(A, i);
        out.central_projections.push_back(p);
    }
    return out;
}

bool is_central(const Element& p)
{
    for (int i = 0; i < p.count(); ++i) {
        const CMatrix& m = p.block(i);
        const auto n = m.rows();
        if ((m).norm() > 1e-8 && (m - CMatrix::Identity(n, n)).norm() > 1e-8) return false;
    }
    return true;
}

bool is_abelian(const Annihilator& B)
{
    for (int r : rank_vector(B.support))
        if (r > 1) return false;
    return true;
}

AnnihilatorLattice corner_lattice(const Annihilator& B, int cap)
{
    const BlockAlgebra& alg = B.support.algebra();
    auto basis = range_basis(B.support);
    std::vector<Annihilator> gens;
    auto line = [&](int block, const Eigen::VectorXcd& v) {
        std::vector<CMatrix> bs;
        for (int i = 0; i < alg.count(); ++i) bs.push_back(i == block ? CMatrix(v.normalized()) : CMatrix(alg.blocks[i], 0));
        gens.push_back({projection_from_basis(alg, bs)});
    };
    for (int i = 0; i < alg.count(); ++i) {
        for (int j = 0; j < basis[i].cols(); ++j) line(i, basis[i].col(j));
        if (basis[i].cols() >= 2) line(i, basis[i].col(0) + basis[i].col(1));
    }
    if (gens.empty()) gens.push_back({B.support});
    return generate_annihilator_lattice(gens, cap, B.support);
}

// ------------------------------------------------------------ random elements

namespace {

CMatrix gaussian(Rng& rng, int rows, int cols)
{
    CMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = Complex(rng.normal(), rng.normal());
    return m;
}

CMatrix unitary(Rng& rng, int n)
{
    Eigen::HouseholderQR<CMatrix> qr(gaussian(rng, n, n));
    return qr.householderQ() * CMatrix::Identity(n, n);
}

}  // namespace

Element random_element(Rng& rng, const BlockAlgebra& A)
{
    std::vector<CMatrix> m;
    for (int n : A.blocks) m.push_back(gaussian(rng, n, n));
    return Element(A, std::move(m));
}

Element random_hermitian(Rng& rng, const BlockAlgebra& A)
{
    Element x = random_element(rng, A);
    return (x + x.adjoint()) * Complex(0.5);
}

Element random_positive_contraction(Rng& rng, const BlockAlgebra& A)
{
    Element x = random_element(rng, A);
    Element h = x * x.adjoint();
    double scale = rng.chance(0.5) ? 1.0 : rng.uniform(0.3, 1.0);
    return symmetrised(h * Complex(scale / h.norm()));
}

Element random_unitary(Rng& rng, const BlockAlgebra& A)
{
    std::vector<CMatrix> m;
    for (int n : A.blocks) m.push_back(unitary(rng, n));
    return Element(A, std::move(m));
}

Element random_projection_with_ranks(Rng& rng, const BlockAlgebra& A, const std::vector<int>& ranks)
{
    std::vector<CMatrix> bases;
    for (int i = 0; i < A.count(); ++i) bases.push_back(unitary(rng, A.blocks[i]).leftCols(ranks[i]));
    return projection_from_basis(A, bases);
}

Element random_projection(Rng& rng, const BlockAlgebra& A)
{
    std::vector<int> ranks;
    for (int n : A.blocks) ranks.push_back(rng.between(0, n));
    return random_projection_with_ranks(rng, A, ranks);
}

Element p_theta(double theta)
{
    CMatrix v(2, 1);
    v << Complex(std::sin(theta)), Complex(std::cos(theta));
    return Element(BlockAlgebra({2}), {basis_projection(v)});
}

}  // namespace ortholab
