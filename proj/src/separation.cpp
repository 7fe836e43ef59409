#include <algorithm>
#include <cmath>

#include "ortholab/matalg.hpp"

namespace ortholab {

namespace {

double sq(double x) { return x * x; }

// Eigenvalues of q compressed to the range of p, across all blocks.
std::vector<double> compressed_spectrum(const Element& p, const Element& q)
{
    auto basis = range_basis(p);
    std::vector<double> out;
    for (int i = 0; i < p.count(); ++i) {
        if (basis[i].cols() == 0) continue;
        CMatrix m = basis[i].adjoint() * q.block(i) * basis[i];
        auto e = jacobi_eigen<Complex>(m);
        for (int k = 0; k < e.values.size(); ++k) out.push_back(e.values(k));
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool positive_contraction(const Element& a)
{
    if (a.hermitian_defect() > 1e-10) return false;
    return min_eigenvalue(a) >= -1e-10 && a.norm() <= 1 + 1e-10;
}

}  // namespace

// ------------------------------------------------------------ projection geometry

std::vector<double> orthospectrum(const Element& p, const Element& q)
{
    std::vector<double> vals = eig_hermitian(p * q * p).values;
    vals.push_back(0);
    std::sort(vals.begin(), vals.end());
    std::vector<double> out;
    for (double v : vals)
        if (out.empty() || v - out.back() >= kClusterGap) out.push_back(v);
    return out;
}

Element orthospectrum_witness(const Element& p, const Element& q, double theta)
{
    const Element h = p * q * p;
    std::vector<double> vals = eig_hermitian(h).values;
    double lambda = theta + 1;
    for (double v : vals)
        if (v > theta + kClusterGap) {
            lambda = (theta + v) / 2;
            break;
        }
    return spectral_projection(h, RealSet::left_open(0, lambda));
}

double orthospectrum_side_defect(const Element& p, const Element& q, const Element& r)
{
    const Element qp = proj_perp(q);
    Element x = proj_meet(proj_join(r, qp), q);
    Element y = proj_meet(proj_join(range_projection(p - r), qp), q);
    return (x * y).norm();
}

GeometryReport projection_geometry(const Element& p, const Element& q, double tol)
{
    GeometryReport g;
    const Element pp = proj_perp(p), qp = proj_perp(q);
    const bool p_zero = is_zero(p);
    g.pq_sq = sq((p * q).norm());
    g.pq_perp_sq = sq((p * qp).norm());
    g.pythagoras = g.pq_sq + g.pq_perp_sq;
    g.pythagoras_ok = p_zero || g.pythagoras >= 1 - tol;

    auto spec = compressed_spectrum(p, q);
    g.singleton_spectrum = !spec.empty() && spec.back() - spec.front() <= kClusterGap;
    g.pythagoras_singleton = p_zero || ((std::abs(g.pythagoras - 1) <= kClusterGap) == g.singleton_spectrum);

    g.distance = (p - q).norm();
    g.corner_distance = std::max((p * qp).norm(), (pp * q).norm());
    g.distance_ok = std::abs(g.distance - g.corner_distance) <= tol;

    const double lambda = g.pq_perp_sq;
    g.lower_bound_ok = min_eigenvalue(p * q * p - p * Complex(1 - lambda)) >= -tol;
    g.nearest = lambda < 1 ? range_projection(q * p) : q;
    g.nearest_sq = sq((g.nearest - p).norm());
    g.nearest_ok = proj_leq(g.nearest, q) && g.nearest_sq <= lambda + tol;

    g.sasaki_ok = same_projection(range_projection(q * p), proj_meet(proj_join(p, qp), q), tol);
    return g;
}

// ------------------------------------------------------------ separation

const char* lemma_name(LemmaKind k)
{
    switch (k) {
    case LemmaKind::Lem1: return "lem1";
    case LemmaKind::Cor1: return "cor1";
    case LemmaKind::Lem2: return "lem2";
    case LemmaKind::Lem3: return "lem3";
    }
    return "?";
}

double separation_delta(double eps, double lambda, LemmaKind kind)
{
    switch (kind) {
    case LemmaKind::Lem1: return lambda * eps * eps * eps / 2;
    case LemmaKind::Cor1: return separation_delta(eps / std::sqrt(2.0), lambda, LemmaKind::Lem1);
    case LemmaKind::Lem2:
        return std::min(separation_delta(eps / 4, lambda, LemmaKind::Cor1), (eps / 2) / (2 - lambda + eps));
    case LemmaKind::Lem3: return std::min(separation_delta(eps / 4, lambda, LemmaKind::Cor1), eps / 2);
    }
    return 0;
}

LemmaReport check_separation_lemma(LemmaKind kind, const LemmaInstance& inst, double eps, double lambda)
{
    LemmaReport r;
    r.delta = separation_delta(eps, lambda, kind);
    auto fail = [&](const char* why) {
        r.failed_hypothesis = why;
        return r;
    };
    if (!(eps > 0)) return fail("eps > 0");
    if (!(lambda > 0 && lambda <= 1)) return fail("0 < lambda <= 1");
    if (!positive_contraction(inst.b)) return fail("b positive contraction");
    if (!positive_contraction(inst.c)) return fail("c positive contraction");
    if (!is_projection(inst.q, 1e-9)) return fail("q projection");
    if (min_eigenvalue(inst.q - inst.c) < -1e-10) return fail("c <= q");
    if (kind == LemmaKind::Lem3) {
        if (!is_projection(inst.p, 1e-9)) return fail("p projection");
        if (min_eigenvalue(inst.p - inst.b) < -1e-10) return fail("b <= p");
        if (sq((inst.p * inst.q).norm()) > lambda + r.delta + 1e-12) return fail("||pq||^2 <= lambda + delta");
    } else if (sq((inst.b * inst.q).norm()) > lambda + r.delta + 1e-12) {
        return fail("||bq||^2 <= lambda + delta");
    }
    r.hypotheses_met = true;

    const Element h = inst.c * inst.b * inst.b * inst.c;
    const Element E = spectral_projection(h, RealSet::at_least(lambda - r.delta));
    const Element one = Element::identity(h.algebra());
    switch (kind) {
    case LemmaKind::Lem1:
        r.lhs = (spectral_projection(inst.c, RealSet::at_most(1 - eps)) * E).norm();
        r.bound = eps;
        break;
    case LemmaKind::Cor1:
        r.lhs = ((one - inst.c) * E).norm();
        r.bound = eps;
        break;
    case LemmaKind::Lem2:
        r.lhs = sq((spectral_projection(inst.b, RealSet::at_most(std::sqrt(r.delta))) * E).norm());
        r.bound = 1 - lambda + eps;
        break;
    case LemmaKind::Lem3:
        r.lhs = sq((inst.p * E).norm());
        r.bound = lambda + eps;
        break;
    }
    r.holds = r.lhs <= r.bound + kIdentityTol;
    return r;
}

SeparationResult separate(const Annihilator& B, const Annihilator& C, double eps)
{
    const Element& pB = B.support;
    const Element& pC = C.support;
    if (is_zero(pC)) throw MatError("zero-element", "C is the zero annihilator");
    SeparationResult out;
    out.lambda = sq((pB * pC).norm());
    if (out.lambda >= 1 - 1e-12) throw MatError("lambda-one", "||BC|| = 1");
    if (std::sqrt(out.lambda) <= eps) {
        out.D = C;
        out.bd = std::sqrt(out.lambda);
        out.cd_sq = 1;
        out.ok = true;
        return out;
    }
    const Element h = pC * pB * pC;
    // ||BC||^2 read off the spectrum of h, so the cut below sees the same rounding
    const double lambda = eig_hermitian(h).values.back();
    const Element one = Element::identity(pB.algebra());
    for (double mu = std::min(eps / 8, (1 - lambda) / 2);; mu /= 2) {
        const double delta = std::min(separation_delta(mu, lambda, LemmaKind::Lem2),
                                      separation_delta(mu, lambda, LemmaKind::Lem3));
        if (delta < 1e-14) break;
        const Element c2 = functional_calculus(h, ramp_fn(lambda - delta, lambda - delta / 2));
        const Element fb = one - functional_calculus(pB, f_delta(delta));
        const Element a = fb * c2 * c2 * fb;
        const double an = a.norm();
        if (an <= kRankTol) continue;
        const Element an_scaled = a * Complex(1 / an);
        const Element scaled = (an_scaled + an_scaled.adjoint()) * Complex(0.5);
        const Annihilator D = corner(functional_calculus(scaled, ramp_fn(1 - 2 * mu, 1)));
        out.D = D;
        out.mu = mu;
        out.delta = delta;
        out.bd = (pB * D.support).norm();
        out.cd_sq = sq((pC * D.support).norm());
        out.ok = !is_zero(D.support) && out.bd <= eps + kIdentityTol && out.cd_sq >= 1 - lambda - eps - kIdentityTol;
        if (out.ok) break;
    }
    return out;
}

SeparationResult epsilon_separate(const Annihilator& B, const Annihilator& C, double eps)
{
    const Element& pB = B.support;
    const Element& pC = C.support;
    if (!proj_leq(pB, pC) || same_projection(pB, pC)) throw MatError("not-proper-subset", "B is not a proper subset of C");
    const Element b = proj_perp(pB);
    const Element& c = pC;
    const double lambda = sq((b * c).norm());
    const double e0 = std::min(eps, lambda / 2);
    const double delta = separation_delta(e0, lambda, LemmaKind::Lem2);
    const double lo = lambda - 2 * delta / 3, hi = lambda - delta / 3;
    const Annihilator D1 = corner(functional_calculus(c * b * b * c, ramp_fn(lo, hi)));
    SeparationResult out = separate(B, D1, eps);
    out.cd_sq = sq((pC * out.D.support).norm());
    out.ok = out.ok && proj_leq(out.D.support, pC);
    return out;
}

double gamma(const Element& b)
{
    if (is_zero(b)) throw MatError("zero-element", "gamma of 0");
    return same_projection(range_projection(b), Element::identity(b.algebra())) ? 1 : 0;
}

double sep(const Annihilator& B)
{
    if (is_zero(B.support)) throw MatError("zero-element", "sep of the zero annihilator");
    return same_projection(B.support, Element::identity(B.support.algebra())) ? 1 : 0;
}

// ------------------------------------------------------------ homogeneity maps

HomogeneityMaps::HomogeneityMaps(std::vector<Element> ps) : ps_(std::move(ps))
{
    if (ps_.empty()) throw std::invalid_argument("no projections");
    Element acc = Element::zero(ps_.front().algebra());
    for (std::size_t k = 0; k < ps_.size(); ++k) {
        const Element& p = ps_[k];
        int rank = 0;
        for (int r : rank_vector(p)) rank += r;
        if (!is_projection(p, 1e-9) || rank != 1) throw std::invalid_argument("expected rank-one projections");
        if (k == 0) {
            deltas_.push_back(0);
        } else {
            double d = 1 - sq((acc * p).norm());
            if (d <= 1e-12) throw std::invalid_argument("projection lies below the earlier join");
            deltas_.push_back(d);
        }
        acc = proj_join(acc, p);
    }
    if (!same_projection(acc, Element::identity(acc.algebra()))) throw MatError("join-not-one", "the join is not 1");
}

std::pair<Element, Element> HomogeneityMaps::eval(const std::vector<Element>& qs, int n) const
{
    if (n == 1) return {qs[0], qs[0]};
    auto [F, G] = eval(qs, n - 1);
    const Element one = Element::identity(qs[0].algebra());
    const Element qn = one - qs[n - 1];
    const Element q = qn * (one - F) * qn;
    const Element joined = one - q;
    const double d = deltas_[n - 1];
    return {functional_calculus(joined, f_delta(d / 2)), functional_calculus(joined, f_delta(d)) * G};
}

Element HomogeneityMaps::F(const std::vector<Element>& qs) const
{
    if (qs.size() != ps_.size()) throw std::invalid_argument("argument count mismatch");
    return eval(qs, size()).first;
}

Element HomogeneityMaps::G(const std::vector<Element>& qs) const
{
    if (qs.size() != ps_.size()) throw std::invalid_argument("argument count mismatch");
    return eval(qs, size()).second;
}

}  // namespace ortholab
