#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ortholab/matalg.hpp"

using namespace ortholab;

namespace {

const double kPi = std::acos(-1.0);

Element diag(std::initializer_list<double> values)
{
    const int n = static_cast<int>(values.size());
    CMatrix m = CMatrix::Zero(n, n);
    int i = 0;
    for (double v : values) {
        m(i, i) = v;
        ++i;
    }
    return Element(BlockAlgebra({n}), {m});
}

Element unit_matrix(int n, int r, int c)
{
    CMatrix m = CMatrix::Zero(n, n);
    m(r, c) = 1;
    return Element(BlockAlgebra({n}), {m});
}

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// exp(i h) for Hermitian h
CMatrix unitary_exp(const CMatrix& h)
{
    auto e = jacobi_eigen<Complex>(h);
    CMatrix d = CMatrix::Zero(h.rows(), h.cols());
    for (int k = 0; k < e.values.size(); ++k) d(k, k) = std::exp(Complex(0, e.values(k)));
    return e.vectors * d * e.vectors.adjoint();
}

bool close(const Element& a, const Element& b, double tol = 1e-9) { return (a - b).norm() <= tol; }

Element power(const Element& a, double t)
{
    return functional_calculus(a, [t](double x) { return x <= 0 ? 0.0 : std::pow(x, t); });
}

BlockAlgebra random_algebra(Rng& rng, int max_block)
{
    std::vector<int> blocks(rng.between(1, 2));
    for (int& b : blocks) b = rng.between(1, max_block);
    return BlockAlgebra(blocks);
}

}  // namespace

TEST_CASE("eig_hermitian examples")
{
    auto d = eig_hermitian(diag({1, 2}));
    REQUIRE(d.values.size() == 2);
    CHECK(d.values[0] == doctest::Approx(1));
    CHECK(d.values[1] == doctest::Approx(2));
    CHECK(close(d.projections[0], unit_matrix(2, 0, 0)));
    CHECK(close(d.projections[1], unit_matrix(2, 1, 1)));

    auto e = eig_hermitian(p_theta(kPi / 4));
    REQUIRE(e.values.size() == 2);
    CHECK(e.values[0] == 0);
    CHECK(e.values[1] == doctest::Approx(1));

    auto z = eig_hermitian(Element::zero(BlockAlgebra({3})));
    REQUIRE(z.values.size() == 1);
    CHECK(z.values[0] == 0);
    CHECK(close(z.projections[0], Element::identity(BlockAlgebra({3}))));

    CHECK_THROWS_AS(eig_hermitian(unit_matrix(2, 0, 1)), MatError);
}

TEST_CASE("eig_hermitian reconstructs random Hermitian elements")
{
    Rng rng(11);
    for (int it = 0; it < 200; ++it) {
        BlockAlgebra A = random_algebra(rng, 6);
        Element h = random_hermitian(rng, A);
        auto d = eig_hermitian(h);
        Element sum = Element::zero(A), total = Element::zero(A);
        for (std::size_t i = 0; i < d.values.size(); ++i) {
            sum = sum + d.projections[i] * Complex(d.values[i]);
            total = total + d.projections[i];
            for (std::size_t j = i + 1; j < d.values.size(); ++j) CHECK(is_zero(d.projections[i] * d.projections[j], 1e-9));
        }
        CHECK(close(sum, h));
        CHECK(close(total, Element::identity(A)));
    }
}

TEST_CASE("p_theta orientation")
{
    CHECK(close(p_theta(0), unit_matrix(2, 1, 1), 1e-15));
    CHECK(close(p_theta(kPi / 2), unit_matrix(2, 0, 0), 1e-15));
}

TEST_CASE("spectral projections and functional calculus")
{
    Element h = diag({0.2, 0.8});
    CHECK(close(spectral_projection(h, RealSet::above(0.5)), unit_matrix(2, 1, 1)));
    CHECK(close(functional_calculus(h, ramp_fn(0.25, 0.5)), diag({0, 1})));
    Element p = p_theta(0.3);
    CHECK(close(spectral_projection(p, RealSet::point(0)), Element::identity(p.algebra()) - p));

    Rng rng(12);
    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A = random_algebra(rng, 5);
        Element a = random_hermitian(rng, A);
        double s = rng.normal();
        Element lo = spectral_projection(a, RealSet::at_most(s));
        Element hi = spectral_projection(a, RealSet::at_least(s));
        CHECK(min_eigenvalue(lo * Complex(s) - a * lo) >= -1e-9);
        CHECK(min_eigenvalue(a * hi - hi * Complex(s)) >= -1e-9);
    }
}

TEST_CASE("range projections")
{
    CHECK(close(range_projection(unit_matrix(2, 0, 1)), unit_matrix(2, 0, 0)));
    Rng rng(13);
    Element inv = random_element(rng, BlockAlgebra({3}));
    CHECK(close(range_projection(inv), Element::identity(inv.algebra())));

    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A = random_algebra(rng, 5);
        Element a = random_element(rng, A);
        double s = rng.uniform(0, 2), t = s + rng.uniform(0.5, 8);
        RealSet S = RealSet::left_open(s, t);
        Element lhs = spectral_projection(a * a.adjoint(), S);
        Element rhs = range_projection(a * spectral_projection(a.adjoint() * a, S));
        CHECK(close(lhs, rhs, 1e-8));
    }
}

TEST_CASE("annihilator examples")
{
    CHECK(close(annihilator({unit_matrix(2, 0, 0)}).support, unit_matrix(2, 1, 1)));
    auto [left, right] = biannihilator(unit_matrix(2, 0, 1));
    CHECK(close(left.support, unit_matrix(2, 1, 1)));
    CHECK(close(right.support, unit_matrix(2, 0, 0)));
    CHECK(is_zero(annihilator({Element::identity(BlockAlgebra({2}))}).support));
}

TEST_CASE("annihilator reduction agrees with brute-force kernel intersection")
{
    // s is in T^perp iff ts = 0 = st* for all t; as a subspace of matrices this
    // is the kernel of a linear map, whose dimension must be r^2 for support rank r.
    Rng rng(14);
    for (int it = 0; it < 60; ++it) {
        const int n = rng.between(2, 3);
        BlockAlgebra A({n});
        std::vector<Element> T;
        for (int k = rng.between(1, 2); k > 0; --k) {
            Element q = random_projection(rng, A);
            T.push_back(random_element(rng, A) * q);
        }
        CMatrix L(0, n * n);
        for (const Element& t : T) {
            CMatrix left = kron(CMatrix::Identity(n, n), t.block(0));
            CMatrix right = kron(t.block(0).conjugate(), CMatrix::Identity(n, n));
            CMatrix next(L.rows() + 2 * n * n, n * n);
            next << L, left, right;
            L = next;
        }
        Eigen::JacobiSVD<CMatrix> svd(L, Eigen::ComputeFullV);
        int rank = 0;
        for (int k = 0; k < svd.singularValues().size(); ++k) rank += svd.singularValues()(k) > 1e-10;
        const int kernel = n * n - rank;
        Element p = annihilator(T).support;
        const int r = rank_vector(p)[0];
        CHECK(kernel == r * r);
        // every kernel vector lies in the corner pAp
        for (int k = rank; k < n * n; ++k) {
            Eigen::VectorXcd v = svd.matrixV().col(k);
            CMatrix s = Eigen::Map<CMatrix>(v.data(), n, n);
            CHECK((s - p.block(0) * s * p.block(0)).norm() <= 1e-8);
        }
    }
}

TEST_CASE("generated annihilator lattices")
{
    auto mo = generate_annihilator_lattice({corner(p_theta(0)), corner(p_theta(kPi / 4))}, 64);
    CHECK(mo.lattice.size() == 6);
    CHECK(check_orthomodular(mo.lattice).holds);
    CHECK_FALSE(check_distributive(mo.lattice).holds);

    auto b4 = generate_annihilator_lattice({corner(unit_matrix(2, 0, 0))}, 64);
    CHECK(b4.lattice.size() == 4);
    CHECK(check_distributive(b4.lattice).holds);

    CHECK_THROWS_AS(generate_annihilator_lattice({corner(p_theta(0)), corner(p_theta(kPi / 4))}, 5), MatError);

    Rng rng(15);
    for (int it = 0; it < 20; ++it) {
        BlockAlgebra A = random_algebra(rng, 3);
        std::vector<Annihilator> gens{corner(random_projection(rng, A)), corner(random_projection(rng, A))};
        auto g = generate_annihilator_lattice(gens, 64);
        CHECK(check_orthomodular(g.lattice).holds);
    }
}

TEST_CASE("equivalence examples")
{
    auto e = equivalent(corner(unit_matrix(2, 0, 0)), corner(unit_matrix(2, 1, 1)));
    CHECK(e.holds);
    REQUIRE(e.witness);
    auto [l, r] = biannihilator(*e.witness);
    CHECK(close(l.support, unit_matrix(2, 0, 0)));
    CHECK(close(r.support, unit_matrix(2, 1, 1)));

    BlockAlgebra A({2, 1});
    Element e11 = Element::zero(A);
    e11.block(0)(0, 0) = 1;
    CHECK_FALSE(equivalent(corner(e11), corner(Element::block_unit(A, 1))).holds);

    Rng rng(16);
    for (int it = 0; it < 50; ++it) {
        BlockAlgebra B = random_algebra(rng, 4);
        Annihilator X = corner(random_projection(rng, B));
        auto self = equivalent(X, X);
        CHECK(self.holds);
    }
}

TEST_CASE("compare examples")
{
    BlockAlgebra A({2, 2});
    Rng rng(17);
    Annihilator B = corner(random_projection_with_ranks(rng, A, {2, 0}));
    Annihilator C = corner(random_projection_with_ranks(rng, A, {1, 1}));
    auto cmp = compare(B, C);
    CHECK(close(cmp.central, Element::block_unit(A, 1)));
    CHECK(cmp.lower);
    CHECK(cmp.upper);

    auto same = compare(C, C);
    CHECK(close(same.central, Element::identity(A)));
    CHECK(same.lower);
    CHECK(same.upper);

    auto zero = compare(corner(Element::zero(A)), C);
    CHECK(close(zero.central, Element::identity(A)));

    for (int it = 0; it < 100; ++it) {
        BlockAlgebra X = random_algebra(rng, 4);
        auto c = compare(corner(random_projection(rng, X)), corner(random_projection(rng, X)));
        CHECK(is_central(c.central));
        CHECK(c.lower);
        CHECK(c.upper);
    }
}

TEST_CASE("CSB witness")
{
    BlockAlgebra M2({2});
    auto trivial = csb_witness(Element::identity(M2), Element::identity(M2));
    CHECK(trivial.steps <= 2);
    CHECK(trivial.verified);

    // [b] = e11 lies in C = A, but [c] = 1 is not below B = e22-corner
    CHECK_THROWS_AS(csb_witness(unit_matrix(2, 0, 1), Element::identity(M2)), MatError);

    Rng rng(18);
    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A = random_algebra(rng, 4);
        std::vector<int> ranks;
        for (int n : A.blocks) ranks.push_back(rng.between(0, n));
        Element pB = random_projection_with_ranks(rng, A, ranks);
        Element pC = random_projection_with_ranks(rng, A, ranks);
        // b maps into C with [b*] = pB; c maps into B with [c*] = pC
        Element b = pC * random_unitary(rng, A) * pB;
        Element c = pB * random_unitary(rng, A) * pC;
        if (!(biannihilator(b).first == corner(pB)) || !(biannihilator(c).first == corner(pC))) continue;
        auto r = csb_witness(b, c);
        CHECK(r.verified);
        CHECK(r.steps <= A.dimension() + 1);
        CHECK(same_projection(csb_step(pB, pC, b, c, r.fixed_point), r.fixed_point));
    }
}

TEST_CASE("translate")
{
    Rng rng(19);
    BlockAlgebra M2({2});
    Annihilator B = corner(random_projection(rng, BlockAlgebra({2})));
    CHECK(translate(B, Element::identity(M2)) == B);
    CHECK(close(translate(corner(unit_matrix(2, 1, 1)), unit_matrix(2, 1, 0)).support, unit_matrix(2, 0, 0)));

    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A = random_algebra(rng, 4);
        Element a = random_element(rng, A) * random_projection(rng, A);
        Annihilator X = corner(random_projection(rng, A));
        Annihilator Y = corner(random_projection(rng, A));
        Annihilator XY = corner(proj_join(X.support, Y.support));
        Annihilator XX = corner(proj_meet(XY.support, X.support));
        CHECK(proj_leq(translate(XX, a).support, translate(XY, a).support));
        CHECK(translate(XY, a) == corner(proj_join(translate(X, a).support, translate(Y, a).support)));

        // principal B below {a*}perp perp: B ~ (Ba)perp perp with witness ba
        Element pa = range_projection(a);
        Element pb = proj_meet(random_projection(rng, A), pa);
        Annihilator T = translate(corner(pb), a);
        CHECK(equivalent(corner(pb), T).holds);
        auto [l, r] = biannihilator((pb * a).adjoint());
        CHECK(l == corner(pb));
        CHECK(r == T);
    }
}

TEST_CASE("translate does not preserve infima")
{
    // orthogonal B, C whose images under a generic a overlap
    Rng rng(20);
    bool found = false;
    for (int it = 0; it < 20 && !found; ++it) {
        Element a = random_element(rng, BlockAlgebra({2}));
        Annihilator TB = translate(corner(unit_matrix(2, 0, 0)), a);
        Annihilator TC = translate(corner(unit_matrix(2, 1, 1)), a);
        found = orthonorm(TB, TC) > 1e-3;
    }
    CHECK(found);
}

TEST_CASE("orthonorm")
{
    CHECK(orthonorm(corner(unit_matrix(2, 0, 0)), corner(unit_matrix(2, 1, 1))) == 0);
    CHECK(orthonorm(corner(p_theta(0)), corner(p_theta(kPi / 4))) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
    Annihilator B = corner(p_theta(1.1));
    CHECK(orthonorm(B, B) == doctest::Approx(1));

    Rng rng(21);
    for (int it = 0; it < 200; ++it) {
        BlockAlgebra A = random_algebra(rng, 4);
        Element p = random_projection(rng, A), q = random_projection(rng, A), r = random_projection(rng, A);
        auto d = [](const Element& x, const Element& y) {
            return std::max((x * proj_perp(y)).norm(), (proj_perp(x) * y).norm());
        };
        CHECK(d(p, r) <= d(p, q) + d(q, r) + 1e-9);
        double n = orthonorm(corner(p), corner(q));
        CHECK(n >= 0);
        CHECK(n <= 1 + 1e-12);
    }
}

TEST_CASE("orthospectrum examples")
{
    auto s = orthospectrum(p_theta(0), p_theta(kPi / 4));
    REQUIRE(s.size() == 2);
    CHECK(s[0] == 0);
    CHECK(s[1] == doctest::Approx(0.5));

    auto same = orthospectrum(p_theta(0.4), p_theta(0.4));
    REQUIRE(same.size() == 2);
    CHECK(same[1] == doctest::Approx(1));

    auto perp = orthospectrum(p_theta(0), p_theta(kPi / 2));
    CHECK(perp.size() == 1);
}

TEST_CASE("orthospectrum witnesses")
{
    Rng rng(22);
    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A({4});
        Element p = random_projection(rng, A), q = random_projection(rng, A);
        for (double theta : orthospectrum(p, q)) {
            if (theta == 0) continue;
            Element r = orthospectrum_witness(p, q, theta);
            CHECK(proj_leq(r, p));
            CHECK(std::pow((q * r).norm(), 2) == doctest::Approx(theta).epsilon(1e-8));
            CHECK(orthospectrum_side_defect(p, q, r) <= 1e-8);
        }
    }
}

TEST_CASE("projection geometry")
{
    auto g = projection_geometry(p_theta(0), p_theta(kPi / 2));
    CHECK(g.distance == doctest::Approx(1));
    CHECK(g.all_ok());

    auto h = projection_geometry(p_theta(0), p_theta(kPi / 4));
    CHECK(h.pythagoras == doctest::Approx(1).epsilon(1e-12));
    CHECK(h.singleton_spectrum);
    CHECK(h.all_ok());

    Rng rng(23);
    for (int it = 0; it < 300; ++it) {
        BlockAlgebra A = random_algebra(rng, 4);
        Element p = random_projection(rng, A), q = random_projection(rng, A);
        CHECK(projection_geometry(p, q).all_ok());
        Element pq = proj_meet(p, q);
        auto below = projection_geometry(pq, q);
        CHECK(below.pq_perp_sq <= 1e-18);
        if (!is_zero(pq)) CHECK(close(below.nearest, pq, 1e-8));
    }
}

TEST_CASE("separation deltas")
{
    CHECK(separation_delta(0.5, 0.5, LemmaKind::Lem1) == doctest::Approx(0.03125));
    for (double eps : {0.05, 0.1, 0.5})
        for (double lambda : {0.1, 0.5, 1.0}) {
            double d = separation_delta(eps, lambda, LemmaKind::Lem2);
            CHECK((1 - lambda + d + eps / 2) / (1 - d) <= 1 - lambda + eps + 1e-15);
            CHECK(separation_delta(eps, lambda, LemmaKind::Lem3) <= eps / 2);
        }
}

TEST_CASE("separation lemmas on random instances")
{
    Rng rng(24);
    BlockAlgebra A({4});
    const LemmaKind kinds[] = {LemmaKind::Lem1, LemmaKind::Cor1, LemmaKind::Lem2, LemmaKind::Lem3};
    int checked = 0;
    for (int it = 0; it < 200; ++it) {
        Element q = random_projection(rng, A);
        Element c = q * random_positive_contraction(rng, A) * q;
        Element p = random_projection(rng, A);
        Element b = p * random_positive_contraction(rng, A) * p;
        const double eps = rng.uniform(0.05, 0.9);
        for (LemmaKind k : kinds) {
            const double lambda = std::min(1.0, std::pow(((k == LemmaKind::Lem3 ? p : b) * q).norm(), 2));
            if (lambda <= 0) continue;
            auto r = check_separation_lemma(k, {b, c, q, p}, eps, lambda);
            INFO(r.failed_hypothesis);
            REQUIRE(r.hypotheses_met);
            CHECK(r.holds);
            ++checked;
        }
    }
    CHECK(checked > 400);

    Element q = p_theta(0.7);
    auto tight = check_separation_lemma(LemmaKind::Lem1, {q, q, q, q}, 0.3, 1.0);
    CHECK(tight.hypotheses_met);
    CHECK(tight.holds);
    auto unmet = check_separation_lemma(LemmaKind::Lem1, {q, Element::identity(q.algebra()), q, q}, 0.3, 1.0);
    CHECK_FALSE(unmet.hypotheses_met);
}

TEST_CASE("separate")
{
    BlockAlgebra M2({2});
    auto orth = separate(corner(p_theta(0)), corner(p_theta(kPi / 2)), 0.1);
    CHECK(orth.ok);
    CHECK(orth.D == corner(p_theta(kPi / 2)));

    BlockAlgebra A({2, 2});
    Element pb = Element::zero(A), pc = Element::zero(A);
    pb.block(0) = p_theta(0).block(0);
    pb.block(1) = p_theta(0).block(0);
    pc.block(0) = p_theta(kPi / 4).block(0);
    pc.block(1) = p_theta(kPi / 4).block(0);
    auto r = separate(corner(pb), corner(pc), 0.1);
    CHECK(r.ok);
    CHECK(r.bd <= 0.1 + 1e-9);
    CHECK(r.cd_sq >= 1 - r.lambda - 0.1 - 1e-9);

    CHECK_THROWS_AS(separate(corner(p_theta(0)), corner(p_theta(0)), 0.1), MatError);
    CHECK_THROWS_AS(separate(corner(p_theta(0)), corner(Element::zero(M2)), 0.1), MatError);

    Rng rng(25);
    for (int it = 0; it < 60; ++it) {
        BlockAlgebra X({4});
        Annihilator B = corner(random_projection_with_ranks(rng, X, {rng.between(1, 2)}));
        Annihilator C = corner(random_projection_with_ranks(rng, X, {rng.between(1, 2)}));
        double eps = std::vector<double>{0.05, 0.1, 0.2}[it % 3];
        if (std::pow(orthonorm(B, C), 2) >= 1 - 1e-9) continue;
        auto s = separate(B, C, eps);
        INFO("lambda " << s.lambda << " mu " << s.mu << " bd " << s.bd << " cd " << s.cd_sq << " eps " << eps);
        CHECK(s.ok);
    }
}

TEST_CASE("epsilon_separate")
{
    Rng rng(26);
    for (int it = 0; it < 60; ++it) {
        BlockAlgebra X({4});
        Element pc = random_projection_with_ranks(rng, X, {rng.between(2, 4)});
        Element pb = proj_meet(pc, random_projection_with_ranks(rng, X, {3}));
        if (same_projection(pb, pc)) continue;
        double eps = std::vector<double>{0.05, 0.1, 0.2}[it % 3];
        auto s = epsilon_separate(corner(pb), corner(pc), eps);
        CHECK(s.ok);
        CHECK(!is_zero(s.D.support));
        CHECK(proj_leq(s.D.support, pc));
        CHECK(s.bd <= eps + 1e-9);
    }
    Annihilator C = corner(p_theta(0.2));
    CHECK_THROWS_AS(epsilon_separate(C, C, 0.1), MatError);
}

TEST_CASE("gamma and sep")
{
    Rng rng(27);
    Element inv = random_positive_contraction(rng, BlockAlgebra({3})) + Element::identity(BlockAlgebra({3}));
    CHECK(gamma(inv) == 1);
    CHECK(gamma(unit_matrix(2, 0, 0)) == 0);
    CHECK(gamma(Element::identity(BlockAlgebra({2}))) == 1);
    CHECK_THROWS_AS(gamma(Element::zero(BlockAlgebra({2}))), MatError);
    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A = random_algebra(rng, 4);
        Element b = random_projection(rng, A);
        if (is_zero(b)) continue;
        b = b * random_positive_contraction(rng, A) * b;
        if (is_zero(b)) continue;
        double g = gamma(b);
        CHECK(g == sep(biannihilator(b).first));
        CHECK((g == 0 || g == 1));
    }
}

TEST_CASE("homogeneity maps")
{
    const BlockAlgebra M1({1});
    HomogeneityMaps one({Element::identity(M1)});
    Element half = Element::identity(M1) * Complex(0.5);
    CHECK(close(one.F({half}), half));
    CHECK(close(one.G({half}), half));

    HomogeneityMaps two({p_theta(0), p_theta(kPi / 4)});
    CHECK(close(two.F({p_theta(0), p_theta(kPi / 4)}), Element::identity(BlockAlgebra({2}))));
    CHECK(close(two.G({p_theta(0), p_theta(kPi / 4)}), p_theta(0)));

    CHECK_THROWS_AS(HomogeneityMaps({p_theta(0), p_theta(0)}), std::invalid_argument);
    CHECK_THROWS_AS(HomogeneityMaps({Element::block_unit(BlockAlgebra({1, 1}), 0)}), MatError);

    // q near p: F(q) = 1 and G(q) is nonzero
    Rng rng(28);
    for (int it = 0; it < 50; ++it) {
        BlockAlgebra A({3});
        Element u = random_unitary(rng, A);
        std::vector<Element> ps, qs;
        for (int k = 0; k < 3; ++k) ps.push_back(u * unit_matrix(3, k, k) * u.adjoint());
        HomogeneityMaps maps(ps);
        CHECK(close(maps.G(ps), ps[0], 1e-8));
        CHECK(close(maps.F(ps), Element::identity(A), 1e-8));
        Element h = random_hermitian(rng, A) * Complex(0.01);
        for (const Element& p : ps) {
            Element V(A, {unitary_exp(h.block(0))});
            qs.push_back(V * p * V.adjoint());
        }
        CHECK(!is_zero(maps.G(qs)));
        CHECK(close(maps.F(qs), Element::identity(A), 1e-8));
    }
}

TEST_CASE("algebra structure")
{
    BlockAlgebra A({2, 3});
    auto s = algebra_structure(A);
    CHECK(s.central_projections.size() == 4);
    CHECK(s.orders == std::vector<int>{2, 3});
    for (const auto& p : s.central_projections) CHECK(is_central(p));

    BlockAlgebra C({1, 1, 1});
    auto cs = algebra_structure(C);
    CHECK(cs.central_projections.size() == 8);
    auto whole = corner_lattice(corner(Element::identity(C)), 64);
    CHECK(whole.lattice.size() == 8);
    CHECK(check_distributive(whole.lattice).holds);
    for (const auto& p : whole.supports) CHECK(is_central(p));

    BlockAlgebra M2({2});
    Annihilator full = corner(Element::identity(M2));
    CHECK_FALSE(is_abelian(full));
    CHECK(is_abelian(corner(p_theta(0.2))));
    auto cl = corner_lattice(full, 64);
    CHECK_FALSE(check_distributive(cl.lattice).holds);

    Rng rng(29);
    for (int it = 0; it < 30; ++it) {
        BlockAlgebra X = random_algebra(rng, 3);
        std::vector<int> ranks;
        for (int n : X.blocks) ranks.push_back(rng.between(0, 1));
        Annihilator B = corner(random_projection_with_ranks(rng, X, ranks));
        CHECK(is_abelian(B));
        if (is_zero(B.support)) continue;
        CHECK(check_distributive(corner_lattice(B, 64).lattice).holds);
    }
}

TEST_CASE("xab")
{
    Rng rng(30);
    const double exps[] = {0.5, 1, 2};
    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A({3});
        Element a = random_positive_contraction(rng, A);
        Element pb = random_projection_with_ranks(rng, A, {1});
        Element b = pb * random_positive_contraction(rng, A) * pb;
        double al = exps[rng.below(3)], be = exps[rng.below(3)], ga = exps[rng.below(3)];
        Element y = random_element(rng, A);
        Element vanish = y * proj_perp(range_projection(power(a, al) * b));
        Element generic = random_element(rng, A);
        for (const Element& x : {vanish, generic}) {
            bool lhs = is_zero(x * power(a, al) * power(b, be) * power(a, ga), 1e-10);
            bool rhs = is_zero(x * power(a, al) * b, 1e-10);
            CHECK(lhs == rhs);
        }
        CHECK(is_zero(vanish * power(a, al) * b, 1e-10));
    }
}

TEST_CASE("prp1 and specann")
{
    Rng rng(31);
    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A = random_algebra(rng, 4);
        Element v = random_projection(rng, A);
        Element vp = proj_perp(v);
        Element a = v + vp * random_positive_contraction(rng, A) * vp * Complex(0.9);
        std::vector<Element> S;
        for (int k = 0; k < 2; ++k) {
            Element y = v * random_element(rng, A);
            S.push_back(y * y.adjoint());
        }
        Annihilator bb = annihilator({annihilator(S).support});
        Element b = bb.support * random_element(rng, A) * bb.support;
        CHECK(close(a * b, b));

        Element c = random_positive_contraction(rng, A);
        double r = rng.uniform(0, 0.6), s = r + rng.uniform(0.05, 0.3);
        Element f = functional_calculus(c, ramp_fn(r, s));
        CHECK(proj_leq(biannihilator(f).first.support, spectral_projection(c, RealSet::at_least(r))));
    }
}

TEST_CASE("commutation conditions agree")
{
    Rng rng(32);
    BlockAlgebra A({4});
    int commuting = 0;
    for (int it = 0; it < 200; ++it) {
        Element p = random_projection(rng, A), q = random_projection(rng, A);
        if (it % 2 == 0) {
            Element u = random_unitary(rng, A);
            CMatrix dp = CMatrix::Zero(4, 4), dq = CMatrix::Zero(4, 4);
            for (int k = 0; k < 4; ++k) {
                dp(k, k) = rng.below(2);
                dq(k, k) = rng.below(2);
            }
            p = u * Element(A, {dp}) * u.adjoint();
            q = u * Element(A, {dq}) * u.adjoint();
        }
        bool c1 = (p * q - q * p).norm() <= 1e-9;
        bool c3 = same_projection(proj_meet(p, q), proj_meet(p, proj_join(proj_perp(p), q)));
        bool c2 = same_projection(p, proj_join(proj_meet(p, q), proj_meet(p, proj_perp(q))));
        CHECK(c1 == c3);
        CHECK(c1 == c2);
        commuting += c1;
    }
    CHECK(commuting >= 100);
}

TEST_CASE("sigmapq")
{
    Rng rng(33);
    auto strip = [](std::vector<double> v) {
        std::vector<double> out;
        for (double x : v)
            if (x > 1e-8 && x < 1 - 1e-8) out.push_back(x);
        std::sort(out.begin(), out.end());
        return out;
    };
    for (int it = 0; it < 200; ++it) {
        BlockAlgebra A = random_algebra(rng, 4);
        Element p = random_projection(rng, A), q = random_projection(rng, A);
        auto a = strip(orthospectrum(p, q));
        auto b = strip(orthospectrum(p, proj_perp(q)));
        auto c = strip(orthospectrum(proj_perp(p), q));
        REQUIRE(a.size() == b.size());
        REQUIRE(a.size() == c.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(b[i] - (1 - a[a.size() - 1 - i])) <= 1e-9);
            CHECK(std::abs(c[i] - b[i]) <= 1e-9);
        }
    }
}

TEST_CASE("simlem and transitivity")
{
    Rng rng(34);
    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A = random_algebra(rng, 4);
        Element a = random_element(rng, A) * random_projection(rng, A);
        Element pa = range_projection(a.adjoint());
        Element b = pa * random_element(rng, A) * random_projection(rng, A);
        // {b*}perp perp has support [b], which lies below [a*]
        CHECK(biannihilator(a * b).first == biannihilator(b).first);

        std::vector<int> ranks;
        for (int n : A.blocks) ranks.push_back(rng.between(0, n));
        Annihilator X = corner(random_projection_with_ranks(rng, A, ranks));
        Annihilator Y = corner(random_projection_with_ranks(rng, A, ranks));
        Annihilator Z = corner(random_projection_with_ranks(rng, A, ranks));
        auto xy = equivalent(X, Y), yz = equivalent(Y, Z);
        REQUIRE(xy.holds);
        REQUIRE(yz.holds);
        Element w = *yz.witness * *xy.witness;
        auto [l, r] = biannihilator(w);
        CHECK(l == X);
        CHECK(r == Z);
    }
}

TEST_CASE("semiorthoperspective annihilators are equivalent")
{
    Rng rng(35);
    int found = 0;
    for (int it = 0; it < 40; ++it) {
        BlockAlgebra A({3});
        std::vector<Annihilator> gens{corner(random_projection(rng, A)), corner(random_projection(rng, A))};
        AnnihilatorLattice g;
        try {
            g = generate_annihilator_lattice(gens, 64);
        } catch (const MatError&) {
            continue;
        }
        for (const auto& pb : g.supports)
            for (const auto& pc : g.supports) {
                bool semi = is_zero(proj_meet(pc, proj_perp(pb)), 1e-8) && is_zero(proj_meet(pb, proj_perp(pc)), 1e-8);
                if (!semi) continue;
                ++found;
                CHECK(equivalent(corner(pb), corner(pc)).holds);
                auto [l, r] = biannihilator(pb * pc);
                CHECK(l == corner(pc));
                CHECK(r == corner(pb));
            }
    }
    CHECK(found > 0);
}

TEST_CASE("equivalence is a type relation on central cut-downs")
{
    Rng rng(36);
    for (int it = 0; it < 100; ++it) {
        BlockAlgebra A({2, 3});
        Annihilator X = corner(random_projection(rng, A)), Y = corner(random_projection(rng, A));
        bool whole = equivalent(X, Y).holds;
        bool parts = true;
        for (int i = 0; i < A.count(); ++i) {
            Element z = Element::block_unit(A, i);
            parts = parts && equivalent(corner(X.support * z), corner(Y.support * z)).holds;
        }
        CHECK(whole == parts);
    }
}
