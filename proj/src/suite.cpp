#include "ortholab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "ortholab/fixtures.hpp"
#include "ortholab/generate.hpp"

namespace ortholab {

namespace {

constexpr std::size_t kMaxDumps = 3;

struct Ctx {
    Rng rng;
    const SuiteConfig& cfg;
    PropertyResult& res;

    void record(bool ok, const std::function<Json()>& dump)
    {
        ++res.instances;
        if (ok) return;
        ++res.failed;
        if (res.counterexamples.size() < kMaxDumps) res.counterexamples.push_back(dump());
    }
    int count() const { return cfg.count; }
    double tol() const { return cfg.tol; }
};

struct Property {
    const char* module;
    const char* name;
    void (*run)(Ctx&);
};

Json lat(const Ortholattice& L) { return Json{{"lattice", lattice_to_json(L)}}; }

Json names_json(const Ortholattice& L, std::initializer_list<Elem> es)
{
    Json out = Json::array();
    for (Elem e : es) out.push_back(L.name(e));
    return out;
}

std::vector<Ortholattice> fixture_lattices()
{
    std::vector<Ortholattice> out;
    for (const Fixture& f : fixtures())
        if (f.kind == FixtureKind::Lattice) out.push_back(lattice_from_json(f.payload));
    return out;
}

BlockAlgebra random_algebra(Rng& rng, int max_block)
{
    std::vector<int> blocks(rng.between(1, 2));
    for (int& b : blocks) b = rng.between(1, max_block);
    return BlockAlgebra(blocks);
}

Element power(const Element& a, double t)
{
    return functional_calculus(a, [t](double x) { return x <= 0 ? 0.0 : std::pow(x, t); });
}

Json elems(std::initializer_list<std::pair<const char*, const Element*>> named)
{
    Json out = Json::object();
    for (auto [k, e] : named) out[k] = element_to_json(*e);
    return out;
}

// ------------------------------------------------------------ lattice-core

void orthomodularity_agreement(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_ortholattice(c.rng, 24);
        auto conds = orthomodularity_conditions(L);
        bool ok = std::all_of(conds.begin(), conds.end(), [&](bool b) { return b == conds[0]; });
        c.record(ok, [&] {
            Json j = lat(L);
            j["conditions"] = conds;
            return j;
        });
    }
}

void classify_chain(Ctx& c)
{
    auto check = [&](const Ortholattice& L) {
        LatticeClassification k = classify(L);
        bool ok = (!k.boolean.holds || k.distributive.holds) && (!k.distributive.holds || k.modular.holds) &&
                  (!k.modular.holds || k.orthomodular.holds) && (!k.orthomodular.holds || k.separative.holds);
        for (const Flag* f : {&k.separative, &k.orthomodular, &k.modular, &k.distributive})
            ok = ok && f->holds == f->witness.empty();
        c.record(ok, [&] {
            Json j = lat(L);
            j["classification"] = classification_report(L);
            return j;
        });
    };
    for (const Ortholattice& L : fixture_lattices()) check(L);
    for (int i = 0; i < c.count(); ++i) check(random_ortholattice(c.rng, 24));
}

void central_distributivity(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_separative_lattice(c.rng, 24);
        ElemSet C = centre(L);
        bool closed = true;
        for (Elem a : members(C))
            for (Elem b : members(C)) closed = closed && contains(C, L.join(a, b));
        ElemSet fam = random_central_subset(c.rng, L, C);
        Elem j = L.join_of(fam);
        std::optional<Elem> bad;
        for (Elem q = 0; q < L.size() && !bad; ++q) {
            Elem rhs = L.zero();
            for (Elem a : members(fam)) rhs = L.join(rhs, L.meet(q, a));
            if (L.meet(q, j) != rhs || q != L.join(L.meet(q, j), L.meet(q, L.perp(j)))) bad = q;
        }
        c.record(closed && !bad, [&] {
            Json d = lat(L);
            d["centre_join_closed"] = closed;
            d["family"] = element_set_to_json(L, fam)["members"];
            if (bad) d["q"] = L.name(*bad);
            return d;
        });
    }
}

void central_product(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_ortholattice(c.rng, 24);
        ElemSet C = centre(L);
        ElemSet fam = random_central_orthogonal_family(c.rng, L, C);
        std::vector<Elem> parts = members(fam);
        Elem top = L.join_of(fam);
        auto image = [&](Elem x) {
            std::vector<Elem> t;
            for (Elem p : parts) t.push_back(L.meet(x, p));
            return t;
        };
        std::size_t product_size = 1;
        for (Elem p : parts) product_size *= static_cast<std::size_t>(count(L.down(p)));
        std::set<std::vector<Elem>> seen;
        bool ok = true;
        auto dom = members(L.down(top));
        for (Elem x : dom) {
            auto t = image(x);
            Elem back = L.zero();
            for (Elem e : t) back = L.join(back, e);
            ok = ok && back == x;
            seen.insert(t);
        }
        ok = ok && seen.size() == dom.size() && seen.size() == product_size;
        for (Elem x : dom)
            for (Elem y : dom) {
                auto tx = image(x), ty = image(y);
                bool pointwise = true;
                for (std::size_t a = 0; a < parts.size(); ++a) pointwise = pointwise && L.leq(tx[a], ty[a]);
                ok = ok && L.leq(x, y) == pointwise;
            }
        c.record(ok, [&] {
            Json d = lat(L);
            d["family"] = element_set_to_json(L, fam)["members"];
            return d;
        });
    }
}

void central_cover_meet(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_ortholattice(c.rng, 24);
        ElemSet C = centre(L);
        auto cov = central_covers(L);
        std::optional<std::pair<Elem, Elem>> bad;
        for (Elem p : members(C))
            for (Elem q = 0; q < L.size() && !bad; ++q)
                if (cov[L.meet(p, q)] != L.meet(p, cov[q])) bad = {p, q};
        c.record(!bad, [&] {
            Json d = lat(L);
            d["pair"] = names_json(L, {bad->first, bad->second});
            return d;
        });
    }
}

void orthoperspectivity_conditions(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_ortholattice(c.rng, 24);
        Relation R = perspectivity(L).ortho;
        bool cond2 = true, cond3 = true;
        for (Elem p = 0; p < L.size(); ++p)
            for (Elem q : members(L.down(p))) {
                if (L.meet(L.perp(q), p) == L.zero() && !R(p, q)) cond2 = false;
                if (!R(q, rel_perp(L, p, rel_perp(L, p, q)))) cond3 = false;
            }
        c.record(cond2 == cond3, [&] {
            Json d = lat(L);
            d["cond2"] = cond2;
            d["cond3"] = cond3;
            return d;
        });
    }
}

void semiorthoperspective_corners(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_ortholattice(c.rng, 24);
        Perspectivity P = perspectivity(L);
        std::vector<bool> eq(L.size());
        for (Elem p = 0; p < L.size(); ++p) eq[p] = rel_elements(L, p) == L.down(p);
        std::optional<std::pair<Elem, Elem>> bad;
        for (Elem p = 0; p < L.size() && !bad; ++p)
            for (Elem q = 0; q < L.size() && !bad; ++q) {
                if (!eq[p] || !eq[q]) continue;
                Elem p1 = rel_perp(L, p, L.meet(p, L.perp(q)));
                Elem q1 = rel_perp(L, q, L.meet(q, L.perp(p)));
                bool above = false, below = false;
                for (Elem r : members(L.up(p))) above = above || P.semiortho(r, q);
                for (Elem s : members(L.down(q))) below = below || P.semiortho(p, s);
                if (!P.semiortho(p1, q1) || (above && !below)) bad = {p, q};
            }
        c.record(!bad, [&] {
            Json d = lat(L);
            d["pair"] = names_json(L, {bad->first, bad->second});
            return d;
        });
    }
}

void completion_is_ortholattice(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        const int m = c.rng.between(1, 8);
        PreorthogonalitySpec spec = random_preorthogonality(c.rng, m);
        Completion comp;
        try {
            comp = complete_by_cuts(spec);
        } catch (const LatticeError&) {
            continue;  // more than 64 closed sets
        }
        std::string axiom = "valid";
        try {
            build_lattice(comp.lattice.spec());
        } catch (const LatticeError& e) {
            axiom = e.axiom();
        }
        bool embedding = true;
        for (int s = 0; s < m; ++s)
            for (int t = 0; t < m; ++t) {
                bool induced = true;
                for (int u = 0; u < m; ++u)
                    if (spec.rel[t][u] && !spec.rel[s][u]) induced = false;
                embedding = embedding && comp.lattice.leq(comp.embedding[s], comp.embedding[t]) == induced;
            }
        c.record(axiom == "valid" && embedding, [&] {
            return Json{{"m", m}, {"rel", spec.rel}, {"axiom", axiom}, {"embedding_ok", embedding}};
        });
    }
}

void central_unique_complements(Ctx& c)
{
    int seen = 0;
    for (int attempt = 0; seen < c.count() && attempt < 50 * c.count(); ++attempt) {
        Ortholattice L = random_ortholattice(c.rng, 24);
        if (!check_orthomodular(L).holds) continue;
        ++seen;
        ElemSet C = centre(L);
        std::optional<Elem> bad;
        for (Elem p = 0; p < L.size() && !bad; ++p)
            if (contains(C, p) != (complements(L, p) == bit(L.perp(p)))) bad = p;
        c.record(!bad, [&] {
            Json d = lat(L);
            d["p"] = L.name(*bad);
            return d;
        });
    }
}

void lattice_axioms(Ctx& c)
{
    auto check = [&](const std::string& source, const Json& body) {
        std::string axiom = "valid";
        Json witness = Json::array();
        try {
            lattice_from_json(body);
        } catch (const LatticeError& e) {
            axiom = e.axiom();
            LatticeSpec s = lattice_spec_from_json(body);
            for (Elem w : e.witness())
                witness.push_back(w >= 0 && w < static_cast<int>(s.names.size()) ? Json(s.names[w]) : Json(w));
        } catch (const IoError& e) {
            axiom = "parse-error";
            witness.push_back(e.what());
        }
        c.record(axiom == "valid", [&] { return Json{{"source", source}, {"axiom", axiom}, {"witness", witness}}; });
    };
    for (const Fixture& f : fixtures())
        if (f.kind == FixtureKind::Lattice) check(f.id, f.payload);
    for (const auto& [source, body] : c.cfg.lattices) check(source, body);
}

// ------------------------------------------------------------ typedecomp

std::vector<ElemSet> candidate_ideals(Rng& rng, const Ortholattice& L)
{
    std::vector<ElemSet> out{bit(L.zero()), L.all()};
    for (TypeClass cls : {TypeClass::D, TypeClass::M, TypeClass::O, TypeClass::EQ})
        for (TypeMode mode : {TypeMode::Full, TypeMode::Relative}) out.push_back(type_class_ideal(L, cls, mode));
    ElemSet cen = centre(L);
    auto cm = members(cen);
    out.push_back(L.down(cm[rng.below(static_cast<int>(cm.size()))]));
    out.push_back(random_central_subset(rng, L, cen) | bit(L.zero()));
    return out;
}

Json ideal_dump(const Ortholattice& L, ElemSet T)
{
    Json d = lat(L);
    d["ideal"] = element_set_to_json(L, T)["members"];
    return d;
}

void decomposition_unique(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_separative_lattice(c.rng, 24);
        CentreData C = centre_data(L);
        for (ElemSet T : candidate_ideals(c.rng, L)) {
            if (!is_type_ideal(L, T, c.cfg.depth).holds) continue;
            CentralPair d = decompose(L, T);
            bool ok = lower_part_conditions(L, C, T, d.p) && upper_part_conditions(L, C, T, d.q);
            for (Elem z : members(C.centre)) {
                if (lower_part_conditions(L, C, T, z) && z != d.p) ok = false;
                if (upper_part_conditions(L, C, T, z) && z != d.q) ok = false;
            }
            c.record(ok, [&] { return ideal_dump(L, T); });
        }
    }
}

template <class F>
void order_dense_ideals(Ctx& c, F&& check)
{
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_separative_lattice(c.rng, 24);
        for (ElemSet T : candidate_ideals(c.rng, L)) {
            if (!is_type_ideal(L, T, c.cfg.depth).holds || !density(L, T).order_dense) continue;
            c.record(check(L, T), [&] { return ideal_dump(L, T); });
        }
    }
}

void homogeneous_below_upper_part(Ctx& c)
{
    order_dense_ideals(c, [](const Ortholattice& L, ElemSet T) {
        Elem sub = L.zero();
        for (const auto& hp : homogeneous_parts(L, T)) sub = L.join(sub, hp.part);
        return L.leq(sub, decompose(L, T).q);
    });
}

void homogeneous_join_one(Ctx& c)
{
    order_dense_ideals(c, [](const Ortholattice& L, ElemSet T) {
        CentreData C = centre_data(L);
        Elem joined = L.zero();
        for (const auto& hp : homogeneous_parts(L, T)) {
            if (!L.orthogonal(joined, hp.part) || !is_homogeneous(L, C, T, hp.part, hp.order)) return false;
            joined = L.join(joined, hp.part);
        }
        return joined == L.one();
    });
}

bool transitive(const Relation& R)
{
    for (Elem a = 0; a < R.n; ++a)
        for (Elem b : members(R.rows[a]))
            if ((R.rows[b] & ~R.rows[a]) != 0) return false;
    return true;
}

void finite_type_relation_modular(Ctx& c)
{
    auto check = [&](const Ortholattice& L) {
        Relation persp = perspectivity(L).persp;
        for (const Relation& R : {equality_relation(L), central_cover_relation(L), persp}) {
            bool weaker = true;
            for (Elem p = 0; p < L.size(); ++p) weaker = weaker && (persp.rows[p] & ~R.rows[p]) == 0;
            if (!weaker || !is_symmetric(R) || !transitive(R) || !relation_finiteness(L, R).finite ||
                !is_type_relation(L, R, c.cfg.depth).holds)
                continue;
            bool ok = check_modular(L).holds && R == persp;
            c.record(ok, [&] { return lat(L); });
        }
    };
    for (const Ortholattice& L : fixture_lattices()) check(L);
    for (int i = 0; i < c.count(); ++i) check(random_ortholattice(c.rng, 20));
}

void orthomodular_no_type_IV(Ctx& c)
{
    for (const Ortholattice& L : fixture_lattices())
        if (check_orthomodular(L).holds) c.record(type_profile(L).p_IV == L.zero(), [&] { return lat(L); });
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_ortholattice(c.rng, 24);
        if (!check_orthomodular(L).holds) continue;
        c.record(type_profile(L).p_IV == L.zero(), [&] { return lat(L); });
    }
}

// ------------------------------------------------------------ matalg

void xab(Ctx& c)
{
    const double exps[] = {0.5, 1, 2};
    const BlockAlgebra A({3});
    for (int i = 0; i < c.count(); ++i) {
        Element a = random_positive_contraction(c.rng, A);
        Element pb = random_projection_with_ranks(c.rng, A, {1});
        Element b = pb * random_positive_contraction(c.rng, A) * pb;
        const double al = exps[c.rng.below(3)], be = exps[c.rng.below(3)], ga = exps[c.rng.below(3)];
        Element vanish = random_element(c.rng, A) * proj_perp(range_projection(power(a, al) * b));
        Element generic = random_element(c.rng, A);
        bool ok = is_zero(vanish * power(a, al) * b, 1e-10);
        for (const Element& x : {vanish, generic}) {
            bool lhs = is_zero(x * power(a, al) * power(b, be) * power(a, ga), 1e-10);
            bool rhs = is_zero(x * power(a, al) * b, 1e-10);
            ok = ok && lhs == rhs;
        }
        c.record(ok, [&] {
            Json d = elems({{"a", &a}, {"b", &b}, {"x", &vanish}});
            d["exponents"] = {al, be, ga};
            return d;
        });
    }
}

void unit_on_biannihilator(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        BlockAlgebra A = random_algebra(c.rng, 4);
        Element v = random_projection(c.rng, A);
        Element vp = proj_perp(v);
        Element a = v + vp * random_positive_contraction(c.rng, A) * vp * Complex(0.9);
        std::vector<Element> S;
        for (int k = 0; k < 2; ++k) {
            Element y = v * random_element(c.rng, A);
            S.push_back(y * y.adjoint());
        }
        Annihilator bb = annihilator({annihilator(S).support});
        Element b = bb.support * random_element(c.rng, A) * bb.support;
        c.record((a * b - b).norm() <= c.tol(), [&] { return elems({{"a", &a}, {"b", &b}}); });
    }
}

void spectral_annihilator_containment(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        BlockAlgebra A = random_algebra(c.rng, 4);
        Element a = random_positive_contraction(c.rng, A);
        const double r = c.rng.uniform(0, 0.6), s = r + c.rng.uniform(0.05, 0.3);
        Element f = functional_calculus(a, ramp_fn(r, s));
        bool ok = proj_leq(biannihilator(f).first.support, spectral_projection(a, RealSet::at_least(r)));
        c.record(ok, [&] {
            Json d = elems({{"a", &a}});
            d["ramp"] = {r, s};
            return d;
        });
    }
}

void commutation_conditions(Ctx& c)
{
    const BlockAlgebra A({4});
    for (int i = 0; i < c.count(); ++i) {
        Element p = random_projection(c.rng, A), q = random_projection(c.rng, A);
        if (i % 2 == 0) {
            Element u = random_unitary(c.rng, A);
            CMatrix dp = CMatrix::Zero(4, 4), dq = CMatrix::Zero(4, 4);
            for (int k = 0; k < 4; ++k) {
                dp(k, k) = c.rng.below(2);
                dq(k, k) = c.rng.below(2);
            }
            p = u * Element(A, {dp}) * u.adjoint();
            q = u * Element(A, {dq}) * u.adjoint();
        }
        bool c1 = (p * q - q * p).norm() <= c.tol();
        bool c2 = same_projection(p, proj_join(proj_meet(p, q), proj_meet(p, proj_perp(q))));
        bool c3 = same_projection(proj_meet(p, q), proj_meet(p, proj_join(proj_perp(p), q)));
        c.record(c1 == c2 && c1 == c3, [&] { return elems({{"p", &p}, {"q", &q}}); });
    }
}

void complementary_spectra(Ctx& c)
{
    auto strip = [](const std::vector<double>& v) {
        std::vector<double> out;
        for (double x : v)
            if (x > kClusterGap && x < 1 - kClusterGap) out.push_back(x);
        return out;
    };
    for (int i = 0; i < c.count(); ++i) {
        BlockAlgebra A = random_algebra(c.rng, 4);
        Element p = random_projection(c.rng, A), q = random_projection(c.rng, A);
        auto a = strip(orthospectrum(p, q)), b = strip(orthospectrum(p, proj_perp(q)));
        bool ok = a.size() == b.size();
        for (std::size_t k = 0; ok && k < a.size(); ++k) ok = std::abs(b[k] - (1 - a[a.size() - 1 - k])) <= c.tol();
        c.record(ok, [&] { return elems({{"p", &p}, {"q", &q}}); });
    }
}

void equivalence_transitive(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        BlockAlgebra A = random_algebra(c.rng, 4);
        Element a = random_element(c.rng, A) * random_projection(c.rng, A);
        Element b = range_projection(a.adjoint()) * random_element(c.rng, A) * random_projection(c.rng, A);
        bool ok = biannihilator(a * b).first == biannihilator(b).first;

        std::vector<int> ranks;
        for (int n : A.blocks) ranks.push_back(c.rng.between(0, n));
        Annihilator X = corner(random_projection_with_ranks(c.rng, A, ranks));
        Annihilator Y = corner(random_projection_with_ranks(c.rng, A, ranks));
        Annihilator Z = corner(random_projection_with_ranks(c.rng, A, ranks));
        auto xy = equivalent(X, Y), yz = equivalent(Y, Z);
        ok = ok && xy.holds && yz.holds;
        if (ok) {
            auto [l, r] = biannihilator(*yz.witness * *xy.witness);
            ok = l == X && r == Z;
        }
        c.record(ok, [&] { return elems({{"a", &a}, {"b", &b}, {"X", &X.support}, {"Y", &Y.support}, {"Z", &Z.support}}); });
    }
}

void semiorthoperspective_equivalent(Ctx& c)
{
    const BlockAlgebra A({3});
    for (int i = 0; i < c.count(); ++i) {
        std::vector<Annihilator> gens{corner(random_projection(c.rng, A)), corner(random_projection(c.rng, A))};
        AnnihilatorLattice g;
        try {
            g = generate_annihilator_lattice(gens, 64);
        } catch (const MatError&) {
            continue;
        }
        for (const Element& pb : g.supports)
            for (const Element& pc : g.supports) {
                bool semi = is_zero(proj_meet(pc, proj_perp(pb)), 1e-8) && is_zero(proj_meet(pb, proj_perp(pc)), 1e-8);
                if (!semi) continue;
                auto [l, r] = biannihilator(pb * pc);
                bool ok = equivalent(corner(pb), corner(pc)).holds && l == corner(pc) && r == corner(pb);
                c.record(ok, [&] { return elems({{"p_B", &pb}, {"p_C", &pc}}); });
            }
    }
}

void equivalence_type_relation(Ctx& c)
{
    const BlockAlgebra A({2, 3});
    for (int i = 0; i < c.count(); ++i) {
        Annihilator X = corner(random_projection(c.rng, A)), Y = corner(random_projection(c.rng, A));
        bool whole = equivalent(X, Y).holds, parts = true;
        for (int k = 0; k < A.count(); ++k) {
            Element z = Element::block_unit(A, k);
            parts = parts && equivalent(corner(X.support * z), corner(Y.support * z)).holds;
        }
        c.record(whole == parts, [&] { return elems({{"X", &X.support}, {"Y", &Y.support}}); });
    }
}

void orthonorm_triangle(Ctx& c)
{
    auto dist = [](const Element& x, const Element& y) {
        return std::max((x * proj_perp(y)).norm(), (proj_perp(x) * y).norm());
    };
    for (int i = 0; i < c.count(); ++i) {
        BlockAlgebra A = random_algebra(c.rng, 4);
        Element p = random_projection(c.rng, A), q = random_projection(c.rng, A), r = random_projection(c.rng, A);
        c.record(dist(p, r) <= dist(p, q) + dist(q, r) + c.tol(),
                 [&] { return elems({{"p", &p}, {"q", &q}, {"r", &r}}); });
    }
}

// ------------------------------------------------------------ cellfun

Json cells(std::initializer_list<std::pair<const char*, const CellFunction*>> named)
{
    Json out = Json::object();
    for (auto [k, f] : named) out[k] = cellfun_to_json(*f);
    return out;
}

void galois_laws(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        CellFunction p = random_projection_map(c.rng, 2);
        CellFunction q = pointwise_join(p, random_projection_map(c.rng, 2));
        bool ok = pointwise_leq(interior(p), interior(q)) && pointwise_leq(closure(p), closure(q)) &&
                  interior(interior(p)) == interior(p) && closure(closure(p)) == closure(p) &&
                  interior(pointwise_perp(p)) == pointwise_perp(closure(p));
        c.record(ok, [&] { return cells({{"p", &p}, {"q", &q}}); });
    }
}

void finite_spectrum_range(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        CellFunction f = random_projection_map(c.rng, 3);
        for (Element& v : f.values) {
            Element x = random_element(c.rng, v.algebra()) * v;
            v = x * x.adjoint();
        }
        auto cont = semicontinuity(f).continuity;
        auto r = semicontinuity(range(f));
        bool ok = true;
        for (int k = 0; k < f.cell_count(); ++k) {
            ok = ok && eig_hermitian(f.values[k]).values.size() <= 3;
            if (cont[k]) ok = ok && r.lsc_at[k];
        }
        c.record(ok, [&] { return cells({{"f", &f}}); });
    }
}

bool continuity_contained(const CellFunction& p, const CellFunction& q)
{
    CellComplex cx = refine(p.complex, q.complex);
    auto cp = semicontinuity(p.on(cx)).continuity, cq = semicontinuity(q.on(cx)).continuity;
    for (std::size_t k = 0; k < cp.size(); ++k)
        if (cp[k] && !cq[k]) return false;
    return true;
}

void dense_equality_continuity(Ctx& c)
{
    auto check = [&](const CellFunction& p, const CellFunction& q) {
        if (!semicontinuity(p).lsc || !semicontinuity(q).lsc || !pointwise_leq(p, q) || !d_equal(p, q)) return;
        c.record(continuity_contained(p, q), [&] { return cells({{"p", &p}, {"q", &q}}); });
    };
    std::vector<CellFunction> grid;
    for (const Fixture& f : fixtures())
        if (f.kind == FixtureKind::Cellfun) {
            CellFunction g = cellfun_from_json(f.payload);
            for (const CellFunction& h : {g, interior(g), closure(g), regularize(g)}) grid.push_back(h);
        }
    for (const CellFunction& p : grid)
        for (const CellFunction& q : grid) check(p, q);
    for (int i = 0; i < c.count(); ++i) {
        CellFunction q = interior(random_projection_map(c.rng, 2));
        CellFunction p = q;
        for (int k = 0; k < p.cell_count(); k += 2)
            if (c.rng.chance(0.5)) p.values[k] = Element::zero(p.algebra());
        check(p, q);
    }
}

void cell_equivalence_relation(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        CellFunction a = regularize(interior(random_projection_map(c.rng, 3)));
        CellFunction b = regularize(interior(random_projection_map(c.rng, 3)));
        CellFunction d = regularize(interior(random_projection_map(c.rng, 3)));
        const bool ab = cell_equivalent(a, b), bd = cell_equivalent(b, d);
        bool ok = cell_equivalent(a, a) && ab == cell_equivalent(b, a);
        if (ab && bd) ok = ok && cell_equivalent(a, d);
        if (ab) ok = ok && cell_central_cover(a) == cell_central_cover(b);
        c.record(ok, [&] { return cells({{"a", &a}, {"b", &b}, {"c", &d}}); });
    }
}

void lsc_joins(Ctx& c)
{
    for (int i = 0; i < c.count(); ++i) {
        const int k = c.rng.between(2, 4);
        std::vector<CellFunction> fam;
        for (int j = 0; j < k; ++j) fam.push_back(interior(random_projection_map(c.rng, 2)));
        CellFunction joined = fam[0];
        for (int j = 1; j < k; ++j) joined = pointwise_join(joined, fam[j]);
        c.record(semicontinuity(joined).lsc, [&] {
            Json d = Json::array();
            for (const CellFunction& f : fam) d.push_back(cellfun_to_json(f));
            return Json{{"family", d}};
        });
    }
}

// ------------------------------------------------------------ cli

void round_trip(Ctx& c)
{
    for (const Fixture& f : fixtures()) c.record(fixture_round_trips(f), [&] { return Json{{"fixture", f.id}}; });
    for (int i = 0; i < c.count(); ++i) {
        Ortholattice L = random_ortholattice(c.rng, 24);
        Json j = lattice_to_json(L);
        c.record(lattice_spec_from_json(Json::parse(j.dump())) == L.spec(), [&] { return lat(L); });

        BlockAlgebra A = random_algebra(c.rng, 4);
        Element e = random_element(c.rng, A);
        Element back = element_from_json(Json::parse(element_to_json(e).dump()));
        bool same = back.algebra() == e.algebra();
        for (int k = 0; same && k < e.count(); ++k) same = back.block(k) == e.block(k);
        c.record(same, [&] { return elems({{"element", &e}}); });

        CellFunction f = random_projection_map(c.rng, 2);
        CellFunction g = cellfun_from_json(Json::parse(cellfun_to_json(f).dump()));
        bool fsame = g.complex == f.complex;
        for (std::size_t k = 0; fsame && k < f.values.size(); ++k) fsame = g.values[k].block(0) == f.values[k].block(0);
        c.record(fsame, [&] { return cells({{"f", &f}}); });
    }
}

const std::vector<Property>& registry()
{
    static const std::vector<Property> all{
        {"lattice", "lattice_axioms", lattice_axioms},
        {"lattice", "orthomodularity_conditions_agree", orthomodularity_agreement},
        {"lattice", "classification_chain", classify_chain},
        {"lattice", "central_families_distribute", central_distributivity},
        {"lattice", "central_orthogonal_product", central_product},
        {"lattice", "central_cover_of_meet", central_cover_meet},
        {"lattice", "orthoperspectivity_conditions", orthoperspectivity_conditions},
        {"lattice", "semiorthoperspective_corners", semiorthoperspective_corners},
        {"lattice", "completion_is_ortholattice", completion_is_ortholattice},
        {"lattice", "central_iff_unique_complement", central_unique_complements},
        {"typedecomp", "decomposition_unique", decomposition_unique},
        {"typedecomp", "homogeneous_below_upper_part", homogeneous_below_upper_part},
        {"typedecomp", "homogeneous_parts_join_to_one", homogeneous_join_one},
        {"typedecomp", "finite_type_relation_forces_modular", finite_type_relation_modular},
        {"typedecomp", "orthomodular_has_no_type_IV", orthomodular_no_type_IV},
        {"matalg", "vanishing_products", xab},
        {"matalg", "unit_on_biannihilator", unit_on_biannihilator},
        {"matalg", "spectral_annihilator_containment", spectral_annihilator_containment},
        {"matalg", "commutation_conditions_agree", commutation_conditions},
        {"matalg", "complementary_spectra", complementary_spectra},
        {"matalg", "equivalence_transitive", equivalence_transitive},
        {"matalg", "semiorthoperspective_equivalent", semiorthoperspective_equivalent},
        {"matalg", "equivalence_type_relation", equivalence_type_relation},
        {"matalg", "orthonorm_triangle", orthonorm_triangle},
        {"cellfun", "galois_laws", galois_laws},
        {"cellfun", "finite_spectrum_range", finite_spectrum_range},
        {"cellfun", "dense_equality_continuity", dense_equality_continuity},
        {"cellfun", "cell_equivalence_relation", cell_equivalence_relation},
        {"cellfun", "lsc_joins", lsc_joins},
        {"cli", "round_trip", round_trip},
    };
    return all;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> suite_properties()
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const Property& p : registry()) out.emplace_back(p.module, p.name);
    return out;
}

SuiteConfig parse_suite_config(const Json& j)
{
    auto bad = [](const std::string& what) -> void { throw IoError("config-parse-error", what); };
    if (!j.is_object()) bad("config must be a JSON object");
    SuiteConfig cfg;
    for (const auto& [key, v] : j.items()) {
        if (key == "seed") {
            if (!v.is_number_unsigned()) bad("seed must be a non-negative integer");
            cfg.seed = v.get<std::uint64_t>();
        } else if (key == "count") {
            if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000000)
                bad("count must be an integer in 0..1000000");
            cfg.count = v.get<int>();
        } else if (key == "depth") {
            if (!v.is_number_integer() || v.get<long long>() < 2 || v.get<long long>() > 6)
                bad("depth must be an integer in 2..6");
            cfg.depth = v.get<int>();
        } else if (key == "tol") {
            if (!v.is_number() || !(v.get<double>() > 0)) bad("tol must be a positive number");
            cfg.tol = v.get<double>();
        } else if (key == "modules") {
            if (!v.is_array()) bad("modules must be an array");
            for (const Json& m : v) {
                if (!m.is_string()) bad("module names must be strings");
                std::string name = m.get<std::string>();
                if (std::find(kSuiteModules.begin(), kSuiteModules.end(), name) == kSuiteModules.end())
                    bad("unknown module '" + name + "'");
                cfg.modules.push_back(name);
            }
        } else {
            bad("unknown key '" + key + "'");
        }
    }
    return cfg;
}

bool SuiteReport::ok() const
{
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.failed == 0; });
}

SuiteReport run_suite(const SuiteConfig& config)
{
    SuiteReport report{config, {}};
    const auto& props = registry();
    for (std::size_t i = 0; i < props.size(); ++i) {
        const Property& p = props[i];
        if (!config.modules.empty() &&
            std::find(config.modules.begin(), config.modules.end(), p.module) == config.modules.end())
            continue;
        PropertyResult res{p.module, p.name, 0, 0, {}};
        Ctx ctx{Rng(config.seed * 0x9e3779b97f4a7c15ULL + i), config, res};
        try {
            p.run(ctx);
        } catch (const std::exception& e) {
            ++res.failed;
            res.counterexamples.push_back(Json{{"exception", e.what()}});
        }
        report.properties.push_back(std::move(res));
    }
    return report;
}

Json suite_report_json(const SuiteReport& r)
{
    Json props = Json::array();
    int failed = 0;
    for (const PropertyResult& p : r.properties) {
        failed += p.failed > 0;
        props.push_back(Json{{"module", p.module},
                             {"property", p.name},
                             {"instances", p.instances},
                             {"passed", p.instances - p.failed},
                             {"failed", p.failed},
                             {"counterexamples", p.counterexamples}});
    }
    Json modules = Json::array();
    for (const std::string& m : kSuiteModules)
        if (r.config.modules.empty() || std::find(r.config.modules.begin(), r.config.modules.end(), m) != r.config.modules.end())
            modules.push_back(m);
    return Json{{"seed", r.config.seed},
                {"count", r.config.count},
                {"depth", r.config.depth},
                {"modules", modules},
                {"tolerances",
                 Json{{"identity", r.config.tol}, {"cluster_gap", kClusterGap}, {"rank", kRankTol}}},
                {"properties", props},
                {"summary", Json{{"properties", r.properties.size()}, {"failed", failed}, {"ok", r.ok()}}}};
}

}  // namespace ortholab
