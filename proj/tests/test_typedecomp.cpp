#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lattice_oracle.hpp"
#include "ortholab/fixtures.hpp"
#include "ortholab/generate.hpp"
#include "ortholab/typedecomp.hpp"

using namespace ortholab;

namespace {

Elem at(const Ortholattice& L, const std::string& label)
{
    Elem e = L.find(label);
    REQUIRE(e >= 0);
    return e;
}

ElemSet set_of(const Ortholattice& L, std::initializer_list<const char*> labels)
{
    ElemSet s = 0;
    for (const char* l : labels) s |= bit(at(L, l));
    return s;
}

std::set<std::string> labels(const Ortholattice& L, ElemSet s)
{
    std::set<std::string> out;
    for (Elem e : members(s)) out.insert(L.name(e));
    return out;
}

// Candidate ideals: the type-class ideals, principal ideals of central
// elements, and the finiteness ideals of equality.
std::vector<ElemSet> candidate_ideals(Rng& rng, const Ortholattice& L)
{
    std::vector<ElemSet> out{bit(L.zero()), L.all()};
    for (TypeClass cls : {TypeClass::D, TypeClass::M, TypeClass::O, TypeClass::EQ})
        for (TypeMode mode : {TypeMode::Full, TypeMode::Relative}) out.push_back(type_class_ideal(L, cls, mode));
    ElemSet cen = centre(L);
    auto cm = members(cen);
    out.push_back(L.down(cm[rng.below(static_cast<int>(cm.size()))]));
    ElemSet sub = random_central_subset(rng, L, cen);
    out.push_back(sub | bit(L.zero()));
    return out;
}

}  // namespace

TEST_CASE("is_type_ideal examples")
{
    Ortholattice B8 = boolean_lattice(3);
    for (Elem p = 0; p < B8.size(); ++p)
        for (int k = 1; k <= 3; ++k) CHECK(is_type_ideal(B8, B8.down(p), k).holds);

    Ortholattice M = mo2();
    CHECK(is_type_ideal(M, set_of(M, {"0", "x"}), 3).holds);

    IdealCheck atoms = is_type_ideal(B8, set_of(B8, {"a", "b", "c"}), 3);
    CHECK_FALSE(atoms.holds);
    CHECK_FALSE(atoms.empty_set_violation);
    CHECK(atoms.witness == std::vector<Elem>{at(B8, "a"), at(B8, "b")});

    // Depth 1 sees only the empty family.
    IdealCheck shallow = is_type_ideal(B8, set_of(B8, {"a", "b", "c"}), 1);
    CHECK_FALSE(shallow.holds);
    CHECK(shallow.empty_set_violation);
    CHECK(shallow.witness.empty());

    CHECK(is_type_ideal(B8, 0, 3).holds);
}

TEST_CASE("power_ideal examples")
{
    Ortholattice B8 = boolean_lattice(3);
    ElemSet T = set_of(B8, {"0", "a", "b", "c"});
    CHECK(contains(power_ideal(B8, T, 3).members, B8.one()));
    CHECK(power_ideal(B8, T, 2).members == (B8.all() & ~bit(B8.one())));
    CHECK(power_ideal(B8, T, 1).members == T);

    Ortholattice M = mo2();
    ElemSet x = set_of(M, {"0", "x"});
    CHECK(power_ideal(M, x, 2).members == x);
}

TEST_CASE("power_ideal keeps type ideals and their central covers")
{
    Rng rng(101);
    for (int i = 0; i < 60; ++i) {
        Ortholattice L = random_separative_lattice(rng, 20);
        CentreData C = centre_data(L);
        for (ElemSet T : candidate_ideals(rng, L)) {
            if (!is_type_ideal(L, T, 3).holds) continue;
            for (int kappa = 1; kappa <= 3; ++kappa) {
                ElemSet P = power_ideal(L, T, kappa).members;
                CHECK((T & ~P) == 0);
                CHECK(is_type_ideal(L, P, 3).holds);
                CHECK(decompose(L, P).q == decompose(L, T).q);
            }
        }
    }
}

TEST_CASE("decompose examples")
{
    Ortholattice B8 = boolean_lattice(3);
    for (Elem p = 0; p < B8.size(); ++p) {
        CentralPair d = decompose(B8, B8.down(p));
        CHECK(d.p == p);
        CHECK(d.q == p);
    }
    Ortholattice M = mo2();
    CentralPair d = decompose(M, set_of(M, {"0", "x"}));
    CHECK(d.p == M.zero());
    CHECK(d.q == M.one());
    for (const Ortholattice& L : {B8, M, fig_h1(), hexagon_o6()}) {
        if (!check_separative(L).holds) continue;
        CentralPair z = decompose(L, bit(L.zero()));
        CHECK(z.p == L.zero());
        CHECK(z.q == L.zero());
    }
    CHECK_THROWS_AS(decompose(hexagon_o6(), bit(0)), TypeError);
    try {
        decompose(hexagon_o6(), bit(0));
    } catch (const TypeError& e) {
        CHECK(e.code() == "host-not-separative");
    }
}

TEST_CASE("decompose satisfies its postconditions and is unique")
{
    Rng rng(103);
    int checked = 0;
    for (int i = 0; i < 80; ++i) {
        Ortholattice L = random_separative_lattice(rng, 24);
        CentreData C = centre_data(L);
        for (ElemSet T : candidate_ideals(rng, L)) {
            if (!is_type_ideal(L, T, 3).holds) continue;
            CentralPair d = decompose(L, T);
            CHECK(lower_part_conditions(L, C, T, d.p));
            CHECK(upper_part_conditions(L, C, T, d.q));
            CHECK(L.leq(d.p, d.q));
            for (Elem c : members(C.centre)) {
                if (lower_part_conditions(L, C, T, c)) CHECK(c == d.p);
                if (upper_part_conditions(L, C, T, c)) CHECK(c == d.q);
            }
            ++checked;
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("type class ideals are type ideals")
{
    Rng rng(107);
    for (int i = 0; i < 60; ++i) {
        Ortholattice L = random_separative_lattice(rng, 20);
        for (TypeClass cls : {TypeClass::D, TypeClass::M, TypeClass::O, TypeClass::EQ})
            for (TypeMode mode : {TypeMode::Full, TypeMode::Relative}) {
                INFO(type_class_name(cls));
                CHECK(is_type_ideal(L, type_class_ideal(L, cls, mode), 3).holds);
            }
    }
}

TEST_CASE("type_class_ideal examples")
{
    Ortholattice M = mo2();
    CHECK(type_class_ideal(M, TypeClass::D, TypeMode::Full) == set_of(M, {"0", "x", "x'", "y", "y'"}));

    Ortholattice H = fig_h1();
    ElemSet eq = type_class_ideal(H, TypeClass::EQ, TypeMode::Full);
    CHECK_FALSE(contains(eq, at(H, "p")));
    CHECK(contains(eq, at(H, "0")));

    Ortholattice B8 = boolean_lattice(3);
    CHECK(type_class_ideal(B8, TypeClass::D, TypeMode::Full) == B8.all());
    CHECK(type_class_ideal(B8, TypeClass::EQ, TypeMode::Full) == B8.all());
    CHECK(type_class_ideal(B8, TypeClass::D, TypeMode::Relative) == B8.all());
}

TEST_CASE("full-mode class ideals agree with brute force on principal ideals")
{
    // Interval checks recomputed from the order table alone; orthomodularity
    // of [p] uses the orthogonal modular law since [p] has no complement.
    auto brute = [](const Ortholattice& L, TypeClass cls) {
        oracle::Table t = oracle::table_of(L);
        ElemSet out = 0;
        for (int top = 0; top < t.n; ++top) {
            std::vector<int> in;
            for (int e = 0; e < t.n; ++e)
                if (t.leq[e][top]) in.push_back(e);
            bool ok = true;
            for (int p : in)
                for (int q : in)
                    for (int r : in) {
                        int lhs = t.meet[p][t.join[q][r]];
                        if (cls == TypeClass::D && lhs != t.join[t.meet[p][q]][t.meet[p][r]]) ok = false;
                        if (cls == TypeClass::M && t.leq[q][p] && lhs != t.join[q][t.meet[p][r]]) ok = false;
                        if (cls == TypeClass::O && t.leq[q][p] && t.leq[q][t.perp[r]] && lhs != t.join[q][t.meet[p][r]])
                            ok = false;
                    }
            if (ok) out |= ortholab::bit(top);
        }
        return out;
    };
    // Frozen regression value for the double of B8.
    Ortholattice D = orthodouble_b8();
    CHECK(type_class_ideal(D, TypeClass::O, TypeMode::Full) == brute(D, TypeClass::O));
    CHECK(labels(D, D.all() & ~type_class_ideal(D, TypeClass::O, TypeMode::Full)) == std::set<std::string>{"1"});
    Decomposition dp = type_profile(D);
    CHECK(dp.p_I == D.one());
    CHECK(dp.p_IV == D.zero());
    CHECK_THROWS_AS(type_profile(hexagon_o6()), TypeError);

    Rng rng(109);
    for (int i = 0; i < 60; ++i) {
        Ortholattice L = random_ortholattice(rng, 20);
        for (TypeClass cls : {TypeClass::D, TypeClass::M, TypeClass::O})
            CHECK(type_class_ideal(L, cls, TypeMode::Full) == brute(L, cls));
    }
}

TEST_CASE("homogeneous_parts examples")
{
    Ortholattice B8 = boolean_lattice(3);
    auto b = homogeneous_parts(B8, set_of(B8, {"0", "a", "b", "c"}));
    REQUIRE(b.size() == 1);
    CHECK(b[0].order == 1);
    CHECK(b[0].part == B8.one());

    Ortholattice M = mo2();
    auto m = homogeneous_parts(M, set_of(M, {"0", "x", "x'", "y", "y'"}));
    REQUIRE(m.size() == 1);
    CHECK(m[0].order == 2);
    CHECK(m[0].part == M.one());
    CHECK(std::set<Elem>(m[0].family.begin(), m[0].family.end()) == std::set<Elem>{at(M, "x"), at(M, "x'")});

    Ortholattice P = product(boolean_lattice(2), M);
    auto parts = homogeneous_parts(P, type_class_ideal(P, TypeClass::D, TypeMode::Full));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].order == 1);
    CHECK(P.name(parts[0].part) == "(1,0)");
    CHECK(parts[1].order == 2);
    CHECK(P.name(parts[1].part) == "(0,1)");

    CHECK_THROWS_AS(homogeneous_parts(M, set_of(M, {"0", "x"})), TypeError);
}

TEST_CASE("homogeneous parts cover 1 with valid witnesses")
{
    Rng rng(113);
    int runs = 0;
    for (int i = 0; i < 80; ++i) {
        Ortholattice L = random_separative_lattice(rng, 24);
        CentreData C = centre_data(L);
        for (ElemSet T : candidate_ideals(rng, L)) {
            if (!is_type_ideal(L, T, 3).holds || !density(L, T).order_dense) continue;
            auto parts = homogeneous_parts(L, T);
            Elem joined = L.zero();
            Elem sub = L.zero();
            for (const auto& hp : parts) {
                CHECK(contains(C.centre, hp.part));
                CHECK(L.orthogonal(joined, hp.part));
                joined = L.join(joined, hp.part);
                CHECK(static_cast<int>(hp.family.size()) == hp.order);
                Elem fj = L.zero();
                for (Elem f : hp.family) {
                    CHECK(contains(T, f));
                    CHECK(C.cover[f] == hp.part);
                    CHECK(L.orthogonal(fj, f));
                    fj = L.join(fj, f);
                }
                CHECK(fj == hp.part);
                CHECK(is_homogeneous(L, C, T, hp.part, hp.order));
                sub = L.join(sub, hp.part);
            }
            CHECK(joined == L.one());
            CHECK(L.leq(sub, decompose(L, T).q));
            ++runs;
        }
    }
    CHECK(runs > 100);
}

TEST_CASE("type_profile examples")
{
    Ortholattice B8 = boolean_lattice(3);
    Decomposition b = type_profile(B8);
    CHECK(b.p_I == B8.one());
    CHECK(b.p_II == B8.zero());
    CHECK(b.p_III == B8.zero());
    CHECK(b.p_IV == B8.zero());
    REQUIRE(b.p_I_n.size() == 3);
    CHECK(b.p_I_n[0] == std::make_pair(1, B8.one()));
    CHECK(b.p_I_n[1].second == B8.zero());

    Ortholattice M = mo2();
    Decomposition m = type_profile(M);
    CHECK(m.p_I == M.one());
    REQUIRE(m.p_I_n.size() == 2);
    CHECK(m.p_I_n[0] == std::make_pair(1, M.zero()));
    CHECK(m.p_I_n[1] == std::make_pair(2, M.one()));
    CHECK(m.p_IV == M.zero());

    CHECK(max_orthogonal_family(boolean_lattice(4)) == 4);
    CHECK(max_orthogonal_family(mo_lattice(3)) == 2);
}

TEST_CASE("type_profile parts are orthogonal central elements joining to 1")
{
    Rng rng(127);
    for (int i = 0; i < 80; ++i) {
        Ortholattice L = random_separative_lattice(rng, 24);
        Decomposition d = type_profile(L);
        ElemSet cen = centre(L);
        for (auto family : {std::array<Elem, 4>{d.p_I, d.p_II, d.p_III, d.p_IV},
                            std::array<Elem, 4>{d.p_I_rel, d.p_II_rel, d.p_III_rel, d.p_IV_rel}}) {
            Elem joined = L.zero();
            for (Elem e : family) {
                CHECK(contains(cen, e));
                CHECK(L.orthogonal(joined, e));
                joined = L.join(joined, e);
            }
            CHECK(joined == L.one());
        }
        if (check_orthomodular(L).holds) CHECK(d.p_IV == L.zero());
        CHECK(L.leq(d.p_II_1, d.p_II));
        for (auto [n, p] : d.p_I_n) CHECK(L.leq(p, d.p_I));
    }
}

TEST_CASE("type relation examples")
{
    Rng rng(131);
    for (int i = 0; i < 40; ++i) {
        Ortholattice L = random_ortholattice(rng, 20);
        Relation eq = equality_relation(L);
        CHECK(is_type_relation(L, eq, 3).holds);
        CHECK(finiteness_ideals(L, eq).first == L.all());
        Relation cc = central_cover_relation(L);
        CHECK(is_type_relation(L, cc, 3).holds);
        CHECK(is_symmetric(cc));
        CHECK(is_proper(L, cc));
        CHECK(is_reflexive(cc));
    }
    Ortholattice M = mo2();
    Relation cc = central_cover_relation(M);
    CHECK(cc(at(M, "x"), at(M, "x'")));
    Relation persp = perspectivity(M).persp;
    CHECK(is_type_relation(M, persp, 3).holds);
    CHECK(finiteness_ideals(M, persp).first == M.all());

    // A non-example: relating a to b only, in B4.
    Ortholattice B4 = boolean_lattice(2);
    Relation odd(B4.size());
    odd.set(at(B4, "a"), at(B4, "b"));
    RelationCheck rc = is_type_relation(B4, odd, 3);
    CHECK_FALSE(rc.holds);
    CHECK(rc.witness.size() >= 2);
}

TEST_CASE("finiteness ideals of reflexive type relations are type ideals")
{
    Rng rng(137);
    for (int i = 0; i < 40; ++i) {
        Ortholattice L = random_separative_lattice(rng, 20);
        for (const Relation& R : {equality_relation(L), central_cover_relation(L), perspectivity(L).persp}) {
            if (!is_reflexive(R) || !is_type_relation(L, R, 3).holds) continue;
            auto [fin, ofin] = finiteness_ideals(L, R);
            CHECK(is_type_ideal(L, fin, 3).holds);
            CHECK(is_type_ideal(L, ofin, 3).holds);
        }
    }
}

TEST_CASE("generalized comparison examples")
{
    Rng rng(139);
    for (int i = 0; i < 40; ++i) {
        Ortholattice L = random_ortholattice(rng, 16);
        ComparisonReport r = generalized_comparison_check(L, central_cover_relation(L));
        CHECK(r.holds);
        CHECK(r.simgc_holds);
        CHECK(r.forms_agree);
    }
    Ortholattice B8 = boolean_lattice(3);
    ComparisonReport b = generalized_comparison_check(B8, equality_relation(B8));
    CHECK(b.holds);
    CHECK(b.forms_agree);

    Ortholattice M = mo2();
    ComparisonReport m = generalized_comparison_check(M, equality_relation(M));
    CHECK_FALSE(m.holds);
    CHECK(m.forms_agree);
    REQUIRE(m.failing_pair.has_value());
    Elem x = at(M, "x"), y = at(M, "y");
    for (const auto& [pair, p] : m.central_witness) CHECK(pair != std::make_pair(x, y));
}

TEST_CASE("the two forms of generalized comparison agree for symmetric type relations")
{
    Rng rng(149);
    int runs = 0;
    for (int i = 0; i < 60; ++i) {
        Ortholattice L = random_ortholattice(rng, 16);
        for (const Relation& R : {equality_relation(L), central_cover_relation(L), perspectivity(L).persp}) {
            if (!is_symmetric(R) || !is_type_relation(L, R, 3).holds) continue;
            CHECK(generalized_comparison_check(L, R).forms_agree);
            ++runs;
        }
    }
    CHECK(runs > 60);
}

TEST_CASE("boolean theorem examples")
{
    Ortholattice B8 = boolean_lattice(3);
    BooleanTheoremReport b = boolean_theorem_check(B8, central_cover_relation(B8));
    CHECK(b.preconditions_met);
    CHECK(b.conclusion1);
    CHECK(b.conclusion2);
    CHECK(b.conclusion3);
    CHECK(central_cover_relation(B8) == equality_relation(B8));

    Ortholattice BB = product(boolean_lattice(2), boolean_lattice(2));
    BooleanTheoremReport bb = boolean_theorem_check(BB, central_cover_relation(BB));
    CHECK(bb.preconditions_met);
    CHECK(bb.conclusion2);

    Ortholattice M = mo2();
    BooleanTheoremReport m = boolean_theorem_check(M, equality_relation(M));
    CHECK_FALSE(m.preconditions_met);
    CHECK(m.failed_precondition == "generalized comparison");
}

TEST_CASE("boolean theorem conclusions hold whenever its preconditions do")
{
    Rng rng(151);
    int met = 0;
    for (int i = 0; i < 60; ++i) {
        Ortholattice L = random_ortholattice(rng, 16);
        for (const Relation& R : {equality_relation(L), central_cover_relation(L), perspectivity(L).persp}) {
            BooleanTheoremReport rep = boolean_theorem_check(L, R);
            if (!rep.preconditions_met) continue;
            ++met;
            CHECK(rep.conclusion1);
            CHECK(rep.conclusion2);
            CHECK(rep.conclusion3);
        }
    }
    CHECK(met > 30);
}

TEST_CASE("relative centre property")
{
    CHECK(relative_centre_property(boolean_lattice(3)));
    CHECK(relative_centre_property(mo2()));
}
