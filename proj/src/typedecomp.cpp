#include "ortholab/typedecomp.hpp"

#include <algorithm>
#include <functional>

namespace ortholab {

CentreData centre_data(const Ortholattice& L)
{
    CentreData C;
    C.centre = centre(L);
    C.cover.resize(L.size());
    for (Elem p = 0; p < L.size(); ++p) C.cover[p] = central_cover(L, C.centre, p);
    return C;
}

namespace {

ElemSet nonzero(const Ortholattice& L) { return L.all() & ~bit(L.zero()); }

// Rows of the very-orthogonality relation restricted to nonzero elements.
std::vector<ElemSet> vo_rows(const Ortholattice& L, const CentreData& C)
{
    std::vector<ElemSet> rows(L.size(), 0);
    ElemSet nz = nonzero(L);
    for (Elem p : members(nz))
        for (Elem q : members(nz))
            if (very_orthogonal(L, C, p, q)) rows[p] |= bit(q);
    return rows;
}

ElemSet above_index(Elem e) { return e >= 63 ? 0 : ~first_n(e + 1); }

void require_separative(const Ortholattice& L)
{
    Flag f = check_separative(L);
    if (!f.holds)
        throw TypeError("host-not-separative", "witness (" + L.name(f.witness[0]) + ", " + L.name(f.witness[1]) + ")");
}

}  // namespace

IdealCheck is_type_ideal(const Ortholattice& L, ElemSet T, int k)
{
    CentreData C = centre_data(L);
    auto rows = vo_rows(L, C);
    IdealCheck out;
    std::vector<Elem> chosen;

    std::function<bool(ElemSet, Elem, bool)> walk = [&](ElemSet cand, Elem joined, bool inside) -> bool {
        for (Elem e : members(cand)) {
            chosen.push_back(e);
            Elem j = L.join(joined, e);
            bool in = inside && contains(T, e);
            if (chosen.size() >= 2 && in != contains(T, j)) {
                out.holds = false;
                out.witness = chosen;
                return true;
            }
            if (static_cast<int>(chosen.size()) < k && walk(cand & rows[e] & above_index(e), j, in)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (walk(nonzero(L), L.zero(), true)) return out;
    if (T != 0 && !contains(T, L.zero())) {
        out.holds = false;
        out.empty_set_violation = true;
    }
    return out;
}

TypeIdeal power_ideal(const Ortholattice& L, ElemSet T, int kappa)
{
    CentreData C = centre_data(L);
    auto rows = vo_rows(L, C);
    TypeIdeal out{bit(L.zero()), 0};
    std::function<void(ElemSet, Elem, int)> walk = [&](ElemSet cand, Elem joined, int size) {
        for (Elem e : members(cand)) {
            Elem j = L.join(joined, e);
            out.members |= bit(j);
            if (size + 1 < kappa) walk(cand & rows[e] & above_index(e), j, size + 1);
        }
    };
    walk(T & nonzero(L), L.zero(), 0);
    return out;
}

CentralPair decompose(const Ortholattice& L, ElemSet T)
{
    require_separative(L);
    CentreData C = centre_data(L);
    CentralPair out{L.join_of(T & C.centre), L.zero()};
    for (Elem t : members(T)) out.q = L.join(out.q, C.cover[t]);
    return out;
}

bool lower_part_conditions(const Ortholattice& L, const CentreData& C, ElemSet T, Elem p)
{
    if (!contains(C.centre, p) || !contains(T, p)) return false;
    return (C.centre & L.down(L.perp(p)) & T & ~bit(L.zero())) == 0;
}

bool upper_part_conditions(const Ortholattice& L, const CentreData& C, ElemSet T, Elem q)
{
    if (!contains(C.centre, q)) return false;
    bool attained = false;
    for (Elem t : members(T)) attained = attained || C.cover[t] == q;
    return attained && (L.down(L.perp(q)) & T & ~bit(L.zero())) == 0;
}

bool is_homogeneous(const Ortholattice& L, const CentreData& C, ElemSet T, Elem p, int order, std::vector<Elem>* family)
{
    if (p == L.zero()) {
        if (family) family->clear();
        return true;
    }
    ElemSet cand = 0;
    for (Elem t : members(T & L.down(p) & nonzero(L)))
        if (C.cover[t] == C.cover[p]) cand |= bit(t);
    std::vector<Elem> chosen;
    std::function<bool(ElemSet, Elem)> walk = [&](ElemSet pool, Elem joined) -> bool {
        if (static_cast<int>(chosen.size()) == order) return joined == p;
        if (count(pool) < order - static_cast<int>(chosen.size())) return false;
        for (Elem e : members(pool)) {
            chosen.push_back(e);
            if (walk(pool & L.down(L.perp(e)) & above_index(e), L.join(joined, e))) return true;
            chosen.pop_back();
        }
        return false;
    };
    bool found = walk(cand, L.zero());
    if (found && family) *family = chosen;
    return found;
}

std::vector<HomogeneousPart> homogeneous_parts(const Ortholattice& L, ElemSet T)
{
    require_separative(L);
    if (!density(L, T).order_dense) throw TypeError("T-not-order-dense", "T has no nonzero member below some nonzero element");
    CentreData C = centre_data(L);
    // Runs on the very-orthogonal join closure, which is T itself for a type ideal.
    T = power_ideal(L, T, L.size()).members;

    std::vector<Elem> chain;  // t_0, t_1, ...
    std::vector<HomogeneousPart> parts;
    Elem joined = L.zero();
    Elem covers_meet = L.one();
    for (;;) {
        ElemSet layer = T & L.down(L.perp(joined));
        Elem target = L.zero();
        for (Elem t : members(layer)) target = L.join(target, C.cover[t]);
        Elem pick = -1;
        for (Elem t : members(layer))
            if (C.cover[t] == target) {
                pick = t;
                break;
            }
        if (pick < 0) throw std::logic_error("homogeneity recursion found no member with the maximal central cover");
        Elem s = L.meet(L.perp(C.cover[pick]), covers_meet);
        if (s != L.zero()) {
            HomogeneousPart part{static_cast<int>(chain.size()), s, {}};
            for (Elem t : chain) part.family.push_back(L.meet(s, t));
            parts.push_back(part);
        }
        if (pick == L.zero()) break;
        chain.push_back(pick);
        joined = L.join(joined, pick);
        covers_meet = L.meet(covers_meet, C.cover[pick]);
    }
    return parts;
}

const char* type_class_name(TypeClass cls)
{
    switch (cls) {
    case TypeClass::D: return "D";
    case TypeClass::M: return "M";
    case TypeClass::O: return "O";
    case TypeClass::EQ: return "EQ";
    }
    return "?";
}

ElemSet type_class_ideal(const Ortholattice& L, TypeClass cls, TypeMode mode)
{
    ElemSet out = 0;
    for (Elem p = 0; p < L.size(); ++p) {
        bool member = false;
        if (cls == TypeClass::EQ) {
            member = rel_elements(L, p) == L.down(p);
        } else if (mode == TypeMode::Full) {
            if (cls == TypeClass::D) member = interval_distributive(L, p);
            if (cls == TypeClass::M) member = interval_modular(L, p);
            if (cls == TypeClass::O) member = interval_orthomodular(L, p);
        } else {
            const Ortholattice& inner = relative_interval(L, p).lattice.lattice;
            if (cls == TypeClass::D) member = check_distributive(inner).holds;
            if (cls == TypeClass::M) member = check_modular(inner).holds;
            if (cls == TypeClass::O) member = check_orthomodular(inner).holds;
        }
        if (member) out |= bit(p);
    }
    return out;
}

int max_orthogonal_family(const Ortholattice& L)
{
    int best = 0;
    std::function<void(ElemSet, int)> walk = [&](ElemSet pool, int size) {
        best = std::max(best, size);
        if (size + count(pool) <= best) return;
        for (Elem e : members(pool)) walk(pool & L.down(L.perp(e)) & above_index(e), size + 1);
    };
    walk(nonzero(L), 0);
    return best;
}

Decomposition type_profile(const Ortholattice& L)
{
    require_separative(L);
    CentreData C = centre_data(L);
    auto q_of = [&](ElemSet T) {
        Elem q = L.zero();
        for (Elem t : members(T)) q = L.join(q, C.cover[t]);
        return q;
    };
    auto parts = [&](ElemSet D, ElemSet M, ElemSet O, Elem& I, Elem& II, Elem& III, Elem& IV) {
        Elem qD = q_of(D), qM = q_of(M), qO = q_of(O);
        I = qD;
        II = L.meet(L.perp(qD), qM);
        III = L.meet(L.perp(qM), qO);
        IV = L.perp(qO);
    };
    Decomposition d;
    ElemSet D = type_class_ideal(L, TypeClass::D, TypeMode::Full);
    ElemSet M = type_class_ideal(L, TypeClass::M, TypeMode::Full);
    ElemSet O = type_class_ideal(L, TypeClass::O, TypeMode::Full);
    parts(D, M, O, d.p_I, d.p_II, d.p_III, d.p_IV);
    parts(type_class_ideal(L, TypeClass::D, TypeMode::Relative), type_class_ideal(L, TypeClass::M, TypeMode::Relative),
          type_class_ideal(L, TypeClass::O, TypeMode::Relative), d.p_I_rel, d.p_II_rel, d.p_III_rel, d.p_IV_rel);

    const int width = std::max(1, max_orthogonal_family(L));
    for (int n = 1; n <= width; ++n) {
        Elem p = L.zero();
        for (Elem c : members(C.centre))
            if (is_homogeneous(L, C, D, c, n)) p = L.join(p, c);
        d.p_I_n.emplace_back(n, p);
    }
    d.p_II_1 = L.meet(L.perp(q_of(D)), L.join_of(M & C.centre));
    return d;
}

bool is_symmetric(const Relation& R)
{
    for (Elem p = 0; p < R.n; ++p)
        for (Elem q : members(R.rows[p]))
            if (!R(q, p)) return false;
    return true;
}

bool is_reflexive(const Relation& R)
{
    for (Elem p = 0; p < R.n; ++p)
        if (!R(p, p)) return false;
    return true;
}

bool is_proper(const Ortholattice& L, const Relation& R)
{
    for (Elem p = 0; p < L.size(); ++p)
        if (p != L.zero() && R(p, L.zero())) return false;
    return true;
}

RelationCheck is_type_relation(const Ortholattice& L, const Relation& R, int k)
{
    CentreData C = centre_data(L);
    const int n = L.size();
    // Pairs grouped by the central cover of q ∨ r.
    std::vector<std::vector<std::pair<Elem, Elem>>> groups(n);
    for (Elem q = 0; q < n; ++q)
        for (Elem r = 0; r < n; ++r) groups[C.cover[L.join(q, r)]].emplace_back(q, r);
    std::vector<Elem> central = members(C.centre);

    RelationCheck out;
    std::vector<std::pair<Elem, Elem>> chosen;
    // Families are enumerated with strictly increasing (cover, position).
    std::function<bool(std::size_t, std::size_t, Elem, Elem, Elem, bool)> walk =
        [&](std::size_t ci, std::size_t pos, Elem acc, Elem jq, Elem jr, bool all) -> bool {
        for (std::size_t g = ci; g < central.size(); ++g) {
            Elem c = central[g];
            if (!L.orthogonal(c, acc) && !(g == ci && c == L.zero())) continue;
            const auto& group = groups[c];
            for (std::size_t i = (g == ci ? pos : 0); i < group.size(); ++i) {
                auto [q, r] = group[i];
                chosen.emplace_back(q, r);
                Elem nq = L.join(jq, q), nr = L.join(jr, r);
                bool nall = all && R(q, r);
                if (chosen.size() >= 2 && nall != R(nq, nr)) {
                    out.holds = false;
                    out.witness = chosen;
                    return true;
                }
                if (static_cast<int>(chosen.size()) < k && walk(g, i + 1, L.join(acc, c), nq, nr, nall)) return true;
                chosen.pop_back();
            }
        }
        return false;
    };
    walk(0, 0, L.zero(), L.zero(), L.zero(), true);
    return out;
}

std::pair<ElemSet, ElemSet> finiteness_ideals(const Ortholattice& L, const Relation& R)
{
    Finiteness f = relation_finiteness(L, R);
    return {f.finite_set, f.orthofinite_set};
}

Relation central_cover_relation(const Ortholattice& L)
{
    CentreData C = centre_data(L);
    Relation R(L.size());
    for (Elem p = 0; p < L.size(); ++p)
        for (Elem q = 0; q < L.size(); ++q)
            if (C.cover[p] == C.cover[q]) R.set(p, q);
    return R;
}

bool precsim(const Ortholattice& L, const Relation& R, Elem p, Elem q) { return (R.rows[p] & L.down(q)) != 0; }

bool precsim_rel(const Ortholattice& L, const Relation& R, Elem p, Elem q)
{
    return (R.rows[p] & rel_elements(L, q)) != 0;
}

ComparisonReport generalized_comparison_check(const Ortholattice& L, const Relation& R)
{
    CentreData C = centre_data(L);
    const int n = L.size();
    std::vector<ElemSet> rel(n);
    for (Elem p = 0; p < n; ++p) rel[p] = rel_elements(L, p);
    auto lesssim = [&](Elem a, Elem b) { return (R.rows[a] & rel[b]) != 0; };

    ComparisonReport out;
    for (Elem q = 0; q < n; ++q)
        for (Elem r = 0; r < n; ++r) {
            Elem splitter = -1;
            for (Elem p : members(C.centre)) {
                Elem pp = L.perp(p);
                if (lesssim(L.meet(p, q), L.meet(p, r)) && lesssim(L.meet(pp, r), L.meet(pp, q))) {
                    splitter = p;
                    break;
                }
            }
            bool simgc = false;
            for (Elem u : members(rel[q])) {
                for (Elem v : members(rel[r] & R.rows[u]))
                    if (very_orthogonal(L, C, L.meet(q, L.perp(u)), L.meet(r, L.perp(v)))) {
                        simgc = true;
                        break;
                    }
                if (simgc) break;
            }
            if (splitter >= 0) out.central_witness.push_back({{q, r}, splitter});
            if (splitter < 0 || !simgc) {
                if (out.holds && out.simgc_holds) out.failing_pair = std::make_pair(q, r);
            }
            if (splitter < 0) out.holds = false;
            if (!simgc) out.simgc_holds = false;
            if ((splitter >= 0) != simgc) out.forms_agree = false;
        }
    return out;
}

bool relative_centre_property(const Ortholattice& L)
{
    ElemSet cen = centre(L);
    for (Elem p = 0; p < L.size(); ++p) {
        RelativeInterval ri = relative_interval(L, p);
        ElemSet inner = 0;
        for (Elem e : members(centre(ri.lattice.lattice))) inner |= bit(ri.lattice.to_parent[e]);
        ElemSet cut = 0;
        for (Elem c : members(cen)) cut |= bit(L.meet(p, c));
        if (inner != cut) return false;
    }
    return true;
}

BooleanTheoremReport boolean_theorem_check(const Ortholattice& L, const Relation& R, int depth)
{
    BooleanTheoremReport rep;
    if (!relative_centre_property(L)) {
        rep.failed_precondition = "relative centre property";
        return rep;
    }
    if (!is_symmetric(R)) {
        rep.failed_precondition = "relation not symmetric";
        return rep;
    }
    if (!is_proper(L, R)) {
        rep.failed_precondition = "relation not proper";
        return rep;
    }
    if (!is_type_relation(L, R, depth).holds) {
        rep.failed_precondition = "not a type relation";
        return rep;
    }
    if (!generalized_comparison_check(L, R).holds) {
        rep.failed_precondition = "generalized comparison";
        return rep;
    }
    rep.preconditions_met = true;

    CentreData C = centre_data(L);
    const int n = L.size();
    std::vector<ElemSet> rel(n);
    for (Elem p = 0; p < n; ++p) rel[p] = rel_elements(L, p);
    ElemSet Drel = type_class_ideal(L, TypeClass::D, TypeMode::Relative);

    rep.conclusion1 = rep.conclusion2 = rep.conclusion3 = true;
    for (Elem p : members(Drel)) {
        for (Elem q = 0; q < n; ++q) {
            bool lhs = L.leq(C.cover[p], C.cover[q]);
            if (lhs != ((R.rows[p] & rel[q]) != 0)) rep.conclusion1 = false;
        }
        for (Elem q : members(Drel)) {
            if ((C.cover[p] == C.cover[q]) != R(p, q)) rep.conclusion2 = false;
            if (!R(p, q)) continue;
            for (Elem s : members(rel[p]))
                for (Elem t : members(rel[q]))
                    if (R(s, t) != (t == L.meet(C.cover[s], q))) rep.conclusion3 = false;
        }
    }
    return rep;
}

}  // namespace ortholab
