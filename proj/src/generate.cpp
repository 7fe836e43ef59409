#include "ortholab/generate.hpp"

#include <algorithm>
#include <vector>

#include "ortholab/fixtures.hpp"

namespace ortholab {

PreorthogonalitySpec random_preorthogonality(Rng& rng, int m)
{
    PreorthogonalitySpec spec;
    spec.m = m;
    spec.rel.assign(m, std::vector<int>(m, 0));
    const double density = rng.uniform(0.2, 0.8);
    std::vector<bool> null(m, false);
    for (int s = 0; s < m; ++s) null[s] = rng.chance(0.08);
    for (int s = 0; s < m; ++s)
        for (int t = s + 1; t < m; ++t)
            if (null[s] || null[t] || rng.chance(density)) spec.rel[s][t] = spec.rel[t][s] = 1;
    for (int s = 0; s < m; ++s)
        if (null[s]) spec.rel[s][s] = 1;
    return spec;
}

namespace {

Ortholattice random_block(Rng& rng, int max_n, int depth)
{
    for (;;) {
        int kind = rng.below(depth > 2 ? 7 : 10);
        switch (kind) {
        case 0:
            return chain2();
        case 1:
            if (max_n >= 4) return boolean_lattice(2);
            break;
        case 2:
            if (max_n >= 8) return boolean_lattice(3);
            break;
        case 3:
            if (max_n >= 6) return mo_lattice(rng.between(2, std::min(6, (max_n - 2) / 2)));
            break;
        case 4:
            if (max_n >= 6) return hexagon_o6();
            break;
        case 5:
            if (max_n >= 10) return rng.chance(0.5) ? fig_h1() : (max_n >= 14 ? orthodouble_b8() : fig_h1());
            break;
        case 6: {
            int m = rng.between(2, 6);
            try {
                Completion c = complete_by_cuts(random_preorthogonality(rng, m));
                if (c.lattice.size() >= 2 && c.lattice.size() <= max_n) return c.lattice;
            } catch (const LatticeError&) {
            }
            break;
        }
        case 7:
        case 8: {
            if (max_n < 6) break;
            int parts = rng.between(2, 3);
            std::vector<Ortholattice> chosen;
            int used = 2;
            for (int i = 0; i < parts; ++i) {
                int room = max_n - used + 2;
                if (room < 4) break;
                Ortholattice part = random_block(rng, room, depth + 1);
                if (part.size() < 4) continue;
                used += part.size() - 2;
                chosen.push_back(part);
            }
            if (chosen.size() >= 2) return horizontal_sum(chosen);
            break;
        }
        case 9: {
            if (max_n < 4) break;
            Ortholattice a = random_block(rng, max_n / 2, depth + 1);
            int room = max_n / a.size();
            if (room < 2) break;
            Ortholattice b = random_block(rng, room, depth + 1);
            if (a.size() * b.size() <= max_n) return product(a, b);
            break;
        }
        default:
            break;
        }
    }
}

}  // namespace

Ortholattice random_ortholattice(Rng& rng, int max_n) { return random_block(rng, max_n, 0); }

Ortholattice random_separative_lattice(Rng& rng, int max_n)
{
    for (;;) {
        Ortholattice L = random_ortholattice(rng, max_n);
        if (check_separative(L).holds) return L;
    }
}

namespace {

std::vector<Elem> centre_atoms(const Ortholattice& L, ElemSet centre_set)
{
    std::vector<Elem> atoms;
    ElemSet nonzero = centre_set & ~bit(L.zero());
    for (Elem c : members(nonzero))
        if ((L.down(c) & nonzero) == bit(c)) atoms.push_back(c);
    return atoms;
}

}  // namespace

ElemSet random_central_subset(Rng& rng, const Ortholattice&, ElemSet centre_set)
{
    ElemSet out = 0;
    for (Elem c : members(centre_set))
        if (rng.chance(0.5)) out |= bit(c);
    return out;
}

ElemSet random_central_orthogonal_family(Rng& rng, const Ortholattice& L, ElemSet centre_set)
{
    std::vector<Elem> atoms = centre_atoms(L, centre_set);
    const int groups = static_cast<int>(atoms.size());
    std::vector<Elem> joined(groups, L.zero());
    for (Elem a : atoms) {
        int g = rng.below(groups);
        joined[g] = L.join(joined[g], a);
    }
    ElemSet out = 0;
    for (Elem j : joined)
        if (j != L.zero() && rng.chance(0.7)) out |= bit(j);
    return out;
}

}  // namespace ortholab
