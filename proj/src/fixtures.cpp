#include "ortholab/fixtures.hpp"

#include <map>
#include <stdexcept>

namespace ortholab {

Ortholattice lattice_from_covers(const std::vector<std::string>& names,
                                 const std::vector<std::pair<std::string, std::string>>& edges,
                                 const std::vector<std::pair<std::string, std::string>>& orthopairs)
{
    const int n = static_cast<int>(names.size());
    std::map<std::string, int> at;
    for (int i = 0; i < n; ++i) at[names[i]] = i;
    auto lookup = [&](const std::string& s) {
        auto it = at.find(s);
        if (it == at.end()) throw std::invalid_argument("unknown element label " + s);
        return it->second;
    };

    LatticeSpec spec;
    spec.names = names;
    spec.leq.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) spec.leq[i][i] = 1;
    for (const auto& [lo, hi] : edges) spec.leq[lookup(lo)][lookup(hi)] = 1;
    // Warshall closure.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (spec.leq[i][k])
                for (int j = 0; j < n; ++j)
                    if (spec.leq[k][j]) spec.leq[i][j] = 1;

    spec.perp.assign(n, -1);
    for (const auto& [p, q] : orthopairs) {
        spec.perp[lookup(p)] = lookup(q);
        spec.perp[lookup(q)] = lookup(p);
    }
    for (int i = 0; i < n; ++i)
        if (spec.perp[i] < 0) throw std::invalid_argument("no orthocomplement given for " + names[i]);
    return build_lattice(spec);
}

std::vector<std::pair<std::string, std::string>> fig_h1_edges()
{
    return {{"0", "c'"}, {"c'", "a"}, {"a", "1"}, {"c", "1"}, {"a'", "c"}, {"0", "a'"}, {"0", "p'"},
            {"p'", "b'"}, {"b'", "a"}, {"b'", "c"}, {"p", "1"}, {"b", "p"}, {"c'", "b"}, {"a'", "b"}};
}

Ortholattice fig_h1()
{
    return lattice_from_covers({"0", "p'", "c'", "b'", "a'", "a", "b", "c", "p", "1"}, fig_h1_edges(),
                               {{"0", "1"}, {"p", "p'"}, {"a", "a'"}, {"b", "b'"}, {"c", "c'"}});
}

Ortholattice orthodouble_b8()
{
    return lattice_from_covers(
        {"0", "d", "e", "f", "a", "b", "c", "c'", "b'", "a'", "f'", "e'", "d'", "1"},
        {{"0", "d"}, {"0", "e"}, {"0", "f"}, {"d", "a"}, {"e", "a"}, {"e", "c"}, {"f", "c"}, {"d", "b"},
         {"f", "b"}, {"a", "1"}, {"b", "1"}, {"c", "1"}, {"0", "a'"}, {"0", "b'"}, {"0", "c'"},
         {"c'", "f'"}, {"b'", "f'"}, {"b'", "d'"}, {"a'", "d'"}, {"c'", "e'"}, {"a'", "e'"}, {"d'", "1"},
         {"e'", "1"}, {"f'", "1"}},
        {{"0", "1"}, {"a", "a'"}, {"b", "b'"}, {"c", "c'"}, {"d", "d'"}, {"e", "e'"}, {"f", "f'"}});
}

Ortholattice hexagon_o6()
{
    return lattice_from_covers({"0", "a", "b", "a'", "b'", "1"},
                               {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "b'"}, {"b'", "a'"}, {"a'", "1"}},
                               {{"0", "1"}, {"a", "a'"}, {"b", "b'"}});
}

Ortholattice mo2() { return mo_lattice(2); }

}  // namespace ortholab
