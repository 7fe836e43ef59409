#include "ortholab/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace ortholab {

std::vector<Elem> members(ElemSet s)
{
    std::vector<Elem> out;
    out.reserve(count(s));
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

LatticeError::LatticeError(std::string axiom, std::vector<Elem> witness, const std::string& detail)
    : std::runtime_error(axiom + ": " + detail), axiom_(std::move(axiom)), witness_(std::move(witness))
{
}

namespace {

std::string describe(const std::vector<std::string>& names, const std::vector<Elem>& w)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ", ";
        os << names[w[i]];
    }
    return os.str();
}

[[noreturn]] void fail(const std::string& axiom, std::vector<Elem> w, const std::vector<std::string>& names)
{
    auto detail = "(" + describe(names, w) + ")";
    throw LatticeError(axiom, std::move(w), detail);
}

// The largest element of a down-closed candidate set, or -1.
Elem top_of(ElemSet cand, const std::vector<ElemSet>& down)
{
    for (ElemSet s = cand; s; s &= s - 1) {
        Elem r = std::countr_zero(s);
        if ((cand & ~down[r]) == 0) return r;
    }
    return -1;
}

}  // namespace

Elem Ortholattice::find(const std::string& label) const
{
    auto it = std::find(names_.begin(), names_.end(), label);
    return it == names_.end() ? -1 : static_cast<Elem>(it - names_.begin());
}

Elem Ortholattice::meet_of(ElemSet s) const
{
    Elem r = one_;
    for (Elem e : members(s)) r = meet(r, e);
    return r;
}

Elem Ortholattice::join_of(ElemSet s) const
{
    Elem r = zero_;
    for (Elem e : members(s)) r = join(r, e);
    return r;
}

std::vector<std::pair<Elem, Elem>> Ortholattice::covers() const
{
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem q = 0; q < n_; ++q) {
        ElemSet below = down_[q] & ~bit(q);
        for (Elem p : members(below)) {
            // p is covered by q when nothing lies strictly between.
            if ((below & up_[p] & ~bit(p)) == 0) out.emplace_back(p, q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

LatticeSpec Ortholattice::spec() const
{
    LatticeSpec s;
    s.names = names_;
    s.perp = perp_;
    s.leq.assign(n_, std::vector<int>(n_, 0));
    for (Elem p = 0; p < n_; ++p)
        for (Elem q = 0; q < n_; ++q) s.leq[p][q] = leq(p, q) ? 1 : 0;
    return s;
}

Ortholattice build_lattice(const LatticeSpec& spec)
{
    const int n = static_cast<int>(spec.leq.size());
    std::vector<std::string> names = spec.names;
    if (n == 0) throw LatticeError("bad-shape", {}, "empty order table");
    if (n > kMaxElements) throw LatticeError("too-large", {}, "more than 64 elements");
    if (static_cast<int>(names.size()) != n || static_cast<int>(spec.perp.size()) != n)
        throw LatticeError("bad-shape", {}, "names, leq and perp sizes differ");
    for (const auto& row : spec.leq)
        if (static_cast<int>(row.size()) != n) throw LatticeError("bad-shape", {}, "leq is not square");
    for (int v : spec.perp)
        if (v < 0 || v >= n) throw LatticeError("bad-shape", {}, "perp index out of range");

    Ortholattice L;
    L.n_ = n;
    L.names_ = names;
    L.down_.assign(n, 0);
    L.up_.assign(n, 0);
    for (Elem p = 0; p < n; ++p)
        for (Elem q = 0; q < n; ++q)
            if (spec.leq[p][q]) {
                L.down_[q] |= bit(p);
                L.up_[p] |= bit(q);
            }

    for (Elem p = 0; p < n; ++p)
        if (!contains(L.down_[p], p)) fail("not-a-partial-order", {p}, names);
    for (Elem p = 0; p < n; ++p)
        for (Elem q = p + 1; q < n; ++q)
            if (L.leq(p, q) && L.leq(q, p)) fail("not-a-partial-order", {p, q}, names);
    for (Elem q = 0; q < n; ++q)
        for (Elem p : members(L.down_[q])) {
            ElemSet missing = L.up_[q] & ~L.up_[p];
            if (missing) fail("not-a-partial-order", {p, q, std::countr_zero(missing)}, names);
        }

    L.meet_.assign(n * n, 0);
    L.join_.assign(n * n, 0);
    for (Elem p = 0; p < n; ++p)
        for (Elem q = p; q < n; ++q) {
            Elem m = top_of(L.down_[p] & L.down_[q], L.down_);
            Elem j = top_of(L.up_[p] & L.up_[q], L.up_);
            if (m < 0 || j < 0) fail("not-a-lattice", {p, q}, names);
            L.meet_[p * n + q] = L.meet_[q * n + p] = m;
            L.join_[p * n + q] = L.join_[q * n + p] = j;
        }
    L.zero_ = top_of(L.all(), L.up_);
    L.one_ = top_of(L.all(), L.down_);

    L.perp_ = spec.perp;
    for (Elem p = 0; p < n; ++p)
        if (L.perp_[L.perp_[p]] != p) fail("perp-not-involutive", {p}, names);
    for (Elem p = 0; p < n; ++p)
        for (Elem q : members(L.up_[p]))
            if (!L.leq(L.perp_[q], L.perp_[p])) fail("perp-not-antitone", {p, q}, names);
    for (Elem p = 0; p < n; ++p)
        if (L.meet(p, L.perp_[p]) != L.zero_ || L.join(p, L.perp_[p]) != L.one_)
            fail("perp-not-complement", {p}, names);
    return L;
}

Sublattice restrict_lattice(const Ortholattice& L, ElemSet subset, const std::vector<Elem>& perp)
{
    Sublattice out;
    out.to_parent = members(subset);
    out.from_parent.assign(L.size(), -1);
    for (std::size_t i = 0; i < out.to_parent.size(); ++i) out.from_parent[out.to_parent[i]] = static_cast<Elem>(i);
    LatticeSpec s;
    const int m = static_cast<int>(out.to_parent.size());
    s.leq.assign(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i) {
        s.names.push_back(L.name(out.to_parent[i]));
        for (int j = 0; j < m; ++j) s.leq[i][j] = L.leq(out.to_parent[i], out.to_parent[j]);
        Elem image = perp[out.to_parent[i]];
        if (image < 0 || out.from_parent[image] < 0) throw LatticeError("bad-shape", {out.to_parent[i]}, "perp leaves the subset");
        s.perp.push_back(out.from_parent[image]);
    }
    out.lattice = build_lattice(s);
    return out;
}

// ---------------------------------------------------------------- classify

Flag check_separative(const Ortholattice& L)
{
    const int n = L.size();
    for (Elem p = 0; p < n; ++p)
        for (Elem q = 0; q < n; ++q) {
            if (L.leq(p, q)) continue;
            bool found = false;
            for (Elem r : members(L.down(p) & ~bit(L.zero())))
                if (L.meet(r, q) == L.zero()) {
                    found = true;
                    break;
                }
            if (!found) return {false, {p, q}};
        }
    return {};
}

Flag check_orthomodular(const Ortholattice& L)
{
    for (Elem p = 0; p < L.size(); ++p)
        for (Elem q : members(L.down(p)))
            if (L.join(q, L.meet(p, L.perp(q))) != p) return {false, {p, q}};
    return {};
}

Flag check_modular(const Ortholattice& L)
{
    const int n = L.size();
    for (Elem p = 0; p < n; ++p)
        for (Elem q = 0; q < n; ++q)
            for (Elem r : members(L.down(p)))
                if (L.meet(p, L.join(q, r)) != L.join(L.meet(p, q), r)) return {false, {p, q, r}};
    return {};
}

Flag check_distributive(const Ortholattice& L)
{
    const int n = L.size();
    for (Elem p = 0; p < n; ++p)
        for (Elem q = 0; q < n; ++q)
            for (Elem r = 0; r < n; ++r) {
                if (L.meet(p, L.join(q, r)) != L.join(L.meet(p, q), L.meet(p, r))) return {false, {p, q, r}};
                if (L.join(p, L.meet(q, r)) != L.meet(L.join(p, q), L.join(p, r))) return {false, {p, q, r}};
            }
    return {};
}

LatticeClassification classify(const Ortholattice& L)
{
    LatticeClassification c;
    c.separative = check_separative(L);
    c.orthomodular = check_orthomodular(L);
    c.modular = check_modular(L);
    c.distributive = check_distributive(L);
    c.boolean = c.distributive;
    return c;
}

bool interval_modular(const Ortholattice& L, Elem top)
{
    auto elems = members(L.down(top));
    for (Elem p : elems)
        for (Elem q : elems)
            for (Elem r : members(L.down(p)))
                if (L.meet(p, L.join(q, r)) != L.join(L.meet(p, q), r)) return false;
    return true;
}

bool interval_distributive(const Ortholattice& L, Elem top)
{
    auto elems = members(L.down(top));
    for (Elem p : elems)
        for (Elem q : elems)
            for (Elem r : elems)
                if (L.meet(p, L.join(q, r)) != L.join(L.meet(p, q), L.meet(p, r))) return false;
    return true;
}

bool interval_orthomodular(const Ortholattice& L, Elem top)
{
    auto elems = members(L.down(top));
    for (Elem p : elems)
        for (Elem q : members(L.down(p)))
            for (Elem r : elems) {
                if (!L.orthogonal(q, r)) continue;
                if (L.meet(p, L.join(q, r)) != L.join(q, L.meet(p, r))) return false;
            }
    return true;
}

// ---------------------------------------------------------------- intervals

Elem rel_perp(const Ortholattice& L, Elem p, Elem q) { return L.meet(L.perp(q), p); }

ElemSet rel_elements(const Ortholattice& L, Elem p)
{
    ElemSet out = 0;
    for (Elem r : members(L.down(p))) out |= bit(rel_perp(L, p, r));
    return out;
}

Elem RelativeInterval::join_rel(Elem a, Elem b) const
{
    const auto& sub = lattice;
    return sub.to_parent[sub.lattice.join(sub.from_parent[a], sub.from_parent[b])];
}

RelativeInterval relative_interval(const Ortholattice& L, Elem p)
{
    RelativeInterval ri;
    ri.top = p;
    ri.full = L.down(p);
    ri.rel = rel_elements(L, p);
    ri.perp_rel.assign(L.size(), -1);
    for (Elem q : members(ri.full)) ri.perp_rel[q] = rel_perp(L, p, q);
    ri.lattice = restrict_lattice(L, ri.rel, ri.perp_rel);
    return ri;
}

// ---------------------------------------------------------------- centre

namespace {

bool commute_law(const Ortholattice& L, Elem p, Elem q)
{
    Elem pq = L.meet(p, q);
    if (pq != L.meet(p, L.join(L.perp(p), q))) return false;
    return p == L.join(pq, L.meet(p, L.perp(q)));
}

}  // namespace

bool commutes(const Ortholattice& L, Elem s, Elem t)
{
    for (Elem p : {s, L.perp(s)})
        for (Elem q : {t, L.perp(t)})
            if (!commute_law(L, p, q) || !commute_law(L, q, p)) return false;
    return true;
}

ElemSet centre(const Ortholattice& L)
{
    ElemSet out = 0;
    for (Elem p = 0; p < L.size(); ++p) {
        bool central = true;
        for (Elem q = 0; q < L.size() && central; ++q) central = commutes(L, p, q);
        if (central) out |= bit(p);
    }
    return out;
}

Elem central_cover(const Ortholattice& L, ElemSet centre_set, Elem p) { return L.meet_of(centre_set & L.up(p)); }

std::vector<Elem> central_covers(const Ortholattice& L)
{
    ElemSet c = centre(L);
    std::vector<Elem> out(L.size());
    for (Elem p = 0; p < L.size(); ++p) out[p] = central_cover(L, c, p);
    return out;
}

bool canonical_product_check(const Ortholattice& L, Elem p)
{
    Elem pp = L.perp(p);
    if (rel_elements(L, p) != L.down(p) || rel_elements(L, pp) != L.down(pp)) return false;
    for (Elem q = 0; q < L.size(); ++q)
        if (L.join(L.meet(q, p), L.meet(q, pp)) != q) return false;
    for (Elem a : members(L.down(p)))
        for (Elem b : members(L.down(pp))) {
            Elem j = L.join(a, b);
            if (L.meet(j, p) != a || L.meet(j, pp) != b) return false;
        }
    return true;
}

// ---------------------------------------------------------------- completion

Completion complete_by_cuts(const PreorthogonalitySpec& spec)
{
    const int m = spec.m;
    if (m < 0 || static_cast<int>(spec.rel.size()) != m) throw std::invalid_argument("relation table does not match m");
    if (m > kMaxBase) throw std::invalid_argument("base set larger than 20");
    std::vector<std::uint32_t> row(m, 0);
    for (int s = 0; s < m; ++s) {
        if (static_cast<int>(spec.rel[s].size()) != m) throw std::invalid_argument("relation table is not square");
        for (int t = 0; t < m; ++t)
            if (spec.rel[s][t]) row[s] |= std::uint32_t{1} << t;
    }
    const std::uint32_t full = m == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t) {
            if (spec.rel[s][t] != spec.rel[t][s]) throw std::invalid_argument("relation is not symmetric");
        }
    for (int s = 0; s < m; ++s)
        if ((row[s] >> s & 1u) && row[s] != full) throw std::invalid_argument("relation is not annihilating");

    auto perp_of = [&](std::uint32_t T) {
        std::uint32_t out = full;
        for (int t = 0; t < m; ++t)
            if (T >> t & 1u) out &= row[t];
        return out;
    };

    std::set<std::uint32_t> closed{full};
    std::vector<std::uint32_t> work{full};
    for (int s = 0; s < m; ++s)
        if (closed.insert(row[s]).second) work.push_back(row[s]);
    // Close under pairwise intersection.
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            std::uint32_t x = work[i] & work[j];
            if (closed.insert(x).second) {
                work.push_back(x);
                if (closed.size() > static_cast<std::size_t>(kMaxElements))
                    throw LatticeError("too-large", {}, "completion has more than 64 elements");
            }
        }
        if (closed.size() > static_cast<std::size_t>(kMaxElements))
            throw LatticeError("too-large", {}, "completion has more than 64 elements");
    }

    std::vector<std::uint32_t> sets(closed.begin(), closed.end());
    std::stable_sort(sets.begin(), sets.end(), [](std::uint32_t a, std::uint32_t b) {
        int ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca < cb : a < b;
    });
    std::map<std::uint32_t, Elem> index;
    for (std::size_t i = 0; i < sets.size(); ++i) index[sets[i]] = static_cast<Elem>(i);

    LatticeSpec ls;
    const int n = static_cast<int>(sets.size());
    ls.leq.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        std::string label = "{";
        bool first = true;
        for (int t = 0; t < m; ++t)
            if (sets[i] >> t & 1u) {
                label += (first ? "" : ",") + std::to_string(t);
                first = false;
            }
        ls.names.push_back(label + "}");
        for (int j = 0; j < n; ++j) ls.leq[i][j] = (sets[i] & ~sets[j]) == 0;
        ls.perp.push_back(index.at(perp_of(sets[i])));
    }

    Completion c{build_lattice(ls), {}, sets};
    for (int s = 0; s < m; ++s) c.embedding.push_back(index.at(perp_of(row[s])));
    return c;
}

// ---------------------------------------------------------------- relations

Relation equality_relation(const Ortholattice& L)
{
    Relation R(L.size());
    for (Elem p = 0; p < L.size(); ++p) R.set(p, p);
    return R;
}

ElemSet complements(const Ortholattice& L, Elem p)
{
    ElemSet out = 0;
    for (Elem q = 0; q < L.size(); ++q)
        if (L.meet(p, q) == L.zero() && L.join(p, q) == L.one()) out |= bit(q);
    return out;
}

Perspectivity perspectivity(const Ortholattice& L)
{
    const int n = L.size();
    std::vector<ElemSet> comp(n);
    for (Elem p = 0; p < n; ++p) comp[p] = complements(L, p);
    Perspectivity out{Relation(n), Relation(n), Relation(n)};
    for (Elem p = 0; p < n; ++p)
        for (Elem q = 0; q < n; ++q) {
            ElemSet common = comp[p] & comp[q];
            if (common) out.persp.set(p, q);
            if (common & L.down(L.meet(L.perp(p), L.perp(q)))) out.ortho.set(p, q);
            if (contains(comp[p], L.perp(q))) out.semiortho.set(p, q);
        }
    return out;
}

Finiteness relation_finiteness(const Ortholattice& L, const Relation& R)
{
    Finiteness f;
    for (Elem p = 0; p < L.size(); ++p) {
        bool fin = true, ofin = true;
        for (Elem q : members(L.down(p) & R.rows[p])) {
            if (q != p) fin = false;
            if (L.meet(p, L.perp(q)) != L.zero()) ofin = false;
        }
        if (fin) f.finite_set |= bit(p);
        if (ofin) f.orthofinite_set |= bit(p);
    }
    f.finite = f.finite_set == L.all();
    f.orthofinite = f.orthofinite_set == L.all();
    return f;
}

Density density(const Ortholattice& L, ElemSet S)
{
    Density d{true, true};
    ElemSet nonzero = S & ~bit(L.zero());
    for (Elem p = 0; p < L.size(); ++p) {
        if (p != L.zero() && (nonzero & L.down(p)) == 0) d.order_dense = false;
        if (L.join_of(S & L.down(p)) != p) d.join_dense = false;
    }
    return d;
}

std::array<bool, 7> orthomodularity_conditions(const Ortholattice& L)
{
    std::array<bool, 7> c{};
    c[0] = check_orthomodular(L).holds;

    c[1] = true;
    for (Elem p = 0; p < L.size() && c[1]; ++p)
        for (Elem q : members(L.down(L.perp(p))))
            if (L.join(p, q) == L.one() && q != L.perp(p)) {
                c[1] = false;
                break;
            }

    c[2] = true;
    for (Elem p = 0; p < L.size() && c[2]; ++p) c[2] = rel_elements(L, p) == L.down(p);

    Perspectivity P = perspectivity(L);
    c[3] = relation_finiteness(L, P.ortho).finite;
    c[4] = P.ortho == equality_relation(L);

    Relation universal(L.size());
    for (auto& r : universal.rows) r = L.all();
    c[5] = true;
    for (const Relation* R : {&P.ortho, &P.persp, &P.semiortho, &universal}) {
        Finiteness f = relation_finiteness(L, *R);
        if (f.finite_set != f.orthofinite_set) c[5] = false;
    }

    c[6] = interval_orthomodular(L, L.one());
    return c;
}

// ---------------------------------------------------------------- constructions

Ortholattice chain2() { return boolean_lattice(1); }

Ortholattice boolean_lattice(int atoms)
{
    if (atoms < 0 || atoms > 6) throw std::invalid_argument("boolean_lattice supports up to 6 atoms");
    const int n = 1 << atoms;
    LatticeSpec s;
    s.leq.assign(n, std::vector<int>(n, 0));
    for (int x = 0; x < n; ++x) {
        if (atoms == 1) {
            s.names.push_back(x ? "1" : "0");
        } else if (x == 0) {
            s.names.push_back("0");
        } else if (x == n - 1) {
            s.names.push_back("1");
        } else {
            std::string label;
            for (int i = 0; i < atoms; ++i)
                if (x >> i & 1) label += static_cast<char>('a' + i);
            s.names.push_back(label);
        }
        for (int y = 0; y < n; ++y) s.leq[x][y] = (x & ~y) == 0;
        s.perp.push_back((n - 1) ^ x);
    }
    return build_lattice(s);
}

Ortholattice mo_lattice(int k)
{
    if (k < 1) throw std::invalid_argument("mo_lattice needs k >= 1");
    const int n = 2 * k + 2;
    LatticeSpec s;
    s.leq.assign(n, std::vector<int>(n, 0));
    s.names.push_back("0");
    for (int i = 0; i < k; ++i) {
        std::string base = k <= 4 ? std::string(1, "xyzw"[i]) : "x" + std::to_string(i + 1);
        s.names.push_back(base);
        s.names.push_back(base + "'");
    }
    s.names.push_back("1");
    s.perp.resize(n);
    s.perp[0] = n - 1;
    s.perp[n - 1] = 0;
    for (int i = 0; i < k; ++i) {
        s.perp[1 + 2 * i] = 2 + 2 * i;
        s.perp[2 + 2 * i] = 1 + 2 * i;
    }
    for (int x = 0; x < n; ++x) {
        s.leq[x][x] = 1;
        s.leq[0][x] = 1;
        s.leq[x][n - 1] = 1;
    }
    return build_lattice(s);
}

Ortholattice horizontal_sum(const std::vector<Ortholattice>& parts)
{
    if (parts.empty()) throw std::invalid_argument("horizontal_sum needs at least one part");
    // Shared 0 and 1, then the middle elements of each part in order.
    struct Slot {
        int part;
        Elem e;
    };
    std::vector<Slot> slots;
    std::vector<std::vector<int>> index(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& P = parts[i];
        if (P.size() < 2) throw std::invalid_argument("horizontal_sum parts need 0 != 1");
        index[i].assign(P.size(), -1);
    }
    slots.push_back({-1, 0});
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& P = parts[i];
        for (Elem e = 0; e < P.size(); ++e) {
            if (e == P.zero() || e == P.one()) continue;
            index[i][e] = static_cast<int>(slots.size());
            slots.push_back({static_cast<int>(i), e});
        }
    }
    slots.push_back({-1, 1});
    const int n = static_cast<int>(slots.size());
    if (n > kMaxElements) throw LatticeError("too-large", {}, "horizontal sum has more than 64 elements");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        index[i][parts[i].zero()] = 0;
        index[i][parts[i].one()] = n - 1;
    }

    std::set<std::string> used;
    LatticeSpec s;
    s.leq.assign(n, std::vector<int>(n, 0));
    for (int x = 0; x < n; ++x) {
        std::string label;
        if (x == 0) label = "0";
        else if (x == n - 1) label = "1";
        else label = parts[slots[x].part].name(slots[x].e);
        if (x != 0 && x != n - 1 && parts.size() > 1) label = label + "#" + std::to_string(slots[x].part);
        s.names.push_back(label);
        for (int y = 0; y < n; ++y) {
            if (x == 0 || y == n - 1 || x == y) s.leq[x][y] = 1;
            else if (y != 0 && x != n - 1 && slots[x].part == slots[y].part)
                s.leq[x][y] = parts[slots[x].part].leq(slots[x].e, slots[y].e);
        }
        if (x == 0) s.perp.push_back(n - 1);
        else if (x == n - 1) s.perp.push_back(0);
        else s.perp.push_back(index[slots[x].part][parts[slots[x].part].perp(slots[x].e)]);
    }
    return build_lattice(s);
}

Ortholattice product(const Ortholattice& a, const Ortholattice& b)
{
    const int n = a.size() * b.size();
    if (n > kMaxElements) throw LatticeError("too-large", {}, "product has more than 64 elements");
    LatticeSpec s;
    s.leq.assign(n, std::vector<int>(n, 0));
    auto idx = [&](Elem x, Elem y) { return x * b.size() + y; };
    for (Elem x = 0; x < a.size(); ++x)
        for (Elem y = 0; y < b.size(); ++y) {
            s.names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
            s.perp.push_back(idx(a.perp(x), b.perp(y)));
            for (Elem u = 0; u < a.size(); ++u)
                for (Elem v = 0; v < b.size(); ++v) s.leq[idx(x, y)][idx(u, v)] = a.leq(x, u) && b.leq(y, v);
        }
    return build_lattice(s);
}

}  // namespace ortholab
