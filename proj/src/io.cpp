#include "ortholab/io.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include "ortholab/fixtures.hpp"

namespace ortholab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw IoError("parse-error", what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object()) bad("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

int as_int(const Json& j, const char* what)
{
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::string as_string(const Json& j, const char* what)
{
    if (!j.is_string()) bad(std::string(what) + " must be a string");
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const char* what)
{
    if (!j.is_array()) bad(std::string(what) + " must be an array");
    return j;
}

Json matrix_to_json(const CMatrix& m)
{
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j, int n)
{
    as_array(j, "matrix");
    if (static_cast<int>(j.size()) != n) bad("matrix must have " + std::to_string(n) + " rows");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const Json& row = as_array(j[r], "matrix row");
        if (static_cast<int>(row.size()) != n) bad("matrix row must have " + std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c) {
            const Json& z = row[c];
            if (z.is_number()) {
                m(r, c) = z.get<double>();
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
            } else {
                bad("matrix entries must be [re, im] pairs");
            }
        }
    }
    return m;
}

Json names_of(const Ortholattice& L, const std::vector<Elem>& es)
{
    Json out = Json::array();
    for (Elem e : es) out.push_back(L.name(e));
    return out;
}

Elem elem_from_json(const Ortholattice& L, const Json& j)
{
    std::string label = as_string(j, "element");
    Elem e = L.find(label);
    if (e < 0) bad("unknown element '" + label + "'");
    return e;
}

Json flag_json(const Ortholattice& L, const Flag& f)
{
    return Json{{"holds", f.holds}, {"witness", names_of(L, f.witness)}};
}

}  // namespace

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

// ------------------------------------------------------------ lattices

Json lattice_to_json(const Ortholattice& L)
{
    LatticeSpec s = L.spec();
    return Json{{"names", s.names}, {"leq", s.leq}, {"perp", s.perp}};
}

LatticeSpec lattice_spec_from_json(const Json& j)
{
    LatticeSpec s;
    for (const Json& n : as_array(field(j, "names"), "names")) s.names.push_back(as_string(n, "name"));
    for (const Json& row : as_array(field(j, "leq"), "leq")) {
        std::vector<int> r;
        for (const Json& v : as_array(row, "leq row")) {
            int x = v.is_boolean() ? v.get<bool>() : as_int(v, "leq entry");
            if (x != 0 && x != 1) bad("leq entries must be 0 or 1");
            r.push_back(x);
        }
        s.leq.push_back(std::move(r));
    }
    for (const Json& v : as_array(field(j, "perp"), "perp")) s.perp.push_back(as_int(v, "perp entry"));
    return s;
}

Ortholattice lattice_from_json(const Json& j) { return build_lattice(lattice_spec_from_json(j)); }

ElemSet element_set_from_json(const Ortholattice& L, const Json& j)
{
    ElemSet s = 0;
    for (const Json& v : as_array(field(j, "members"), "members")) s |= bit(elem_from_json(L, v));
    return s;
}

Json element_set_to_json(const Ortholattice& L, ElemSet s) { return Json{{"members", names_of(L, members(s))}}; }

// ------------------------------------------------------------ elements

Json element_to_json(const Element& e)
{
    Json mats = Json::array();
    for (const CMatrix& m : e.blocks()) mats.push_back(matrix_to_json(m));
    return Json{{"blocks", e.algebra().blocks}, {"mats", mats}};
}

Element element_from_json(const Json& j)
{
    std::vector<int> blocks;
    for (const Json& b : as_array(field(j, "blocks"), "blocks")) {
        int n = as_int(b, "block size");
        if (n < 1 || n > 16) bad("block sizes must lie in 1..16");
        blocks.push_back(n);
    }
    if (blocks.empty()) bad("at least one block is required");
    const Json& mats = as_array(field(j, "mats"), "mats");
    if (mats.size() != blocks.size()) bad("mats must have one matrix per block");
    std::vector<CMatrix> ms;
    for (std::size_t i = 0; i < blocks.size(); ++i) ms.push_back(matrix_from_json(mats[i], blocks[i]));
    return Element(BlockAlgebra(blocks), std::move(ms));
}

// ------------------------------------------------------------ cell functions

std::string format_rational(const Rational& r)
{
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s)
{
    static const std::regex re(R"(\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) bad("bad rational '" + s + "'");
    try {
        long long num = std::stoll(m[1]);
        long long den = m[2].matched ? std::stoll(m[2]) : 1;
        if (den == 0) bad("zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::out_of_range&) {
        bad("rational out of range '" + s + "'");
    }
}

double parse_angle(const std::string& s)
{
    static const std::regex pi_re(R"(\s*(-?\d+(?:\.\d+)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d+)?))?\s*)");
    static const std::regex num_re(R"(\s*-?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?\s*)");
    std::smatch m;
    if (std::regex_match(s, m, pi_re)) {
        double c = m[1].matched ? std::stod(m[1]) : 1.0;
        double d = m[2].matched ? std::stod(m[2]) : 1.0;
        if (d == 0) bad("zero divisor in angle '" + s + "'");
        return c * std::acos(-1.0) / d;
    }
    if (std::regex_match(s, num_re)) return std::stod(s);
    bad("bad angle '" + s + "'");
}

Json cellfun_to_json(const CellFunction& f)
{
    Json bps = Json::array();
    for (const Rational& r : f.complex.breakpoints) bps.push_back(format_rational(r));
    Json vals = Json::array();
    for (const Element& v : f.values) vals.push_back(matrix_to_json(v.block(0)));
    return Json{{"n", f.n}, {"breakpoints", bps}, {"values", vals}};
}

CellFunction cellfun_from_json(const Json& j)
{
    int n = as_int(field(j, "n"), "n");
    if (n < 1 || n > 16) bad("n must lie in 1..16");
    std::vector<Rational> bps;
    for (const Json& b : as_array(field(j, "breakpoints"), "breakpoints"))
        bps.push_back(parse_rational(as_string(b, "breakpoint")));
    CellComplex cx = [&] {
        try {
            return CellComplex(bps);
        } catch (const CellError& e) {
            bad(e.what());
        }
    }();
    const Json& vals = as_array(field(j, "values"), "values");
    if (static_cast<int>(vals.size()) != cx.cell_count())
        bad("values must have one entry per cell (" + std::to_string(cx.cell_count()) + ")");
    const BlockAlgebra A({n});
    std::vector<Element> out;
    for (const Json& v : vals) {
        if (v.is_object()) {
            if (n != 2) bad("theta shorthand needs n = 2");
            const Json& t = field(v, "theta");
            out.push_back(p_theta(t.is_number() ? t.get<double>() : parse_angle(as_string(t, "theta"))));
        } else {
            out.push_back(Element(A, {matrix_from_json(v, n)}));
        }
    }
    return CellFunction(n, std::move(cx), std::move(out));
}

// ------------------------------------------------------------ DOT

std::string emit_dot(const Ortholattice& L)
{
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (Elem e = 0; e < L.size(); ++e) os << "  " << quote(L.name(e)) << ";\n";
    for (auto [lo, hi] : L.covers()) os << "  " << quote(L.name(lo)) << " -> " << quote(L.name(hi)) << ";\n";
    for (Elem e = 0; e < L.size(); ++e)
        if (e < L.perp(e))
            os << "  " << quote(L.name(e)) << " -> " << quote(L.name(L.perp(e)))
               << " [style=dashed, dir=none, constraint=false, color=gray];\n";
    os << "}\n";
    return os.str();
}

// ------------------------------------------------------------ reports

Json classification_report(const Ortholattice& L)
{
    LatticeClassification c = classify(L);
    return Json{{"size", L.size()},
                {"separative", flag_json(L, c.separative)},
                {"orthomodular", flag_json(L, c.orthomodular)},
                {"modular", flag_json(L, c.modular)},
                {"distributive", flag_json(L, c.distributive)},
                {"boolean", flag_json(L, c.boolean)}};
}

Json decomposition_report(const Ortholattice& L, const Decomposition& d)
{
    Json pin = Json::array();
    for (auto [n, p] : d.p_I_n) pin.push_back(Json{{"order", n}, {"part", L.name(p)}});
    return Json{{"p_I", L.name(d.p_I)},
                {"p_II", L.name(d.p_II)},
                {"p_III", L.name(d.p_III)},
                {"p_IV", L.name(d.p_IV)},
                {"relative",
                 Json{{"p_I", L.name(d.p_I_rel)},
                      {"p_II", L.name(d.p_II_rel)},
                      {"p_III", L.name(d.p_III_rel)},
                      {"p_IV", L.name(d.p_IV_rel)}}},
                {"p_I_n", pin},
                {"p_II_1", L.name(d.p_II_1)}};
}

Decomposition decomposition_from_report(const Ortholattice& L, const Json& j)
{
    Decomposition d;
    d.p_I = elem_from_json(L, field(j, "p_I"));
    d.p_II = elem_from_json(L, field(j, "p_II"));
    d.p_III = elem_from_json(L, field(j, "p_III"));
    d.p_IV = elem_from_json(L, field(j, "p_IV"));
    const Json& rel = field(j, "relative");
    d.p_I_rel = elem_from_json(L, field(rel, "p_I"));
    d.p_II_rel = elem_from_json(L, field(rel, "p_II"));
    d.p_III_rel = elem_from_json(L, field(rel, "p_III"));
    d.p_IV_rel = elem_from_json(L, field(rel, "p_IV"));
    for (const Json& e : as_array(field(j, "p_I_n"), "p_I_n"))
        d.p_I_n.emplace_back(as_int(field(e, "order"), "order"), elem_from_json(L, field(e, "part")));
    d.p_II_1 = elem_from_json(L, field(j, "p_II_1"));
    return d;
}

Json ideal_report(const Ortholattice& L, ElemSet T, int depth)
{
    IdealCheck ic = is_type_ideal(L, T, depth);
    Json out{{"ideal", names_of(L, members(T))},
             {"type_ideal", Json{{"holds", ic.holds}, {"depth", depth}, {"witness", names_of(L, ic.witness)}}}};
    if (!ic.holds) return out;
    CentralPair cp = decompose(L, T);
    out["p_T"] = L.name(cp.p);
    out["q_T"] = L.name(cp.q);
    if (!density(L, T).order_dense) {
        out["homogeneous_parts"] = nullptr;
        return out;
    }
    Json parts = Json::array();
    for (const HomogeneousPart& hp : homogeneous_parts(L, T))
        parts.push_back(Json{{"order", hp.order}, {"part", L.name(hp.part)}, {"family", names_of(L, hp.family)}});
    out["homogeneous_parts"] = parts;
    return out;
}

// ------------------------------------------------------------ fixtures

const char* fixture_kind_name(FixtureKind k)
{
    switch (k) {
    case FixtureKind::Lattice: return "lattice";
    case FixtureKind::Algebra: return "algebra";
    case FixtureKind::Cellfun: return "cellfun";
    }
    return "?";
}

namespace {

// Cell functions with breakpoint 1/2; values listed for {0}, (0,1/2), {1/2}, (1/2,1), {1}.
Json halves_json(const std::vector<Json>& cells)
{
    return Json{{"n", 2}, {"breakpoints", Json::array({"1/2"})}, {"values", cells}};
}

Json theta(const char* t) { return Json{{"theta", t}}; }

const Json kZero2 = Json::array({Json::array({Json::array({0, 0}), Json::array({0, 0})}),
                                 Json::array({Json::array({0, 0}), Json::array({0, 0})})});
const Json kOne2 = Json::array({Json::array({Json::array({1, 0}), Json::array({0, 0})}),
                                Json::array({Json::array({0, 0}), Json::array({1, 0})})});

std::vector<Fixture> build_fixtures()
{
    std::vector<Fixture> out;
    auto lattice = [&](const char* id, const Ortholattice& L, const char* prov) {
        out.push_back({id, FixtureKind::Lattice, lattice_to_json(L), prov});
    };
    lattice("FIG_H1", fig_h1(), "ten-element lattice with [p]_p != [p], Hasse diagram as drawn");
    lattice("ORTHODOUBLE_B8", orthodouble_b8(), "two copies of B8 glued at 0 and 1: separative, not orthomodular");
    lattice("MO2", mo2(), "horizontal sum of two four-element Boolean blocks: modular, not distributive");
    lattice("O6", hexagon_o6(), "hexagon 0 < a < b < 1, 0 < b' < a' < 1: not separative");
    lattice("B8", boolean_lattice(3), "Boolean algebra on three atoms");

    const struct {
        const char* id;
        double angle;
        const char* prov;
    } thetas[] = {
        {"P_THETA_0", 0, "rank-one projection onto (sin t, cos t), t = 0"},
        {"P_THETA_PI_8", std::acos(-1.0) / 8, "rank-one projection onto (sin t, cos t), t = pi/8"},
        {"P_THETA_PI_4", std::acos(-1.0) / 4, "rank-one projection onto (sin t, cos t), t = pi/4"},
        {"P_THETA_PI_3", std::acos(-1.0) / 3, "rank-one projection onto (sin t, cos t), t = pi/3"},
        {"P_THETA_PI_2", std::acos(-1.0) / 2, "rank-one projection onto (sin t, cos t), t = pi/2"},
    };
    for (const auto& t : thetas) out.push_back({t.id, FixtureKind::Algebra, element_to_json(p_theta(t.angle)), t.prov});

    auto cell = [&](const char* id, const std::vector<Json>& cells, const char* prov) {
        out.push_back({id, FixtureKind::Cellfun, halves_json(cells), prov});
    };
    cell("COMMUTECLOSURE1_P", {kZero2, kZero2, kZero2, theta("0"), theta("0")},
         "0 on [0,1/2], P_0 on (1/2,1]; its closure fails to commute with q at 1/2");
    cell("COMMUTECLOSURE1_Q", {theta("pi/4"), theta("pi/4"), theta("pi/4"), kOne2, kOne2},
         "P_{pi/4} on [0,1/2], 1 on (1/2,1]");
    cell("COMMUTECLOSURE2_P", {kOne2, kOne2, theta("0"), theta("0"), theta("0")},
         "1 on [0,1/2), P_0 on [1/2,1]; pq != qp at 1/2 yet p and q commute modulo a nowhere dense set");
    cell("COMMUTECLOSURE2_Q", {theta("pi/4"), theta("pi/4"), theta("pi/4"), kOne2, kOne2},
         "P_{pi/4} on [0,1/2], 1 on (1/2,1]");
    cell("RIGID_PAIR_P", {theta("0"), theta("0"), kZero2, theta("pi/4"), theta("pi/4")},
         "P_0 on [0,1/2), 0 at 1/2, P_{pi/4} on (1/2,1]");
    cell("RIGID_PAIR_Q", {theta("0"), theta("0"), theta("0"), kOne2, kOne2}, "P_0 on [0,1/2], 1 on (1/2,1]");
    return out;
}

}  // namespace

const std::vector<Fixture>& fixtures()
{
    static const std::vector<Fixture> all = build_fixtures();
    return all;
}

const Fixture* find_fixture(const std::string& id)
{
    for (const Fixture& f : fixtures())
        if (f.id == id) return &f;
    return nullptr;
}

bool fixture_round_trips(const Fixture& f)
{
    switch (f.kind) {
    case FixtureKind::Lattice: {
        Ortholattice L = lattice_from_json(f.payload);
        Json emitted = lattice_to_json(L);
        return lattice_spec_from_json(Json::parse(emitted.dump())) == L.spec() &&
               lattice_to_json(lattice_from_json(emitted)) == emitted;
    }
    case FixtureKind::Algebra: {
        Element e = element_from_json(f.payload);
        Element back = element_from_json(Json::parse(element_to_json(e).dump()));
        if (!(back.algebra() == e.algebra())) return false;
        for (int i = 0; i < e.count(); ++i)
            if (back.block(i) != e.block(i)) return false;
        return true;
    }
    case FixtureKind::Cellfun: {
        CellFunction c = cellfun_from_json(f.payload);
        CellFunction back = cellfun_from_json(Json::parse(cellfun_to_json(c).dump()));
        if (back.n != c.n || !(back.complex == c.complex) || back.values.size() != c.values.size()) return false;
        for (std::size_t i = 0; i < c.values.size(); ++i)
            if (back.values[i].block(0) != c.values[i].block(0)) return false;
        return true;
    }
    }
    return false;
}

}  // namespace ortholab
