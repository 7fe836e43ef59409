#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "ortholab/cellfun.hpp"
#include "ortholab/lattice.hpp"
#include "ortholab/matalg.hpp"
#include "ortholab/typedecomp.hpp"

namespace ortholab {

using Json = nlohmann::ordered_json;

// `code` is parse-error (malformed or ill-typed input) or config-parse-error.
class IoError : public std::runtime_error {
public:
    IoError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code))
    {
    }
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

Json read_json_file(const std::string& path);

// {names: [...], leq: [[0/1, ...]], perp: [indices]}. Parsing checks the
// shape only; build_lattice validates the axioms.
Json lattice_to_json(const Ortholattice& L);
LatticeSpec lattice_spec_from_json(const Json& j);
Ortholattice lattice_from_json(const Json& j);

// {blocks: [n, ...], mats: [block][row][col] = [re, im]}.
Json element_to_json(const Element& e);
Element element_from_json(const Json& j);

// {n, breakpoints: ["p/q", ...], values: one entry per cell, each a matrix
// of [re, im] pairs or {theta: "pi/4"} for the rank-one projection P_theta}.
Json cellfun_to_json(const CellFunction& f);
CellFunction cellfun_from_json(const Json& j);

std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& s);
// Angles written as a decimal or as c*pi/d with optional c and d.
double parse_angle(const std::string& s);

// Set of named elements: {members: [names]}.
ElemSet element_set_from_json(const Ortholattice& L, const Json& j);
Json element_set_to_json(const Ortholattice& L, ElemSet s);

// Hasse diagram: cover edges bottom to top, perp pairs as dashed edges.
std::string emit_dot(const Ortholattice& L);

Json classification_report(const Ortholattice& L);
Json decomposition_report(const Ortholattice& L, const Decomposition& d);
Decomposition decomposition_from_report(const Ortholattice& L, const Json& j);
Json ideal_report(const Ortholattice& L, ElemSet T, int depth);

// ------------------------------------------------------------ fixtures

enum class FixtureKind { Lattice, Algebra, Cellfun };
const char* fixture_kind_name(FixtureKind k);

struct Fixture {
    std::string id;
    FixtureKind kind;
    Json payload;
    std::string provenance;
};

const std::vector<Fixture>& fixtures();
const Fixture* find_fixture(const std::string& id);

// parse(emit(parse(payload))) equals parse(payload), compared exactly.
bool fixture_round_trips(const Fixture& f);

}  // namespace ortholab
