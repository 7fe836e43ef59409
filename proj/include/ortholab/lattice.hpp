#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ortholab {

// Elements are dense indices; subsets of a lattice fit in one 64-bit word.
using Elem = int;
using ElemSet = std::uint64_t;

inline constexpr int kMaxElements = 64;

constexpr ElemSet bit(Elem e) { return ElemSet{1} << e; }
constexpr bool contains(ElemSet s, Elem e) { return (s >> e) & 1u; }
inline int count(ElemSet s) { return std::popcount(s); }
std::vector<Elem> members(ElemSet s);
inline ElemSet first_n(int n) { return n >= 64 ? ~ElemSet{0} : (bit(n) - 1); }

// Raised by build_lattice; `axiom` is one of
// bad-shape, not-a-partial-order, not-a-lattice, perp-not-involutive,
// perp-not-antitone, perp-not-complement, too-large.
class LatticeError : public std::runtime_error {
public:
    LatticeError(std::string axiom, std::vector<Elem> witness, const std::string& detail);
    const std::string& axiom() const { return axiom_; }
    const std::vector<Elem>& witness() const { return witness_; }

private:
    std::string axiom_;
    std::vector<Elem> witness_;
};

struct LatticeSpec {
    std::vector<std::string> names;
    std::vector<std::vector<int>> leq;
    std::vector<int> perp;
    bool operator==(const LatticeSpec&) const = default;
};

class Ortholattice {
public:
    int size() const { return n_; }
    Elem zero() const { return zero_; }
    Elem one() const { return one_; }
    ElemSet all() const { return first_n(n_); }

    const std::string& name(Elem p) const { return names_[p]; }
    const std::vector<std::string>& names() const { return names_; }
    Elem find(const std::string& label) const;  // -1 when absent

    bool leq(Elem p, Elem q) const { return contains(down_[q], p); }
    ElemSet down(Elem p) const { return down_[p]; }
    ElemSet up(Elem p) const { return up_[p]; }
    Elem perp(Elem p) const { return perp_[p]; }
    Elem meet(Elem p, Elem q) const { return meet_[p * n_ + q]; }
    Elem join(Elem p, Elem q) const { return join_[p * n_ + q]; }
    bool orthogonal(Elem p, Elem q) const { return leq(p, perp_[q]); }

    Elem meet_of(ElemSet s) const;  // empty meet is one
    Elem join_of(ElemSet s) const;  // empty join is zero

    // Cover relation pairs (lower, upper).
    std::vector<std::pair<Elem, Elem>> covers() const;
    LatticeSpec spec() const;

    friend Ortholattice build_lattice(const LatticeSpec& spec);

private:
    int n_ = 0;
    Elem zero_ = 0, one_ = 0;
    std::vector<std::string> names_;
    std::vector<ElemSet> down_, up_;
    std::vector<Elem> perp_;
    std::vector<Elem> meet_, join_;
};

Ortholattice build_lattice(const LatticeSpec& spec);

// Builds the lattice on a subset with the induced order and a given
// involution (indexed by parent elements). Element order follows the parent.
struct Sublattice;
Sublattice restrict_lattice(const Ortholattice& L, ElemSet subset, const std::vector<Elem>& perp);

struct Sublattice {
    Ortholattice lattice;
    std::vector<Elem> to_parent;
    std::vector<Elem> from_parent;  // -1 outside the subset
};

// ---------------------------------------------------------------- classify

struct Flag {
    bool holds = true;
    std::vector<Elem> witness;
};

struct LatticeClassification {
    Flag separative, orthomodular, modular, distributive, boolean;
};

LatticeClassification classify(const Ortholattice& L);

Flag check_separative(const Ortholattice& L);
Flag check_orthomodular(const Ortholattice& L);
Flag check_modular(const Ortholattice& L);
Flag check_distributive(const Ortholattice& L);

// Lattice-only checks restricted to the interval [0, top] of a parent.
bool interval_modular(const Ortholattice& L, Elem top);
bool interval_distributive(const Ortholattice& L, Elem top);
// q <= p, q <= r^perp  =>  p ^ (q v r) = q v (p ^ r), for p, q, r under top.
bool interval_orthomodular(const Ortholattice& L, Elem top);

// ---------------------------------------------------------------- intervals

struct RelativeInterval {
    Elem top = 0;
    ElemSet full = 0;            // [p]
    ElemSet rel = 0;             // [p]_p
    std::vector<Elem> perp_rel;  // q -> q^perp ^ p on [p], -1 elsewhere
    Sublattice lattice;          // ([p]_p, perp_rel) as an ortholattice

    Elem join_rel(Elem a, Elem b) const;
};

Elem rel_perp(const Ortholattice& L, Elem p, Elem q);
ElemSet rel_elements(const Ortholattice& L, Elem p);
RelativeInterval relative_interval(const Ortholattice& L, Elem p);

// ---------------------------------------------------------------- centre

bool commutes(const Ortholattice& L, Elem s, Elem t);
ElemSet centre(const Ortholattice& L);
Elem central_cover(const Ortholattice& L, ElemSet centre_set, Elem p);
std::vector<Elem> central_covers(const Ortholattice& L);
bool canonical_product_check(const Ortholattice& L, Elem p);

// ---------------------------------------------------------------- completion

struct PreorthogonalitySpec {
    int m = 0;
    std::vector<std::vector<int>> rel;
};

struct Completion {
    Ortholattice lattice;
    std::vector<Elem> embedding;          // s -> {s}^perp perp
    std::vector<std::uint32_t> closed;    // element -> closed subset of the base
};

inline constexpr int kMaxBase = 20;

// Throws std::invalid_argument for invalid specs or m > 20, and
// LatticeError("too-large") when more than 64 closed sets appear.
Completion complete_by_cuts(const PreorthogonalitySpec& spec);

// ---------------------------------------------------------------- relations

struct Relation {
    int n = 0;
    std::vector<ElemSet> rows;

    Relation() = default;
    explicit Relation(int size) : n(size), rows(size, 0) {}
    bool operator()(Elem a, Elem b) const { return contains(rows[a], b); }
    void set(Elem a, Elem b) { rows[a] |= bit(b); }
    bool operator==(const Relation&) const = default;
};

Relation equality_relation(const Ortholattice& L);
ElemSet complements(const Ortholattice& L, Elem p);

struct Perspectivity {
    Relation persp, ortho, semiortho;
};
Perspectivity perspectivity(const Ortholattice& L);

struct Finiteness {
    bool finite = true, orthofinite = true;
    ElemSet finite_set = 0, orthofinite_set = 0;
};
Finiteness relation_finiteness(const Ortholattice& L, const Relation& R);

struct Density {
    bool order_dense = false, join_dense = false;
};
Density density(const Ortholattice& L, ElemSet S);

// The seven equivalent characterisations of orthomodularity, in order:
// orthomodular law, unique orthogonal complements, [p]_p = [p] everywhere,
// orthoperspectivity finite, orthoperspectivity trivial, orthofinite = finite
// for the tested symmetric relations, and the orthogonal modular law.
std::array<bool, 7> orthomodularity_conditions(const Ortholattice& L);

// ---------------------------------------------------------------- constructions

Ortholattice chain2();
Ortholattice boolean_lattice(int atoms);
Ortholattice mo_lattice(int k);  // horizontal sum of k four-element blocks
Ortholattice horizontal_sum(const std::vector<Ortholattice>& parts);
Ortholattice product(const Ortholattice& a, const Ortholattice& b);

}  // namespace ortholab
