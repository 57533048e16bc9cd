#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "raag/autos.hpp"
#include "raag/graph.hpp"
#include "raag/intmat.hpp"

namespace raag {

// ---------------------------------------------------------------------------
// Shift systems: the integers s_{v,A} steering how standard lifts of the
// generators are translated, plus the residues r_v of the finite quotient.

struct ShiftSystem {
  std::vector<long long> residues;                 // r_v, positive
  std::vector<std::vector<std::vector<int>>> components;  // CC(v), canonical order
  std::vector<std::vector<long long>> shifts;      // s_{v,A} parallel to components
  std::vector<long long> class_shifts;             // s_[v] per domination class

  long long total_shift(int v) const;              // S_v = sum of s_{v,A}
};

/// Builds the component table for g and fills shifts from (vertex,
/// component, value) triples; class shifts are derived (the value s_{w,{v}}
/// at a non-adjacent dominating w, 0 when there is none).
ShiftSystem make_shift_system(
    const SimpleGraph& g, std::vector<long long> residues,
    const std::vector<std::pair<std::pair<int, std::vector<int>>, long long>>&
        values = {});

/// s_{v,A}; throws when A is not a component of the graph minus st(v).
long long shift_for(const ShiftSystem& s, const SimpleGraph& g, int v,
                    const std::vector<int>& component);

/// Derived class shift for one class, recomputed from the raw shifts.
long long derive_class_shift(const SimpleGraph& g, const ShiftSystem& s,
                             const std::vector<int>& cls);

// Structured text form (JSON keyed by vertex and component).
std::string shift_system_to_json(const SimpleGraph& g, const ShiftSystem& s);
ShiftSystem parse_shift_system(const SimpleGraph& g, const std::string& text);

// ---------------------------------------------------------------------------
// Condition checking and solving

struct ConditionReport {
  int condition = 0;  // 1..5
  bool pass = true;
  std::vector<std::string> witnesses;
};

/// Evaluates the five shift conditions; failures carry (v, w, A) witnesses.
std::vector<ConditionReport> check_shift_conditions(const SimpleGraph& g,
                                                    const ShiftSystem& s);

struct ShiftInfeasible {
  std::vector<int> conditions;        // which conditions cannot be met (typically {5})
  std::vector<std::string> witnesses;
};

inline constexpr long long kDefaultCongruenceBudget = 1 << 22;

/// Solves conditions 1-4 as an integer linear system, then the residue
/// congruences of condition 5 on the solution lattice by enumeration over a
/// fundamental domain. Residues must be positive.
std::variant<ShiftSystem, ShiftInfeasible> solve_shift_system(
    const SimpleGraph& g, const std::vector<long long>& residues,
    long long budget = kDefaultCongruenceBudget);

/// The closed-form system behind the free-quotient corollary: s on the
/// components of the whole graph, 0 elsewhere, with s(m-1) = -1 mod r for
/// m the number of connected components. Infeasible iff gcd(r, m-1) > 1.
std::variant<ShiftSystem, ShiftInfeasible> corollary_ff_shifts(
    const SimpleGraph& g, long long r);

/// A_Gamma has trivial center exactly when no vertex star covers the whole
/// graph. (Documented assumption used by the lift machinery.)
bool center_trivial(const SimpleGraph& g);

// ---------------------------------------------------------------------------
// Affine lifts

struct AffineLift {
  IntMatrix linear;               // unimodular
  std::vector<long long> shift;

  bool operator==(const AffineLift&) const = default;
};

AffineLift affine_identity(int n);
AffineLift affine_compose(const AffineLift& f, const AffineLift& g);  // f o g

/// Matrix of the action on homology: column v is abelianize(e(v)). Throws
/// when the determinant is not +-1 (the input was not an automorphism).
IntMatrix abelianization_matrix(const SimpleGraph& g, const Endomorphism& e);

/// Standard lift shifted per the generator: s_{v,A} x_v for a partial
/// conjugation, s_[v] x_v for an inversion, no shift otherwise.
AffineLift lift_of_generator(const SimpleGraph& g, const LSGenerator& gen,
                             const ShiftSystem& s);

/// Lift of a Whitehead automorphism through its factorization into standard
/// generators (the dictionary connecting the two generating sets).
AffineLift lift_of_whitehead(const SimpleGraph& g, const WhiteheadAuto& w,
                             const ShiftSystem& s);

// ---------------------------------------------------------------------------
// Relation verification at the affine level

struct LiftFailure {
  int relation = 0;
  long long count = 0;       // instances sharing this failing constraint
  std::string description;   // one representative instance
};

struct LiftReport {
  long long instances = 0;
  long long failure_count = 0;
  std::vector<LiftFailure> failures;
  bool linear_parts_ok = true;  // linear parts coincide independently of shifts
};

/// Precomputes, per graph, every Day instance as a linear constraint on the
/// shift variables; checking a concrete shift system is then cheap. The
/// constraint set is exact: an instance passes for s iff its constraint
/// vanishes at s.
class LiftRelationChecker {
 public:
  explicit LiftRelationChecker(const SimpleGraph& g,
                               int max_vertices = kDefaultWhiteheadBound);
  ~LiftRelationChecker();
  LiftRelationChecker(LiftRelationChecker&&) noexcept;

  LiftReport check(const ShiftSystem& s) const;
  long long instance_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot form: verify every Day relation instance on the lifts.
LiftReport verify_relations_on_lifts(const SimpleGraph& g, const ShiftSystem& s,
                                     int max_vertices = kDefaultWhiteheadBound);

struct InnerKilledEntry {
  int vertex = 0;
  long long total_shift = 0;  // S_v
  long long residue = 0;      // r_v
  bool pass = true;           // r_v divides S_v + 1
};

struct InnerKilledReport {
  bool all_pass = true;
  std::vector<InnerKilledEntry> entries;
};

/// The lift of the conjugation by v composed with the unit translation must
/// land in the deck lattice: r_v | S_v + 1 for every vertex.
InnerKilledReport verify_inner_killed(const SimpleGraph& g,
                                      const ShiftSystem& s);

}  // namespace raag
