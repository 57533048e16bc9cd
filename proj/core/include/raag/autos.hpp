#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "raag/graph.hpp"
#include "raag/word.hpp"

namespace raag {

// ---------------------------------------------------------------------------
// Laurence-Servatius generators

struct Inversion {
  int v;
};
struct GraphSymmetry {
  Permutation sigma;
};
/// Left transvection: sends w to v*w. Legal when w <= v and v != w.
struct Transvection {
  int v, w;
};
/// Conjugation by v on one connected component of the graph minus st(v).
struct PartialConjugation {
  int v;
  std::vector<int> component;
};

using LSGenerator =
    std::variant<Inversion, GraphSymmetry, Transvection, PartialConjugation>;

/// All inversions, graph symmetries, legal transvections and partial
/// conjugations, in that order, each family enumerated deterministically.
std::vector<LSGenerator> ls_generators(const SimpleGraph& g);

std::string ls_to_string(const SimpleGraph& g, const LSGenerator& gen);

// ---------------------------------------------------------------------------
// Letter sets (for Whitehead automorphisms); |V| <= 16

using LetterSet = std::uint32_t;

LetterSet letter_bit(Letter l);
bool set_contains(LetterSet s, Letter l);
LetterSet set_inverse(LetterSet s);
LetterSet full_letter_set(int n_vertices);
std::vector<Letter> set_letters(LetterSet s);  // in letter order

// ---------------------------------------------------------------------------
// Whitehead automorphisms

struct WhiteheadAuto {
  enum class Kind { Permutation, Multiplier };
  Kind kind = Kind::Permutation;

  // Permutation type: the letter action is v |-> sigma(v)^(eps), where eps is
  // -1 exactly when `inverted` has the bit of sigma(v) set.
  Permutation sigma;
  std::uint32_t inverted = 0;

  // Multiplier type (A, a).
  LetterSet set = 0;
  Letter multiplier;

  static WhiteheadAuto type1(Permutation sigma, std::uint32_t inverted);
  static WhiteheadAuto type2(LetterSet set, Letter multiplier);
};

/// Letter action of a permutation-type automorphism.
Letter type1_act(const WhiteheadAuto& w, Letter l);
LetterSet type1_act_set(const WhiteheadAuto& w, LetterSet s);

/// Group operations on permutation-type automorphisms, realizing the
/// semi-direct product of sign vectors with graph automorphisms.
WhiteheadAuto type1_compose(const WhiteheadAuto& f, const WhiteheadAuto& g);
WhiteheadAuto type1_inverse(const WhiteheadAuto& f);

/// Inverse as Whitehead data: (A,a)^-1 = (A-a+a^-1, a^-1) for multiplier
/// type, the semi-direct inverse for permutation type.
WhiteheadAuto whitehead_inverse(const WhiteheadAuto& w);

struct WellDefinedness {
  bool ok = false;
  std::string reason;  // human-readable witness when !ok
};

/// Decides whether (A, a) defines an automorphism: (1) the vertices carried
/// with their inverses, minus lk(a), must form a union of components of the
/// graph minus st(a); (2) every letter carried without its inverse must be
/// dominated by a. Throws if a is not in A or a^-1 is in A.
WellDefinedness whitehead_well_defined(const SimpleGraph& g, LetterSet A,
                                       Letter a);

std::string whitehead_to_string(const SimpleGraph& g, const WhiteheadAuto& w);

// ---------------------------------------------------------------------------
// Endomorphisms as generator images

struct Endomorphism {
  std::vector<Word> images;  // per vertex, stored in normal form

  bool operator==(const Endomorphism&) const = default;
};

Endomorphism identity_endo(const SimpleGraph& g);

/// Substitute generator images into w and normalize.
Word apply(const SimpleGraph& g, const Endomorphism& e, const Word& w);

/// (f o e)(v) = apply(f, e(v)).
Endomorphism compose(const SimpleGraph& g, const Endomorphism& f,
                     const Endomorphism& e);

bool endos_equal(const SimpleGraph& g, const Endomorphism& f,
                 const Endomorphism& e);

Endomorphism endo_of_ls(const SimpleGraph& g, const LSGenerator& gen);
Endomorphism inverse_endo_of_ls(const SimpleGraph& g, const LSGenerator& gen);

/// The four-case image table of (A, a), whether or not the data is
/// well-defined. The separate well-definedness test plus this formula is what
/// brute-force oracles need.
Endomorphism whitehead_formula_endo(const SimpleGraph& g, LetterSet A, Letter a);

/// Images of a Whitehead automorphism; throws for ill-defined multiplier data.
Endomorphism endo_of_whitehead(const SimpleGraph& g, const WhiteheadAuto& w);

// ---------------------------------------------------------------------------
// Enumeration and Day's presentation

inline constexpr int kDefaultWhiteheadBound = 5;

/// All permutation-type automorphisms (2^|V| * |Aut(Gamma)| of them) followed
/// by all well-defined multiplier-type (A, a).
std::vector<WhiteheadAuto> enumerate_whitehead(const SimpleGraph& g,
                                               int max_vertices = kDefaultWhiteheadBound);

/// One instance of a Day relation: the composition of lhs must equal the
/// composition of rhs (empty side = identity). Factors apply right to left.
struct DayInstance {
  int relation = 0;  // 1..10
  std::vector<WhiteheadAuto> lhs, rhs;
};

Endomorphism materialize(const SimpleGraph& g,
                         const std::vector<WhiteheadAuto>& side);

struct DayEnumerationStats {
  long long instances = 0;
  /// Side conditions held but some term of the relation was not well-defined;
  /// such near-instances are skipped, never failed.
  long long skipped_ill_defined = 0;
};

/// Streams every instance of relations 1..10 among the Whitehead
/// automorphisms of g. Deterministic order.
DayEnumerationStats for_each_day_instance(
    const SimpleGraph& g, const std::function<void(const DayInstance&)>& visit,
    int max_vertices = kDefaultWhiteheadBound);

/// Materialized instance list; throws when the instance count would exceed
/// max_instances (complete graphs on 5+ vertices get large).
std::vector<DayInstance> day_relation_instances(
    const SimpleGraph& g, int max_vertices = kDefaultWhiteheadBound,
    long long max_instances = 2000000);

struct DayFailure {
  int relation = 0;
  std::string description;
};

struct DayReport {
  long long instances = 0;
  long long skipped_ill_defined = 0;
  long long failure_count = 0;
  std::vector<DayFailure> failures;  // first few, for diagnostics
};

/// Checks every Day instance by comparing generator images on both sides.
DayReport verify_day_presentation(const SimpleGraph& g,
                                  int max_vertices = kDefaultWhiteheadBound);

}  // namespace raag
