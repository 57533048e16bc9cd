#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "raag/graph.hpp"
#include "raag/group_expr.hpp"
#include "raag/word.hpp"

namespace raag {

// ---------------------------------------------------------------------------
// Finite quotient targets

/// Map onto a product of cyclic groups: generator v goes to images[v], one
/// residue per modulus. Always well-defined on the commutation relators.
struct AbelianQuotient {
  std::vector<long long> moduli;                 // each >= 1
  std::vector<std::vector<long long>> images;    // per vertex, length = |moduli|
};

/// Map onto Z_p x| Z_d with the faithful twist of order d: the chosen
/// `cyclic_vertex` goes to the Z_d generator, `fiber_vertex` to the Z_p
/// generator, every other vertex to the identity. Requires p prime with
/// p = 1 mod d; well-definedness on the relators is checked explicitly.
struct SemidirectQuotient {
  long long p = 0, d = 0;
  int cyclic_vertex = 0;
  int fiber_vertex = 0;
};

using FiniteQuotientSpec = std::variant<AbelianQuotient, SemidirectQuotient>;

// ---------------------------------------------------------------------------
// Presentations

/// Generators and freely reduced relators; relator letters index `generators`.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  /// The generator's word in the ambient group (Schreier generator t x tbar^-1).
  std::vector<Word> generator_words;
};

inline constexpr long long kDefaultIndexBound = 512;

/// Kernel presentation via the Reidemeister-Schreier rewriting over a
/// breadth-first Schreier transversal (generators in input order, so a
/// cyclic quotient on v gets the transversal {v^k}).
Presentation reidemeister_schreier(const SimpleGraph& g,
                                   const FiniteQuotientSpec& q,
                                   long long index_bound = kDefaultIndexBound);

struct NotRecognized {
  std::string reason;
};

/// Shallow Tietze simplification (eliminate generators occurring once in a
/// relator, free/cyclic reduction) and commutator reading. Returns the
/// commutation graph when every surviving relator is a commutator of two
/// generators; anything deeper is reported as not recognized.
std::variant<SimpleGraph, NotRecognized> recognize_raag(const Presentation& p);

// ---------------------------------------------------------------------------
// Kernel structure computations

/// Kernel of a free product of two quotient maps onto finite abelian groups
/// of orders a1, a2, with factor kernels n1, n2 (Bass-Serre count):
/// N1^{*a2} * N2^{*a1} * F_{(a1-1)(a2-1)}, in canonical form.
GroupExpr kernel_structure_free_product(const GroupExpr& n1, const GroupExpr& n2,
                                        long long a1, long long a2);

struct NotCograph {
  P4Witness witness;
};

/// Kernel of A_Gamma -> prod Z_{r_v} computed along the cotree: Z at leaves,
/// direct products over joins, iterated free-product kernels over unions.
std::variant<GroupExpr, NotCograph> kernel_structure_cograph(
    const SimpleGraph& g, const std::vector<long long>& residues);

/// Index of the quotient (product of residues); overflow-checked.
long long quotient_index(const std::vector<long long>& residues);

// ---------------------------------------------------------------------------
// Characteristic kernels

struct CharacteristicReport {
  bool characteristic = true;
  std::string witness;  // violating generator when not characteristic
};

/// Whether the kernel of A_Gamma -> prod Z_{r_v} is characteristic: its image
/// lattice in the abelianization must be invariant under the abelianization
/// matrices of all standard generators.
CharacteristicReport is_characteristic_kernel(const SimpleGraph& g,
                                              const std::vector<long long>& residues);

// ---------------------------------------------------------------------------
// Embedding targets

/// Target data for the virtual embedding: the graph glued d times along
/// st(v), and the smallest prime p = 1 mod d used by the finite quotient.
struct VirtualEmbedTarget {
  SimpleGraph graph;
  long long prime = 2;
};

VirtualEmbedTarget virtual_embed_target(const SimpleGraph& g, int v, long long d,
                                        long long prime_bound = 1000000);

struct EmbedConditions {
  bool characteristic = true;  // kernel is characteristic
  bool congruence = true;      // the shift congruences are solvable
  std::vector<std::string> notes;
  bool all() const { return characteristic && congruence; }
};

struct EmbedTarget {
  GroupExpr source;
  GroupExpr target;
  EmbedConditions conditions;
};

/// Free products of free-abelian groups: source *_i (Z^i)^{e_i} with residues
/// r_i, target F_f * *_i (Z^i)^{c_i} where R = prod r_i^{i e_i}, E = sum e_i,
/// c_i = e_i R / r_i^i and f = (E-1)R - sum_i c_i + 1.
EmbedTarget embed_target_fpa(const std::vector<std::pair<int, long long>>& factors);

/// Direct products of free groups: F_i^{e_i} -> F_{r_i^i(i-1)+1}^{e_i},
/// requiring gcd(i-1, r_i) = 1 per factor. Factors need i >= 2.
EmbedTarget embed_target_dpf(const std::vector<std::pair<int, long long>>& factors);

}  // namespace raag
