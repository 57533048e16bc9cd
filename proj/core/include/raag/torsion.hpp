#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "raag/graph.hpp"

namespace raag {

using BigInt = boost::multiprecision::cpp_int;

/// Least common multiple of the orders of all finite groups of n x n
/// rational matrices: prod_p p^(sum_k floor(n / p^k(p-1))).
BigInt minkowski(long long n);

/// p-part exponent and elementary p-rank of GL(n, Z); the same values hold
/// for the automorphism groups of rank-n free groups.
long long nu_p_gl(long long n, long long p);
long long rank_p_gl(long long n, long long p);

/// Torsion invariants of the pure (outer) automorphism group: sums of the
/// GL values over the domination classes.
long long nu_p_pure(const SimpleGraph& g, long long p);
long long rank_p_pure(const SimpleGraph& g, long long p);

// ---------------------------------------------------------------------------
// Finite permutation groups (exhaustive closure, desk scale)

inline constexpr long long kDefaultGroupOrderBound = 10000;

/// Order of the generated permutation group; throws beyond the bound.
long long permutation_group_order(const std::vector<Permutation>& generators,
                                  long long order_bound = kDefaultGroupOrderBound);

/// nu_p of the group order (Sylow).
long long nu_p_finite_group(const std::vector<Permutation>& generators,
                            long long p,
                            long long order_bound = kDefaultGroupOrderBound);

/// Largest t with an elementary abelian subgroup Z_p^t, by exhaustive search
/// over commuting p-element tuples.
long long rank_p_finite_group(const std::vector<Permutation>& generators,
                              long long p,
                              long long order_bound = kDefaultGroupOrderBound);

// ---------------------------------------------------------------------------
// Sandwich bounds for the full (outer) automorphism group

struct IntInterval {
  long long lo = 0, hi = 0;
  bool operator==(const IntInterval&) const = default;
};

struct TorsionProfile {
  long long p = 2;
  IntInterval nu, rank;
};

/// The pure-group value from below; from above, the pure value plus the
/// labeled quotient symmetries, capped by the GL(|V|, Z) value. The same
/// bounds apply to the automorphism group and its outer quotient.
TorsionProfile full_group_bounds(const SimpleGraph& g, long long p, bool outer);

/// Abelian embedding criterion into Aut(F_n): entries are prime powers
/// p_i^{e_i} >= 2 and the test is sum (p_i^{e_i} - p_i^{e_i - 1}) <= n.
bool abelian_fits_aut_fn(const std::vector<long long>& prime_powers, long long n);

// ---------------------------------------------------------------------------
// Non-embeddability report

struct Obstruction {
  std::string condition;  // "vertex-count", "asymmetry", "p-torsion", "nu-bounds", "rank-bounds"
  std::string detail;
};

/// Necessary conditions for Out(A_source) -> Out(A_target) to embed; the
/// returned list collects every violated one (empty = no obstruction found).
/// Primes up to |V(target)| + 1 are scanned (larger primes see nothing).
std::vector<Obstruction> obstruction_report(const SimpleGraph& source,
                                            const SimpleGraph& target);

}  // namespace raag
