#include "raag/torsion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace raag {

namespace {

bool is_prime_ll(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

long long nu_p_of_integer(long long n, long long p) {
  long long t = 0;
  while (n % p == 0) {
    n /= p;
    ++t;
  }
  return t;
}

}  // namespace

long long nu_p_gl(long long n, long long p) {
  if (n < 0 || !is_prime_ll(p)) throw std::invalid_argument("nu_p_gl: bad input");
  long long total = 0;
  for (long long denom = p - 1; denom <= n; denom *= p) total += n / denom;
  return total;
}

long long rank_p_gl(long long n, long long p) {
  if (n < 0 || !is_prime_ll(p)) throw std::invalid_argument("rank_p_gl: bad input");
  return n / (p - 1);
}

BigInt minkowski(long long n) {
  if (n < 1) throw std::invalid_argument("minkowski: n must be >= 1");
  BigInt m = 1;
  for (long long p = 2; p <= n + 1; ++p) {
    if (!is_prime_ll(p)) continue;
    long long e = nu_p_gl(n, p);
    BigInt factor = 1;
    for (long long i = 0; i < e; ++i) factor *= p;
    m *= factor;
  }
  return m;
}

long long nu_p_pure(const SimpleGraph& g, long long p) {
  long long total = 0;
  for (const auto& cls : domination_structure(g).classes)
    total += nu_p_gl(static_cast<long long>(cls.size()), p);
  return total;
}

long long rank_p_pure(const SimpleGraph& g, long long p) {
  long long total = 0;
  for (const auto& cls : domination_structure(g).classes)
    total += rank_p_gl(static_cast<long long>(cls.size()), p);
  return total;
}

// ---------------------------------------------------------------------------
// Permutation groups

namespace {

std::vector<Permutation> group_closure(const std::vector<Permutation>& generators,
                                       long long order_bound) {
  if (generators.empty()) return {};
  size_t n = generators[0].size();
  for (const auto& gen : generators)
    if (gen.size() != n)
      throw std::invalid_argument("generators act on different point counts");

  std::set<Permutation> seen;
  std::vector<Permutation> elements;
  Permutation id = identity_permutation(static_cast<int>(n));
  seen.insert(id);
  elements.push_back(id);
  for (size_t i = 0; i < elements.size(); ++i) {
    for (const auto& gen : generators) {
      Permutation next = compose(gen, elements[i]);
      if (seen.insert(next).second) {
        if (static_cast<long long>(elements.size()) >= order_bound)
          throw std::invalid_argument("group order exceeds the bound");
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

}  // namespace

long long permutation_group_order(const std::vector<Permutation>& generators,
                                  long long order_bound) {
  if (generators.empty()) return 1;
  return static_cast<long long>(group_closure(generators, order_bound).size());
}

long long nu_p_finite_group(const std::vector<Permutation>& generators,
                            long long p, long long order_bound) {
  if (!is_prime_ll(p)) throw std::invalid_argument("p must be prime");
  return nu_p_of_integer(permutation_group_order(generators, order_bound), p);
}

long long rank_p_finite_group(const std::vector<Permutation>& generators,
                              long long p, long long order_bound) {
  if (!is_prime_ll(p)) throw std::invalid_argument("p must be prime");
  if (generators.empty()) return 0;
  auto elements = group_closure(generators, order_bound);
  int n = static_cast<int>(generators[0].size());
  Permutation id = identity_permutation(n);

  // Elements of order exactly p.
  std::vector<Permutation> p_elements;
  for (const auto& e : elements) {
    if (e == id) continue;
    Permutation power = e;
    for (long long i = 1; i < p; ++i) power = compose(e, power);
    if (power == id) p_elements.push_back(e);
  }

  long long best = 0;
  // Grow elementary abelian subgroups one independent commuting generator at
  // a time; the subgroup is tracked as its full element set.
  auto commutes = [](const Permutation& a, const Permutation& b) {
    return compose(a, b) == compose(b, a);
  };
  std::function<void(std::set<Permutation>&, const std::vector<Permutation>&,
                     size_t, long long)>
      grow = [&](std::set<Permutation>& subgroup,
                 const std::vector<Permutation>& chosen, size_t from,
                 long long rank) {
        best = std::max(best, rank);
        for (size_t i = from; i < p_elements.size(); ++i) {
          const Permutation& cand = p_elements[i];
          if (subgroup.count(cand)) continue;
          bool ok = true;
          for (const auto& c : chosen)
            if (!commutes(c, cand)) ok = false;
          if (!ok) continue;
          // Extend the subgroup by the new direct factor <cand>.
          std::set<Permutation> bigger = subgroup;
          for (const auto& h : subgroup) {
            Permutation acc = h;
            for (long long j = 1; j < p; ++j) {
              acc = compose(cand, acc);
              bigger.insert(acc);
            }
          }
          std::vector<Permutation> chosen2 = chosen;
          chosen2.push_back(cand);
          grow(bigger, chosen2, i + 1, rank + 1);
        }
      };
  std::set<Permutation> trivial{id};
  std::vector<Permutation> none;
  grow(trivial, none, 0, 0);
  return best;
}

// ---------------------------------------------------------------------------
// Bounds and obstructions

TorsionProfile full_group_bounds(const SimpleGraph& g, long long p, bool outer) {
  (void)outer;  // the sandwich is the same for Aut and Out
  if (!is_prime_ll(p)) throw std::invalid_argument("p must be prime");
  TorsionProfile profile;
  profile.p = p;

  auto quotient = quotient_graph(g);
  auto lab = labeled_quotient_automorphisms(quotient);
  long long lab_order = static_cast<long long>(lab.size());

  long long nu_lab = nu_p_of_integer(lab_order, p);
  long long rank_lab = rank_p_finite_group(lab, p);

  long long nu_low = nu_p_pure(g, p);
  long long rank_low = rank_p_pure(g, p);
  long long n = g.size();

  profile.nu = {nu_low, std::min(nu_low + nu_lab, nu_p_gl(n, p))};
  profile.rank = {rank_low, std::min(rank_low + rank_lab, rank_p_gl(n, p))};
  return profile;
}

bool abelian_fits_aut_fn(const std::vector<long long>& prime_powers, long long n) {
  long long total = 0;
  for (long long q : prime_powers) {
    if (q < 2) throw std::invalid_argument("entries must be prime powers >= 2");
    long long p = 0;
    for (long long c = 2; c <= q; ++c)
      if (q % c == 0) {
        p = c;
        break;
      }
    long long reduced = q;
    while (reduced % p == 0) reduced /= p;
    if (reduced != 1)
      throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    total += q - q / p;
  }
  return total <= n;
}

namespace {

long long graph_aut_order(const SimpleGraph& g) {
  // |Aut(Gamma)| = prod |[v]|! * |Aut^lab| via the semidirect decomposition.
  auto dom = domination_structure(g);
  long long order = 1;
  for (const auto& cls : dom.classes)
    for (long long k = 2; k <= static_cast<long long>(cls.size()); ++k)
      order *= k;
  auto quotient = quotient_graph(g);
  order *= static_cast<long long>(labeled_quotient_automorphisms(quotient).size());
  return order;
}

}  // namespace

std::vector<Obstruction> obstruction_report(const SimpleGraph& source,
                                            const SimpleGraph& target) {
  std::vector<Obstruction> violations;

  if (source.size() > target.size())
    violations.push_back(
        {"vertex-count", "source has " + std::to_string(source.size()) +
                             " vertices, target only " +
                             std::to_string(target.size())});

  long long aut_source = graph_aut_order(source);
  long long aut_target = graph_aut_order(target);
  if (aut_target == 1 && aut_source > 1)
    violations.push_back(
        {"asymmetry",
         "target graph is asymmetric but the source graph has symmetries, so "
         "the source's sign-and-symmetry group is non-abelian"});

  auto target_classes = domination_structure(target).classes;
  for (long long p = 2; p <= target.size() + 1; ++p) {
    if (!is_prime_ll(p)) continue;
    bool small_classes = true;
    for (const auto& cls : target_classes)
      if (static_cast<long long>(cls.size()) >= p - 1) small_classes = false;
    if (small_classes &&
        nu_p_of_integer(aut_source, p) > nu_p_of_integer(aut_target, p))
      violations.push_back(
          {"p-torsion", "p = " + std::to_string(p) +
                            ": graph symmetries of the source carry more "
                            "p-torsion than the target can host"});

    TorsionProfile s = full_group_bounds(source, p, true);
    TorsionProfile t = full_group_bounds(target, p, true);
    if (s.nu.lo > t.nu.hi)
      violations.push_back(
          {"nu-bounds", "p = " + std::to_string(p) + ": nu lower bound " +
                            std::to_string(s.nu.lo) + " exceeds target upper bound " +
                            std::to_string(t.nu.hi)});
    if (s.rank.lo > t.rank.hi)
      violations.push_back(
          {"rank-bounds", "p = " + std::to_string(p) + ": rank lower bound " +
                              std::to_string(s.rank.lo) +
                              " exceeds target upper bound " +
                              std::to_string(t.rank.hi)});
  }
  return violations;
}

}  // namespace raag
