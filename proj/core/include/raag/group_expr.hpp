#pragma once

#include <string>
#include <vector>

namespace raag {

/// Expression tree for the groups that arise as finite-index kernels here:
/// free ranks, free-abelian ranks, free products and direct products.
///
/// Canonical form: products are flattened and sorted; in a free product all
/// free factors (and rank-1 abelians) merge into one F_k; in a direct product
/// all abelian factors (and F_1 terms) merge into one Z^i; trivial factors
/// are dropped. Structural equality on canonical forms is group equality for
/// this class of groups.
struct GroupExpr {
  enum class Kind { Free, FreeAbelian, FreeProduct, DirectProduct };

  Kind kind = Kind::Free;
  long long rank = 0;               // Free / FreeAbelian
  std::vector<GroupExpr> children;  // FreeProduct / DirectProduct

  static GroupExpr trivial();
  static GroupExpr free_group(long long k);
  static GroupExpr free_abelian(long long i);
  static GroupExpr free_product(std::vector<GroupExpr> parts);
  static GroupExpr direct_product(std::vector<GroupExpr> parts);
  /// n copies of e, freely multiplied.
  static GroupExpr free_power(const GroupExpr& e, long long n);

  bool is_trivial() const;
  bool operator==(const GroupExpr&) const = default;
};

GroupExpr canonical(const GroupExpr& e);

/// Total order used to sort product children (kind, rank, children).
bool expr_less(const GroupExpr& a, const GroupExpr& b);

/// Text form: "F_5 x F_5", "(Z^2)^{*3} * F_25", "Z", "1".
std::string to_string(const GroupExpr& e);

/// chi(F_k) = 1-k, chi(Z^i) = 0 for i >= 1, chi(A*B) = chi(A)+chi(B)-1,
/// chi(A x B) = chi(A) chi(B). Integral on this expression class; returned
/// as (num, den) with den = 1 to keep the contract explicitly rational.
struct Rational {
  long long num = 0;
  long long den = 1;
  bool operator==(const Rational&) const = default;
};

Rational euler_characteristic(const GroupExpr& e);

}  // namespace raag
