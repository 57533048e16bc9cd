#include "raag/group_expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace raag {

GroupExpr GroupExpr::trivial() { return free_group(0); }

GroupExpr GroupExpr::free_group(long long k) {
  if (k < 0) throw std::invalid_argument("negative free rank");
  GroupExpr e;
  e.kind = Kind::Free;
  e.rank = k;
  return e;
}

GroupExpr GroupExpr::free_abelian(long long i) {
  if (i < 0) throw std::invalid_argument("negative free-abelian rank");
  GroupExpr e;
  e.kind = Kind::FreeAbelian;
  e.rank = i;
  return e;
}

GroupExpr GroupExpr::free_product(std::vector<GroupExpr> parts) {
  GroupExpr e;
  e.kind = Kind::FreeProduct;
  e.children = std::move(parts);
  return e;
}

GroupExpr GroupExpr::direct_product(std::vector<GroupExpr> parts) {
  GroupExpr e;
  e.kind = Kind::DirectProduct;
  e.children = std::move(parts);
  return e;
}

GroupExpr GroupExpr::free_power(const GroupExpr& e, long long n) {
  if (n < 0) throw std::invalid_argument("negative free power");
  std::vector<GroupExpr> parts;
  for (long long i = 0; i < n; ++i) parts.push_back(e);
  return free_product(std::move(parts));
}

bool GroupExpr::is_trivial() const {
  return (kind == Kind::Free || kind == Kind::FreeAbelian) && rank == 0;
}

namespace {
int kind_order(GroupExpr::Kind k) {
  switch (k) {
    case GroupExpr::Kind::FreeAbelian: return 0;
    case GroupExpr::Kind::Free: return 1;
    case GroupExpr::Kind::DirectProduct: return 2;
    case GroupExpr::Kind::FreeProduct: return 3;
  }
  return 4;
}
}  // namespace

bool expr_less(const GroupExpr& a, const GroupExpr& b) {
  if (a.kind != b.kind) return kind_order(a.kind) < kind_order(b.kind);
  if (a.rank != b.rank) return a.rank < b.rank;
  return std::lexicographical_compare(a.children.begin(), a.children.end(),
                                      b.children.begin(), b.children.end(),
                                      expr_less);
}

GroupExpr canonical(const GroupExpr& e) {
  if (e.kind == GroupExpr::Kind::Free || e.kind == GroupExpr::Kind::FreeAbelian) {
    if (e.rank == 0) return GroupExpr::free_group(0);
    if (e.rank == 1) return GroupExpr::free_abelian(1);  // F_1 = Z
    return e;
  }

  bool is_free_product = e.kind == GroupExpr::Kind::FreeProduct;
  std::vector<GroupExpr> flat;
  for (const auto& child : e.children) {
    GroupExpr c = canonical(child);
    if (c.kind == e.kind)
      flat.insert(flat.end(), c.children.begin(), c.children.end());
    else if (!c.is_trivial())
      flat.push_back(std::move(c));
  }

  // Merge the mergeable rank: free factors under *, abelian factors under x.
  long long merged = 0;
  std::vector<GroupExpr> rest;
  for (auto& c : flat) {
    bool mergeable =
        is_free_product
            ? (c.kind == GroupExpr::Kind::Free ||
               (c.kind == GroupExpr::Kind::FreeAbelian && c.rank == 1))
            : (c.kind == GroupExpr::Kind::FreeAbelian ||
               (c.kind == GroupExpr::Kind::Free && c.rank == 1));
    if (mergeable)
      merged += c.rank;
    else
      rest.push_back(std::move(c));
  }
  if (merged > 0)
    rest.push_back(is_free_product ? GroupExpr::free_group(merged)
                                   : GroupExpr::free_abelian(merged));

  if (rest.empty()) return GroupExpr::trivial();
  if (rest.size() == 1) return canonical(rest[0]);
  std::sort(rest.begin(), rest.end(), expr_less);
  return is_free_product ? GroupExpr::free_product(std::move(rest))
                         : GroupExpr::direct_product(std::move(rest));
}

namespace {

std::string atom_string(const GroupExpr& e, bool parenthesize_products) {
  switch (e.kind) {
    case GroupExpr::Kind::Free:
      if (e.rank == 0) return "1";
      if (e.rank == 1) return "Z";
      return "F_" + std::to_string(e.rank);
    case GroupExpr::Kind::FreeAbelian:
      if (e.rank == 0) return "1";
      if (e.rank == 1) return "Z";
      return "Z^" + std::to_string(e.rank);
    default: {
      std::string s = to_string(e);
      return parenthesize_products ? "(" + s + ")" : s;
    }
  }
}

}  // namespace

std::string to_string(const GroupExpr& e) {
  GroupExpr c = canonical(e);
  if (c.kind == GroupExpr::Kind::Free || c.kind == GroupExpr::Kind::FreeAbelian)
    return atom_string(c, false);

  if (c.kind == GroupExpr::Kind::DirectProduct) {
    std::string out;
    for (size_t i = 0; i < c.children.size(); ++i) {
      if (i) out += " x ";
      out += atom_string(c.children[i], true);
    }
    return out;
  }

  // Free product: group equal factors as (X)^{*k}.
  std::string out;
  size_t i = 0;
  while (i < c.children.size()) {
    size_t j = i;
    while (j < c.children.size() && c.children[j] == c.children[i]) ++j;
    if (!out.empty()) out += " * ";
    size_t reps = j - i;
    if (reps == 1)
      out += atom_string(c.children[i], true);
    else
      out += "(" + atom_string(c.children[i], false) + ")^{*" +
             std::to_string(reps) + "}";
    i = j;
  }
  return out;
}

Rational euler_characteristic(const GroupExpr& e) {
  switch (e.kind) {
    case GroupExpr::Kind::Free:
      return {1 - e.rank, 1};
    case GroupExpr::Kind::FreeAbelian:
      return {e.rank == 0 ? 1 : 0, 1};
    case GroupExpr::Kind::FreeProduct: {
      long long sum = 1;  // chi(trivial) = 1, each factor adds chi - 1
      for (const auto& c : e.children) sum += euler_characteristic(c).num - 1;
      return {sum, 1};
    }
    case GroupExpr::Kind::DirectProduct: {
      long long prod = 1;
      for (const auto& c : e.children) prod *= euler_characteristic(c).num;
      return {prod, 1};
    }
  }
  return {1, 1};
}

}  // namespace raag
