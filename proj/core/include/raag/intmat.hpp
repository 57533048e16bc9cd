#pragma once

#include <vector>

namespace raag {

/// Dense integer matrix, row major. Desk-scale: entries stay comfortably in
/// 64 bits for everything this library does with them.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<long long> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  long long& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  long long at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMatrix identity(int n);
  static IntMatrix permutation(const std::vector<int>& perm);  // column v -> e_{perm[v]}

  bool operator==(const IntMatrix&) const = default;
};

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
std::vector<long long> multiply(const IntMatrix& a, const std::vector<long long>& x);

/// Exact determinant (fraction-free Bareiss elimination).
long long determinant(IntMatrix m);

/// Inverse of a matrix with determinant +-1; throws otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Basis of the integer kernel { x : m x = 0 }, one basis vector per column
/// of the result, computed by unimodular column reduction.
std::vector<std::vector<long long>> integer_kernel(const IntMatrix& m);

}  // namespace raag
