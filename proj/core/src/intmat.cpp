#include "raag/intmat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace raag {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::permutation(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  IntMatrix m(n, n);
  for (int v = 0; v < n; ++v) m.at(perm[v], v) = 1;
  return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      long long aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

std::vector<long long> multiply(const IntMatrix& a,
                                const std::vector<long long>& x) {
  if (a.cols != static_cast<int>(x.size()))
    throw std::invalid_argument("matrix/vector shape mismatch");
  std::vector<long long> y(a.rows, 0);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) y[i] += a.at(i, j) * x[j];
  return y;
}

long long determinant(IntMatrix m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square");
  int n = m.rows;
  if (n == 0) return 1;
  long long sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  long long det = determinant(m);
  if (det != 1 && det != -1)
    throw std::invalid_argument("matrix is not unimodular");
  int n = m.rows;
  // Gauss-Jordan over the integers: pivots are +-1 along the way because all
  // leading minors of a unimodular matrix reduce to units under row ops.
  IntMatrix a = m, inv = IntMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    // Euclidean elimination in this column to make a +-1 pivot.
    while (true) {
      int pivot = -1;
      for (int i = col; i < n; ++i)
        if (a.at(i, col) != 0 &&
            (pivot < 0 || std::llabs(a.at(i, col)) < std::llabs(a.at(pivot, col))))
          pivot = i;
      if (pivot < 0) throw std::logic_error("unimodular_inverse: singular");
      if (pivot != col)
        for (int j = 0; j < n; ++j) {
          std::swap(a.at(col, j), a.at(pivot, j));
          std::swap(inv.at(col, j), inv.at(pivot, j));
        }
      bool reduced = true;
      for (int i = col + 1; i < n; ++i) {
        long long q = a.at(i, col) / a.at(col, col);
        if (q != 0) {
          for (int j = 0; j < n; ++j) {
            a.at(i, j) -= q * a.at(col, j);
            inv.at(i, j) -= q * inv.at(col, j);
          }
        }
        if (a.at(i, col) != 0) reduced = false;
      }
      if (reduced) break;
    }
  }
  // Back substitution: pivots are now +-1 (the determinant is +-1 and the
  // reduction is unimodular).
  for (int col = n - 1; col >= 0; --col) {
    long long p = a.at(col, col);
    if (p != 1 && p != -1) throw std::logic_error("unexpected pivot");
    if (p == -1)
      for (int j = 0; j < n; ++j) {
        a.at(col, j) = -a.at(col, j);
        inv.at(col, j) = -inv.at(col, j);
      }
    for (int i = 0; i < col; ++i) {
      long long q = a.at(i, col);
      if (q == 0) continue;
      for (int j = 0; j < n; ++j) {
        a.at(i, j) -= q * a.at(col, j);
        inv.at(i, j) -= q * inv.at(col, j);
      }
    }
  }
  return inv;
}

std::vector<std::vector<long long>> integer_kernel(const IntMatrix& m) {
  int rows = m.rows, cols = m.cols;
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(cols);  // column operations accumulate here

  int lead = 0;  // next column to place a pivot in
  for (int r = 0; r < rows && lead < cols; ++r) {
    // Reduce row r across columns lead..cols-1 to a single nonzero entry.
    while (true) {
      int pivot = -1;
      for (int c = lead; c < cols; ++c)
        if (a.at(r, c) != 0 &&
            (pivot < 0 || std::llabs(a.at(r, c)) < std::llabs(a.at(r, pivot))))
          pivot = c;
      if (pivot < 0) break;
      if (pivot != lead)
        for (int i = 0; i < rows; ++i) std::swap(a.at(i, pivot), a.at(i, lead));
      if (pivot != lead)
        for (int i = 0; i < cols; ++i) std::swap(u.at(i, pivot), u.at(i, lead));
      bool clean = true;
      for (int c = lead + 1; c < cols; ++c) {
        long long q = a.at(r, c) / a.at(r, lead);
        if (q != 0) {
          for (int i = 0; i < rows; ++i) a.at(i, c) -= q * a.at(i, lead);
          for (int i = 0; i < cols; ++i) u.at(i, c) -= q * u.at(i, lead);
        }
        if (a.at(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a.at(r, lead) != 0) ++lead;
  }

  // Columns past `lead` are zero in every processed row only if they are zero
  // everywhere; collect the genuinely null columns.
  std::vector<std::vector<long long>> basis;
  for (int c = 0; c < cols; ++c) {
    bool zero = true;
    for (int r = 0; r < rows && zero; ++r) zero = (a.at(r, c) == 0);
    if (!zero) continue;
    std::vector<long long> v(cols);
    for (int i = 0; i < cols; ++i) v[i] = u.at(i, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace raag
