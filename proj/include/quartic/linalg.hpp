#pragma once

#include "quartic/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

namespace quartic {

/// Dense matrix over the integers (used as a matrix over Q with cleared
/// denominators whenever that matters).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : r_(rows), c_(cols), a_(rows * cols, Int(0)) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Int& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<Int> row(std::size_t i) const {
    return {a_.begin() + i * c_, a_.begin() + (i + 1) * c_};
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
    return m;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

namespace linalg {

/// Row echelon form with every row kept primitive (content divided out
/// after each elimination step).  Exact, fraction-free in spirit: growth
/// is controlled by the content division rather than Bareiss bookkeeping.
struct Echelon {
  std::vector<std::vector<Int>> rows;   // primitive, sorted by pivot column
  std::vector<std::size_t> pivots;      // pivot column of each row
  std::size_t cols = 0;

  std::size_t rank() const { return rows.size(); }

  /// Reduces one vector against the accumulated rows; nonzero remainder is
  /// inserted as a new primitive row.  Returns true if rank grew.
  bool insert(std::vector<Int> v) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Int& lead = v[pivots[k]];
      if (lead == 0) continue;
      const Int& piv = rows[k][pivots[k]];
      Int g = gcd(lead, piv);
      Int mv = piv / g, mr = lead / g;
      for (std::size_t j = 0; j < cols; ++j) v[j] = v[j] * mv - rows[k][j] * mr;
    }
    std::size_t p = 0;
    while (p < cols && v[p] == 0) ++p;
    if (p == cols) return false;
    v = primitive(std::move(v));
    std::size_t at = 0;
    while (at < pivots.size() && pivots[at] < p) ++at;
    rows.insert(rows.begin() + at, std::move(v));
    pivots.insert(pivots.begin() + at, p);
    return true;
  }
};

inline Echelon echelon(const IntMatrix& m) {
  Echelon e;
  e.cols = m.cols();
  for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  return e;
}

inline std::size_t rank(const IntMatrix& m) { return echelon(m).rank(); }

/// Basis of the right kernel {v : M v = 0} over Q, each vector returned as
/// a primitive integer vector.  Free columns carry an identity block, so
/// the basis is canonical given the pivot structure.
inline std::vector<std::vector<Int>> nullspace(const IntMatrix& m) {
  Echelon e = echelon(m);
  std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;

  std::vector<std::vector<Int>> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    // back-substitute over Q
    std::vector<Rat> v(n, Rat(0));
    v[free] = 1;
    for (std::size_t k = e.rows.size(); k-- > 0;) {
      Rat s = 0;
      for (std::size_t j = e.pivots[k] + 1; j < n; ++j)
        if (v[j] != 0) s += Rat(e.rows[k][j]) * v[j];
      v[e.pivots[k]] = -s / Rat(e.rows[k][e.pivots[k]]);
    }
    out.push_back(primitive(v));
  }
  return out;
}

/// Z-basis of the kernel lattice {v in Z^c : M v = 0}, computed by column
/// reduction with an accumulated unimodular transform.  The result is a
/// basis of the full (hence saturated) kernel lattice, so its reduction
/// mod every prime stays independent.
inline std::vector<std::vector<Int>> kernel_lattice(const IntMatrix& m) {
  std::size_t r = m.rows(), c = m.cols();
  // work on columns of A, mirror column ops on U (c x c identity)
  std::vector<std::vector<Int>> A(c, std::vector<Int>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A[j][i] = m.at(i, j);
  std::vector<std::vector<Int>> U(c, std::vector<Int>(c, Int(0)));
  for (std::size_t j = 0; j < c; ++j) U[j][j] = 1;

  std::vector<bool> active(c, true);
  for (std::size_t i = 0; i < r; ++i) {
    // Euclidean elimination across the active columns in row i
    while (true) {
      std::size_t best = c;
      for (std::size_t j = 0; j < c; ++j) {
        if (!active[j] || A[j][i] == 0) continue;
        if (best == c || abs(A[j][i]) < abs(A[best][i])) best = j;
      }
      if (best == c) break;  // row i is clear on active columns
      bool others = false;
      for (std::size_t j = 0; j < c; ++j) {
        if (j == best || !active[j] || A[j][i] == 0) continue;
        others = true;
        Int q = A[j][i] / A[best][i];
        // round toward nearest to keep magnitudes small
        Int rem = A[j][i] - q * A[best][i];
        if (2 * abs(rem) > abs(A[best][i])) q += (A[j][i] * A[best][i] > 0) ? 1 : -1;
        for (std::size_t k = i; k < r; ++k) A[j][k] -= q * A[best][k];
        for (std::size_t k = 0; k < c; ++k) U[j][k] -= q * U[best][k];
      }
      if (!others) {
        active[best] = false;  // pivot column for row i
        break;
      }
    }
  }
  std::vector<std::vector<Int>> out;
  for (std::size_t j = 0; j < c; ++j)
    if (active[j]) out.push_back(U[j]);
  return out;
}

/// Saturation of the lattice spanned by the given (independent) rows:
/// the set of integer vectors in their Q-span.  Kernel-of-kernel trick.
inline std::vector<std::vector<Int>> saturate(
    const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) return {};
  IntMatrix B = IntMatrix::from_rows(rows);
  auto K = kernel_lattice(B);  // spans (row space)^perp over Q
  if (K.empty()) {
    // full row space: the standard basis works
    std::size_t n = rows[0].size();
    std::vector<std::vector<Int>> out(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
  }
  return kernel_lattice(IntMatrix::from_rows(K));
}

/// Solves M x = b over Q if a solution exists.
inline std::optional<std::vector<Rat>> solve(const IntMatrix& m,
                                             const std::vector<Int>& b) {
  std::size_t n = m.cols();
  IntMatrix aug(m.rows(), n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n) = -b[i];
  }
  for (auto& v : nullspace(aug)) {
    if (v[n] != 0) {
      std::vector<Rat> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = Rat(v[j]) / Rat(v[n]);
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace linalg

/// Matrix over Q; thin wrapper that clears denominators row by row and
/// defers to the integer routines.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols)
      : r_(rows), c_(cols), a_(rows * cols, Rat(0)) {}

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rat& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  IntMatrix cleared() const {
    IntMatrix m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i) {
      Int d = 1;
      for (std::size_t j = 0; j < c_; ++j) d = lcm(d, den(a_[i * c_ + j]));
      for (std::size_t j = 0; j < c_; ++j) {
        const Rat& e = a_[i * c_ + j];
        m.at(i, j) = num(e) * (d / den(e));
      }
    }
    return m;
  }

 private:
  std::size_t r_, c_;
  std::vector<Rat> a_;
};

/// Basis of the right kernel of a rational matrix (primitive integer
/// vectors; exact).
inline std::vector<std::vector<Int>> rational_nullspace(const RationalMatrix& m) {
  return linalg::nullspace(m.cleared());
}

}  // namespace quartic
