#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quartic {

struct DimensionMismatch : std::invalid_argument {
  DimensionMismatch() : std::invalid_argument("F2 ambient dimensions differ") {}
};

/// Dense vector over GF(2), bits packed into 64-bit words.
class F2Vec {
 public:
  F2Vec() = default;
  explicit F2Vec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool b) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (b)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  F2Vec& operator^=(const F2Vec& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  friend F2Vec operator^(F2Vec a, const F2Vec& b) { return a ^= b; }

  bool is_zero() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  /// Index of the lowest set bit, or npos.
  static constexpr std::size_t npos = std::size_t(-1);
  std::size_t first_bit() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return i * 64 + std::size_t(__builtin_ctzll(w_[i]));
    return npos;
  }

  friend bool operator==(const F2Vec& a, const F2Vec& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator<(const F2Vec& a, const F2Vec& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.w_ < b.w_;
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < n_; ++i) s += get(i) ? '1' : '0';
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Subspace of F2^n kept in reduced row-echelon form at all times, so
/// equality of subspaces is equality of representations.
class F2Subspace {
 public:
  F2Subspace() = default;
  explicit F2Subspace(std::size_t ambient) : n_(ambient) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<F2Vec>& basis() const { return rows_; }

  /// Reduces v against the basis; the remainder is zero iff v is a member.
  F2Vec reduce(F2Vec v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (v.get(pivots_[k])) v ^= rows_[k];
    }
    return v;
  }
  bool contains(const F2Vec& v) const { return reduce(v).is_zero(); }

  /// Inserts v into the span.  Returns true if the dimension grew.
  bool add(F2Vec v) {
    if (v.size() != n_) throw DimensionMismatch{};
    v = reduce(std::move(v));
    std::size_t p = v.first_bit();
    if (p == F2Vec::npos) return false;
    // knock the new pivot out of existing rows, keep rows sorted by pivot
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (rows_[k].get(p)) rows_[k] ^= v;
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + at, std::move(v));
    pivots_.insert(pivots_.begin() + at, p);
    return true;
  }

  static F2Subspace full(std::size_t n) {
    F2Subspace s(n);
    for (std::size_t i = 0; i < n; ++i) {
      F2Vec e(n);
      e.set(i, true);
      s.add(e);
    }
    return s;
  }

  static F2Subspace span(std::size_t n, const std::vector<F2Vec>& gens) {
    F2Subspace s(n);
    for (const auto& g : gens) s.add(g);
    return s;
  }

  friend bool operator==(const F2Subspace& a, const F2Subspace& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<F2Vec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Affine subspace of F2^n: either empty, or base + direction.  The base
/// point is always reduced against the direction's echelon basis, making
/// the representation canonical.
class F2Affine {
 public:
  F2Affine() = default;

  static F2Affine empty_set(std::size_t ambient) {
    F2Affine a;
    a.n_ = ambient;
    a.empty_ = true;
    a.dir_ = F2Subspace(ambient);
    return a;
  }
  static F2Affine of(F2Vec base, F2Subspace dir) {
    if (base.size() != dir.ambient()) throw DimensionMismatch{};
    F2Affine a;
    a.n_ = base.size();
    a.empty_ = false;
    a.base_ = dir.reduce(std::move(base));
    a.dir_ = std::move(dir);
    return a;
  }
  static F2Affine subspace(F2Subspace dir) {
    return of(F2Vec(dir.ambient()), std::move(dir));
  }
  static F2Affine full(std::size_t n) { return subspace(F2Subspace::full(n)); }

  std::size_t ambient() const { return n_; }
  bool empty() const { return empty_; }
  std::size_t dim() const { return dir_.dim(); }
  const F2Vec& base() const { return base_; }
  const F2Subspace& direction() const { return dir_; }

  bool contains(const F2Vec& v) const {
    if (empty_) return false;
    return dir_.contains(v ^ base_);
  }

  /// All points; only sane for small dimension.
  std::vector<F2Vec> enumerate() const {
    std::vector<F2Vec> out;
    if (empty_) return out;
    out.push_back(base_);
    for (const auto& b : dir_.basis()) {
      std::size_t m = out.size();
      for (std::size_t i = 0; i < m; ++i) out.push_back(out[i] ^ b);
    }
    return out;
  }

  friend bool operator==(const F2Affine& a, const F2Affine& b) {
    if (a.n_ != b.n_) return false;
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.base_ == b.base_ && a.dir_ == b.dir_;
  }

 private:
  std::size_t n_ = 0;
  bool empty_ = true;
  F2Vec base_;
  F2Subspace dir_;
};

/// Matrix over GF(2), rows x cols, row-major bit rows.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows, F2Vec(cols)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t i, std::size_t j) const { return data_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool b) { data_[i].set(j, b); }
  const F2Vec& row(std::size_t i) const { return data_[i]; }
  F2Vec& row(std::size_t i) { return data_[i]; }

  static F2Matrix identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  F2Vec apply(const F2Vec& x) const {
    if (x.size() != cols_) throw DimensionMismatch{};
    F2Vec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      // parity of <row_i, x>
      bool acc = false;
      for (std::size_t j = 0; j < cols_; ++j)
        if (data_[i].get(j) && x.get(j)) acc = !acc;
      y.set(i, acc);
    }
    return y;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F2Vec> data_;
};

namespace f2 {

/// Solves A x = b over GF(2) where the columns of A are given as vectors.
/// Returns a particular solution plus the nullspace of A, or nullopt.
struct LinearSolution {
  F2Vec particular;            // one x with A x = b
  std::vector<F2Vec> kernel;   // basis of {x : A x = 0}
};

inline std::optional<LinearSolution> solve(const std::vector<F2Vec>& cols,
                                           std::size_t height, const F2Vec& b) {
  std::size_t n = cols.size();
  // augmented rows: [A | I] transposed trick -- eliminate on column vectors
  // we run Gaussian elimination on the list (col_i, e_i) over F2^height x F2^n
  std::vector<std::pair<F2Vec, F2Vec>> work;
  work.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    F2Vec tag(n);
    tag.set(i, true);
    work.emplace_back(cols[i], tag);
  }
  F2Vec rhs = b, rhs_tag(n);
  std::vector<std::size_t> pivot_of;  // which work index owns each pivot row
  std::vector<std::size_t> pivot_row;
  std::vector<bool> used(n, false);
  for (std::size_t r = 0; r < height; ++r) {
    std::size_t found = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i] && work[i].first.get(r)) {
        found = i;
        break;
      }
    }
    if (found == n) continue;
    used[found] = true;
    pivot_of.push_back(found);
    pivot_row.push_back(r);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != found && work[i].first.get(r)) {
        work[i].first ^= work[found].first;
        work[i].second ^= work[found].second;
      }
    }
    if (rhs.get(r)) {
      rhs ^= work[found].first;
      rhs_tag ^= work[found].second;
    }
  }
  if (!rhs.is_zero()) return std::nullopt;
  LinearSolution sol;
  sol.particular = rhs_tag;
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) sol.kernel.push_back(work[i].second);
  return sol;
}

}  // namespace f2

/// Exact intersection of affine subspaces; Empty if disjoint.
inline F2Affine affine_intersect(const F2Affine& A, const F2Affine& B) {
  if (A.ambient() != B.ambient()) throw DimensionMismatch{};
  std::size_t n = A.ambient();
  if (A.empty() || B.empty()) return F2Affine::empty_set(n);
  // x = a + U s = b + V t;  solve [U V] (s,t) = a + b
  std::vector<F2Vec> cols;
  for (const auto& u : A.direction().basis()) cols.push_back(u);
  for (const auto& v : B.direction().basis()) cols.push_back(v);
  auto sol = f2::solve(cols, n, A.base() ^ B.base());
  if (!sol) return F2Affine::empty_set(n);
  // particular point
  F2Vec x = A.base();
  {
    std::size_t k = 0;
    for (const auto& u : A.direction().basis()) {
      if (sol->particular.get(k)) x ^= u;
      ++k;
    }
  }
  // direction = U ∩ V: kernel vectors of [U V] restricted to the U part
  F2Subspace dir(n);
  for (const auto& kv : sol->kernel) {
    F2Vec w(n);
    std::size_t k = 0;
    for (const auto& u : A.direction().basis()) {
      if (kv.get(k)) w ^= u;
      ++k;
    }
    dir.add(w);
  }
  return F2Affine::of(std::move(x), std::move(dir));
}

/// Preimage {x : L x in B} of an affine set under a linear map.
inline F2Affine affine_preimage(const F2Matrix& L, const F2Affine& B) {
  if (L.rows() != B.ambient()) throw DimensionMismatch{};
  std::size_t n = L.cols();
  if (B.empty()) return F2Affine::empty_set(n);
  // L x = b + V t  <=>  [L | V] (x, t) = b
  std::vector<F2Vec> cols;
  for (std::size_t j = 0; j < n; ++j) {
    F2Vec c(L.rows());
    for (std::size_t i = 0; i < L.rows(); ++i) c.set(i, L.get(i, j));
    cols.push_back(std::move(c));
  }
  for (const auto& v : B.direction().basis()) cols.push_back(v);
  auto sol = f2::solve(cols, L.rows(), B.base());
  if (!sol) return F2Affine::empty_set(n);
  auto take_x = [&](const F2Vec& full) {
    F2Vec x(n);
    for (std::size_t j = 0; j < n; ++j)
      if (full.get(j)) x.set(j, true);
    return x;
  };
  F2Subspace dir(n);
  for (const auto& kv : sol->kernel) dir.add(take_x(kv));
  return F2Affine::of(take_x(sol->particular), std::move(dir));
}

}  // namespace quartic
