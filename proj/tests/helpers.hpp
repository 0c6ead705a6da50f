#pragma once

#include "quartic/descent.hpp"
#include "quartic/serialize.hpp"
#include "quartic/theta.hpp"

namespace quartic::test {

/// The worked-example curve (constructed once, syzygy table included).
inline const LabelledQuartic& example_curve() {
  static const LabelledQuartic c = [] {
    LabelledQuartic c0 = construct_curve({17, 35, -7, 3, -9, 9});
    compute_syzygies(c0);
    return c0;
  }();
  return c;
}

/// A small curve with several rational points (used wherever a point is
/// needed); found by the same construction pipeline.
inline const LabelledQuartic& pointful_curve() {
  static const LabelledQuartic c = [] {
    LabelledQuartic c0 = construct_curve({-3, -1, -2, 2, 2, -3});
    compute_syzygies(c0);
    return c0;
  }();
  return c;
}

/// x^4 + y^4 + z^4.
inline TernaryZ fermat_quartic() {
  TernaryZ f(4);
  f.coeff(4, 0) = 1;
  f.coeff(0, 4) = 1;
  f.coeff(0, 0) = 1;
  return f;
}

/// x^4 + y^4 + z^4 + x^2 y^2 + x^2 z^2 + y^2 z^2.
inline TernaryZ klein_reduction_11() {
  TernaryZ f = fermat_quartic();
  f.coeff(2, 2) = 1;
  f.coeff(2, 0) = 1;
  f.coeff(0, 2) = 1;
  return f;
}

/// Rank of integer vectors reduced mod p (for saturation checks).
inline std::size_t rank_mod_p(const std::vector<std::vector<Int>>& rows,
                              std::uint64_t p) {
  PrimeField k(p);
  std::vector<std::vector<std::uint64_t>> m;
  for (const auto& r : rows) {
    std::vector<std::uint64_t> rr;
    for (const auto& e : r) rr.push_back(k.from_int(e));
    m.push_back(rr);
  }
  std::size_t rank = 0, cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    std::uint64_t inv = k.inv(m[rank][c]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      std::uint64_t f = k.mul(m[i][c], inv);
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = k.sub(m[i][j], k.mul(f, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace quartic::test
