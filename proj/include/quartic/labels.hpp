#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace quartic {

/// Bitangent label: an unordered pair {i, j} in {0, ..., 7}.  The eight
/// symbols index an even theta characteristic's Sym(8)-orbit; labels
/// {0, i} are the Aronhold set distinguished by the construction.
struct Label {
  int i, j;  // i < j

  Label(int a, int b) : i(a < b ? a : b), j(a < b ? b : a) {
    if (i == j || i < 0 || j > 7) throw std::invalid_argument("bad label");
  }

  int mask() const { return (1 << i) | (1 << j); }
  bool touches(int sym) const { return i == sym || j == sym; }

  /// "ij" with i < j, e.g. "01", "37".
  std::string str() const {
    return std::string(1, char('0' + i)) + char('0' + j);
  }
  static Label parse(const std::string& s) {
    if (s.size() != 2) throw std::invalid_argument("bad label string");
    return Label(s[0] - '0', s[1] - '0');
  }

  friend bool operator==(const Label&, const Label&) = default;
};

/// Canonical order of the 28 labels: (0,1), (0,2), ..., (0,7), (1,2), ...
inline const std::vector<Label>& all_labels() {
  static const std::vector<Label> out = [] {
    std::vector<Label> v;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) v.emplace_back(i, j);
    return v;
  }();
  return out;
}

inline int label_index(const Label& l) {
  // labels with first symbol < i come first
  int idx = 0;
  for (int a = 0; a < l.i; ++a) idx += 7 - a;
  return idx + (l.j - l.i - 1);
}

/// Syzygetic quadruples: the pairs form either a 4-cycle on 4 symbols or
/// a perfect matching on all 8.
inline bool is_syzygetic(const std::array<Label, 4>& q) {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (q[a] == q[b]) throw std::invalid_argument("labels must be distinct");
  int symbols = q[0].mask() | q[1].mask() | q[2].mask() | q[3].mask();
  int count = __builtin_popcount(symbols);
  if (count == 8) return true;  // perfect matching
  if (count != 4) return false;
  std::array<int, 8> degree{};
  for (const auto& l : q) {
    ++degree[l.i];
    ++degree[l.j];
  }
  for (int s = 0; s < 8; ++s)
    if ((symbols >> s) & 1 && degree[s] != 2) return false;
  return true;  // 2-regular simple graph on 4 vertices: a 4-cycle
}

/// A triple is syzygetic iff it completes to a syzygetic quadruple:
/// either 6 distinct symbols (matching) or a 3-edge path on 4 symbols.
inline bool is_syzygetic_triple(const Label& a, const Label& b, const Label& c) {
  int symbols = a.mask() | b.mask() | c.mask();
  int count = __builtin_popcount(symbols);
  if (count == 6) return true;
  if (count != 4) return false;
  std::array<int, 8> degree{};
  for (const Label* l : {&a, &b, &c}) {
    ++degree[l->i];
    ++degree[l->j];
  }
  int deg1 = 0, deg2 = 0;
  for (int s = 0; s < 8; ++s) {
    if (!((symbols >> s) & 1)) continue;
    if (degree[s] == 1) ++deg1;
    if (degree[s] == 2) ++deg2;
  }
  return deg1 == 2 && deg2 == 2;  // path, not star or triangle-with-tail
}

/// All 315 syzygetic quadruples, each as 4 label indices sorted
/// ascending; enumeration order is lexicographic in those indices.
inline const std::vector<std::array<int, 4>>& syzygetic_quadruples() {
  static const std::vector<std::array<int, 4>> out = [] {
    std::vector<std::array<int, 4>> v;
    const auto& L = all_labels();
    for (int a = 0; a < 28; ++a)
      for (int b = a + 1; b < 28; ++b)
        for (int c = b + 1; c < 28; ++c)
          for (int d = c + 1; d < 28; ++d)
            if (is_syzygetic({L[a], L[b], L[c], L[d]}))
              v.push_back({a, b, c, d});
    return v;
  }();
  return out;
}

/// Quadruples through each label, precomputed (45 per label).
inline const std::array<std::vector<int>, 28>& quadruples_by_label() {
  static const std::array<std::vector<int>, 28> out = [] {
    std::array<std::vector<int>, 28> v;
    const auto& qs = syzygetic_quadruples();
    for (std::size_t t = 0; t < qs.size(); ++t)
      for (int li : qs[t]) v[li].push_back(int(t));
    return v;
  }();
  return out;
}

/// Exhaustive count of Aronhold sets (7-subsets with no syzygetic triple).
inline long count_aronhold_sets() {
  const auto& L = all_labels();
  long count = 0;
  std::array<int, 7> chosen{};
  auto rec = [&](auto&& self, int depth, int start) -> void {
    if (depth == 7) {
      ++count;
      return;
    }
    for (int n = start; n < 28; ++n) {
      bool ok = true;
      for (int x = 0; x < depth && ok; ++x)
        for (int y = x + 1; y < depth && ok; ++y)
          if (is_syzygetic_triple(L[chosen[x]], L[chosen[y]], L[n])) ok = false;
      if (!ok) continue;
      chosen[depth] = n;
      self(self, depth + 1, n + 1);
    }
  };
  rec(rec, 0, 0);
  return count;
}

}  // namespace quartic
