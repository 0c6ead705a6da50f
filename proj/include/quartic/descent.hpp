#pragma once

#include "quartic/local.hpp"
#include "quartic/moduli.hpp"
#include "quartic/pointsearch.hpp"

#include <functional>
#include <map>
#include <set>

namespace quartic {

struct EnumerationCapExceeded : std::runtime_error {
  EnumerationCapExceeded()
      : std::runtime_error("parity-one slice too large to enumerate") {}
};
struct SoundnessViolation : std::logic_error {
  explicit SoundnessViolation(const std::string& what) : std::logic_error(what) {}
};

/// Ordered bad places: the real place, then finite primes ascending,
/// always containing 2 and every prime of bad reduction of the stored
/// labelled model.
using BadPlaceSet = std::vector<Place>;

/// S from the construction certificates: a prime of bad reduction of the
/// labelled configuration must divide one of the general-position minors
/// (the net basis is a saturated lattice and (f, lambda) is a primitive
/// kernel vector, so those reductions never degenerate on their own).
inline BadPlaceSet bad_places(const LabelledQuartic& curve) {
  std::set<Int> primes{Int(2)};
  PointConfiguration cfg = PointConfiguration::from_moduli(curve.moduli);
  for (const auto& m : general_position_minors(cfg))
    for (const auto& [p, e] : factor(m)) primes.insert(p);
  BadPlaceSet out{Place::infinite()};
  for (const auto& p : primes) out.push_back(Place::prime(p));
  return out;
}

/// F2 coordinates for F2 x L'(2, Q; S): bit 0 the parity, then six
/// gamma-slots of (1 + #finite primes) bits on the generator basis
/// {-1, p_1, p_2, ...} (slot 7 is normalized away).
struct GlobalGroup {
  BadPlaceSet S;
  std::vector<Int> gens;  // finite primes, ascending

  explicit GlobalGroup(BadPlaceSet S_) : S(std::move(S_)) {
    for (const auto& v : S)
      if (!v.is_real()) gens.push_back(v.p);
  }

  std::size_t slot_bits() const { return 1 + gens.size(); }  // -1 and primes
  std::size_t l_dim() const { return 6 * slot_bits(); }      // dim L'(2,Q;S)
  std::size_t dim() const { return 1 + l_dim(); }            // with parity

  /// Index of generator t in slot k (t = 0 is -1, then primes in order).
  std::size_t bit(int slot, std::size_t t) const {
    return 1 + std::size_t(slot) * slot_bits() + t;
  }

  /// The linear map rho-tilde_v to F2 x L'(2, Q_v) in normalized
  /// coordinates, as a matrix on this basis.
  F2Matrix rho_matrix(const Place& v) const {
    std::size_t b = v.class_bits();
    F2Matrix M(1 + 6 * b, dim());
    M.set(0, 0, true);  // parity passes through
    std::vector<F2Vec> gen_cls;
    gen_cls.push_back(square_class(Rat(-1), v).bits);
    for (const auto& p : gens) gen_cls.push_back(square_class(Rat(p), v).bits);
    for (int slot = 0; slot < 6; ++slot)
      for (std::size_t t = 0; t < slot_bits(); ++t)
        for (std::size_t s = 0; s < b; ++s)
          M.set(1 + slot * b + s, bit(slot, t), gen_cls[t].get(s));
    return M;
  }

  /// Class of a nonzero rational in Q^x / squares on the {-1, primes}
  /// basis; the part of x supported off S must be a perfect square
  /// (nullopt otherwise).
  std::optional<F2Vec> class_on_basis(const Rat& x) const {
    F2Vec out(slot_bits());
    out.set(0, x < 0);
    Int rest = abs(num(x) * den(x));
    for (std::size_t t = 0; t < gens.size(); ++t) {
      long v = 0;
      while (rest % gens[t] == 0) {
        rest /= gens[t];
        ++v;
      }
      out.set(1 + t, v & 1);
    }
    if (!is_square(rest)) return std::nullopt;
    return out;
  }
};

/// gamma of a rational point on the curve as a global class vector
/// (parity 1 prepended); the class is S-unramified by good reduction, so
/// the off-S part of each normalized coordinate is an exact square.
inline F2Vec gamma_global(const LabelledQuartic& curve, const GlobalGroup& G,
                          const std::array<Int, 3>& P) {
  std::array<Rat, 7> vals;
  for (int i = 1; i <= 7; ++i) {
    int li = label_index(Label(0, i));
    Int w = LabelledQuartic::eval_line(curve.lines[li], P);
    if (w != 0) {
      vals[i - 1] = Rat(w);
      continue;
    }
    bool found = false;
    for (int qi : quadruples_by_label()[li]) {
      const SyzygeticData& sd = curve.syzygies[qi];
      Rat prod = sd.delta;
      bool ok = true;
      for (int other : sd.labels) {
        if (other == li) continue;
        Int wo = LabelledQuartic::eval_line(curve.lines[other], P);
        if (wo == 0) {
          ok = false;
          break;
        }
        prod *= Rat(wo);
      }
      if (!ok) continue;
      vals[i - 1] = prod;
      found = true;
      break;
    }
    if (!found) throw NoUsableQuadruple{};
  }
  F2Vec out(G.dim());
  out.set(0, true);  // parity of a single point
  for (int slot = 0; slot < 6; ++slot) {
    auto cls = G.class_on_basis(vals[slot] * vals[6]);  // (gamma_i) - (gamma_7)
    if (!cls)
      throw SoundnessViolation(
          "gamma coordinate ramified outside S at a rational point");
    for (std::size_t t = 0; t < G.slot_bits(); ++t)
      out.set(G.bit(slot, t), cls->get(t));
  }
  return out;
}

struct DescentConfig {
  Int filter_bound = 50;          // N: filter at finite places of size <= N
  std::vector<Int> filter_primes; // explicit override of the filter set
  Int search_height = 10000;
  std::size_t enum_cap_log2 = 20;
  unsigned threads = 2;
  LocalOptions local;
  // optional incremental cache of local images, keyed by place
  std::function<std::optional<LocalImageSet>(const Place&)> cache_get;
  std::function<void(const Place&, const LocalImageSet&)> cache_put;
};

struct FilterRecord {
  Int p;
  std::size_t image_size = 0;
  bool skipped = false;  // incomplete local data: no condition imposed
};

enum class Conclusion { HasRationalPoint, NoRationalPoint, Undetermined };

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::HasRationalPoint: return "HasRationalPoint";
    case Conclusion::NoRationalPoint: return "NoRationalPoint";
    default: return "Undetermined";
  }
}

struct SelmerReport {
  BadPlaceSet S;
  std::size_t dim_l = 0;       // dim L'(2, Q; S)
  std::size_t dim_w = 0;       // dim W_C (with parity coordinate)
  bool w1_empty = true;
  std::size_t dim_w1 = 0;      // dim of the parity-1 coset when nonempty
  long survivors = -1;         // after filtering; -1 when not enumerated
  std::vector<FilterRecord> filters;
  long jac_dim = -1;
  bool jac_exact = false;
  std::vector<std::array<Int, 3>> points;
  Conclusion conclusion = Conclusion::Undetermined;
  std::vector<F2Vec> surviving_classes;  // empty when not enumerated
  std::optional<Int> local_obstruction;  // first prime with provably empty image
};

/// Paper-provenance constants: the residue bound beyond which good local
/// images are provably all of the unramified group (Prop 5.1 states
/// 66562, the introduction 66569; the set T below uses the former).
inline constexpr long kCompleteResidueBoundProp = 66562;
inline constexpr long kCompleteResidueBoundIntro = 66569;

namespace descent_detail {

inline std::vector<Int> primes_up_to(const Int& N) {
  std::vector<Int> out;
  for (Int p = 2; p <= N; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

/// Local image at any finite prime by the appropriate route.
inline LocalImageSet filter_image(const LabelledQuartic& curve, const Int& p,
                                  bool good_reduction, const LocalOptions& opt) {
  if (p == 2) return local_image_padic(curve, p, opt.depth_cap);
  if (p > Int(opt.enum_bound)) return {Place::prime(p), {}, false};
  return local_image_odd(curve, p.convert_to<std::uint64_t>(), good_reduction,
                         opt.depth_cap);
}

}  // namespace descent_detail

/// Algorithm: two-cover descent.  Computes W_C inside F2 x L'(2, Q; S)
/// from the local spans, slices out the parity-one part, and filters its
/// elements by membership of their restrictions in the explicit local
/// images at all finite places of residue size <= N.
inline SelmerReport two_cover_descent(const LabelledQuartic& curve,
                                      const DescentConfig& cfg = {}) {
  SelmerReport rep;
  rep.S = bad_places(curve);
  GlobalGroup G(rep.S);
  rep.dim_l = G.l_dim();

  std::set<Int> s_primes;
  for (const auto& v : rep.S)
    if (!v.is_real()) s_primes.insert(v.p);

  // W = intersection of rho^{-1}(W_v) over v in S
  F2Affine W = F2Affine::full(G.dim());
  std::vector<std::pair<Place, LocalSpan>> spans;
  for (const auto& v : rep.S) {
    LocalSpan sp = local_span(curve, v, /*good_reduction=*/false, cfg.local);
    W = affine_intersect(W, affine_preimage(G.rho_matrix(v),
                                            F2Affine::subspace(sp.W)));
    spans.emplace_back(v, sp);
  }
  rep.dim_w = W.empty() ? 0 : W.dim();

  // Jacobian 2-Selmer: intersection of preimages of the parity-0 kernels
  {
    F2Affine J = F2Affine::full(G.dim());
    bool exact = true;
    for (const auto& [v, sp] : spans) {
      J = affine_intersect(
          J, affine_preimage(G.rho_matrix(v), F2Affine::subspace(sp.W0())));
      exact = exact && sp.lemma_exact;
    }
    rep.jac_dim = J.empty() ? 0 : long(J.dim());
    rep.jac_exact = exact;
  }

  // parity-1 slice
  F2Vec e0(G.dim());
  e0.set(0, true);
  F2Subspace parity0(G.dim());
  for (std::size_t i = 1; i < G.dim(); ++i) {
    F2Vec e(G.dim());
    e.set(i, true);
    parity0.add(e);
  }
  F2Affine W1 = affine_intersect(W, F2Affine::of(e0, parity0));
  rep.w1_empty = W1.empty();
  rep.dim_w1 = W1.empty() ? 0 : W1.dim();

  // rational points (found regardless, for the report and consistency)
  rep.points = point_search(curve, cfg.search_height, cfg.threads);

  if (!rep.w1_empty && W1.dim() > cfg.enum_cap_log2) {
    rep.conclusion = rep.points.empty() ? Conclusion::Undetermined
                                        : Conclusion::HasRationalPoint;
    return rep;
  }

  std::vector<F2Vec> members = rep.w1_empty ? std::vector<F2Vec>{} : W1.enumerate();

  // filter at finite places of residue size <= N (or the explicit list)
  std::vector<Int> filter_primes = cfg.filter_primes.empty()
                                       ? descent_detail::primes_up_to(cfg.filter_bound)
                                       : cfg.filter_primes;
  for (const Int& p : filter_primes) {
    if (members.empty()) break;
    bool good = !s_primes.count(p) && p != 2;
    Place vp = Place::prime(p);
    std::optional<LocalImageSet> cached;
    if (cfg.cache_get) cached = cfg.cache_get(vp);
    LocalImageSet img =
        cached ? *cached : descent_detail::filter_image(curve, p, good, cfg.local);
    if (!cached && cfg.cache_put) cfg.cache_put(vp, img);
    FilterRecord fr{p, img.values.size(), !img.complete};
    rep.filters.push_back(fr);
    if (!img.complete) continue;
    if (img.values.empty() && !rep.local_obstruction) rep.local_obstruction = p;
    F2Matrix rho = G.rho_matrix(Place::prime(p));
    std::vector<F2Vec> kept;
    for (const auto& w : members) {
      F2Vec loc = rho.apply(w);
      // drop the parity bit for membership in the coordinate image
      F2Vec coords(loc.size() - 1);
      for (std::size_t i = 1; i < loc.size(); ++i) coords.set(i - 1, loc.get(i));
      if (img.values.count(coords)) kept.push_back(w);
    }
    members = std::move(kept);
  }
  rep.survivors = long(members.size());
  rep.surviving_classes = members;

  // consistency: a found rational point must survive everything
  if (!rep.points.empty()) {
    for (const auto& P : rep.points) {
      F2Vec g = gamma_global(curve, G, P);
      if (!W1.contains(g))
        throw SoundnessViolation("gamma of a rational point escapes W^1");
      bool alive = false;
      for (const auto& w : members) alive = alive || w == g;
      if (!alive)
        throw SoundnessViolation("gamma of a rational point was filtered out");
    }
    rep.conclusion = Conclusion::HasRationalPoint;
  } else if (members.empty()) {
    rep.conclusion = Conclusion::NoRationalPoint;
  } else {
    rep.conclusion = Conclusion::Undetermined;
  }
  return rep;
}

/// Lower/exact 2-Selmer dimension of the Jacobian on its own (the same
/// computation two_cover_descent performs inline).
inline std::pair<long, bool> jacobian_selmer(const LabelledQuartic& curve,
                                             const LocalOptions& opt = {}) {
  BadPlaceSet S = bad_places(curve);
  GlobalGroup G(S);
  F2Affine J = F2Affine::full(G.dim());
  bool exact = true;
  for (const auto& v : S) {
    LocalSpan sp = local_span(curve, v, false, opt);
    J = affine_intersect(J,
                         affine_preimage(G.rho_matrix(v), F2Affine::subspace(sp.W0())));
    exact = exact && sp.lemma_exact;
  }
  return {J.empty() ? 0 : long(J.dim()), exact};
}

}  // namespace quartic
