// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// gating criteria hold.

#include "helpers.hpp"

#include "quartic/serialize.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>

using namespace quartic;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS " : "FAIL ") << name;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  std::cout.flush();
  if (!ok) ++failures;
}

void info(const std::string& name, const std::string& detail) {
  std::cout << "INFO " << name << "  [" << detail << "]\n";
  std::cout.flush();
}

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

long uniform_in(std::mt19937_64& rng, long lo, long hi) {
  std::uint64_t span = std::uint64_t(hi - lo + 1);
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + long(x % span);
}

std::vector<std::array<Int, 6>> sample_moduli(std::uint64_t seed, long range,
                                              long count, bool a_style) {
  std::mt19937_64 rng(seed);
  std::vector<std::array<Int, 6>> out;
  while (long(out.size()) < count) {
    std::array<long, 6> m;
    for (int k = 0; k < 6; ++k) m[k] = uniform_in(rng, -range, range);
    if (a_style && !(m[0] < m[2] && m[2] < m[4] && m[0] < m[1])) continue;
    std::array<Int, 6> mi;
    for (int k = 0; k < 6; ++k) mi[k] = m[k];
    if (!general_position(PointConfiguration::from_moduli(mi))) continue;
    out.push_back(mi);
  }
  return out;
}

bool good_reduction_certified(const LabelledQuartic& c, const Int& p) {
  if (p == 2) {
    // partial check in characteristic 2: no singular point over F_16
    QuarticField k = make_Fq4(2);
    auto f = FFTernary<QuarticField>::reduce(k, c.f);
    std::array<FFTernary<QuarticField>, 3> d{f.derivative(0), f.derivative(1),
                                             f.derivative(2)};
    bool sing = false;
    for_each_projective_point(k, [&](const auto& P) {
      if (sing) return;
      if (k.is_zero(f.evaluate(P)) && k.is_zero(d[0].evaluate(P)) &&
          k.is_zero(d[1].evaluate(P)) && k.is_zero(d[2].evaluate(P)))
        sing = true;
    });
    return !sing;
  }
  if (!quartic_is_smooth_mod_q(p.convert_to<std::uint64_t>(), c.f)) return false;
  PrimeField k(p.convert_to<std::uint64_t>());
  std::set<std::array<std::uint64_t, 3>> seen;
  for (const auto& l : c.lines) {
    std::array<std::uint64_t, 3> lr{k.from_int(l[0]), k.from_int(l[1]),
                                    k.from_int(l[2])};
    if ((lr[0] | lr[1] | lr[2]) == 0) return false;
    std::uint64_t lead = lr[0] ? lr[0] : (lr[1] ? lr[1] : lr[2]);
    std::uint64_t inv = k.inv(lead);
    for (auto& e : lr) e = k.mul(e, inv);
    if (!seen.insert(lr).second) return false;
  }
  return true;
}

void criterion1() {
  auto t0 = Clock::now();
  bool ok = count_general_position_completions(PrimeField(3)) == 0 &&
            count_general_position_completions(PrimeField(5)) == 0 &&
            count_general_position_completions(PrimeField(7)) == 0;
  long n9 = count_general_position_completions(make_Fq2(3));
  long n11 = count_general_position_completions(PrimeField(11));
  long c9 = count_points_Fq(make_Fq2(3), test::fermat_quartic());
  long c11 = count_points_Fq(PrimeField(11), test::klein_reduction_11());
  ok = ok && n9 == 40 && n11 == 1440 && c9 == 28 && c11 == 0;
  std::ostringstream d;
  d << "q=9: " << n9 << ", q=11: " << n11 << ", #C9(F9)=" << c9
    << ", #C11(F11)=" << c11 << ", " << std::fixed << std::setprecision(1)
    << elapsed(t0) << "s";
  report("criterion 1 (small-field counts)", ok, d.str());
}

void criterion2() {
  auto t0 = Clock::now();
  const auto& qs = syzygetic_quadruples();
  long cycles = 0, matchings = 0;
  for (const auto& q : qs) {
    int symbols = 0;
    for (int li : q) symbols |= all_labels()[li].mask();
    (__builtin_popcount(symbols) == 8 ? matchings : cycles)++;
  }
  bool per_label = true;
  for (int li = 0; li < 28; ++li)
    per_label = per_label && quadruples_by_label()[li].size() == 45;
  long aronhold = count_aronhold_sets();
  bool ok = qs.size() == 315 && cycles == 210 && matchings == 105 && per_label &&
            aronhold == 288 && all_labels().size() == 28;
  std::ostringstream d;
  d << "315=" << qs.size() << " (210+105=" << cycles << "+" << matchings
    << "), aronhold=" << aronhold << ", " << std::setprecision(2)
    << elapsed(t0) << "s";
  report("criterion 2 (combinatorial census)", ok, d.str());
}

void criterion3() {
  auto t0 = Clock::now();
  const LabelledQuartic& c = test::example_curve();

  // (a) 28 rational bitangents, constructed and verified
  bool a_ok = true;
  try {
    verify_bundle(c);
    std::set<std::array<Int, 3>> distinct(c.lines.begin(), c.lines.end());
    a_ok = distinct.size() == 28;
  } catch (...) {
    a_ok = false;
  }
  report("criterion 3a (28 rational bitangents)", a_ok);

  // (b) all 315 syzygy identities hold exactly
  bool b_ok = c.syzygies.size() == 315;
  for (const auto& sd : c.syzygies) {
    if (!b_ok) break;
    TernaryZ L(0, {Int(1)});
    for (int li : sd.labels) {
      TernaryZ lin(1);
      for (int k = 0; k < 3; ++k) lin.coeffs()[k] = c.lines[li][k];
      L = L * lin;
    }
    TernaryQ resid = to_rational(L) - to_rational(sd.conic * sd.conic) * sd.delta -
                     to_rational(c.f) * sd.c;
    b_ok = b_ok && resid.is_zero() && sd.delta != 0 && sd.c != 0;
  }
  report("criterion 3b (315 syzygy identities exact)", b_ok);

  // main descent with N = 5 (also produces S and the W data)
  DescentConfig cfg;
  cfg.filter_bound = 5;
  cfg.search_height = 10000;
  cfg.threads = 2;
  SelmerReport rep = two_cover_descent(c, cfg);

  // (c) no local obstruction at any v in S or p <= 50
  bool c_ok = !local_image_real(c).values.empty();
  std::set<Int> sprimes;
  for (const auto& v : rep.S)
    if (!v.is_real()) sprimes.insert(v.p);
  for (const auto& v : rep.S) {
    if (v.is_real() || !c_ok) continue;
    auto img = local_image_padic(c, v.p);
    c_ok = c_ok && img.complete && !img.values.empty();
  }
  for (Int p = 2; p <= 50 && c_ok; ++p) {
    if (!is_prime(p) || sprimes.count(p)) continue;
    auto img = local_image_odd(c, p.convert_to<std::uint64_t>(), true);
    c_ok = c_ok && img.complete && !img.values.empty();
  }
  report("criterion 3c (points everywhere locally, v in S and p <= 50)", c_ok);

  // (d) Sel(C/Q; 5) empty, NoRationalPoint
  bool d_ok = rep.survivors == 0 && rep.conclusion == Conclusion::NoRationalPoint &&
              rep.points.empty();
  report("criterion 3d (Sel(C/Q;5) empty => NoRationalPoint)", d_ok,
         "survivors=" + std::to_string(rep.survivors));

  // (e) the alternative filter set {31,43,47,53,71,83}
  DescentConfig cfg_alt;
  cfg_alt.filter_primes = {Int(31), Int(43), Int(47), Int(53), Int(71), Int(83)};
  cfg_alt.search_height = 0;
  SelmerReport alt = two_cover_descent(c, cfg_alt);
  report("criterion 3e (filtering by {31,43,47,53,71,83} also empties)",
         alt.survivors == 0,
         "survivors=" + std::to_string(alt.survivors) +
             "; W and images verified against independent oracles, see "
             "decisions ledger: the printed prime set leaves a 12-element "
             "set, while {3} or {5} joined with it do empty");

  // (f) jacobian selmer dimension 9, exact
  bool f_ok = rep.jac_dim == 9 && rep.jac_exact;
  report("criterion 3f (Sel2(Jac) = 9, exact)", f_ok,
         "dim=" + std::to_string(rep.jac_dim) +
             (rep.jac_exact ? ", exact" : ", bound"));

  // conditional extras (non-gating): paper's S has 12 places
  if (rep.S.size() == 12) {
    info("criterion 3 extras (conditional)",
         "S matches the paper's 12 places; dimL=" + std::to_string(rep.dim_l) +
             " (paper 72), dimW=" + std::to_string(rep.dim_w) + " (paper 10)");
  } else {
    info("criterion 3 extras (conditional)",
         "computed S has " + std::to_string(rep.S.size()) +
             " places; paper comparison skipped");
  }
  info("criterion 3 runtime", std::to_string(long(elapsed(t0))) + "s");
}

void criterion4() {
  auto t0 = Clock::now();
  auto moduli = sample_moduli(271828, 6, 40, true);
  int used = 0;
  bool equal_ok = true, subset_ok = true;
  for (const auto& m : moduli) {
    if (used >= 5) break;
    auto cfg = PointConfiguration::from_moduli(m);
    bool good = true;
    for (const auto& mn : general_position_minors(cfg))
      for (long p : {13, 17, 19})
        if (mn % p == 0) good = false;
    if (!good) continue;
    LabelledQuartic c = construct_curve(m);
    compute_syzygies(c);
    ++used;
    for (std::uint64_t p : {13, 17, 19}) {
      auto scan = local_image_good_odd(c, p);
      auto padic = local_image_padic(c, Int(p));
      equal_ok = equal_ok && padic.complete && scan.values == padic.values;
    }
    // proper subset of the 64-element unramified group at good p <= 29
    std::set<Int> bad;
    for (const auto& v : bad_places(c))
      if (!v.is_real()) bad.insert(v.p);
    for (std::uint64_t p : {11, 13, 17, 19, 23, 29}) {
      if (bad.count(Int(p))) continue;
      auto scan = local_image_good_odd(c, p);
      subset_ok = subset_ok && scan.values.size() < 64;
      for (const auto& x : scan.values)
        subset_ok = subset_ok && unramified_subgroup(Int(p)).contains(x);
    }
  }
  bool ok = used >= 5 && equal_ok && subset_ok;
  report("criterion 4 (oracle equivalence at p in {13,17,19}; proper subsets)",
         ok,
         std::to_string(used) + " curves, " + std::to_string(long(elapsed(t0))) +
             "s");
}

void criterion5() {
  auto t0 = Clock::now();
  auto moduli = sample_moduli(314159, 6, 8, true);
  bool ok = true;
  int n = 0;
  for (const auto& m : moduli) {
    LabelledQuartic c = construct_curve(m);
    compute_syzygies(c);
    ok = ok && local_image_real(c).values.size() == 4;
    ++n;
  }
  ok = ok && local_image_real(test::example_curve()).values.size() == 4;
  report("criterion 5 (exactly 4 real classes on every curve)", ok,
         std::to_string(n + 1) + " curves, " + std::to_string(long(elapsed(t0))) +
             "s");
}

void criterion6() {
  auto t0 = Clock::now();
  auto moduli = sample_moduli(161803, 6, 20, true);
  bool ok = true;
  int with_points = 0, no_point_verdicts = 0;
  for (const auto& m : moduli) {
    LabelledQuartic c = construct_curve(m);
    compute_syzygies(c);
    DescentConfig cfg;
    cfg.filter_bound = 50;
    cfg.search_height = 10000;
    cfg.threads = 2;
    SelmerReport rep;
    try {
      rep = two_cover_descent(c, cfg);
    } catch (const SoundnessViolation& e) {
      report("criterion 6 (consistency suite)", false, e.what());
      return;
    }
    // a found point's class lies in W^1 and passes every filter: enforced
    // inside two_cover_descent (SoundnessViolation otherwise)
    if (!rep.points.empty()) ++with_points;
    if (rep.conclusion == Conclusion::NoRationalPoint) {
      ++no_point_verdicts;
      // the verdict ships with an empty height-10^4 search by construction;
      // double-check the report agrees
      ok = ok && rep.points.empty();
    }
  }
  std::ostringstream d;
  d << with_points << " curves with points, " << no_point_verdicts
    << " NoRationalPoint verdicts, " << long(elapsed(t0)) << "s";
  report("criterion 6 (consistency suite, 20 A-style curves)", ok, d.str());
}

void criterion7() {
  auto t0 = Clock::now();
  auto moduli = sample_moduli(423310, 40, 30, false);
  int selmer_empty = 0, obstructions = 0, undetermined = 0;
  bool gate_ok = true;
  std::map<long, int> jac_hist;
  for (const auto& m : moduli) {
    LabelledQuartic c = construct_curve(m);
    compute_syzygies(c);
    DescentConfig cfg;
    cfg.filter_bound = 50;
    cfg.search_height = 500;  // statistical run; full searches live in criterion 6
    cfg.threads = 2;
    SelmerReport rep = two_cover_descent(c, cfg);
    if (rep.local_obstruction) {
      ++obstructions;
      gate_ok = gate_ok && good_reduction_certified(c, *rep.local_obstruction);
    }
    if (rep.conclusion == Conclusion::NoRationalPoint) ++selmer_empty;
    if (rep.conclusion == Conclusion::Undetermined) ++undetermined;
    if (rep.jac_exact) ++jac_hist[rep.jac_dim];
  }
  bool rate_ok = selmer_empty * 10 >= 30 * 7;  // >= 70 percent of 30
  std::ostringstream d;
  d << selmer_empty << "/30 Selmer-empty, " << obstructions << " obstructions, "
    << undetermined << " undetermined, jac dims:";
  for (auto& [k, v] : jac_hist) d << " " << k << "x" << v;
  d << ", " << long(elapsed(t0)) << "s";
  report("criterion 7 (B-style statistics; obstruction gate)", rate_ok && gate_ok,
         d.str());
}

void criterion8() {
  auto t0 = Clock::now();
  bool ok = true;
  // square-class homomorphism and stability
  {
    std::mt19937_64 rng(71);
    for (const Place& v :
         {Place::infinite(), Place::prime(2), Place::prime(3), Place::prime(7)}) {
      for (int trial = 0; trial < 60 && ok; ++trial) {
        Rat x(Int(rng() % 500) + 1, Int(rng() % 500) + 1);
        Rat y(Int(rng() % 500) + 1, Int(rng() % 500) + 1);
        if (rng() & 1) x = -x;
        ok = ok && square_class(x * y, v).bits ==
                       (square_class(x, v) + square_class(y, v)).bits;
      }
    }
    for (Int p : {Int(2), Int(3)}) {
      long ord4 = p == 2 ? 2 : 0;
      for (int trial = 0; trial < 60 && ok; ++trial) {
        Int u = Int(rng() % 5000) + 1;
        while (u % p == 0) ++u;
        Int shift = quartic::pow(p, unsigned(ord4 + 1)) * Int(rng() % 20);
        ok = ok && Padic::from_int(u, p, 12).square_class() ==
                       Padic::from_int(u + shift, p, 12).square_class();
      }
    }
  }
  bool sq_ok = ok;
  // Hensel covering vs brute force (one representative instance)
  {
    BiPoly f;
    f.c[2][0] = 1;
    f.c[0][2] = 1;
    f.c[0][0] = -1;
    auto balls = hensel_balls(f, Int(3));
    for (Int x = 0; x < 81 && ok; ++x)
      for (Int y = 0; y < 81 && ok; ++y) {
        if (f.evaluate(x, y) % 81 != 0) continue;
        bool covered = false;
        for (const auto& b : balls) {
          Int pe = quartic::pow(Int(3), unsigned(b.depth));
          if ((x - b.x) % pe == 0 && (y - b.y) % pe == 0) covered = true;
        }
        ok = ok && covered;
      }
  }
  bool hensel_ok = ok;
  // F2 affine algebra vs enumeration
  {
    std::mt19937_64 rng(73);
    auto rnd_vec = [&](std::size_t n) {
      F2Vec v(n);
      for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1);
      return v;
    };
    for (int trial = 0; trial < 150 && ok; ++trial) {
      std::size_t n = 1 + rng() % 6;
      F2Subspace d1(n), d2(n);
      for (std::size_t i = 0; i < 1 + rng() % n; ++i) d1.add(rnd_vec(n));
      for (std::size_t i = 0; i < 1 + rng() % n; ++i) d2.add(rnd_vec(n));
      F2Affine A = F2Affine::of(rnd_vec(n), d1), B = F2Affine::of(rnd_vec(n), d2);
      F2Affine C = affine_intersect(A, B);
      for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n) && ok; ++bits) {
        F2Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v.set(i, (bits >> i) & 1);
        ok = ok && C.contains(v) == (A.contains(v) && B.contains(v));
      }
    }
  }
  bool f2_ok = ok;
  // binary square-root exactness
  {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 60 && ok; ++trial) {
      BinaryZ q{Int(rng() % 9) - 4, Int(rng() % 9) - 4, Int(rng() % 9) - 4};
      if (q.is_zero()) continue;
      Int s = Int(rng() % 5) + 1;
      auto [a, qq] = binary_square_root(q * q * s);
      BinaryZ back = qq * qq;
      for (int i = 0; i <= 4 && ok; ++i)
        ok = ok && Rat((q * q * s)[i]) == a * Rat(back[i]);
    }
  }
  bool sqrt_ok = ok;
  // bitangent-rescaling invariance of report emptiness
  {
    LabelledQuartic scaled = test::example_curve();
    for (auto& e : scaled.lines[label_index(Label(0, 3))]) e *= -3;
    compute_syzygies(scaled);
    DescentConfig cfg;
    cfg.filter_bound = 5;
    cfg.search_height = 0;
    SelmerReport rep = two_cover_descent(scaled, cfg);
    ok = ok && rep.survivors == 0 && rep.w1_empty == false;
  }
  std::ostringstream d;
  d << "classes " << sq_ok << ", hensel " << hensel_ok << ", f2 " << f2_ok
    << ", sqrt " << sqrt_ok << ", rescale " << ok << ", "
    << std::setprecision(2) << elapsed(t0) << "s";
  report("criterion 8 (property suites)", ok, d.str());
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: ")
            << (failures ? std::to_string(failures) : "")
            << "  (total " << long(elapsed(t0)) << "s)\n";
  return failures == 0 ? 0 : 1;
}
