#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace quartic;

TEST_CASE("general position detection", "[moduli]") {
  CHECK(general_position(PointConfiguration::from_moduli({17, 35, -7, 3, -9, 9})));
  // repeated point p5 = p4
  auto rep = PointConfiguration::from_moduli({1, 1, 2, 3, 3, 2});
  CHECK_FALSE(general_position(rep));
  // p5 = (2:0:1) collinear with p1 = (1:0:0) and p3 = (0:0:1)
  auto col = PointConfiguration::from_moduli({2, 0, 2, 3, 3, 2});
  CHECK_FALSE(general_position(col));
  auto w = degeneracy_witness(col);
  REQUIRE(w.has_value());
  CHECK(w->find("collinear") != std::string::npos);
}

TEST_CASE("cubic net has dimension three and vanishes at the points", "[moduli]") {
  auto cfg = PointConfiguration::from_moduli({17, 35, -7, 3, -9, 9});
  auto net = cubic_net(cfg);
  for (const auto& phi : net)
    for (const auto& P : cfg.pts) REQUIRE(phi.evaluate(P) == 0);
  // the three cubics are independent mod every small prime (saturated basis)
  std::vector<std::vector<Int>> rows;
  for (const auto& phi : net) rows.push_back(phi.coeffs());
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
    REQUIRE(test::rank_mod_p(rows, p) == 3);

  CHECK_THROWS_AS(cubic_net(PointConfiguration::from_moduli({1, 1, 2, 3, 3, 2})),
                  DegenerateConfiguration);
}

TEST_CASE("random general-position nets have dimension three", "[moduli][property]") {
  std::mt19937_64 rng(53);
  int done = 0;
  while (done < 10) {
    std::array<Int, 6> m;
    for (auto& e : m) e = Int(rng() % 13) - 6;
    auto cfg = PointConfiguration::from_moduli(m);
    if (!general_position(cfg)) continue;
    auto net = cubic_net(cfg);  // throws unless dimension is exactly 3
    ++done;
  }
}

TEST_CASE("branch quartic satisfies its defining identity", "[moduli]") {
  const auto& c = test::example_curve();
  TernaryZ J = jacobian_determinant(c.net[0], c.net[1], c.net[2]);
  // f(phi1, phi2, phi3) - lambda J^2 = 0
  std::array<std::vector<TernaryZ>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(TernaryZ(0, {Int(1)}));
    for (int e = 1; e <= 4; ++e) pw[v].push_back(pw[v].back() * c.net[v]);
  }
  TernaryZ lhs(12);
  const auto& m4 = monomials(4);
  for (int k = 0; k < 15; ++k)
    lhs = lhs + pw[0][m4[k][0]] * pw[1][m4[k][1]] * pw[2][m4[k][2]] * c.f.coeffs()[k];
  CHECK(lhs == (J * J) * c.lambda);
  CHECK(c.lambda != 0);

  // a degenerate net is rejected
  std::array<TernaryZ, 3> dep{c.net[0], c.net[1], c.net[0] + c.net[1]};
  CHECK_THROWS_AS(branch_quartic(dep), ReconstructionFailed);
}

TEST_CASE("branch quartic transforms with the net basis", "[moduli][property]") {
  auto cfg = PointConfiguration::from_moduli({17, 35, -7, 3, -9, 9});
  auto net = cubic_net(cfg);
  auto bq = branch_quartic(net);
  // replace the basis by an invertible integer combination A
  std::array<std::array<Int, 3>, 3> A{{{1, 1, 0}, {0, 1, 0}, {1, 0, 1}}};  // det 1
  std::array<TernaryZ, 3> net2;
  for (int i = 0; i < 3; ++i) {
    net2[i] = TernaryZ(3);
    for (int j = 0; j < 3; ++j) net2[i] = net2[i] + net[j] * A[i][j];
  }
  auto bq2 = branch_quartic(net2);
  // the branch curve transforms by the induced coordinate change:
  // f2(A y) is proportional to f(y)
  TernaryZ pulled = primitive_form(substitute_linear(bq2.f, A));
  CHECK((pulled == primitive_form(bq.f) || pulled == -primitive_form(bq.f)));
}

TEST_CASE("28 verified bitangents with the expected geometry", "[moduli]") {
  const auto& c = test::example_curve();
  std::set<std::array<Int, 3>> distinct(c.lines.begin(), c.lines.end());
  CHECK(distinct.size() == 28);
  // contact identities hold exactly
  verify_bundle(c);
  // no seven concurrent (Lemma bound; max is 6 through an Aronhold point)
  std::map<std::array<Int, 3>, std::set<int>> through;
  for (int a = 0; a < 28; ++a)
    for (int b = a + 1; b < 28; ++b) {
      auto P = cross(c.lines[a], c.lines[b]);
      auto v = primitive(std::vector<Int>{P[0], P[1], P[2]});
      if (v[0] == 0 && v[1] == 0 && v[2] == 0) continue;
      through[{v[0], v[1], v[2]}].insert(a);
      through[{v[0], v[1], v[2]}].insert(b);
    }
  std::size_t mx = 0;
  for (const auto& [pt, ls] : through) mx = std::max(mx, ls.size());
  CHECK(mx <= 6);
}

TEST_CASE("no general position completions over tiny fields", "[moduli]") {
  CHECK(count_general_position_completions(PrimeField(3)) == 0);
  CHECK(count_general_position_completions(PrimeField(5)) == 0);
}
