#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "plcrystal/random.hpp"
#include "plcrystal/transforms.hpp"

namespace {

using namespace plc;
using detail::same_vec;

// Brute-force pointwise Pitman transform: inf over breakpoints up to t plus t itself.
Vec pitman_oracle(const Realization& r, int s, const PLPath& p, double t) {
  double m = r.pair(s, p.eval(t));
  for (size_t i = 0; i < p.size() && p.times()[i] <= t; ++i) m = std::min(m, r.pair(s, p.point(i)));
  return p.eval(t) - std::min(m, 0.0) * r.root(s);
}

// Pointwise E^x straight from the definition, minima taken by scanning breakpoints.
Vec littelmann_oracle(const Realization& r, int s, double x, const PLPath& p, double t) {
  auto g = [&](double u) { return r.pair(s, p.eval(u)); };
  double mT = 0;
  for (size_t i = 0; i < p.size(); ++i) mT = std::min(mT, g(p.times()[i]));
  double c;
  if (x < 0) {
    double inf = g(t);
    for (size_t i = 0; i < p.size(); ++i)
      if (p.times()[i] >= t) inf = std::min(inf, g(p.times()[i]));
    c = std::min(-x, inf - mT);
  } else {
    double inf = g(t);
    for (size_t i = 0; i < p.size(); ++i)
      if (p.times()[i] <= t) inf = std::min(inf, g(p.times()[i]));
    c = std::min(0.0, -x - mT + inf);
  }
  return p.eval(t) - c * r.root(s);
}

// Path c(t) alpha in A1 with alpha^vee values v at the given times.
PLPath a1_path(const Realization& r, std::vector<double> t, const std::vector<double>& v) {
  std::vector<Vec> pts;
  for (double c : v) pts.push_back(c / 2 * r.root(0));
  return PLPath(std::move(t), pts);
}

std::vector<double> probe_times(const PLPath& p, int n) {
  std::vector<double> ts;
  for (int k = 0; k <= n; ++k) ts.push_back(p.T() * k / n);
  for (double t : p.times()) ts.push_back(t);
  return ts;
}

// ---------------------------------------------------------------------------

TEST(Coxeter, CartanIdentities) {
  for (const char* g : {"A1", "A2", "A3", "B2", "B3", "I(5)", "I(7)", "H3", "H4"}) {
    Realization r = build_realization(g);
    for (int s = 0; s < r.rank; ++s) {
      EXPECT_NEAR(r.cartan(s, s), 2.0, 1e-12) << g;
      EXPECT_NEAR(r.root(s).squaredNorm(), 2.0, 1e-12) << g;
      for (int t = 0; t < r.rank; ++t) {
        if (s == t) continue;
        EXPECT_LE(r.cartan(s, t), 1e-12);
        const double c = std::cos(std::numbers::pi / r.coxeter(s, t));
        EXPECT_NEAR(r.cartan(s, t) * r.cartan(t, s), 4 * c * c, 1e-12) << g;
      }
    }
    EXPECT_EQ(static_cast<int>(r.w0.size()), r.q) << g;
    EXPECT_TRUE(is_reduced(r, r.w0)) << g;
  }
}

TEST(Coxeter, I5PairingIsGoldenRatio) {
  Realization r = build_realization("I(5)");
  EXPECT_NEAR(r.cartan(0, 1), -2 * std::cos(std::numbers::pi / 5), 1e-12);
  EXPECT_NEAR(r.cartan(0, 1), -1.618034, 1e-6);
  EXPECT_NEAR(r.cartan(1, 0), r.cartan(0, 1), 1e-12);
  EXPECT_EQ(r.w0, (Word{0, 1, 0, 1, 0}));
}

// Root orbit counted with an independent closure over vectors.
int count_positive_roots(const Realization& r) {
  std::vector<Vec> orbit;
  for (int s = 0; s < r.rank; ++s) orbit.push_back(r.root(s));
  for (size_t k = 0; k < orbit.size(); ++k)
    for (int s = 0; s < r.rank; ++s) {
      Vec b = orbit[k] - (r.coroot(s).dot(orbit[k])) * r.root(s);
      bool seen = false;
      for (const Vec& e : orbit) seen = seen || (e - b).norm() < 1e-8;
      if (!seen) orbit.push_back(b);
    }
  return static_cast<int>(orbit.size()) / 2;
}

TEST(Coxeter, PositiveRootCounts) {
  const std::vector<std::pair<const char*, int>> expected{{"A1", 1}, {"A2", 3}, {"A3", 6}, {"B2", 4},
                                                          {"B3", 9}, {"I(5)", 5}, {"H3", 15}, {"H4", 60}};
  for (auto [g, q] : expected) {
    Realization r = build_realization(g);
    EXPECT_EQ(r.q, q) << g;
    EXPECT_EQ(count_positive_roots(r), q) << g;
  }
}

TEST(Coxeter, GroupOrders) {
  const std::vector<std::pair<const char*, size_t>> expected{
      {"A1", 2}, {"A2", 6}, {"A3", 24}, {"B2", 8}, {"B3", 48}, {"I(5)", 10}, {"H3", 120}};
  for (auto [g, n] : expected) {
    Realization r = build_realization(g);
    auto W = enumerate_group(r);
    EXPECT_EQ(W.size(), n) << g;
    int sign_sum = 0;
    for (const auto& e : W) sign_sum += e.sign;
    EXPECT_EQ(sign_sum, 0) << g;
  }
}

TEST(Coxeter, Reflections) {
  Realization a1 = build_realization("A1"), a2 = build_realization("A2");
  EXPECT_TRUE(same_vec(reflect(a1, 0, a1.root(0)), -a1.root(0), 1e-12));
  EXPECT_TRUE(same_vec(reflect(a2, 0, a2.root(1)), a2.root(0) + a2.root(1), 1e-12));
  Vec wall = a2.fundamental.col(1);
  EXPECT_TRUE(same_vec(reflect(a2, 0, wall), wall, 1e-12));
  EXPECT_TRUE(same_vec(act_word(a2, {}, wall), wall, 0));
  EXPECT_TRUE(same_vec(act_word(a1, {0, 0}, a1.root(0)), a1.root(0), 1e-12));
  EXPECT_TRUE(same_vec(act_word(a2, {0, 1, 0}, a2.root(0)), -a2.root(1), 1e-12));
}

TEST(Coxeter, WordLength) {
  Realization a1 = build_realization("A1"), a2 = build_realization("A2");
  EXPECT_EQ(word_length(a1, {0, 0}), 0);
  EXPECT_FALSE(is_reduced(a1, {0, 0}));
  EXPECT_EQ(word_length(a2, {0, 1, 0}), 3);
  EXPECT_TRUE(is_reduced(a2, {0, 1, 0}));
  for (int m = 2; m <= 9; ++m) {
    Realization r = build_I(m);
    Word alt;
    for (int k = 0; k < m; ++k) alt.push_back((k + 1) % 2);
    EXPECT_EQ(word_length(r, alt), m);
    alt.push_back(m % 2 == 0 ? 1 : 0);
    EXPECT_FALSE(is_reduced(r, alt));
  }
  Realization h3 = build_realization("H3");
  EXPECT_EQ(static_cast<int>(longest_word(h3).size()), 15);
  EXPECT_TRUE(is_reduced(h3, longest_word(h3)));
}

TEST(Coxeter, FirstWordsAndTilde) {
  for (const char* g : {"A2", "A3", "B3", "I(5)", "I(6)", "H3"}) {
    Realization r = build_realization(g);
    for (int s = 0; s < r.rank; ++s) {
      EXPECT_EQ(r.first_words[s].front(), s);
      EXPECT_TRUE(same_vec(word_matrix(r, r.first_words[s]) * r.root(0), r.w0_matrix * r.root(0), 1e-9));
      EXPECT_TRUE(same_vec(-(r.w0_matrix * r.root(s)), r.root(r.tilde[s]), 1e-9));
    }
  }
}

TEST(Coxeter, Chamber) {
  Realization a1 = build_realization("A1"), a2 = build_realization("A2");
  EXPECT_TRUE(in_chamber(a2, Vec::Zero(2), 0));
  EXPECT_FALSE(in_chamber(a1, Vec::Constant(1, -1 / std::sqrt(2.0)), 1e-9));
  EXPECT_TRUE(in_chamber(a2, a2.root(0) + a2.root(1), 0));
}

TEST(Coxeter, Rejections) {
  Eigen::MatrixXi affine(3, 3);
  affine << 1, 3, 3, 3, 1, 3, 3, 3, 1;
  EXPECT_THROW(realization_from_matrix(affine), Error);
  EXPECT_THROW(build_realization("Q3"), Error);
  EXPECT_THROW(build_realization("A0"), Error);
  EXPECT_THROW(build_realization("H5"), Error);
}

// ---------------------------------------------------------------------------

TEST(PLPathBasics, EvalAndStructure) {
  Vec v(2);
  v << 1.0, -2.0;
  PLPath p = PLPath::straight(v);
  EXPECT_TRUE(same_vec(p.eval(0), Vec::Zero(2), 0));
  EXPECT_TRUE(same_vec(p.eval(1), v, 0));
  EXPECT_TRUE(same_vec(p.eval(0.25), 0.25 * v, 1e-15));
  EXPECT_THROW(PLPath({0, 1}, {v, v}), Error);
  EXPECT_THROW(PLPath({0, 1, 1}, {Vec::Zero(2), v, v}), Error);
  EXPECT_THROW(p.eval(1.5), Error);
}

TEST(PLPathBasics, PrefixMinInsertsCrossing) {
  ScalarPL g{{0, 1, 3}, {0, 1, -1}};
  ScalarPL m = prefix_min(g);
  EXPECT_NEAR(m.eval(1), 0, 1e-15);
  EXPECT_NEAR(m.eval(2), 0, 1e-15);
  EXPECT_NEAR(m.eval(2.5), -0.5, 1e-15);
  EXPECT_NEAR(m.eval(3), -1, 1e-15);
  EXPECT_TRUE(std::find_if(m.t.begin(), m.t.end(), [](double t) { return std::abs(t - 2) < 1e-12; }) != m.t.end());

  ScalarPL up{{0, 1, 2}, {0, 1, 3}};
  ScalarPL mu = prefix_min(up);
  for (double t : {0.0, 0.5, 1.7, 2.0}) EXPECT_EQ(mu.eval(t), 0.0);
  ScalarPL down{{0, 1, 2}, {0, -1, -3}};
  ScalarPL md = prefix_min(down);
  for (double t : {0.0, 0.5, 1.7, 2.0}) EXPECT_NEAR(md.eval(t), down.eval(t), 1e-15);
}

TEST(PLPathBasics, RunningMinimaMatchBruteForce) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    PLPath p = random_path(1, 1 + rng.index(9), rng);
    Vec f = Vec::Ones(1);
    ScalarPL g = p.functional(f), pm = prefix_min(g), sm = suffix_min(g);
    for (int k = 0; k <= 97; ++k) {
      double t = p.T() * k / 97;
      double lo = g.eval(t), hi = g.eval(t);
      for (size_t i = 0; i < g.size(); ++i) {
        if (g.t[i] <= t) lo = std::min(lo, g.v[i]);
        if (g.t[i] >= t) hi = std::min(hi, g.v[i]);
      }
      EXPECT_NEAR(pm.eval(t), lo, 1e-12);
      EXPECT_NEAR(sm.eval(t), hi, 1e-12);
    }
  }
}

TEST(PLPathBasics, ConcatenationAndReversal) {
  Rng rng(5);
  Vec v(2);
  v << 0.3, 0.7;
  PLPath s = PLPath::straight(v);
  PLPath ss = concat_star(s, s);
  EXPECT_TRUE(same_vec(ss.eval(ss.T() / 2), v, 1e-15));
  EXPECT_TRUE(same_vec(ss.endpoint(), 2 * v, 1e-15));
  EXPECT_LE(sup_distance(canonicalize(ss), PLPath::straight(2 * v, ss.T())), 1e-15);
  EXPECT_LE(sup_distance(kappa_reverse(s), PLPath::straight(-v)), 1e-15);
  EXPECT_LE(sup_distance(scale(s, 1.0), s), 0.0);
  EXPECT_NEAR(sup_distance(s, PLPath::straight(2 * v)), v.norm(), 1e-15);

  for (int trial = 0; trial < 100; ++trial) {
    PLPath a = random_path(3, 1 + rng.index(6), rng), b = random_path(3, 1 + rng.index(6), rng);
    EXPECT_LE(sup_distance(kappa_reverse(kappa_reverse(a)), a), 1e-12);
    PLPath c = concat_star(a, b);
    EXPECT_TRUE(same_vec(c.endpoint(), a.endpoint() + b.endpoint(), 1e-12));
    auto [x, y] = split_star(c);
    EXPECT_LE(sup_distance(x, a), 1e-12);
    EXPECT_LE(sup_distance(y, b), 1e-12);
  }
}

// ---------------------------------------------------------------------------

TEST(Pitman, A1Examples) {
  Realization r = build_realization("A1");
  PLPath down = a1_path(r, {0, 1}, {0, -2});
  PLPath up = pitman(r, 0, down);
  EXPECT_LE(sup_distance(up, a1_path(r, {0, 1}, {0, 2})), 1e-12);

  PLPath run = a1_path(r, {0, 1, 3}, {0, 2, -2});
  PLPath pr = pitman(r, 0, run);
  EXPECT_LE(sup_distance(pr, a1_path(r, {0, 1, 2, 3}, {0, 2, 0, 2})), 1e-12);
  EXPECT_NEAR(epsilon(r, 0, run), 2, 1e-12);
  EXPECT_NEAR(varphi(r, 0, run), 0, 1e-12);
}

TEST(Pitman, MatchesPointwiseOracle) {
  Rng rng(21);
  for (const char* g : {"A2", "B2", "H3"}) {
    Realization r = build_realization(g);
    for (int trial = 0; trial < 60; ++trial) {
      PLPath p = random_path(r.dim, 1 + rng.index(8), rng);
      int s = rng.index(r.rank);
      PLPath q = pitman(r, s, p);
      for (double t : probe_times(p, 41)) EXPECT_LE((q.eval(t) - pitman_oracle(r, s, p, t)).norm(), 1e-10) << g;
    }
  }
}

TEST(Pitman, DominantPathsAreFixed) {
  Rng rng(4);
  Realization r = build_realization("B3");
  for (int trial = 0; trial < 50; ++trial) {
    PLPath pi = random_dominant_path(r, 8, rng);
    EXPECT_TRUE(in_chamber_path(r, pi));
    for (int s = 0; s < r.rank; ++s) EXPECT_LE(sup_distance(pitman(r, s, pi), pi), 1e-12);
  }
}

TEST(Pitman, BraidRelationsOnRandomPaths) {
  Rng rng(8);
  for (const char* g : {"A2", "B2", "I(5)", "I(6)", "I(7)", "A3", "H3"}) {
    Realization r = build_realization(g);
    for (int trial = 0; trial < 30; ++trial) {
      PLPath p = random_path(r.dim, 1 + rng.index(10), rng);
      PLPath ref = pitman_word(r, r.w0, p);
      for (int s = 0; s < r.rank; ++s) EXPECT_LE(sup_distance(pitman_word(r, r.first_words[s], p), ref), 1e-9) << g;
    }
  }
}

TEST(Pitman, RejectsNonReducedWords) {
  Realization r = build_realization("A2");
  EXPECT_THROW(pitman_word(r, {0, 0}, PLPath::straight(r.root(0))), Error);
  PLPath p = PLPath::straight(r.root(0));
  EXPECT_LE(sup_distance(pitman_word(r, {}, p), p), 0.0);
}

TEST(Littelmann, MatchesPointwiseOracle) {
  Rng rng(31);
  Realization r = build_realization("A2");
  int defined = 0;
  for (int trial = 0; trial < 300; ++trial) {
    PLPath p = random_path(r.dim, 1 + rng.index(8), rng);
    int s = rng.index(2);
    double x = rng.uniform(-3, 3);
    GhostOr e = littelmann_e(r, s, x, p);
    const bool in_range = x <= epsilon(r, s, p) && x >= -varphi(r, s, p);
    ASSERT_EQ(e.has_value(), in_range);
    if (!e) continue;
    ++defined;
    for (double t : probe_times(p, 37)) EXPECT_LE((e->eval(t) - littelmann_oracle(r, s, x, p, t)).norm(), 1e-10);
  }
  EXPECT_GT(defined, 100);
}

TEST(Littelmann, Axioms) {
  Realization a1 = build_realization("A1");
  PLPath run = a1_path(a1, {0, 1, 3}, {0, 2, -2});
  EXPECT_FALSE(littelmann_e(a1, 0, 3.0, run).has_value());
  EXPECT_LE(sup_distance(*littelmann_e(a1, 0, 0.0, run), run), 0.0);

  Realization r = build_realization("A2");
  Rng rng(17);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    PLPath p = random_path(r.dim, 1 + rng.index(8), rng);
    int s = rng.index(2);
    double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
    GhostOr ey = littelmann_e(r, s, y, p);
    if (!ey) continue;
    EXPECT_NEAR(epsilon(r, s, *ey), epsilon(r, s, p) - y, 1e-9);
    EXPECT_NEAR(varphi(r, s, *ey) - epsilon(r, s, *ey), r.pair(s, ey->endpoint()), 1e-9);
    GhostOr exy = littelmann_e(r, s, x, *ey), esum = littelmann_e(r, s, x + y, p);
    ASSERT_EQ(exy.has_value(), esum.has_value());
    if (exy) {
      EXPECT_LE(sup_distance(*exy, *esum), 1e-9);
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Littelmann, HOperatorInvertsPitman) {
  Realization a1 = build_realization("A1");
  PLPath pi = a1_path(a1, {0, 1}, {0, 3});
  EXPECT_TRUE(same_vec(littelmann_h(a1, 0, 3.0, pi).endpoint(), -pi.endpoint(), 1e-12));
  EXPECT_LE(sup_distance(littelmann_h(a1, 0, 0.0, pi), pi), 0.0);

  Realization r = build_realization("B2");
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    int s = rng.index(2);
    PLPath pi2 = pitman(r, s, random_path(r.dim, 1 + rng.index(8), rng));
    double x = rng.uniform() * r.pair(s, pi2.endpoint());
    PLPath eta = littelmann_h(r, s, x, pi2);
    EXPECT_LE(sup_distance(pitman(r, s, eta), pi2), 1e-9);
    EXPECT_NEAR(epsilon(r, s, eta), x, 1e-9);
  }
  EXPECT_THROW(littelmann_h(a1, 0, 1.0, a1_path(a1, {0, 1}, {0, -1})), Error);
  EXPECT_THROW(littelmann_h(a1, 0, 4.0, pi), Error);
}

// ---------------------------------------------------------------------------

TEST(Dihedral, ChebyshevValues) {
  EXPECT_EQ(chebyshev(0, 0.3), 1.0);
  EXPECT_NEAR(chebyshev(1, 0.3), 0.6, 1e-15);
  EXPECT_NEAR(chebyshev(2, 0.3), 4 * 0.09 - 1, 1e-15);
  for (double th : {0.1, 0.7, 1.3, 2.9})
    for (int k = 0; k < 9; ++k)
      EXPECT_NEAR(chebyshev(k, std::cos(th)), std::sin((k + 1) * th) / std::sin(th), 1e-12);
}

TEST(Dihedral, ProductFormulaAgreesWithIteration) {
  Rng rng(2);
  for (const char* g : {"A2", "B2", "I(5)", "I(8)"}) {
    Realization r = build_realization(g);
    const int m = r.coxeter(0, 1);
    for (int n = 1; n <= m; ++n)
      for (int trial = 0; trial < 25; ++trial) {
        PLPath p = random_path(r.dim, 1 + rng.index(8), rng);
        Word w;
        for (int k = 0; k < n; ++k) w.push_back(k % 2 == 0 ? 0 : 1);
        PLPath iter = p;
        for (auto it = w.rbegin(); it != w.rend(); ++it) iter = pitman(r, *it, iter);
        EXPECT_LE(sup_distance(dihedral_product_formula(r, 0, 1, n, p), iter), 1e-9) << g << " n=" << n;
      }
  }
}

TEST(Dihedral, UnequalLengthsRenormalize) {
  // alpha^vee(beta) = -1, beta^vee(alpha) = -2.
  Mat R(2, 2), C(2, 2);
  R.col(0) << 1, -1;
  R.col(1) << 0, 1;
  C.col(0) << 1, -1;
  C.col(1) << 0, 2;
  Realization r = realization_from_roots(R, C);
  ASSERT_EQ(r.coxeter(0, 1), 4);
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    PLPath p = random_path(2, 1 + rng.index(8), rng);
    PLPath iter = pitman(r, 1, pitman(r, 0, pitman(r, 1, pitman(r, 0, p))));
    EXPECT_LE(sup_distance(dihedral_product_formula(r, 1, 0, 4, p), iter), 1e-9);
  }
}

}  // namespace
