#include <gtest/gtest.h>

#include "plcrystal/crystal.hpp"
#include "plcrystal/involutions.hpp"
#include "plcrystal/random.hpp"

namespace {

using namespace plc;
using detail::same_vec;

CrystalPoint random_balpha_tensor(const Realization& r, int s, int n, Rng& rng) {
  CrystalPoint b = CrystalPoint::make_balpha(r, s, -2 * rng.uniform());
  for (int k = 1; k < n; ++k) b = CrystalPoint::make_tensor(r, b, CrystalPoint::make_balpha(r, s, -2 * rng.uniform()));
  return b;
}

TEST(Crystal, BAlphaExamples) {
  Realization r = build_realization("A2");
  CrystalPoint b = CrystalPoint::make_balpha(r, 0, -1.0);
  EXPECT_TRUE(same_vec(b.wt(), -r.root(0), 1e-15));
  EXPECT_EQ(b.eps(0), 1.0);
  EXPECT_EQ(b.phi(0), -1.0);
  EXPECT_EQ(b.eps(1), NEG_INF);
  GhostOrPoint half = crystal_e(r, b, 0, 0.5);
  ASSERT_TRUE(half);
  EXPECT_NEAR(half->balpha_t(), -0.5, 1e-15);
  EXPECT_FALSE(crystal_e(r, b, 0, 2.0));
  EXPECT_FALSE(crystal_e(r, b, 1, 0.1));
  EXPECT_EQ(crystal_e(r, b, 0, 0.0)->balpha_t(), -1.0);
  EXPECT_THROW(CrystalPoint::make_balpha(r, 0, 0.5), Error);
}

TEST(Crystal, TensorExample) {
  Realization r = build_realization("A1");
  CrystalPoint t = CrystalPoint::make_tensor(r, CrystalPoint::make_balpha(r, 0, 0.0), CrystalPoint::make_balpha(r, 0, -1.0));
  GhostOrPoint e = crystal_e(r, t, 0, 0.5);
  ASSERT_TRUE(e);
  EXPECT_NEAR(e->left().balpha_t(), 0.0, 1e-15);
  EXPECT_NEAR(e->right().balpha_t(), -0.5, 1e-15);

  CrystalPoint z = CrystalPoint::make_tensor(r, CrystalPoint::make_balpha(r, 0, 0.0), CrystalPoint::make_balpha(r, 0, 0.0));
  EXPECT_TRUE(same_vec(z.wt(), Vec::Zero(1), 0));
  EXPECT_EQ(z.eps(0), 0.0);
  EXPECT_EQ(z.phi(0), 0.0);
}

TEST(Crystal, NonNegativeSigmaKeepsLeftEpsilon) {
  Realization r = build_realization("A2");
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    CrystalPoint b1 = CrystalPoint::make_path(r, random_path(2, 1 + rng.index(6), rng));
    CrystalPoint b2 = CrystalPoint::make_path(r, random_path(2, 1 + rng.index(6), rng));
    CrystalPoint t = CrystalPoint::make_tensor(r, b1, b2);
    for (int s = 0; s < 2; ++s) {
      EXPECT_NEAR(t.phi(s) - t.eps(s), r.pair(s, t.wt()), 1e-9);
      if (b1.phi(s) >= b2.eps(s)) {
        EXPECT_NEAR(t.eps(s), b1.eps(s), 1e-12);
      }
    }
  }
}

TEST(Crystal, PathPointsAreNormal) {
  Realization r = build_realization("B2");
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    CrystalPoint b = CrystalPoint::make_path(r, random_path(2, 1 + rng.index(6), rng));
    for (int s = 0; s < 2; ++s) {
      EXPECT_TRUE(crystal_e(r, b, s, b.eps(s)));
      EXPECT_FALSE(crystal_e(r, b, s, b.eps(s) + 1e-6));
      EXPECT_TRUE(crystal_f(r, b, s, b.phi(s)));
      EXPECT_FALSE(crystal_f(r, b, s, b.phi(s) + 1e-6));
    }
  }
}

TEST(Crystal, TensorIsAssociative) {
  Realization r = build_realization("A1");
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    CrystalPoint a = random_balpha_tensor(r, 0, 1, rng), b = random_balpha_tensor(r, 0, 1, rng),
                 c = random_balpha_tensor(r, 0, 1, rng);
    CrystalPoint lhs = CrystalPoint::make_tensor(r, CrystalPoint::make_tensor(r, a, b), c);
    CrystalPoint rhs = CrystalPoint::make_tensor(r, a, CrystalPoint::make_tensor(r, b, c));
    EXPECT_NEAR(lhs.eps(0), rhs.eps(0), 1e-12);
    EXPECT_NEAR(lhs.phi(0), rhs.phi(0), 1e-12);
    const double x = rng.uniform(-3, 3);
    GhostOrPoint el = crystal_e(r, lhs, 0, x), er = crystal_e(r, rhs, 0, x);
    ASSERT_EQ(el.has_value(), er.has_value());
    if (!el) continue;
    const double l[3] = {el->left().left().balpha_t(), el->left().right().balpha_t(), el->right().balpha_t()};
    const double g[3] = {er->left().balpha_t(), er->right().left().balpha_t(), er->right().right().balpha_t()};
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(l[k], g[k], 1e-12);
  }
}

TEST(Crystal, TensorMatchesConcatenation) {
  Rng rng(14);
  for (const char* g : {"A1", "A2", "I(5)"}) {
    Realization r = build_realization(g);
    for (int trial = 0; trial < 300; ++trial) {
      PLPath a = random_path(r.dim, 1 + rng.index(6), rng), b = random_path(r.dim, 1 + rng.index(6), rng);
      EXPECT_TRUE(theta_check(r, a, b, rng.index(r.rank), rng.uniform(-3, 3))) << g;
    }
    EXPECT_TRUE(theta_check(r, PLPath::straight(r.root(0)), PLPath::straight(r.root(0)), 0, 0.0));
  }
}

TEST(Crystal, ModuleMembership) {
  Realization r = build_realization("A2");
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    PLPath eta = random_path(2, 1 + rng.index(6), rng);
    PLPath pi = pitman_w0(r, eta);
    EXPECT_TRUE(module_membership(r, pi, pi));
    EXPECT_TRUE(module_membership(r, pi, eta));
    EXPECT_FALSE(module_membership(r, pi, scale(eta, 1.5)));
  }
  EXPECT_THROW(module_membership(r, PLPath::straight(-r.root(0)), PLPath::straight(r.root(0))), Error);
}

// ---------------------------------------------------------------------------

TEST(Involutions, WActionBasics) {
  Realization r = build_realization("A2");
  Rng rng(5);
  Vec wall = r.fundamental.col(1);
  PLPath flat = PLPath::straight(wall);
  EXPECT_LE(sup_distance(w_action(r, 0, flat), flat), 1e-12);
  for (int trial = 0; trial < 200; ++trial) {
    PLPath p = random_path(2, 1 + rng.index(8), rng);
    const int s = rng.index(2);
    PLPath q = w_action(r, s, p);
    EXPECT_TRUE(same_vec(q.endpoint(), reflect(r, s, p.endpoint()), 1e-9));
    EXPECT_LE(sup_distance(w_action(r, s, q), p), 1e-9);
  }
}

TEST(Involutions, SchutzenbergerIOnDominantPaths) {
  Realization a1 = build_realization("A1");
  PLPath line = PLPath::straight(a1.root(0));
  EXPECT_LE(sup_distance(schutz_I(a1, line), line), 1e-12);

  Rng rng(6);
  for (const char* g : {"A2", "B2", "A3"}) {
    Realization r = build_realization(g);
    for (int trial = 0; trial < 60; ++trial) {
      PLPath pi = random_dominant_path(r, 8, rng);
      PLPath ip = schutz_I(r, pi);
      EXPECT_TRUE(in_chamber_path(r, ip));
      EXPECT_TRUE(same_vec(ip.endpoint(), pi.endpoint(), 1e-9)) << g;
      EXPECT_TRUE(same_vec(schutz_I(r, ip).endpoint(), pi.endpoint(), 1e-9)) << g;
    }
  }
  EXPECT_THROW(schutz_I(a1, PLPath::straight(-a1.root(0))), Error);
}

TEST(Involutions, SchutzenbergerTilde) {
  Rng rng(7);
  for (const char* g : {"A1", "A2", "B2", "I(5)", "A3"}) {
    Realization r = build_realization(g);
    for (int trial = 0; trial < 40; ++trial) {
      PLPath pi = random_dominant_path(r, 6, rng);
      EXPECT_LE(sup_distance(schutz_tilde(r, pi), w_action_word(r, r.w0, pi)), 1e-9) << g;
      PLPath eta = random_path(r.dim, 1 + rng.index(6), rng);
      PLPath st = schutz_tilde(r, eta);
      EXPECT_LE(sup_distance(schutz_tilde(r, st), eta), 1e-8) << g;
      EXPECT_TRUE(same_vec(st.endpoint(), r.w0_matrix * eta.endpoint(), 1e-8)) << g;

      const int s = rng.index(r.rank);
      const double x = rng.uniform(-2, 2);
      GhostOr lhs = littelmann_e(r, s, x, st);
      GhostOr inner = littelmann_e(r, r.tilde[s], -x, eta);
      ASSERT_EQ(lhs.has_value(), inner.has_value()) << g;
      if (lhs) {
        EXPECT_LE(sup_distance(*lhs, schutz_tilde(r, *inner)), 1e-8) << g;
      }
    }
  }
}

TEST(Involutions, CommutorIsInvolutive) {
  Rng rng(8);
  for (const char* g : {"A1", "A2", "B2"}) {
    Realization r = build_realization(g);
    for (int trial = 0; trial < 60; ++trial) {
      PLPath a = random_path(r.dim, 1 + rng.index(5), rng), b = random_path(r.dim, 1 + rng.index(5), rng);
      PLPath t = commutor_tau(r, a, b);
      EXPECT_TRUE(same_vec(t.endpoint(), a.endpoint() + b.endpoint(), 1e-8));
      EXPECT_LE(sup_distance(tau_path(r, t), concat_star(a, b)), 1e-8) << g;
      EXPECT_TRUE(same_vec(pitman_w0(r, t).endpoint(), pitman_w0(r, concat_star(a, b)).endpoint(), 1e-8)) << g;
    }
  }
  Realization a1 = build_realization("A1");
  PLPath pi = PLPath::straight(a1.root(0));
  PLPath t = commutor_tau(a1, pi, pi);
  EXPECT_LE(sup_distance(pitman_w0(a1, t), pitman_w0(a1, concat_star(pi, pi))), 1e-9);
}

TEST(Involutions, CactusHexagon) {
  Rng rng(10);
  for (const char* g : {"A1", "A2"}) {
    Realization r = build_realization(g);
    for (int trial = 0; trial < 40; ++trial) {
      PLPath a = random_path(r.dim, 1 + rng.index(4), rng), b = random_path(r.dim, 1 + rng.index(4), rng),
             c = random_path(r.dim, 1 + rng.index(4), rng);
      EXPECT_LE(hexagon_routes(r, a, b, c).distance(), 1e-8) << g;
    }
  }
}

}  // namespace
