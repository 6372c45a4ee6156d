#include <gtest/gtest.h>

#include <cmath>

#include "plcrystal/random.hpp"
#include "plcrystal/troplift.hpp"

namespace {

using namespace plc;

std::string random_expression(Rng& rng, int depth) {
  if (depth == 0 || rng.uniform() < 0.25) {
    if (rng.uniform() < 0.2) return std::to_string(1 + rng.index(5));
    return "t" + std::to_string(1 + rng.index(4));
  }
  static const char ops[] = {'+', '*', '/'};
  return "(" + random_expression(rng, depth - 1) + ops[rng.index(3)] + random_expression(rng, depth - 1) + ")";
}

Grid linear_grid(double a0, double slope, size_t n, double T = 1.0) {
  Grid g;
  g.T = T;
  for (size_t k = 0; k <= n; ++k) g.v.push_back(a0 + slope * T * static_cast<double>(k) / static_cast<double>(n));
  return g;
}

TEST(Tropicalize, DisplayedExamples) {
  EXPECT_EQ(render_maxplus(*tropicalize(*parse_sf("t1+2*t2/t3"))), "x1 ∨ (x2 − x3)");
  EXPECT_EQ(render_maxplus(*tropicalize(*parse_sf("1/(t1*t2+3*t3*t4)"))), "−((x1 + x2) ∨ (x3 + x4))");
  EXPECT_EQ(render_maxplus(*tropicalize(*parse_sf("t7"))), "x7");

  Rng rng(1);
  MPPtr a = tropicalize(*parse_sf("t1+2*t2/t3")), b = tropicalize(*parse_sf("1/(t1*t2+3*t3*t4)"));
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, double> x;
    for (int k = 1; k <= 4; ++k) x["x" + std::to_string(k)] = rng.uniform(-5, 5);
    EXPECT_EQ(eval_maxplus(*a, x), std::max(x["x1"], x["x2"] - x["x3"]));
    EXPECT_EQ(eval_maxplus(*b, x), -std::max(x["x1"] + x["x2"], x["x3"] + x["x4"]));
  }
}

TEST(Tropicalize, ParserRejectsBadInput) {
  for (const char* bad : {"t1-t2", "t1+", "(t1", "t1)", "", "-t1", "0*t1", "t1^2"})
    EXPECT_THROW(parse_sf(bad), Error) << bad;
  EXPECT_NO_THROW(parse_sf(" 0.5 * ( t1 + t2 ) / t3 "));
  EXPECT_EQ(render_maxplus(*tropicalize(*parse_sf("2t1t2"))), "x1 + x2");
  EXPECT_THROW(eval_sf(*parse_sf("t1+t2"), {{"t1", 1.0}}), Error);
  EXPECT_THROW(eval_sf(*parse_sf("t1"), {{"t1", -1.0}}), Error);
}

TEST(Tropicalize, LogEvaluationMatchesDirect) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    SFPtr e = parse_sf(random_expression(rng, 4));
    std::map<std::string, double> v, lv;
    for (int k = 1; k <= 4; ++k) {
      const double t = rng.uniform(0.1, 4);
      v["t" + std::to_string(k)] = t;
      lv["t" + std::to_string(k)] = std::log(t);
    }
    EXPECT_NEAR(eval_sf_log(*e, lv), std::log(eval_sf(*e, v)), 1e-12);
  }
}

TEST(Tropicalize, LimitResiduals) {
  SFPtr sum = parse_sf("t1+t2");
  const double r = numeric_trop_limit(*sum, {{"t1", 0.0}, {"t2", 1.0}}, {1e-3})[0];
  EXPECT_LE(r, 1e-3 * std::log(2.0) + 1e-12);
  // log(1 + e^{-1/eps}) is below double resolution at eps = 1e-3.
  EXPECT_NEAR(numeric_trop_limit(*sum, {{"t1", 0.0}, {"t2", 0.0}}, {1e-3})[0], 1e-3 * std::log(2.0), 1e-15);

  SFPtr mono = parse_sf("t1*t2/t3");
  for (double e : numeric_trop_limit(*mono, {{"t1", 0.3}, {"t2", -1.2}, {"t3", 2.0}}, {1.0, 0.1, 1e-3}))
    EXPECT_NEAR(e, 0.0, 1e-12);

  Rng rng(3);
  SFPtr t1 = parse_sf("u3+u2/u1");
  for (int trial = 0; trial < 100; ++trial) {
    std::map<std::string, double> x{{"u1", rng.uniform(-2, 2)}, {"u2", rng.uniform(-2, 2)}, {"u3", rng.uniform(-2, 2)}};
    for (double eps : {0.1, 0.01, 0.001}) EXPECT_LE(numeric_trop_limit(*t1, x, {eps})[0], 2 * eps * std::log(2.0) + 1e-12);
  }
}

TEST(Tropicalize, ErrorBoundHolds) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    SFPtr e = parse_sf(random_expression(rng, 4));
    std::map<std::string, double> x;
    for (int k = 1; k <= 4; ++k) x["t" + std::to_string(k)] = rng.uniform(-3, 3);
    for (double eps : {1.0, 0.1, 0.01}) EXPECT_LE(numeric_trop_limit(*e, x, {eps})[0], trop_error_bound(*e, eps) + 1e-12);
  }
}

// ---------------------------------------------------------------------------

TEST(Bruhat, SpotValueAndMatrices) {
  Bruhat b = a2_bruhat_transition(1, 1, 1);
  EXPECT_DOUBLE_EQ(b.t1, 2.0);
  EXPECT_DOUBLE_EQ(b.t2, 1.0);
  EXPECT_DOUBLE_EQ(b.t3, 0.5);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const double u1 = rng.uniform(0.1, 5), u2 = rng.uniform(0.1, 5), u3 = rng.uniform(0.1, 5);
    Bruhat t = a2_bruhat_transition(u1, u2, u3);
    EXPECT_LE((a2_matrix_t(t.t1, t.t2, t.t3) - a2_matrix_u(u1, u2, u3)).cwiseAbs().maxCoeff(), 1e-12);
    auto ex = a2_bruhat_expressions();
    std::map<std::string, double> env{{"u1", u1}, {"u2", u2}, {"u3", u3}};
    EXPECT_NEAR(eval_sf(*ex[0], env), t.t1, 1e-12);
    EXPECT_NEAR(eval_sf(*ex[1], env), t.t2, 1e-12);
    EXPECT_NEAR(eval_sf(*ex[2], env), t.t3, 1e-12);
  }
  EXPECT_THROW(a2_bruhat_transition(0, 1, 1), Error);
}

TEST(Bruhat, TropicalizationIsTheA2Transition) {
  auto ex = a2_bruhat_expressions();
  for (int a = 0; a <= 4; ++a)
    for (int b = a; b <= 6; ++b)
      for (int c = 0; c <= 4; ++c) {
        std::map<std::string, double> env{{"u1", a}, {"u2", b}, {"u3", c}};
        Vec x{{double(a), double(b), double(c)}};
        Vec y = transition_closed_dihedral(3, x);
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(eval_minplus_dual(*tropicalize(*ex[k]), env), y[k], 1e-12);
      }
}

// ---------------------------------------------------------------------------

TEST(SL2, TOfConstantIsIdentityTime) {
  Grid one = linear_grid(1.0, 0.0, 1000);
  TResult t = sl2_T(one);
  for (size_t k = 0; k <= one.n(); ++k) EXPECT_NEAR(t.psi.v[k], one.t(k), 1e-12);
  EXPECT_NEAR(t.xi, 1.0, 1e-12);

  Grid zero = linear_grid(0.0, 0.0, 1000);
  Grid lg = sl2_T_log(zero, 1.0);
  EXPECT_NEAR(lg.v.back(), 0.0, 1e-12);
  EXPECT_NEAR(lg.v[500], std::log(0.5), 1e-12);
}

TEST(SL2, TOfLinearFunction) {
  // phi = 1 + t: T phi = (1 + t)(1 - 1/(1 + t)) = t.
  Grid phi = linear_grid(1.0, 1.0, 2000);
  TResult t = sl2_T(phi);
  for (size_t k = 0; k <= phi.n(); ++k) EXPECT_NEAR(t.psi.v[k], phi.t(k), 1e-12);
  EXPECT_NEAR(t.xi, 0.5, 1e-12);
}

TEST(SL2, InverseFamilyRoundTrip) {
  const size_t n = 100000;
  Grid phi;
  phi.T = 1.0;
  for (size_t k = 0; k <= n; ++k) {
    const double s = static_cast<double>(k) / n;
    phi.v.push_back(1.2 + std::sin(3 * s) + 0.3 * s * s);
  }
  TResult t = sl2_T(phi);
  Grid back = sl2_inverse_family(t.psi, t.xi);
  double rel = 0;
  for (size_t k = 0; k <= n; ++k) rel = std::max(rel, std::abs(back.v[k] - phi.v[k]) / phi.v[k]);
  EXPECT_LE(rel, 1e-6);

  for (double xi : {0.1, 1.0, 7.0}) {
    TResult again = sl2_T(sl2_inverse_family(t.psi, xi));
    double d = 0;
    for (size_t k = 1; k <= n; ++k) d = std::max(d, std::abs(again.psi.v[k] - t.psi.v[k]) / t.psi.v[k]);
    EXPECT_LE(d, 1e-6) << xi;
    EXPECT_NEAR(again.xi, xi, 1e-6 * xi);
  }
  EXPECT_THROW(sl2_inverse_family(t.psi, 0.0), Error);
  EXPECT_THROW(sl2_T(linear_grid(-1.0, 0.5, 10)), Error);
}

TEST(SL2, CompositionLaw) {
  const size_t n = 100000;
  Grid phi;
  phi.T = 1.0;
  for (size_t k = 0; k <= n; ++k) phi.v.push_back(2.0 + std::cos(5.0 * k / n));
  const double u = 1.3, v = 0.4, u2 = 0.7, v2 = 0.9;
  Grid lhs = sl2_E(sl2_E(phi, u2, v2), u, v);
  Grid rhs = sl2_E(phi, u * u2, u * v2 + v / u2);
  double d = 0;
  for (size_t k = 0; k <= n; ++k) d = std::max(d, std::abs(lhs.v[k] - rhs.v[k]));
  EXPECT_LE(d, 1e-6);
}

TEST(SL2, LogLiftMatchesDirectLiftAtModerateEps) {
  const size_t n = 20000;
  Grid a;
  a.T = 1.0;
  for (size_t k = 0; k <= n; ++k) a.v.push_back(0.3 * std::sin(4.0 * k / n) - 0.2 * k / n);
  const double eps = 1.0;
  Grid phi = a;
  for (double& x : phi.v) x = std::exp(x / eps);
  TResult t = sl2_T(phi);
  Grid lg = sl2_T_log(a, eps);
  for (size_t k = 1; k <= n; k += 97) EXPECT_NEAR(lg.v[k], eps * std::log(t.psi.v[k]), 1e-6);
}

TEST(SL2, PitmanLimitRates) {
  const size_t n = 1 << 15;
  Grid down = linear_grid(0.0, -1.0, n);
  Grid target = pitman_scalar(down);
  for (size_t k = 0; k <= n; ++k) EXPECT_NEAR(target.v[k], down.t(k), 1e-12);
  std::vector<double> res;
  for (double eps : {0.04, 0.02, 0.01}) res.push_back(grid_residual(sl2_T_log(down, eps), target, 0.1));
  for (size_t k = 1; k < res.size(); ++k) EXPECT_NEAR(res[k - 1] / res[k], 2.0, 0.6);

  Grid up = linear_grid(0.0, 1.0, n);
  EXPECT_EQ(pitman_scalar(up).v, up.v);
  EXPECT_LE(grid_residual(sl2_T_log(up, 0.005), up, 0.1), 0.05);
}

TEST(SL2, HLimit) {
  const size_t n = 1 << 15;
  Grid up = linear_grid(0.0, 1.0, n);
  const double x = 0.6;
  Grid target = h_scalar(up, x);
  for (size_t k = 0; k <= n; ++k) EXPECT_NEAR(target.v[k], up.v[k] - std::min(x, 2 * up.v[k]), 1e-12);
  std::vector<double> res;
  for (double eps : {0.04, 0.02, 0.01}) res.push_back(grid_residual(sl2_H_log(up, x, eps), target, 0.1));
  EXPECT_LT(res[2], res[1]);
  EXPECT_LT(res[1], res[0]);
  EXPECT_LE(res[2], 10 * 0.01);
}

// ---------------------------------------------------------------------------

TEST(StringLift, ConvergesToStringCoordinates) {
  Realization a1 = build_realization("A1");
  PLPath run({0, 1, 3}, {Vec::Zero(1), a1.root(0), -a1.root(0)});
  std::vector<double> res;
  for (double eps : {0.1, 0.01, 0.001}) res.push_back(std::abs(string_lift(a1, a1.w0, run, eps, 1 << 16).x[0] - 2.0));
  EXPECT_LE(res[2], 1e-2);
  EXPECT_LT(res[1], res[0]);
  EXPECT_LT(res[2], res[1]);

  Realization a2 = build_realization("A2");
  Rng rng(6);
  PLPath eta = random_path(2, 4, rng);
  Vec x = string_coords(a2, a2.w0, eta);
  EXPECT_LE((string_lift(a2, a2.w0, eta, 0.002, 1 << 16).x - x).cwiseAbs().maxCoeff(), 0.05);
  EXPECT_THROW(string_lift(build_realization("A3"), build_realization("A3").w0, random_path(3, 3, rng), 0.1, 100),
               Error);
}

}  // namespace
