#pragma once
// Property suites shared by the acceptance runner and `plcrystal selftest`.
// Each check is seeded and deterministic; reports carry no timings.

#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "plcrystal/crystal.hpp"
#include "plcrystal/dh.hpp"
#include "plcrystal/involutions.hpp"
#include "plcrystal/random.hpp"
#include "plcrystal/troplift.hpp"

namespace plc::checks {

inline constexpr double TOL = 1e-9;

/// Sample sizes are full sizes times frac, never below min.
struct Scale {
  double frac = 1.0;
  std::uint64_t seed = 0;
  long n(long full, long min = 1) const {
    return std::max(min, static_cast<long>(static_cast<double>(full) * frac + 0.5));
  }
};

struct Report {
  int id = 0;
  std::string name;
  bool pass = true;
  /// Ordered key/value lines; keys starting with "info." never affect pass.
  std::vector<std::pair<std::string, std::string>> values;

  Report(int i, std::string n) : id(i), name(std::move(n)) {}

  void put(const std::string& key, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    values.emplace_back(key, buf);
  }
  void put(const std::string& key, const std::string& v) { values.emplace_back(key, v); }
  /// Records a requirement and its outcome.
  void require(const std::string& key, bool ok) {
    values.emplace_back(key, ok ? "ok" : "violated");
    pass = pass && ok;
  }
};

// ---------------------------------------------------------------------------
// Helpers

inline std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline Word alternating(int a, int b, int n) {
  Word w;
  for (int k = 0; k < n; ++k) w.push_back(k % 2 == 0 ? a : b);
  return w;
}

/// Largest sup-distance between the two sides of every braid relation and
/// between the Pitman products of two reduced words of w0.
inline double braid_defect(const Realization& r, const PLPath& p) {
  double d = 0;
  for (int s = 0; s < r.rank; ++s)
    for (int t = s + 1; t < r.rank; ++t) {
      const int m = r.coxeter(s, t);
      d = std::max(d, sup_distance(pitman_word(r, alternating(s, t, m), p), pitman_word(r, alternating(t, s, m), p)));
    }
  if (r.rank >= 2) d = std::max(d, sup_distance(pitman_word(r, r.first_words[0], p), pitman_word(r, r.first_words[1], p)));
  return d;
}

/// Same as braid_defect for the W-action S_alpha.
inline double waction_braid_defect(const Realization& r, const PLPath& p) {
  double d = 0;
  for (int s = 0; s < r.rank; ++s)
    for (int t = s + 1; t < r.rank; ++t) {
      const int m = r.coxeter(s, t);
      d = std::max(d, sup_distance(w_action_word(r, alternating(s, t, m), p), w_action_word(r, alternating(t, s, m), p)));
    }
  return d;
}

/// The A2 transition from (1,2,1) to (2,1,2) coordinates, written directly.
inline Vec a2_transition_formula(const Vec& x) {
  return Vec{{std::min(x[1] - x[0], x[2]), x[0] + x[2], std::max(x[0], x[1] - x[2])}};
}

/// A path in L_pi reached from pi by random lowering moves.
inline PLPath random_lowering(const Realization& r, const PLPath& pi, Rng& rng, int moves) {
  PLPath eta = pi;
  for (int k = 0; k < moves; ++k) {
    const int s = rng.index(r.rank);
    const double ph = varphi(r, s, eta);
    if (ph <= 0) continue;
    GhostOr n = littelmann_f(r, s, rng.uniform() * ph, eta);
    if (n) eta = *n;
  }
  return eta;
}

inline double point_distance(const CrystalPoint& a, const CrystalPoint& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (a.kind() != b.kind()) return inf;
  switch (a.kind()) {
    case CrystalPoint::Kind::Path: return sup_distance(a.path(), b.path());
    case CrystalPoint::Kind::BAlpha:
      return a.balpha_root() == b.balpha_root() ? std::abs(a.balpha_t() - b.balpha_t()) : inf;
    case CrystalPoint::Kind::Tensor:
      return std::max(point_distance(a.left(), b.left()), point_distance(a.right(), b.right()));
  }
  return inf;
}

inline CrystalPoint random_point(const Realization& r, Rng& rng, int depth) {
  const int kind = depth <= 0 ? rng.index(2) : rng.index(3);
  if (kind == 0) return CrystalPoint::make_path(r, random_path_upto(r.dim, 5, rng));
  if (kind == 1) return CrystalPoint::make_balpha(r, rng.index(r.rank), -2 * rng.uniform());
  CrystalPoint a = random_point(r, rng, depth - 1);
  CrystalPoint b = random_point(r, rng, depth - 1);
  return CrystalPoint::make_tensor(r, a, b);
}

/// A shift drawn around the feasible interval [-phi, eps] so that ghosts occur.
inline double random_shift(Rng& rng, double eps, double phi) {
  if (!std::isfinite(eps) || !std::isfinite(phi)) return rng.uniform(-2, 2);
  return rng.uniform(-phi - 0.5, eps + 0.5);
}

// ---------------------------------------------------------------------------
// 1. Braid relations for Pitman products

inline Report check_braid(const Scale& sc) {
  Report rep{1, "braid relations of Pitman transforms"};
  const std::vector<std::string> groups{"A2", "B2", "I(5)", "I(6)", "I(7)", "H3"};
  const long n = sc.n(200);
  double worst = 0;
  for (size_t g = 0; g < groups.size(); ++g) {
    Realization r = build_realization(groups[g]);
    Rng rng(sc.seed, 100 + g);
    double d = 0;
    for (long k = 0; k < n; ++k) d = std::max(d, braid_defect(r, random_path_upto(r.dim, 8, rng)));
    rep.put(groups[g] + ".max_dev", d);
    worst = std::max(worst, d);
  }
  rep.require("max_dev<=1e-9", worst <= TOL);
  return rep;
}

// ---------------------------------------------------------------------------
// 2. Dihedral product formula

inline Report check_dihedral_formula(const Scale& sc) {
  Report rep{2, "dihedral closed form for alternating products"};
  const long n = sc.n(100);
  double worst = 0;
  int gi = 0;
  for (const std::string g : {"A2", "I(5)"}) {
    Realization r = build_realization(g);
    const int m = r.coxeter(0, 1);
    Rng rng(sc.seed, 200 + gi++);
    double d = 0;
    for (long k = 0; k < n; ++k) {
      PLPath p = random_path_upto(r.dim, 8, rng);
      for (int len = 1; len <= m; ++len)
        for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}})
          d = std::max(d, sup_distance(dihedral_product_formula(r, a, b, len, p), pitman_word(r, alternating(a, b, len), p)));
    }
    rep.put(g + ".max_dev", d);
    worst = std::max(worst, d);
  }
  rep.require("max_dev<=1e-9", worst <= TOL);
  return rep;
}

// ---------------------------------------------------------------------------
// 3. String parametrization round trips

inline Report check_string_roundtrip(const Scale& sc) {
  Report rep{3, "string parametrization round trips"};
  const long n = sc.n(500);
  double worst = 0;
  int gi = 0;
  for (const std::string g : {"A2", "I(5)", "H3"}) {
    Realization r = build_realization(g);
    Rng rng(sc.seed, 300 + gi++);
    double fwd = 0, bwd = 0;
    for (long k = 0; k < n; ++k) {
      // rho^{-1} o rho on a random path.
      PLPath eta = random_path_upto(r.dim, 8, rng);
      StringChain c = string_chain(r, r.w0, eta);
      fwd = std::max(fwd, sup_distance(inverse_string(r, r.w0, c.partial[0], c.x), eta));
      // rho o rho^{-1} on a point of C_i^pi reached by lowering moves.
      PLPath pi = random_dominant_path(r, 6, rng);
      Vec x = string_coords(r, r.w0, random_lowering(r, pi, rng, 2 * r.q));
      PLPath back = inverse_string(r, r.w0, pi, x);
      StringChain c2 = string_chain(r, r.w0, back);
      bwd = std::max({bwd, (c2.x - x).lpNorm<Eigen::Infinity>(), sup_distance(c2.partial[0], pi)});
    }
    rep.put(g + ".inverse_after_coords", fwd);
    rep.put(g + ".coords_after_inverse", bwd);
    worst = std::max({worst, fwd, bwd});
  }
  rep.require("max_dev<=1e-9", worst <= TOL);
  return rep;
}

// ---------------------------------------------------------------------------
// 4. Transition maps

inline Report check_transitions(const Scale& sc) {
  Report rep{4, "closed-form transition maps"};
  const long n = sc.n(1000);
  double worst = 0;
  {
    Realization r = build_realization("A2");
    const Word i{0, 1, 0}, j{1, 0, 1};
    Rng rng(sc.seed, 400);
    double d = 0;
    for (long k = 0; k < n; ++k) {
      Vec x = random_dihedral_cone_point(3, rng);
      Vec y = transition(r, i, j, aux_lambda(r, i, x), x);
      d = std::max(d, (a2_transition_formula(x) - y).lpNorm<Eigen::Infinity>());
    }
    rep.put("A2.max_dev", d);
    worst = std::max(worst, d);
  }
  for (int m = 3; m <= 7; ++m) {
    Realization r = build_I(m);
    const Word i = alternating(0, 1, m), j = alternating(1, 0, m);
    Rng rng(sc.seed, 400 + m);
    double d = 0;
    for (long k = 0; k < n; ++k) {
      Vec x = random_dihedral_cone_point(m, rng);
      Vec y = transition(r, i, j, aux_lambda(r, i, x), x);
      Vec c = m <= 6 ? transition_closed_dihedral(m, x) : conjecture_m7(x);
      d = std::max(d, (c - y).lpNorm<Eigen::Infinity>());
    }
    if (m <= 6) {
      rep.put("I(" + std::to_string(m) + ").max_dev", d);
      worst = std::max(worst, d);
    } else {
      rep.put("info.I(7).conjecture_max_residual", d);
      rep.put("info.I(7).conjecture_within_1e-9", d <= TOL ? "yes" : "no");
    }
  }
  rep.require("max_dev<=1e-9", worst <= TOL);
  return rep;
}

// ---------------------------------------------------------------------------
// 5. Cone characterization

inline Report check_cone(const Scale& sc) {
  Report rep{5, "dihedral string cone"};
  const long n = sc.n(1000);
  bool all_in = true;
  double lift = 0;
  for (int m = 3; m <= 6; ++m) {
    Realization r = build_I(m);
    const Word i = alternating(0, 1, m);
    Rng rng(sc.seed, 500 + m);
    long outside = 0;
    for (long k = 0; k < n; ++k)
      if (!dihedral_cone_membership(m, string_coords(r, i, random_path_upto(r.dim, 8, rng)))) ++outside;
    double d = 0;
    for (long k = 0; k < n; ++k) {
      Vec x = random_dihedral_cone_point(m, rng);
      // Smallest chamber weight meeting the K ladder, plus random slack.
      Vec c = Vec::Zero(r.rank);
      Vec acc = Vec::Zero(r.dim);
      for (int p = 0; p < m; ++p) {
        const int s = i[p];
        c[s] = std::max(c[s], x[p] + r.pair(s, acc));
        acc += x[p] * r.roots.col(s);
      }
      for (int s = 0; s < r.rank; ++s) c[s] += 0.5 * rng.uniform();
      const Vec lambda = r.fundamental * c;
      PLPath pi = PLPath::straight(lambda);
      PLPath eta = inverse_string(r, i, pi, x);
      StringChain ch = string_chain(r, i, eta);
      d = std::max({d, (ch.x - x).lpNorm<Eigen::Infinity>(), sup_distance(ch.partial[0], pi)});
    }
    const std::string g = "I(" + std::to_string(m) + ")";
    rep.put(g + ".paths_outside_cone", static_cast<double>(outside));
    rep.put(g + ".lift_max_dev", d);
    all_in = all_in && outside == 0;
    lift = std::max(lift, d);
  }
  rep.require("coords_satisfy_ratio_inequalities", all_in);
  rep.require("lift_max_dev<=1e-9", lift <= TOL);
  return rep;
}

// ---------------------------------------------------------------------------
// 6. Crystal axioms and the tensor isomorphism

inline Report check_crystal(const Scale& sc) {
  Report rep{6, "crystal axioms and tensor isomorphism"};
  const long n = sc.n(1000);
  double c1 = 0, c2 = 0, c3 = 0;
  long c4_bad = 0, ghosts = 0;
  int gi = 0;
  for (const std::string g : {"A2", "B2", "I(5)"}) {
    Realization r = build_realization(g);
    Rng rng(sc.seed, 600 + gi++);
    for (long k = 0; k < n; ++k) {
      CrystalPoint b = random_point(r, rng, 2);
      for (int t = 0; t < r.rank; ++t) {
        if (std::isfinite(b.phi(t)) != std::isfinite(b.eps(t))) c1 = std::numeric_limits<double>::infinity();
        else if (std::isfinite(b.phi(t))) c1 = std::max(c1, std::abs(b.phi(t) - b.eps(t) - r.pair(t, b.wt())));
      }
      const int s = rng.index(r.rank);
      const double x = random_shift(rng, b.eps(s), b.phi(s));
      if (!std::isfinite(b.phi(s)) && crystal_e(r, b, s, x)) ++c4_bad;
      GhostOrPoint e = crystal_e(r, b, s, x);
      if (!e) {
        ++ghosts;
        continue;
      }
      if (std::isfinite(b.eps(s))) {
        c2 = std::max(c2, std::abs(e->eps(s) - (b.eps(s) - x)));
        c2 = std::max(c2, std::abs(e->phi(s) - (b.phi(s) + x)));
      }
      c2 = std::max(c2, (e->wt() - (b.wt() + x * r.roots.col(s))).lpNorm<Eigen::Infinity>());
      GhostOrPoint z = crystal_e(r, b, s, 0.0);
      c3 = std::max(c3, z ? point_distance(*z, b) : std::numeric_limits<double>::infinity());
      const double y = random_shift(rng, e->eps(s), e->phi(s));
      GhostOrPoint lhs = crystal_e(r, b, s, x + y), rhs = crystal_e(r, *e, s, y);
      if (bool(lhs) != bool(rhs)) c3 = std::numeric_limits<double>::infinity();
      else if (lhs) c3 = std::max(c3, point_distance(*lhs, *rhs));
    }
  }
  rep.put("C1.max_dev", c1);
  rep.put("C2.max_dev", c2);
  rep.put("C3.max_dev", c3);
  rep.put("C4.violations", static_cast<double>(c4_bad));
  rep.put("info.ghost_moves", static_cast<double>(ghosts));
  rep.require("C1..C4", c1 <= TOL && c2 <= TOL && c3 <= TOL && c4_bad == 0);

  long theta_bad = 0, theta_ghost = 0;
  gi = 0;
  for (const std::string g : {"A2", "B2", "I(5)", "H3"}) {
    Realization r = build_realization(g);
    Rng rng(sc.seed, 650 + gi++);
    for (long k = 0; k < n / 4 + 1; ++k) {
      PLPath a = random_path_upto(r.dim, 5, rng), b = random_path_upto(r.dim, 5, rng);
      const int s = rng.index(r.rank);
      PLPath ab = concat_star(a, b);
      const double x = random_shift(rng, epsilon(r, s, ab), varphi(r, s, ab));
      if (!littelmann_e(r, s, x, ab)) ++theta_ghost;
      if (!theta_check(r, a, b, s, x)) ++theta_bad;
    }
  }
  rep.put("theta.mismatches", static_cast<double>(theta_bad));
  rep.put("info.theta.ghost_cases", static_cast<double>(theta_ghost));
  rep.require("theta_isomorphism", theta_bad == 0);
  return rep;
}

// ---------------------------------------------------------------------------
// 7. Schutzenberger involutions and the commutor

inline Report check_schutzenberger(const Scale& sc) {
  Report rep{7, "Schutzenberger involution and commutor"};
  const long n = sc.n(500);
  const std::vector<std::string> groups{"A2", "B2", "I(5)", "H3"};
  std::vector<Realization> rs;
  for (const auto& g : groups) rs.push_back(build_realization(g));
  Rng rng(sc.seed, 700);
  double sq = 0, inv = 0, inter = 0, stats_dev = 0, endp = 0, tau = 0, tau_iso = 0, hex = 0;
  for (long k = 0; k < n; ++k) {
    const Realization& r = rs[static_cast<size_t>(k) % rs.size()];
    PLPath eta = random_path_upto(r.dim, 6, rng);
    sq = std::max(sq, (pitman_w0(r, schutz_S_raw(r, eta)).endpoint() - pitman_w0(r, eta).endpoint()).lpNorm<Eigen::Infinity>());
    PLPath st = schutz_tilde(r, eta);
    inv = std::max(inv, sup_distance(schutz_tilde(r, st), eta));
    endp = std::max(endp, (st.endpoint() - r.w0_matrix * eta.endpoint()).lpNorm<Eigen::Infinity>());
    const int s = rng.index(r.rank), ts = r.tilde[s];
    stats_dev = std::max({stats_dev, std::abs(epsilon(r, ts, st) - varphi(r, s, eta)),
                          std::abs(varphi(r, ts, st) - epsilon(r, s, eta))});
    const double x = random_shift(rng, epsilon(r, s, st), varphi(r, s, st));
    GhostOr lhs = littelmann_e(r, s, x, st);
    GhostOr moved = littelmann_e(r, ts, -x, eta);
    if (bool(lhs) != bool(moved)) inter = std::numeric_limits<double>::infinity();
    else if (lhs) inter = std::max(inter, sup_distance(*lhs, schutz_tilde(r, *moved)));

    PLPath e2 = random_path_upto(r.dim, 4, rng);
    PLPath both = concat_star(eta, e2);
    PLPath t1 = commutor_tau(r, eta, e2);
    tau = std::max(tau, sup_distance(tau_path(r, t1), both));
    const double y = random_shift(rng, epsilon(r, s, both), varphi(r, s, both));
    GhostOr a = littelmann_e(r, s, y, t1);
    GhostOr b = littelmann_e(r, s, y, both);
    if (bool(a) != bool(b)) tau_iso = std::numeric_limits<double>::infinity();
    else if (a) tau_iso = std::max(tau_iso, sup_distance(*a, tau_path(r, *b)));
    if (k % 5 == 0) hex = std::max(hex, hexagon_routes(r, eta, e2, random_path_upto(r.dim, 3, rng)).distance());
  }
  rep.put("endpoint_of_PSeta.max_dev", sq);
  rep.put("tildeS_involution.max_dev", inv);
  rep.put("tildeS_endpoint.max_dev", endp);
  rep.put("tildeS_eps_phi_swap.max_dev", stats_dev);
  rep.put("tildeS_intertwining.max_dev", inter);
  rep.put("tau_involution.max_dev", tau);
  rep.put("tau_crystal_map.max_dev", tau_iso);
  rep.put("hexagon.max_dev", hex);
  rep.require("all<=1e-9", std::max({sq, inv, endp, stats_dev, inter, tau, tau_iso, hex}) <= TOL);
  return rep;
}

// ---------------------------------------------------------------------------
// 8. Braid relations of the W-action

inline Report check_waction(const Scale& sc) {
  Report rep{8, "braid relations of the W-action"};
  const long n = sc.n(200);
  double worst = 0;
  for (int m = 2; m <= 7; ++m) {
    Realization r = build_I(m);
    Rng rng(sc.seed, 800 + m);
    double d = 0;
    for (long k = 0; k < n; ++k) d = std::max(d, waction_braid_defect(r, random_path_upto(r.dim, 8, rng)));
    rep.put("I(" + std::to_string(m) + ").max_dev", d);
    worst = std::max(worst, d);
  }
  rep.require("max_dev<=1e-9", worst <= TOL);
  return rep;
}

// ---------------------------------------------------------------------------
// 9. Duistermaat-Heckman volume

inline Report check_dh_volume(const Scale& sc) {
  Report rep{9, "string polytope volume"};
  DHContext a1(build_realization("A1"));
  const Vec l1 = a1.r.fundamental * Vec::Constant(1, 1.7);
  PolytopeSampler S1(a1.r, a1.r.w0, l1);
  auto [lo, hi] = S1.chord(Vec::Zero(1), Vec::Ones(1));
  const double len = hi - std::max(lo, 0.0);
  rep.put("A1.k", a1.k);
  rep.put("A1.length", len);
  rep.put("A1.h_over_k", h_poly(a1.r, l1) / a1.k);
  rep.require("A1.k==1", std::abs(a1.k - 1.0) <= 1e-12);
  rep.require("A1.length==h/k", std::abs(len - h_poly(a1.r, l1) / a1.k) <= 1e-12);

  DHContext a2(build_realization("A2"));
  const Vec l2 = a2.r.fundamental * Vec{{1.0, 2.0}};
  stats::Estimate v = rejection_volume(a2.r, a2.r.w0, l2, sc.n(1000000, 1000), sc.seed + 9);
  const double exact = h_poly(a2.r, l2) / a2.k;
  rep.put("A2.k", a2.k);
  rep.put("A2.mc_volume", v.mean);
  rep.put("A2.mc_se", v.se);
  rep.put("A2.h_over_k", exact);
  rep.put("A2.relative_error", v.mean / exact - 1);
  rep.require("A2.within_1pct", std::abs(v.mean / exact - 1) <= 0.01);
  return rep;
}

// ---------------------------------------------------------------------------
// 10. Laplace transform of the DH measure

inline Report check_laplace(const Scale& sc) {
  Report rep{10, "Laplace transform of the DH measure"};
  double worst = 0;
  int gi = 0;
  for (const std::string g : {"A1", "A2", "I(5)"}) {
    DHContext ctx(build_realization(g));
    const Vec lambda = ctx.r.fundamental * Vec::LinSpaced(ctx.r.rank, 1.0, 1.5);
    Rng zr(sc.seed, 1000 + gi);
    for (int k = 0; k < 5; ++k) {
      Vec z;
      do {
        z = Vec(ctx.r.dim);
        for (int d = 0; d < ctx.r.dim; ++d) z[d] = zr.uniform(-0.7, 0.7);
      } while (std::abs(h_poly(ctx.r, z)) < 0.05);
      SamplerConfig cfg;
      cfg.n = sc.n(1000000, 2000);
      cfg.seed = sc.seed * 31 + static_cast<std::uint64_t>(gi * 5 + k);
      LaplaceReport lr = laplace_check(ctx, ctx.r.w0, lambda, z, cfg);
      rep.put(g + ".z" + std::to_string(k + 1) + ".z_score", lr.z_score);
      worst = std::max(worst, std::abs(lr.z_score));
    }
    ++gi;
  }
  rep.put("max_abs_z", worst);
  rep.require("max_abs_z<=3", worst <= 3);
  return rep;
}

// ---------------------------------------------------------------------------
// 11. Brownian statistics

inline Report check_brownian(const Scale& sc) {
  Report rep{11, "Brownian statistics"};
  // (a) endpoint law in A1.
  DHContext a1(build_realization("A1"));
  {
    const long trials = sc.n(10000, 200);
    auto e = pitman_brownian_endpoints(a1.r, trials, 1000, 1.0, sc.seed + 11, true);
    std::vector<double> v;
    for (const Vec& p : e) v.push_back(p[0]);
    stats::KsResult ks = stats::ks_test(v, [&](double u) { return a1_endpoint_cdf(a1, 1.0, u); });
    rep.put("a.A1.ks_d", ks.d);
    rep.put("a.A1.ks_p", ks.p);
    rep.require("a.ks_p>=0.001", ks.p >= 1e-3);
  }
  // (b) exponential omega statistics with drift.
  struct Setup {
    std::string group;
    long trials;
    int steps;
    double S;
  };
  bool literal_ok = true, corrected_ok = true;
  for (const Setup& st : {Setup{"A1", sc.n(4000, 200), 2000, 4.0}, Setup{"A2", sc.n(2000, 100), 64000, 2.0}}) {
    Realization r = build_realization(st.group);
    const Vec mu = r.fundamental * Vec::Constant(r.rank, 2.0);
    auto betas = word_betas(r, r.w0);
    std::vector<std::vector<double>> ys(static_cast<size_t>(r.q));
    double agree = 0;
    for (long t = 0; t < st.trials; ++t) {
      Rng rng(sc.seed + 111, static_cast<std::uint64_t>(t));
      OmegaSample o = omega_sample(r, mu, st.S, st.steps, rng);
      agree = std::max(agree, (o.y - o.y_direct).lpNorm<Eigen::Infinity>());
      for (int k = 0; k < r.q; ++k) ys[static_cast<size_t>(k)].push_back(o.y[k]);
    }
    rep.put("info.b." + st.group + ".lusztig_vs_Q_chain", agree);
    for (int k = 0; k < r.q; ++k) {
      const auto& y = ys[static_cast<size_t>(k)];
      const double bmu = betas[static_cast<size_t>(k)].second.dot(mu);
      const double norm2 = betas[static_cast<size_t>(k)].second.squaredNorm();
      const double mle = stats::exp_rate_mle(y);
      const std::string p = "b." + st.group + ".y" + std::to_string(k + 1);
      const double lit = 2 * bmu, cor = 2 * bmu / norm2;
      stats::KsResult kl = stats::ks_test(y, [&](double u) { return u <= 0 ? 0.0 : 1 - std::exp(-lit * u); });
      stats::KsResult kc = stats::ks_test(y, [&](double u) { return u <= 0 ? 0.0 : 1 - std::exp(-cor * u); });
      rep.put(p + ".rate_over_2beta_mu", mle / lit);
      rep.put(p + ".ks_p", kl.p);
      rep.put("info." + p + ".rate_over_2beta_mu_by_norm2", mle / cor);
      rep.put("info." + p + ".ks_p_by_norm2", kc.p);
      literal_ok = literal_ok && kl.p >= 1e-3 && std::abs(mle / lit - 1) <= 0.05;
      corrected_ok = corrected_ok && kc.p >= 1e-3 && std::abs(mle / cor - 1) <= 0.05;
    }
    if (r.q >= 2) {
      double dc = 0;
      const size_t m = std::min<size_t>(ys[0].size(), 1500);
      for (int a = 0; a < r.q; ++a)
        for (int b = a + 1; b < r.q; ++b) {
          std::vector<double> u(ys[static_cast<size_t>(a)].begin(), ys[static_cast<size_t>(a)].begin() + static_cast<long>(m));
          std::vector<double> v(ys[static_cast<size_t>(b)].begin(), ys[static_cast<size_t>(b)].begin() + static_cast<long>(m));
          dc = std::max(dc, stats::distance_correlation(u, v));
        }
      rep.put("info.b." + st.group + ".max_distance_correlation", dc);
    }
  }
  rep.put("info.b.rate_check_by_norm2", corrected_ok ? "ok" : "violated");
  rep.require("b.exp_rate_2beta_mu", literal_ok);
  // (c) conditional uniformity on the A2 string polytope.
  {
    Realization r = build_realization("A2");
    const long trials = sc.n(4000, 200);
    std::vector<std::vector<double>> res(6);
    for (long t = 0; t < trials; ++t) {
      Rng rng(sc.seed + 113, static_cast<std::uint64_t>(t));
      PLPath eta = brownian_path(r.dim, 1.0, 1000, Vec(), rng);
      StringChain c = string_chain(r, r.w0, eta);
      const Vec lambda = c.partial[0].endpoint();
      A2Moments M = a2_polytope_moments(r.pair(0, lambda), r.pair(1, lambda));
      for (int k = 0; k < 3; ++k) {
        res[static_cast<size_t>(k)].push_back(c.x[k] - M.m1[k]);
        res[static_cast<size_t>(3 + k)].push_back(c.x[k] * c.x[k] - M.m2[k]);
      }
    }
    double worst = 0;
    for (int k = 0; k < 6; ++k) {
      const auto& v = res[static_cast<size_t>(k)];
      const double z = stats::mean(v) / std::sqrt(stats::variance(v) / static_cast<double>(v.size()));
      rep.put(std::string("c.A2.") + (k < 3 ? "m1.x" : "m2.x") + std::to_string(k % 3 + 1) + ".z", z);
      worst = std::max(worst, std::abs(z));
    }
    rep.require("c.moments_within_4se", worst <= 4);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// 12. Product formula and the LR measure

inline Report check_product(const Scale& sc) {
  Report rep{12, "product formula for Bessel functions"};
  DHContext a1(build_realization("A1"));
  double exact = 0;
  for (auto [l, m, z] : {std::tuple{1.3, 0.6, 0.8}, std::tuple{0.5, 2.0, -1.1}, std::tuple{2.2, 2.2, 0.3}}) {
    ProductReport p = product_formula_a1(a1, l, m, z);
    exact = std::max(exact, std::abs(p.lhs - p.rhs));
  }
  rep.put("A1.max_abs_diff", exact);
  rep.require("A1.exact<=1e-6", exact <= 1e-6);

  DHContext a2(build_realization("A2"));
  const Vec l = a2.r.fundamental * Vec{{1.0, 1.5}}, mu = a2.r.fundamental * Vec{{0.7, 1.2}}, z{{0.4, -0.3}};
  SamplerConfig cfg;
  cfg.n = sc.n(300000, 2000);
  cfg.seed = sc.seed + 12;
  ProductReport p = product_formula_mc(a2, a2.r.w0, l, mu, z, cfg);
  rep.put("A2.lhs", p.lhs);
  rep.put("A2.mc", p.rhs);
  rep.put("A2.z_score", p.z_score);
  rep.require("A2.|z|<=3", std::abs(p.z_score) <= 3);

  cfg.seed = sc.seed + 121;
  LRReport lr = lr_sample(a2.r, a2.r.w0, l, mu, cfg);
  const double zg = (lr.gamma_mass.mean - 1) / lr.gamma_mass.se;
  rep.put("gamma.mass", lr.gamma_mass.mean);
  rep.put("gamma.se", lr.gamma_mass.se);
  rep.put("gamma.z", zg);
  rep.put("info.gamma.acceptance", lr.acceptance);
  rep.put("info.gamma.mass_over_normalized_LR_law", lr.gamma_mass_normalized.mean);
  rep.require("gamma.mass_within_3se", std::abs(zg) <= 3);
  return rep;
}

// ---------------------------------------------------------------------------
// 13. Tropicalization and geometric lifting

/// Residuals of a lift against its tropical limit for eps = eps0, eps0/2, ...
struct RateTest {
  std::vector<double> eps, residual;
  bool halving_ok = true;
};

inline RateTest rate_test(const std::function<double(double)>& residual, double eps0, int halvings) {
  RateTest t;
  for (int k = 0; k <= halvings; ++k) {
    const double e = eps0 / std::pow(2.0, k);
    t.eps.push_back(e);
    t.residual.push_back(residual(e));
  }
  for (size_t k = 1; k < t.residual.size(); ++k) {
    const double ratio = t.residual[k - 1] / t.residual[k];
    t.halving_ok = t.halving_ok && ratio >= 2.0 / 1.5 && ratio <= 2.0 * 1.5;
  }
  return t;
}

/// 0 -> -1 at 0.4 -> 0.5 at 1.
inline ScalarPL standard_pitman_path() { return ScalarPL{{0.0, 0.4, 1.0}, {0.0, -1.0, 0.5}}; }
/// 0 -> 0.8 at 0.3 -> 0.3 at 0.6 -> 1.2 at 1, nonnegative.
inline ScalarPL standard_dominant_path() { return ScalarPL{{0.0, 0.3, 0.6, 1.0}, {0.0, 0.8, 0.3, 1.2}}; }

inline Report check_tropical(const Scale& sc) {
  Report rep{13, "tropicalization and geometric lifting"};
  const size_t n = 1 << 16;
  const double t_min = 0.1;
  {
    Grid a = sample_grid(standard_pitman_path(), n);
    Grid target = pitman_scalar(a);
    RateTest t = rate_test([&](double e) { return grid_residual(sl2_T_log(a, e), target, t_min); }, 0.064, 6);
    for (size_t k = 0; k < t.eps.size(); ++k) rep.put("T.residual@eps=" + fmt_g(t.eps[k]), t.residual[k]);
    rep.require("T.halving_within_1.5", t.halving_ok);
    rep.require("T.final<=5e-2", t.residual.back() <= 5e-2);
  }
  {
    // x exceeds 2 inf a on [0.1, 1], so the running-infimum branch is active.
    const double x = 1.0;
    Grid a = sample_grid(standard_dominant_path(), n);
    Grid target = h_scalar(a, x);
    RateTest t = rate_test([&](double e) { return grid_residual(sl2_H_log(a, x, e), target, t_min); }, 0.064, 6);
    for (size_t k = 0; k < t.eps.size(); ++k) rep.put("H.residual@eps=" + fmt_g(t.eps[k]), t.residual[k]);
    rep.require("H.halving_within_1.5", t.halving_ok);
    rep.require("H.final<=5e-2", t.residual.back() <= 5e-2);
  }
  const long m = sc.n(1000);
  Rng rng(sc.seed, 1300);
  double mat = 0;
  for (long k = 0; k < m; ++k) {
    const double u1 = rng.uniform(0.2, 3), u2 = rng.uniform(0.2, 3), u3 = rng.uniform(0.2, 3);
    Bruhat t = a2_bruhat_transition(u1, u2, u3);
    mat = std::max(mat, (a2_matrix_t(t.t1, t.t2, t.t3) - a2_matrix_u(u1, u2, u3)).cwiseAbs().maxCoeff());
  }
  rep.put("bruhat.matrix_max_dev", mat);
  rep.require("bruhat<=1e-12", mat <= 1e-12);

  auto ex = a2_bruhat_expressions();
  std::array<MPPtr, 3> trop{tropicalize(*ex[0]), tropicalize(*ex[1]), tropicalize(*ex[2])};
  Realization r = build_realization("A2");
  const Word i{0, 1, 0}, j{1, 0, 1};
  double formula = 0, oracle = 0;
  for (long k = 0; k < m; ++k) {
    Vec x = random_dihedral_cone_point(3, rng, 2.0);
    std::map<std::string, double> env{{"u1", x[0]}, {"u2", x[1]}, {"u3", x[2]}};
    Vec y(3);
    for (int c = 0; c < 3; ++c) y[c] = eval_minplus_dual(*trop[static_cast<size_t>(c)], env);
    formula = std::max(formula, (y - a2_transition_formula(x)).lpNorm<Eigen::Infinity>());
    oracle = std::max(oracle, (y - transition(r, i, j, aux_lambda(r, i, x), x)).lpNorm<Eigen::Infinity>());
  }
  rep.put("tropicalized_vs_formula.max_dev", formula);
  rep.put("tropicalized_vs_path_oracle.max_dev", oracle);
  for (int c = 0; c < 3; ++c) rep.put("info.trop.t" + std::to_string(c + 1), render_maxplus(*trop[static_cast<size_t>(c)]));
  rep.require("tropicalized==transition", formula <= 1e-12 && oracle <= TOL);
  return rep;
}

// ---------------------------------------------------------------------------

struct Entry {
  int id;
  std::string title;
  std::function<Report(const Scale&)> run;
  /// Wall-clock budget in seconds at full scale; 0 means none.
  double budget;
};

inline std::vector<Entry> registry() {
  return {
      {1, "braid relations", check_braid, 30},
      {2, "dihedral product formula", check_dihedral_formula, 20},
      {3, "string round trip", check_string_roundtrip, 60},
      {4, "transition closed forms", check_transitions, 0},
      {5, "cone characterization", check_cone, 0},
      {6, "crystal axioms and tensor", check_crystal, 0},
      {7, "Schutzenberger suite", check_schutzenberger, 0},
      {8, "W-action braid relations", check_waction, 0},
      {9, "DH volume", check_dh_volume, 120},
      {10, "Laplace formula", check_laplace, 300},
      {11, "Brownian statistics", check_brownian, 600},
      {12, "product formula", check_product, 0},
      {13, "tropical lifting", check_tropical, 0},
  };
}

/// Plain-text rendering of one report.
inline std::string render(const Report& r) {
  char head[128];
  std::snprintf(head, sizeof head, "[%02d] %s: %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL");
  std::string out = head;
  for (const auto& [k, v] : r.values) out += "    " + k + " = " + v + "\n";
  return out;
}

}  // namespace plc::checks
