#pragma once
/**
 * @file transforms.hpp
 * @brief Pitman transforms, Littelmann operators and the dihedral product formula.
 *
 * A ghost result is an empty optional.
 */

#include <cmath>
#include <numbers>
#include <optional>

#include "plcrystal/coxeter.hpp"
#include "plcrystal/plpath.hpp"

namespace plc {

using GhostOr = std::optional<PLPath>;

/// Boundary slack for the closed interval [-phi, eps] of Littelmann shifts.
inline constexpr double EPS_SHIFT = 1e-12;
/// Dominance slack for H operators.
inline constexpr double EPS_DOMINANT = 1e-9;

namespace detail {
inline void check_path(const Realization& r, const PLPath& p) {
  if (p.dim() != r.dim) throw Error(Errc::DimMismatch, "path dimension differs from realization");
}
}  // namespace detail

/// Dominance of a PL path: every breakpoint lies in the closed chamber.
inline bool in_chamber_path(const Realization& r, const PLPath& p, double tol = EPS_PATH) {
  detail::check_path(r, p);
  for (size_t i = 0; i < p.size(); ++i)
    for (int s = 0; s < r.rank; ++s)
      if (r.coroots.col(s).dot(p.point(i)) < -tol) return false;
  return true;
}

/// P_a p = p - (inf_{s<=t} f(p(s))) a for an arbitrary pair (a, f) with f(a) = 2.
inline PLPath pitman_pair(const Vec& a, const Vec& f, const PLPath& p) {
  return subtract_along(p, prefix_min(p.functional(f)), a);
}

inline PLPath pitman(const Realization& r, int s, const PLPath& p) {
  detail::check_path(r, p);
  return pitman_pair(r.roots.col(s), r.coroots.col(s), p);
}

/// P_{s_1} o ... o P_{s_k}; the word must be reduced.
inline PLPath pitman_word(const Realization& r, const Word& w, const PLPath& p) {
  detail::check_path(r, p);
  if (!is_reduced(r, w)) throw Error(Errc::NotReduced, "pitman_word needs a reduced word");
  PLPath out = p;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = pitman(r, *it, out);
  return out;
}

inline PLPath pitman_w0(const Realization& r, const PLPath& p) { return pitman_word(r, r.w0, p); }

/// eps_a(p) = -min alpha^vee(p).
inline double epsilon(const Realization& r, int s, const PLPath& p) {
  detail::check_path(r, p);
  return -p.functional(r.coroots.col(s)).min();
}

/// phi_a(p) = alpha^vee(p(T)) + eps_a(p).
inline double varphi(const Realization& r, int s, const PLPath& p) {
  detail::check_path(r, p);
  ScalarPL g = p.functional(r.coroots.col(s));
  return g.v.back() - g.min();
}

/// E_a^x; empty when x lies outside [-phi, eps].
inline GhostOr littelmann_e(const Realization& r, int s, double x, const PLPath& p) {
  detail::check_path(r, p);
  ScalarPL g = p.functional(r.coroots.col(s));
  const double mT = g.min();
  const double eps = -mT, phi = g.v.back() - mT;
  if (x > eps + EPS_SHIFT || x < -phi - EPS_SHIFT) return std::nullopt;
  x = std::clamp(x, -phi, eps);
  if (x == 0.0) return p;
  ScalarPL c;
  if (x < 0) {
    // min(-x, inf_{t<=s<=T} g - mT)
    ScalarPL S = suffix_min(g);
    for (double& v : S.v) v -= mT;
    c = min_const(S, -x);
  } else {
    // min(0, -x - mT + inf_{s<=t} g)
    ScalarPL M = prefix_min(g);
    for (double& v : M.v) v += -x - mT;
    c = min_const(M, 0.0);
  }
  return subtract_along(p, c, r.roots.col(s));
}

inline GhostOr littelmann_f(const Realization& r, int s, double x, const PLPath& p) {
  return littelmann_e(r, s, -x, p);
}

/// H_a^x pi = pi - min(x, inf_{t<=s<=T} alpha^vee(pi)) alpha.
inline PLPath littelmann_h(const Realization& r, int s, double x, const PLPath& pi) {
  detail::check_path(r, pi);
  ScalarPL g = pi.functional(r.coroots.col(s));
  if (g.min() < -EPS_DOMINANT) throw Error(Errc::NotDominant, "H operator needs an alpha-dominant path");
  const double top = g.v.back();
  if (x < -EPS_DOMINANT || x > top + EPS_DOMINANT) throw Error(Errc::OutOfRange, "H shift outside [0, alpha^vee(pi(T))]");
  x = std::clamp(x, 0.0, std::max(0.0, top));
  if (x == 0.0) return pi;
  return subtract_along(pi, min_const(suffix_min(g), x), r.roots.col(s));
}

/// T_k(rho) with T_0 = 1, T_1 = 2 rho, T_{k+1} = 2 rho T_k - T_{k-1}.
inline double chebyshev(int k, double rho) {
  double a = 1.0, b = 2 * rho;
  if (k == 0) return a;
  for (int i = 1; i < k; ++i) {
    double c = 2 * rho * b - a;
    a = b;
    b = c;
  }
  return b;
}

/// The n-fold alternating product P_a P_b P_a ... pi, evaluated through iterated
/// minima over decreasing time chains with Chebyshev weights.
inline PLPath dihedral_product_formula(const Realization& r, int a, int b, int n, const PLPath& pi) {
  detail::check_path(r, pi);
  if (n < 1) throw Error(Errc::OutOfRange, "n must be positive");
  const double ab = r.cartan(a, b), ba = r.cartan(b, a);  // alpha^vee(beta), beta^vee(alpha)
  // Equalize pairings: alpha -> t alpha, alpha^vee -> alpha^vee / t, beta -> beta / t, beta^vee -> t beta^vee.
  double t = 1.0;
  if (ab != 0.0 && ba != 0.0) t = std::pow(ab / ba, 0.25);
  Vec al = t * r.roots.col(a), alv = r.coroots.col(a) / t;
  Vec be = r.roots.col(b) / t, bev = t * r.coroots.col(b);
  const double rho = -0.5 * alv.dot(be);
  if (rho < std::cos(std::numbers::pi / n) - 1e-12)
    throw Error(Errc::BadCosineBound, "rho = " + std::to_string(rho) + " below cos(pi/n)");
  ScalarPL za = pi.functional(alv), zb = pi.functional(bev);
  auto chain = [&](int terms, bool start_alpha) {
    // inf over t >= s_0 >= ... >= s_{terms-1} >= 0 of sum T_i Z^(i)(s_i)
    ScalarPL env;
    for (int i = terms - 1; i >= 0; --i) {
      bool use_alpha = (i % 2 == 0) == start_alpha;
      const ScalarPL& z = use_alpha ? za : zb;
      ScalarPL g = i == terms - 1 ? combine(chebyshev(i, rho), z, 0.0, z) : combine(chebyshev(i, rho), z, 1.0, env);
      env = prefix_min(g);
    }
    return env;
  };
  ScalarPL A = chain(n, true);
  PLPath out = subtract_along(pi, A, al);
  if (n >= 2) {
    ScalarPL B = chain(n - 1, false);
    out = subtract_along(out, B, be);
  }
  return out;
}

}  // namespace plc
