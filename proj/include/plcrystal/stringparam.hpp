#pragma once
/**
 * @file stringparam.hpp
 * @brief String coordinates, their inverse, transition maps, cones and polytopes.
 *
 * For a reduced word i = (s_1..s_q) of w0 the partial chain is
 * eta_q = eta, eta_{k-1} = P_{s_k} eta_k, and x_k = -inf alpha_{s_k}^vee(eta_k).
 * Words are 0-based generator indices.
 */

#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "plcrystal/transforms.hpp"

namespace plc {

/// Boundary tolerance for polytope and cone membership.
inline constexpr double EPS_POLY = 1e-9;

struct StringChain {
  Vec x;
  /// partial[k] = eta_k for k = 0..q; partial[0] = P_{w0} eta.
  std::vector<PLPath> partial;
};

namespace detail {

inline void check_longest(const Realization& r, const Word& i) {
  check_word(r, i);
  if (static_cast<int>(i.size()) != r.q || !is_reduced(r, i))
    throw Error(Errc::NotReduced, "word is not a reduced decomposition of w0");
}

}  // namespace detail

inline StringChain string_chain(const Realization& r, const Word& i, const PLPath& eta) {
  detail::check_longest(r, i);
  detail::check_path(r, eta);
  const int q = r.q;
  StringChain c;
  c.x = Vec::Zero(q);
  c.partial.resize(q + 1);
  c.partial[q] = eta;
  for (int k = q; k >= 1; --k) {
    const int s = i[k - 1];
    c.x[k - 1] = std::max(0.0, -c.partial[k].functional(r.coroots.col(s)).min());
    c.partial[k - 1] = pitman(r, s, c.partial[k]);
  }
  return c;
}

inline Vec string_coords(const Realization& r, const Word& i, const PLPath& eta) { return string_chain(r, i, eta).x; }

/// H_{s_q}^{x_q} ... H_{s_1}^{x_1} pi, or empty when x is not in C_i^pi.
inline std::optional<PLPath> try_inverse_string(const Realization& r, const Word& i, const PLPath& pi, const Vec& x,
                                                double tol = EPS_POLY) {
  detail::check_longest(r, i);
  detail::check_path(r, pi);
  if (x.size() != r.q) throw Error(Errc::DimMismatch, "string coordinate vector has wrong length");
  PLPath eta = pi;
  for (int k = 1; k <= r.q; ++k) {
    const int s = i[k - 1];
    ScalarPL g = eta.functional(r.coroots.col(s));
    if (g.min() < -tol) return std::nullopt;
    double xk = x[k - 1];
    if (xk < -tol || xk > g.v.back() + tol) return std::nullopt;
    xk = std::clamp(xk, 0.0, std::max(0.0, g.v.back()));
    if (xk > 0) eta = subtract_along(eta, min_const(suffix_min(g), xk), r.roots.col(s));
  }
  return eta;
}

inline PLPath inverse_string(const Realization& r, const Word& i, const PLPath& pi, const Vec& x) {
  if (!in_chamber_path(r, pi)) throw Error(Errc::NotDominant, "inverse_string needs a dominant path");
  auto eta = try_inverse_string(r, i, pi, x);
  if (!eta) throw Error(Errc::NotInPolytope, "coordinates are outside C_i^pi");
  return *eta;
}

/// lambda* = M * (sum of fundamental weights), large enough that the K ladder is slack.
inline Vec aux_lambda(const Realization& r, const Word& i, const Vec& x) {
  double amax = 0;
  for (int s = 0; s < r.rank; ++s) amax = std::max(amax, r.coroots.col(s).norm());
  double acc = 0;
  for (int k = 0; k < x.size(); ++k) acc += std::abs(x[k]) * amax * r.roots.col(i[k]).norm();
  const double M = 10.0 * (1.0 + acc);
  return M * r.fundamental.rowwise().sum();
}

/// rho_j(rho_i^{-1}(x)) through the straight dominant path to lambda (or a given one).
inline std::optional<Vec> try_transition(const Realization& r, const Word& i, const Word& j, const Vec& lambda,
                                         const Vec& x, const PLPath* pi = nullptr) {
  detail::check_longest(r, j);
  PLPath straight = PLPath::straight(lambda);
  auto eta = try_inverse_string(r, i, pi ? *pi : straight, x);
  if (!eta) return std::nullopt;
  return string_coords(r, j, *eta);
}

inline Vec transition(const Realization& r, const Word& i, const Word& j, const Vec& lambda, const Vec& x,
                      const PLPath* pi = nullptr) {
  if (!in_chamber(r, lambda, EPS_POLY)) throw Error(Errc::NotDominant, "lambda must lie in the chamber");
  auto y = try_transition(r, i, j, lambda, x, pi);
  if (!y) throw Error(Errc::NotInPolytope, "coordinates are outside C_i^pi");
  return *y;
}

/// First coordinate in the decomposition j(alpha) starting with s; empty outside the cone.
inline std::optional<double> psi(const Realization& r, const Word& i, int s, const Vec& x) {
  auto y = try_transition(r, i, r.first_words[s], aux_lambda(r, i, x), x);
  if (!y) return std::nullopt;
  return (*y)[0];
}

/// Last coordinate in the decomposition j'(alpha) ending with s; this equals eps_alpha of the path.
inline double psi_prime(const Realization& r, const Word& i, int s, const Vec& lambda, const Vec& x) {
  Vec y = transition(r, i, r.last_words[s], lambda, x);
  return y[r.q - 1];
}

/// Membership in C_i, evaluated by path round trip with the auxiliary lambda*.
inline bool cone_membership(const Realization& r, const Word& i, const Vec& x, double tol = EPS_POLY) {
  detail::check_longest(r, i);
  if (x.size() != r.q) throw Error(Errc::DimMismatch, "string coordinate vector has wrong length");
  for (int k = 0; k < x.size(); ++k)
    if (x[k] < -tol) return false;
  for (int s = 0; s < r.rank; ++s) {
    auto p = psi(r, i, s, x);
    if (!p || *p < -tol) return false;
  }
  return true;
}

/// 0 <= x_k <= alpha_{s_k}^vee(lambda - sum_{n<k} x_n alpha_{s_n}).
inline bool ladder_membership(const Realization& r, const Word& i, const Vec& lambda, const Vec& x,
                              double tol = EPS_POLY) {
  Vec w = lambda;
  for (int k = 0; k < x.size(); ++k) {
    double bound = r.pair(i[k], w);
    if (x[k] < -tol || x[k] > bound + tol) return false;
    w -= x[k] * r.roots.col(i[k]);
  }
  return true;
}

/// a_n = sin(n pi / m) / sin(pi / m).
inline double dihedral_a(int m, int n) { return std::sin(n * std::numbers::pi / m) / std::sin(std::numbers::pi / m); }

inline bool dihedral_cone_membership(int m, const Vec& x, double tol = EPS_POLY) {
  if (x.size() != m) throw Error(Errc::DimMismatch, "dihedral coordinates need length m");
  for (int k = 0; k < m; ++k)
    if (x[k] < -tol) return false;
  for (int k = 1; k <= m - 2; ++k)
    if (x[k] / dihedral_a(m, k + 1) < x[k - 1] / dihedral_a(m, k) - tol) return false;
  return true;
}

/// Halfspaces A x <= b; explicit_cone is false when only the ladder part is available.
struct Polytope {
  Mat A;
  Vec b;
  bool explicit_cone = false;

  bool contains(const Vec& x, double tol = EPS_POLY) const {
    return ((A * x - b).array() <= tol).all();
  }
};

/// Position of Gelfand-Tsetlin coordinate x_{i,j} (1-based) in the standard A_n word.
inline int gt_position(int i, int j) {
  const int b = i + j - 1;
  return (b - 1) * b / 2 + (b - j);
}

namespace detail {

inline bool is_alternating(const Word& i) {
  for (size_t k = 1; k < i.size(); ++k)
    if (i[k] == i[k - 1]) return false;
  return true;
}

inline Word standard_A_word(int n) {
  Word w;
  for (int b = 1; b <= n; ++b)
    for (int l = b; l >= 1; --l) w.push_back(l - 1);
  return w;
}

}  // namespace detail

inline Polytope polytope(const Realization& r, const Word& i, const Vec& lambda) {
  detail::check_longest(r, i);
  detail::check_dim(r, lambda);
  const int q = r.q;
  std::vector<std::pair<Vec, double>> rows;
  for (int k = 0; k < q; ++k) {
    Vec lo = Vec::Zero(q);
    lo[k] = -1;
    rows.emplace_back(lo, 0.0);
    Vec up = Vec::Zero(q);
    up[k] = 1;
    for (int n = 0; n < k; ++n) up[n] = r.cartan(i[k], i[n]);
    rows.emplace_back(up, r.pair(i[k], lambda));
  }
  bool cone = false;
  const bool dihedral = r.rank == 2 && r.coxeter(0, 1) == q && detail::is_alternating(i);
  if (dihedral) {
    const int m = q;
    for (int k = 1; k <= m - 2; ++k) {
      Vec a = Vec::Zero(q);
      a[k - 1] = 1.0 / dihedral_a(m, k);
      a[k] = -1.0 / dihedral_a(m, k + 1);
      rows.emplace_back(a, 0.0);
    }
    cone = true;
  } else if (r.family == 'A' && i == detail::standard_A_word(r.rank)) {
    const int n = r.rank;
    for (int a = 1; a <= n; ++a)
      for (int j = 1; j + 1 <= n + 1 - a; ++j) {
        Vec h = Vec::Zero(q);
        h[gt_position(a, j)] = 1;
        h[gt_position(a, j + 1)] = -1;
        rows.emplace_back(h, 0.0);
      }
    cone = true;
  }
  Polytope P;
  P.A.resize(static_cast<Eigen::Index>(rows.size()), q);
  P.b.resize(static_cast<Eigen::Index>(rows.size()));
  for (size_t k = 0; k < rows.size(); ++k) {
    P.A.row(static_cast<Eigen::Index>(k)) = rows[k].first.transpose();
    P.b[static_cast<Eigen::Index>(k)] = rows[k].second;
  }
  P.explicit_cone = cone;
  return P;
}

/// x in C_i cap K_pi; explicit halfspaces when available, path oracle otherwise.
inline bool polytope_membership(const Realization& r, const Word& i, const Vec& lambda, const Vec& x,
                                double tol = EPS_POLY) {
  Polytope P = polytope(r, i, lambda);
  if (P.explicit_cone) return P.contains(x, tol);
  if (!ladder_membership(r, i, lambda, x, tol)) return false;
  return try_inverse_string(r, i, PLPath::straight(lambda), x, tol).has_value();
}

/// Closed-form dihedral transition from i = (1,2,1,..) to j = (2,1,2,..), m <= 6.
inline Vec transition_closed_dihedral(int m, const Vec& x) {
  if (m < 2 || m > 6) throw Error(Errc::OutOfRange, "closed form exists for 2 <= m <= 6");
  if (x.size() != m) throw Error(Errc::DimMismatch, "dihedral coordinates need length m");
  if (m == 2) return Vec{{x[1], x[0]}};
  std::vector<double> c(m + 2);
  // c[k+1] stores c_k so that c_{-1} = 0 is addressable.
  c[0] = 0.0;
  c[1] = 1.0;
  const double c1 = 2 * std::cos(std::numbers::pi / m);
  for (int k = 1; k <= m; ++k) c[k + 1] = c1 * c[k] - c[k - 1];
  auto C = [&](int k) { return c[k + 1]; };
  auto X = [&](int k) { return x[k - 1]; };
  double u = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= m - 3; ++k) u = std::max(u, C(k) * X(k + 1) - C(k - 1) * X(k + 2));
  double v = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= m - 2; ++k) v = std::min(v, C(k) * X(k + 2) - C(k + 1) * X(k + 1));
  Vec y = Vec::Zero(m);
  auto Y = [&](int k) -> double& { return y[k - 1]; };
  Y(m) = std::max(X(m - 1) - C(1) * X(m), u);
  Y(m - 1) = X(m) + std::max(X(m - 2) - C(2) * X(m), C(1) * u);
  Y(1) = std::min(X(2) - C(1) * X(1), v);
  Y(2) = X(1) + std::min(X(3) - C(2) * X(1), C(1) * v);
  if (m == 5) {
    // y1 + y3 + y5 = x2 + x4
    Y(3) = X(2) + X(4) - Y(1) - Y(5);
  } else if (m == 6) {
    Y(3) = X(2) + X(4) + X(6) - Y(1) - Y(5);
    Y(4) = X(1) + X(3) + X(5) - Y(2) - Y(6);
  }
  return y;
}

/// The conjectured m = 7 closed form; reported against the oracle, never asserted.
inline Vec conjecture_m7(const Vec& x) {
  const int m = 7;
  if (x.size() != m) throw Error(Errc::DimMismatch, "I(7) coordinates need length 7");
  std::vector<double> c(m + 2);
  c[0] = 0.0;
  c[1] = 1.0;
  const double c1 = 2 * std::cos(std::numbers::pi / m);
  for (int k = 1; k <= m; ++k) c[k + 1] = c1 * c[k] - c[k - 1];
  auto C = [&](int k) { return c[k + 1]; };
  auto X = [&](int k) { return x[k - 1]; };
  double u = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= m - 3; ++k) u = std::max(u, C(k) * X(k + 1) - C(k - 1) * X(k + 2));
  double v = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= m - 2; ++k) v = std::min(v, C(k) * X(k + 2) - C(k + 1) * X(k + 1));
  Vec y = Vec::Zero(m);
  auto Y = [&](int k) -> double& { return y[k - 1]; };
  Y(7) = std::max(X(6) - C(1) * X(7), u);
  Y(6) = X(7) + std::max(X(5) - C(2) * X(7), C(1) * u);
  Y(1) = std::min(X(2) - C(1) * X(1), v);
  Y(2) = X(1) + std::min(X(3) - C(2) * X(1), C(1) * v);
  double w = std::min({C(2) * u, X(4) - C(2) * v,
                       std::max(X(6) - C(1) * X(5) + X(4) + C(2) * u, C(1) * X(3) - X(2) - C(2) * v)});
  double y75 = X(6) + std::max({C(2) * X(1), X(4) - C(3) * X(7), w});
  Y(5) = y75 - Y(7);
  Y(3) = X(2) + X(4) + X(6) - Y(1) - Y(5) - Y(7);
  Y(4) = X(1) + X(3) + X(5) + X(7) - Y(2) - Y(6);
  return y;
}

/// y_k = alpha_{s_k}^vee(lambda - sum_{n<k} x_n alpha_{s_n}) - x_k.
inline Vec lusztig_coords(const Realization& r, const Word& i, const Vec& x, const Vec& lambda) {
  detail::check_longest(r, i);
  if (!ladder_membership(r, i, lambda, x)) throw Error(Errc::NotInPolytope, "coordinates violate the K ladder");
  Vec y(x.size());
  Vec w = lambda;
  for (int k = 0; k < x.size(); ++k) {
    y[k] = r.pair(i[k], w) - x[k];
    w -= x[k] * r.roots.col(i[k]);
  }
  return y;
}

/// beta_k = s_1 ... s_{k-1} alpha_{s_k} with its coroot.
inline std::vector<std::pair<Vec, Vec>> word_betas(const Realization& r, const Word& i) {
  std::vector<std::pair<Vec, Vec>> out;
  Mat m = Mat::Identity(r.dim, r.dim);
  for (size_t k = 0; k < i.size(); ++k) {
    const int s = i[k];
    Vec b = m * r.roots.col(s);
    // Coroot transported by the same element: beta^vee(x) = alpha^vee(m^{-1} x).
    Vec bv = m.inverse().transpose() * r.coroots.col(s);
    out.emplace_back(b, bv);
    m = m * (Mat::Identity(r.dim, r.dim) - r.roots.col(s) * r.coroots.col(s).transpose());
  }
  return out;
}

/// x_k = beta_k^vee(lambda - sum_{n<k} y_n beta_n) - y_k.
inline Vec lusztig_inverse(const Realization& r, const Word& i, const Vec& y, const Vec& lambda) {
  detail::check_longest(r, i);
  auto betas = word_betas(r, i);
  Vec x(y.size());
  Vec w = lambda;
  for (int k = 0; k < y.size(); ++k) {
    x[k] = betas[k].second.dot(w) - y[k];
    w -= y[k] * betas[k].first;
  }
  return x;
}

/// Crystal move e_alpha^t transported to string coordinates through rho_i.
/// The operator shifts the coordinate of the last letter of a word ending in s.
inline std::optional<Vec> crystal_on_coords(const Realization& r, const Word& i, const Vec& lambda, const Vec& x,
                                            int s, double t) {
  detail::check_longest(r, i);
  PLPath pi = PLPath::straight(lambda);
  if (!ladder_membership(r, i, lambda, x) || !try_inverse_string(r, i, pi, x))
    throw Error(Errc::NotInPolytope, "coordinates are outside C_i^lambda");
  const Word& j = i.back() == s ? i : r.last_words[s];
  Vec y = i.back() == s ? x : transition(r, i, j, lambda, x);
  y[r.q - 1] -= t;
  if (y[r.q - 1] < -EPS_POLY) return std::nullopt;
  y[r.q - 1] = std::max(0.0, y[r.q - 1]);
  auto eta = try_inverse_string(r, j, pi, y);
  if (!eta) return std::nullopt;
  return &j == &i ? y : string_coords(r, i, *eta);
}

/// A chain of Littelmann moves (applied in order) taking eta1 to eta2, or empty
/// when the two paths lie in different components.
inline std::optional<std::vector<std::pair<int, double>>> connecting_chain(const Realization& r, const PLPath& eta1,
                                                                          const PLPath& eta2) {
  StringChain c1 = string_chain(r, r.w0, eta1);
  StringChain c2 = string_chain(r, r.w0, eta2);
  if (sup_distance(c1.partial[0], c2.partial[0]) > EPS_PATH) return std::nullopt;
  std::vector<std::pair<int, double>> moves;
  for (int k = r.q; k >= 1; --k)
    if (c1.x[k - 1] != 0) moves.emplace_back(r.w0[k - 1], c1.x[k - 1]);
  for (int k = 1; k <= r.q; ++k)
    if (c2.x[k - 1] != 0) moves.emplace_back(r.w0[k - 1], -c2.x[k - 1]);
  return moves;
}

}  // namespace plc
