#pragma once
// Schutzenberger involutions, the Weyl group action on Littelmann modules and the commutor.

#include <array>
#include <utility>

#include "plcrystal/stringparam.hpp"

namespace plc {

// S_alpha eta = E_alpha^{-alpha^vee(eta(T))} eta. Never a ghost.
inline PLPath w_action(const Realization& r, int s, const PLPath& eta) {
  detail::check_path(r, eta);
  const double x = -r.pair(s, eta.endpoint());
  GhostOr out = littelmann_e(r, s, x, eta);
  if (!out) throw Error(Errc::OutOfRange, "S_alpha shift left the string");
  return *out;
}

// S_{s_1} ... S_{s_k} eta; the last letter acts first.
inline PLPath w_action_word(const Realization& r, const Word& w, const PLPath& eta) {
  detail::check_word(r, w);
  PLPath out = eta;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = w_action(r, *it, out);
  return out;
}

// I pi = P_{w0} S pi.
inline PLPath schutz_I(const Realization& r, const PLPath& pi) {
  detail::check_path(r, pi);
  if (!in_chamber_path(r, pi)) throw Error(Errc::NotDominant, "I is defined on dominant paths");
  return pitman_w0(r, schutz_S_raw(r, pi));
}

// S~ eta = E_{a~_{s_q}}^{x_q} ... E_{a~_{s_1}}^{x_1} S_{w0} pi, with x = rho_{w0}(eta).
inline PLPath schutz_tilde(const Realization& r, const PLPath& eta) {
  StringChain c = string_chain(r, r.w0, eta);
  PLPath out = w_action_word(r, r.w0, c.partial[0]);
  for (int k = 1; k <= r.q; ++k) {
    const double x = c.x[k - 1];
    if (x == 0.0) continue;
    GhostOr n = littelmann_e(r, r.tilde[r.w0[k - 1]], x, out);
    if (!n) throw Error(Errc::OutOfRange, "lowest weight chain left the module");
    out = *n;
  }
  return out;
}

// tau(eta1 * eta2) = S~(S~ eta2 * S~ eta1).
inline PLPath commutor_tau(const Realization& r, const PLPath& eta1, const PLPath& eta2) {
  return schutz_tilde(r, concat_star(schutz_tilde(r, eta2), schutz_tilde(r, eta1)));
}

// tau applied to a concatenation, split at the midpoint.
inline PLPath tau_path(const Realization& r, const PLPath& eta) {
  auto [a, b] = split_star(eta);
  return commutor_tau(r, a, b);
}

// Both routes of the coboundary hexagon for a triple, each split into the (c, b, a) factors.
struct HexagonRoutes {
  std::array<PLPath, 3> left, right;
  double distance() const {
    double d = 0;
    for (int k = 0; k < 3; ++k) d = std::max(d, sup_distance(left[k], right[k]));
    return d;
  }
};

inline HexagonRoutes hexagon_routes(const Realization& r, const PLPath& a, const PLPath& b, const PLPath& c) {
  // tau_{A(x)B, C} o (tau_{A,B} (x) 1)
  PLPath ba = commutor_tau(r, a, b);
  PLPath lhs = commutor_tau(r, ba, c);
  auto [lc, lrest] = split_star(lhs);
  auto [lb, la] = split_star(lrest);
  // tau_{A, C(x)B} o (1 (x) tau_{B,C})
  PLPath cb = commutor_tau(r, b, c);
  PLPath rhs = commutor_tau(r, a, cb);
  auto [rrest, ra] = split_star(rhs);
  auto [rc, rb] = split_star(rrest);
  return {{lc, lb, la}, {rc, rb, ra}};
}

}  // namespace plc
