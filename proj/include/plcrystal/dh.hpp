#pragma once
/**
 * @file dh.hpp
 * @brief Duistermaat-Heckman measures, Bessel functions and Brownian statistics.
 *
 * The string polytope M_i^lambda is sampled by hit-and-run. Weights are
 * v = lambda - sum_k x_k alpha_{i_k}. Brownian motions are standard in the
 * ambient Euclidean coordinates where every root has squared norm 2.
 */

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>

#include "plcrystal/rng.hpp"
#include "plcrystal/stats.hpp"
#include "plcrystal/stringparam.hpp"

namespace plc {

/// h(x) = product of alpha^vee(x) over positive coroots.
inline double h_poly(const Realization& r, const Vec& x) {
  double p = 1.0;
  for (const Vec& c : r.positive_coroots) p *= c.dot(x);
  return p;
}

/// Probabilists' Gauss-Hermite rule with n nodes (weights sum to 1).
inline std::pair<Vec, Vec> gauss_hermite(int n) {
  Mat J = Mat::Zero(n, n);
  for (int k = 1; k < n; ++k) J(k - 1, k) = J(k, k - 1) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  Vec w = es.eigenvectors().row(0).transpose().array().square();
  return {es.eigenvalues(), w};
}

/// k = E[h(X)^2] / |W| for X standard Gaussian, exact by tensor Gauss-Hermite.
inline double compute_k(const Realization& r, size_t order) {
  if (r.rank > 4) throw Error(Errc::RankUnsupported, "compute_k supports rank <= 4");
  const int n = r.q + 1;
  auto [nodes, weights] = gauss_hermite(n);
  const int d = r.dim;
  std::vector<int> idx(d, 0);
  Vec x(d);
  double acc = 0;
  for (;;) {
    double w = 1;
    for (int j = 0; j < d; ++j) {
      x[j] = nodes[idx[j]];
      w *= weights[idx[j]];
    }
    const double h = h_poly(r, x);
    acc += w * h * h;
    int j = 0;
    while (j < d && ++idx[j] == n) idx[j++] = 0;
    if (j == d) break;
  }
  return acc / static_cast<double>(order);
}

/// Group data shared by the DH routines.
struct DHContext {
  Realization r;
  std::vector<GroupElement> W;
  double k = 0;

  explicit DHContext(Realization rr) : r(std::move(rr)), W(enumerate_group(r)), k(compute_k(r, W.size())) {}
};

/// sum_w sign(w) e^{<z, w lambda>}.
inline double alternating_sum(const DHContext& ctx, const Vec& lambda, const Vec& z) {
  double s = 0;
  for (const auto& g : ctx.W) s += g.sign * std::exp(z.dot(g.matrix * lambda));
  return s;
}

/// Laplace transform of m_DH^lambda: sum_w sign(w) e^{<z,w lambda>} / h(z).
inline double laplace_closed_form(const DHContext& ctx, const Vec& lambda, const Vec& z) {
  const double hz = h_poly(ctx.r, z);
  if (std::abs(hz) <= 1e-8) throw Error(Errc::SingularZ, "h(z) vanishes");
  return alternating_sum(ctx, lambda, z) / hz;
}

/// J_lambda(z) = k sum_w sign(w) e^{<z,w lambda>} / (h(z) h(lambda)).
inline double bessel_J(const DHContext& ctx, const Vec& lambda, const Vec& z) {
  const double d = h_poly(ctx.r, z) * h_poly(ctx.r, lambda);
  if (std::abs(d) <= 1e-10) throw Error(Errc::SingularArgument, "h(z) h(lambda) vanishes");
  return ctx.k * alternating_sum(ctx, lambda, z) / d;
}

/// The reflection of v into the closed chamber and the sign of the element used.
inline std::pair<Vec, int> fold_to_chamber(const Realization& r, Vec v) {
  int sign = 1;
  for (int guard = 0; guard < 10000; ++guard) {
    int s = -1;
    for (int t = 0; t < r.rank; ++t)
      if (r.pair(t, v) < -1e-14) {
        s = t;
        break;
      }
    if (s < 0) return {v, sign};
    v = reflect(r, s, v);
    sign = -sign;
  }
  throw Error(Errc::InfiniteGroup, "folding did not terminate");
}

/// Matrix whose column k is alpha_{i_k}.
inline Mat word_roots(const Realization& r, const Word& i) {
  Mat R(r.dim, static_cast<Eigen::Index>(i.size()));
  for (size_t k = 0; k < i.size(); ++k) R.col(static_cast<Eigen::Index>(k)) = r.roots.col(i[k]);
  return R;
}

/// Coordinatewise bounds U_r of M_i^lambda from the K ladder.
inline Vec ladder_box(const Realization& r, const Word& i, const Vec& lambda) {
  Vec U(static_cast<Eigen::Index>(i.size()));
  for (size_t k = 0; k < i.size(); ++k) {
    double u = r.pair(i[k], lambda);
    for (size_t n = 0; n < k; ++n) u += U[static_cast<Eigen::Index>(n)] * std::max(0.0, -r.cartan(i[k], i[n]));
    U[static_cast<Eigen::Index>(k)] = std::max(0.0, u);
  }
  return U;
}

struct SamplerConfig {
  long n = 1000;
  std::uint64_t seed = 0;
  /// Negative means 10 q.
  int burn_in = -1;
  int thin = 5;
};

/// Hit-and-run on M_i^lambda. Explicit halfspaces give exact chords, otherwise
/// chord ends are found by bisection on the path membership oracle.
class PolytopeSampler {
 public:
  PolytopeSampler(const Realization& r, const Word& i, const Vec& lambda)
      : r_(r), i_(i), lambda_(lambda), P_(polytope(r, i, lambda)), R_(word_roots(r, i)) {
    if (h_poly(r, lambda) <= 0 || !in_chamber(r, lambda, 0.0))
      throw Error(Errc::NotDominant, "sampling needs lambda in the open chamber");
  }

  int q() const { return static_cast<int>(i_.size()); }
  const Polytope& halfspaces() const { return P_; }
  const Mat& roots() const { return R_; }
  Vec weight(const Vec& x) const { return lambda_ - R_ * x; }

  bool contains(const Vec& x, double tol = EPS_POLY) const {
    if (!P_.contains(x, tol)) return false;
    if (P_.explicit_cone) return true;
    return try_inverse_string(r_, i_, PLPath::straight(lambda_), x, tol).has_value();
  }

  /// rho_i of a path obtained from the straight one by random lowering moves.
  Vec interior_start(Rng& rng) const {
    PLPath eta = PLPath::straight(lambda_);
    for (int round = 0; round < 3; ++round)
      for (int k = static_cast<int>(i_.size()) - 1; k >= 0; --k) {
        const int s = i_[k];
        const double phi = varphi(r_, s, eta);
        if (phi <= 0) continue;
        GhostOr n = littelmann_f(r_, s, rng.uniform(0.2, 0.6) * phi, eta);
        if (n) eta = *n;
      }
    Vec x = string_coords(r_, i_, eta);
    if (!contains(x)) throw Error(Errc::EmptyPolytope, "no feasible starting point");
    return x;
  }

  /// Feasible interval [lo, hi] of x + t d.
  std::pair<double, double> chord(const Vec& x, const Vec& d) const {
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    Vec ad = P_.A * d, slack = P_.b - P_.A * x;
    for (Eigen::Index k = 0; k < ad.size(); ++k) {
      const double s = std::max(0.0, slack[k]);
      if (ad[k] > 1e-15) hi = std::min(hi, s / ad[k]);
      else if (ad[k] < -1e-15) lo = std::max(lo, s / ad[k]);
    }
    if (P_.explicit_cone) return {lo, hi};
    auto inside = [&](double t) { return contains(x + t * d, 0.0); };
    auto bisect = [&](double good, double bad) {
      if (inside(bad)) return bad;
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (good + bad);
        (inside(mid) ? good : bad) = mid;
      }
      return good;
    };
    return {bisect(0.0, lo), bisect(0.0, hi)};
  }

  /// Calls f(x) for each retained sample.
  template <class F>
  void run(const SamplerConfig& cfg, F&& f) const {
    Rng rng(cfg.seed, 0);
    Vec x = interior_start(rng);
    const int burn = cfg.burn_in < 0 ? 10 * q() : cfg.burn_in;
    const int thin = std::max(1, cfg.thin);
    auto step = [&] {
      Vec d = rng.unit_vec(q());
      auto [lo, hi] = chord(x, d);
      if (hi > lo) x += rng.uniform(lo, hi) * d;
    };
    for (int k = 0; k < burn; ++k) step();
    for (long n = 0; n < cfg.n; ++n) {
      for (int k = 0; k < thin; ++k) step();
      f(static_cast<const Vec&>(x));
    }
  }

 private:
  const Realization& r_;
  Word i_;
  Vec lambda_;
  Polytope P_;
  Mat R_;
};

/// Samples on M_i^lambda, one column per sample.
inline Mat sample_polytope(const Realization& r, const Word& i, const Vec& lambda, const SamplerConfig& cfg) {
  PolytopeSampler S(r, i, lambda);
  Mat out(S.q(), cfg.n);
  long c = 0;
  S.run(cfg, [&](const Vec& x) { out.col(c++) = x; });
  return out;
}

/// Weights lambda - sum x_k alpha_{i_k} of polytope samples, one column per sample.
inline Mat dh_sample(const Realization& r, const Word& i, const Vec& lambda, const SamplerConfig& cfg) {
  PolytopeSampler S(r, i, lambda);
  Mat out(r.dim, cfg.n);
  long c = 0;
  S.run(cfg, [&](const Vec& x) { out.col(c++) = S.weight(x); });
  return out;
}

/// Volume of M_i^lambda by rejection from the ladder box.
inline stats::Estimate rejection_volume(const Realization& r, const Word& i, const Vec& lambda, long n,
                                        std::uint64_t seed) {
  PolytopeSampler S(r, i, lambda);
  Vec U = ladder_box(r, i, lambda);
  const double box = U.prod();
  Rng rng(seed, 1);
  Vec x(U.size());
  long hits = 0;
  for (long k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < U.size(); ++j) x[j] = rng.uniform() * U[j];
    hits += S.contains(x, 0.0);
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {box * p, box * std::sqrt(p * (1 - p) / static_cast<double>(n))};
}

struct LaplaceReport {
  double mc = 0;
  double se = 0;
  double closed_form = 0;
  double z_score = 0;
};

/// volume * mean e^{<z,v>} over dh samples, volume = h(lambda)/k.
inline LaplaceReport laplace_check(const DHContext& ctx, const Word& i, const Vec& lambda, const Vec& z,
                                   const SamplerConfig& cfg) {
  LaplaceReport rep;
  rep.closed_form = laplace_closed_form(ctx, lambda, z);
  PolytopeSampler S(ctx.r, i, lambda);
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(cfg.n));
  S.run(cfg, [&](const Vec& x) { vals.push_back(std::exp(z.dot(S.weight(x)))); });
  const double vol = h_poly(ctx.r, lambda) / ctx.k;
  stats::Estimate e = stats::batch_means(vals);
  rep.mc = vol * e.mean;
  rep.se = vol * e.se;
  rep.z_score = (rep.mc - rep.closed_form) / rep.se;
  return rep;
}

/// Psi'_alpha(x) for every simple root: the last coordinate under a word ending in s_alpha.
inline Vec psi_prime_all(const Realization& r, const Word& i, const Vec& x) {
  Vec out(r.rank);
  const int q = r.q;
  const bool dihedral = r.rank == 2 && (r.family == 'A' || r.family == 'B' || r.family == 'I') &&
                        r.coxeter(0, 1) == q && q <= 6 && detail::is_alternating(i);
  for (int s = 0; s < r.rank; ++s) {
    if (i.back() == s) {
      out[s] = x[q - 1];
    } else if (dihedral) {
      out[s] = transition_closed_dihedral(q, x)[q - 1];
    } else {
      auto y = try_transition(r, i, r.last_words[s], aux_lambda(r, i, x), x);
      if (!y) throw Error(Errc::NotInPolytope, "coordinates are outside the cone");
      out[s] = (*y)[q - 1];
    }
  }
  return out;
}

struct LRReport {
  /// Weights lambda + mu - sum x alpha of accepted samples, one column each.
  Mat weights;
  double acceptance = 0;
  /// E_{x uniform on M^mu}[1_LR h(v) / h(lambda)].
  stats::Estimate gamma_mass;
  /// h(v)/h(lambda) averaged against the normalized uniform law on M^{lambda,mu}.
  stats::Estimate gamma_mass_normalized;
};

/// Uniform samples on M_i^{lambda,mu} by restricting hit-and-run samples of M_i^mu.
inline LRReport lr_sample(const Realization& r, const Word& i, const Vec& lambda, const Vec& mu,
                          const SamplerConfig& cfg) {
  PolytopeSampler S(r, i, mu);
  const double hl = h_poly(r, lambda);
  if (hl <= 0) throw Error(Errc::NotDominant, "lambda must be in the open chamber");
  std::vector<double> mass, flag, hv;
  std::vector<Vec> acc;
  S.run(cfg, [&](const Vec& x) {
    Vec pp = psi_prime_all(r, i, x);
    bool ok = true;
    for (int s = 0; s < r.rank; ++s) ok = ok && pp[s] <= r.pair(s, lambda) + EPS_POLY;
    Vec v = lambda + S.weight(x);
    const double g = h_poly(r, v) / hl;
    mass.push_back(ok ? g : 0.0);
    flag.push_back(ok ? 1.0 : 0.0);
    if (ok) acc.push_back(v);
  });
  LRReport rep;
  rep.weights.resize(r.dim, static_cast<Eigen::Index>(acc.size()));
  for (size_t k = 0; k < acc.size(); ++k) rep.weights.col(static_cast<Eigen::Index>(k)) = acc[k];
  if (acc.empty()) throw Error(Errc::EmptyPolytope, "no sample satisfied the constraint");
  rep.acceptance = stats::mean(flag);
  rep.gamma_mass = stats::batch_means(mass);
  // Ratio estimator with batchwise ratios for the error.
  const size_t n = mass.size();
  const int B = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(n))));
  const size_t len = n / static_cast<size_t>(B);
  std::vector<double> ratios;
  for (int b = 0; b < B; ++b) {
    double sm = 0, sf = 0;
    for (size_t k = b * len; k < (b + 1) * len; ++k) {
      sm += mass[k];
      sf += flag[k];
    }
    if (sf > 0) ratios.push_back(sm / sf);
  }
  rep.gamma_mass_normalized.mean = stats::mean(mass) / rep.acceptance;
  rep.gamma_mass_normalized.se = std::sqrt(stats::variance(ratios) / static_cast<double>(ratios.size()));
  return rep;
}

/// A1 exact product-formula check: J_lambda J_mu against the integral of J_v f_{lambda,mu}(v).
struct ProductReport {
  double lhs = 0;
  double rhs = 0;
  double se = 0;
  double z_score = 0;
};

/// f_{lambda,mu}(v) = h(mu)^{-1} sum_w h(wv) f_lambda(wv - mu) with f_lambda uniform on [-lambda, lambda].
inline double a1_f_lambda_mu(const DHContext& ctx, double lambda, double mu, double v) {
  double s = 0;
  const Vec e = Vec::Ones(1);
  for (const auto& g : ctx.W) {
    const double wv = (g.matrix * (v * e))[0];
    const double u = wv - mu;
    if (std::abs(u) <= lambda) s += h_poly(ctx.r, Vec::Constant(1, wv)) / (2 * lambda);
  }
  return s / h_poly(ctx.r, Vec::Constant(1, mu));
}

inline ProductReport product_formula_a1(const DHContext& ctx, double lambda, double mu, double z) {
  if (ctx.r.dim != 1) throw Error(Errc::RankUnsupported, "exact product formula is for A1");
  ProductReport rep;
  const Vec L = Vec::Constant(1, lambda), M = Vec::Constant(1, mu), Z = Vec::Constant(1, z);
  rep.lhs = bessel_J(ctx, L, Z) * bessel_J(ctx, M, Z);
  const double lo = std::abs(lambda - mu), hi = lambda + mu;
  auto f = [&](double v) { return bessel_J(ctx, Vec::Constant(1, v), Z) * a1_f_lambda_mu(ctx, lambda, mu, v); };
  rep.rhs = boost::math::quadrature::gauss<double, 30>::integrate(f, lo, hi);
  return rep;
}

/// h(mu)^{-1} E_{u ~ mu_DH^lambda}[J_{u+mu}(z) h(u+mu)] against J_lambda(z) J_mu(z).
inline ProductReport product_formula_mc(const DHContext& ctx, const Word& i, const Vec& lambda, const Vec& mu,
                                        const Vec& z, const SamplerConfig& cfg) {
  const double hz = h_poly(ctx.r, z), hm = h_poly(ctx.r, mu);
  if (std::abs(hz) <= 1e-8) throw Error(Errc::SingularZ, "h(z) vanishes");
  ProductReport rep;
  rep.lhs = bessel_J(ctx, lambda, z) * bessel_J(ctx, mu, z);
  PolytopeSampler S(ctx.r, i, lambda);
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(cfg.n));
  S.run(cfg, [&](const Vec& x) { vals.push_back(ctx.k * alternating_sum(ctx, S.weight(x) + mu, z) / (hz * hm)); });
  stats::Estimate e = stats::batch_means(vals);
  rep.rhs = e.mean;
  rep.se = e.se;
  rep.z_score = (rep.rhs - rep.lhs) / rep.se;
  return rep;
}

/// Mass of f_{lambda,mu} on a grid of chamber cells in pairing coordinates.
struct DensityHistogram {
  int bins = 0;
  double width = 0;
  std::vector<double> mass, se;
};

/// Rank-2 histogram: cell (a, b) covers alpha_1^vee in [a w, (a+1) w), alpha_2^vee in [b w, (b+1) w).
inline DensityHistogram product_density_histogram(const DHContext& ctx, const Word& i, const Vec& lambda,
                                                  const Vec& mu, int bins, const SamplerConfig& cfg) {
  const Realization& r = ctx.r;
  if (r.rank != 2) throw Error(Errc::RankUnsupported, "histogram is for rank 2");
  const double hm = h_poly(r, mu);
  double top = 0;
  for (int s = 0; s < 2; ++s) top = std::max(top, r.pair(s, lambda + mu) * 2.0);
  DensityHistogram H;
  H.bins = bins;
  H.width = top / bins;
  std::vector<std::vector<double>> cells(static_cast<size_t>(bins * bins));
  PolytopeSampler S(r, i, lambda);
  long count = 0;
  std::vector<std::pair<int, double>> events;
  S.run(cfg, [&](const Vec& x) {
    Vec v = S.weight(x) + mu;
    const double w = h_poly(r, v) / hm;
    auto [f, sign] = fold_to_chamber(r, v);
    (void)sign;
    const int a = std::min(bins - 1, static_cast<int>(r.pair(0, f) / H.width));
    const int b = std::min(bins - 1, static_cast<int>(r.pair(1, f) / H.width));
    events.emplace_back(a * bins + b, w);
    ++count;
  });
  const int B = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(count))));
  const long len = count / B;
  H.mass.assign(static_cast<size_t>(bins * bins), 0.0);
  H.se.assign(static_cast<size_t>(bins * bins), 0.0);
  std::vector<std::vector<double>> batch(static_cast<size_t>(bins * bins), std::vector<double>(B, 0.0));
  for (long k = 0; k < B * len; ++k) {
    const auto& [c, w] = events[static_cast<size_t>(k)];
    batch[static_cast<size_t>(c)][static_cast<size_t>(k / len)] += w / static_cast<double>(len);
  }
  for (size_t c = 0; c < batch.size(); ++c) {
    H.mass[c] = stats::mean(batch[c]);
    H.se[c] = std::sqrt(stats::variance(batch[c]) / B);
  }
  return H;
}

// ---------------------------------------------------------------------------
// Brownian motion

struct BrownianOptions {
  /// When nonempty, each step gets an extra breakpoint carrying the exact
  /// bridge minimum of this covector.
  Vec bridge_min_covector;
};

/// Gaussian random walk with per-coordinate variance T/steps and drift, linearly interpolated.
inline PLPath brownian_path(int dim, double T, int steps, const Vec& drift, Rng& rng,
                            const BrownianOptions& opt = {}) {
  if (steps < 1) throw Error(Errc::OutOfRange, "steps must be positive");
  const double dt = T / steps, sd = std::sqrt(dt);
  const bool bridge = opt.bridge_min_covector.size() == dim;
  std::vector<double> ts{0.0}, xs(static_cast<size_t>(dim), 0.0);
  ts.reserve(static_cast<size_t>(steps) * (bridge ? 2 : 1) + 1);
  Vec cur = Vec::Zero(dim), next(dim);
  for (int k = 1; k <= steps; ++k) {
    for (int d = 0; d < dim; ++d) next[d] = cur[d] + sd * rng.normal() + (drift.size() ? drift[d] * dt : 0.0);
    if (bridge) {
      const Vec& f = opt.bridge_min_covector;
      const double a = f.dot(cur), b = f.dot(next), s2 = f.squaredNorm() * dt;
      const double m = 0.5 * (a + b - std::sqrt((a - b) * (a - b) - 2 * s2 * std::log(rng.uniform_pos())));
      Vec mid = 0.5 * (cur + next);
      mid += (m - f.dot(mid)) / f.squaredNorm() * f;
      ts.push_back((k - 0.5) * dt);
      for (int d = 0; d < dim; ++d) xs.push_back(mid[d]);
    }
    ts.push_back(k == steps ? T : k * dt);
    for (int d = 0; d < dim; ++d) xs.push_back(next[d]);
    cur = next;
  }
  return PLPath::from_flat(dim, std::move(ts), std::move(xs));
}

inline PLPath brownian_path(int dim, double T, int steps, const Vec& drift, std::uint64_t seed,
                            std::uint64_t stream = 0) {
  Rng rng(seed, stream);
  return brownian_path(dim, T, steps, drift, rng);
}

/// Q_beta psi(t) = psi(t) - inf_{s<=t} beta^vee(psi(t) - psi(s)) beta.
inline PLPath q_beta(const Vec& beta, const Vec& beta_vee, const PLPath& psi) {
  ScalarPL g = psi.functional(beta_vee);
  // inf_{s<=t}(g(t) - g(s)) = g(t) - sup_{s<=t} g(s)
  ScalarPL neg = g;
  for (double& v : neg.v) v = -v;
  ScalarPL c = combine(1.0, g, 1.0, prefix_min(neg));
  return subtract_along(psi, c, beta);
}

/// (y_1..y_q) of the Q chain psi_{i-1} = Q_{beta_i} psi_i.
inline Vec varsigma(const Realization& r, const Word& i, const PLPath& psi) {
  auto betas = word_betas(r, i);
  const int q = static_cast<int>(i.size());
  Vec y(q);
  PLPath cur = psi;
  for (int k = q; k >= 1; --k) {
    const auto& [b, bv] = betas[static_cast<size_t>(k - 1)];
    ScalarPL g = cur.functional(bv);
    // -inf_t (g(T) - g(t)) = sup_t g(t) - g(T)
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : g.v) mx = std::max(mx, v);
    y[k - 1] = mx - g.v.back();
    cur = q_beta(b, bv, cur);
  }
  return y;
}

/// Endpoints P_{w0} eta(T) of discretized Brownian paths; A1 uses exact bridge minima.
inline std::vector<Vec> pitman_brownian_endpoints(const Realization& r, long trials, int steps, double T,
                                                  std::uint64_t seed, bool bridge) {
  std::vector<Vec> out;
  out.reserve(static_cast<size_t>(trials));
  BrownianOptions opt;
  if (bridge) {
    if (r.rank != 1) throw Error(Errc::RankUnsupported, "exact bridge minima need rank 1");
    opt.bridge_min_covector = r.coroots.col(0);
  }
  for (long t = 0; t < trials; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    PLPath eta = brownian_path(r.dim, T, steps, Vec(), rng, opt);
    out.push_back(pitman_w0(r, eta).endpoint());
  }
  return out;
}

/// Normalized density of k^{-1} h(lambda)^2 e^{-|lambda|^2/2T} on the chamber, rank 1 cdf.
inline double a1_endpoint_cdf(const DHContext& ctx, double T, double u) {
  if (u <= 0) return 0.0;
  auto dens = [&](double x) {
    const double h = h_poly(ctx.r, Vec::Constant(1, x));
    return h * h * std::exp(-x * x / (2 * T)) / ctx.k;
  };
  const double hi = 40 * std::sqrt(T);
  const double total = boost::math::quadrature::gauss<double, 30>::integrate(dens, 0.0, hi / 4) +
                       boost::math::quadrature::gauss<double, 30>::integrate(dens, hi / 4, hi);
  const double part = u >= hi ? total
                              : boost::math::quadrature::gauss<double, 30>::integrate(dens, 0.0, std::min(u, hi));
  return std::min(1.0, part / total);
}

struct OmegaSample {
  /// From string coordinates through the Lusztig relation.
  Vec y;
  /// From the Q chain directly.
  Vec y_direct;
};

/// y of a drifted Brownian path on [0, S]; approximates omega(0) of the two-sided motion.
/// In rank 1 the running maximum is sampled exactly through bridge extrema.
inline OmegaSample omega_sample(const Realization& r, const Vec& mu, double S, int steps, Rng& rng) {
  BrownianOptions opt;
  if (r.rank == 1) opt.bridge_min_covector = -r.coroots.col(0);
  PLPath psi = brownian_path(r.dim, S, steps, mu, rng, opt);
  PLPath eta = map_linear(r.w0_matrix, psi);
  StringChain c = string_chain(r, r.w0, eta);
  OmegaSample o;
  o.y = lusztig_coords(r, r.w0, c.x, c.partial[0].endpoint());
  o.y_direct = varsigma(r, r.w0, psi);
  return o;
}

/// Exact moments of the uniform law on the A2 polytope for a = alpha_1^vee(lambda), b = alpha_2^vee(lambda).
struct A2Moments {
  double volume = 0;
  Eigen::Vector3d m1, m2, m4;
};

inline A2Moments a2_polytope_moments(double a, double b) {
  using GL = boost::math::quadrature::gauss<double, 10>;
  A2Moments M;
  std::array<double, 10> acc{};
  // acc[0] = vol, [1..3] = sum x_k, [4..6] = x_k^2, [7..9] = x_k^4
  auto inner = [&](double x1, double x2, int what) {
    const double top = a - 2 * x1 + x2;
    return GL::integrate(
        [&](double x3) {
          const double x[3] = {x1, x2, x3};
          if (what == 0) return 1.0;
          const int k = (what - 1) % 3;
          const int p = what <= 3 ? 1 : what <= 6 ? 2 : 4;
          return std::pow(x[k], p);
        },
        0.0, top);
  };
  for (int what = 0; what < 10; ++what)
    acc[static_cast<size_t>(what)] = GL::integrate(
        [&](double x1) { return GL::integrate([&](double x2) { return inner(x1, x2, what); }, x1, b + x1); }, 0.0, a);
  M.volume = acc[0];
  for (int k = 0; k < 3; ++k) {
    M.m1[k] = acc[static_cast<size_t>(1 + k)] / M.volume;
    M.m2[k] = acc[static_cast<size_t>(4 + k)] / M.volume;
    M.m4[k] = acc[static_cast<size_t>(7 + k)] / M.volume;
  }
  return M;
}

}  // namespace plc
