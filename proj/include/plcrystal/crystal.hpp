#pragma once
/**
 * @file crystal.hpp
 * @brief Continuous crystals: path points, elementary crystals B_alpha and tensor products.
 */

#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "plcrystal/transforms.hpp"

namespace plc {

inline constexpr double NEG_INF = -std::numeric_limits<double>::infinity();

class CrystalPoint {
 public:
  enum class Kind { Path, BAlpha, Tensor };

  Kind kind() const { return kind_; }
  const Vec& wt() const { return wt_; }
  double eps(int s) const { return eps_[s]; }
  double phi(int s) const { return phi_[s]; }
  const std::vector<double>& eps_all() const { return eps_; }
  const std::vector<double>& phi_all() const { return phi_; }

  const PLPath& path() const { return *path_; }
  int balpha_root() const { return root_; }
  double balpha_t() const { return t_; }
  const CrystalPoint& left() const { return *left_; }
  const CrystalPoint& right() const { return *right_; }

  static CrystalPoint make_path(const Realization& r, const PLPath& p) {
    detail::check_path(r, p);
    CrystalPoint c;
    c.kind_ = Kind::Path;
    c.path_ = std::make_shared<const PLPath>(p);
    c.wt_ = p.endpoint();
    for (int s = 0; s < r.rank; ++s) {
      ScalarPL g = p.functional(r.coroots.col(s));
      double m = g.min();
      c.eps_.push_back(-m);
      c.phi_.push_back(g.v.back() - m);
    }
    return c;
  }

  /// b_alpha(t), t <= 0.
  static CrystalPoint make_balpha(const Realization& r, int s, double t) {
    if (t > EPS_SHIFT) throw Error(Errc::OutOfRange, "b_alpha(t) needs t <= 0");
    CrystalPoint c;
    c.kind_ = Kind::BAlpha;
    c.root_ = s;
    c.t_ = std::min(t, 0.0);
    c.wt_ = c.t_ * r.roots.col(s);
    c.eps_.assign(r.rank, NEG_INF);
    c.phi_.assign(r.rank, NEG_INF);
    c.eps_[s] = -c.t_;
    c.phi_[s] = c.t_;
    return c;
  }

  static CrystalPoint make_tensor(const Realization& r, const CrystalPoint& b1, const CrystalPoint& b2);

 private:
  Kind kind_ = Kind::Path;
  std::shared_ptr<const PLPath> path_;
  int root_ = -1;
  double t_ = 0;
  std::shared_ptr<const CrystalPoint> left_, right_;
  Vec wt_;
  std::vector<double> eps_, phi_;
};

using GhostOrPoint = std::optional<CrystalPoint>;

struct CrystalStats {
  Vec wt;
  std::vector<double> eps, phi;
};

namespace detail {

/// sigma = phi(b1) - eps(b2) with (-inf) - (-inf) = 0.
inline double tensor_sigma(double phi1, double eps2) {
  if (phi1 == NEG_INF && eps2 == NEG_INF) return 0.0;
  if (phi1 == NEG_INF) return NEG_INF;
  if (eps2 == NEG_INF) return -NEG_INF;
  return phi1 - eps2;
}

}  // namespace detail

/// eps(b1 x b2) = eps(b1) + sigma^-, phi(b1 x b2) = phi(b2) + sigma^+, weights add.
inline CrystalStats tensor_stats(const Realization& r, const CrystalPoint& b1, const CrystalPoint& b2) {
  CrystalStats st;
  st.wt = b1.wt() + b2.wt();
  for (int s = 0; s < r.rank; ++s) {
    // Written as maxima so that infinite entries need no special casing.
    double a2 = r.coroots.col(s).dot(b2.wt());
    double a1 = r.coroots.col(s).dot(b1.wt());
    st.eps.push_back(std::max(b1.eps(s), b2.eps(s) - a1));
    st.phi.push_back(std::max(b2.phi(s), b1.phi(s) + a2));
  }
  return st;
}

inline CrystalPoint CrystalPoint::make_tensor(const Realization& r, const CrystalPoint& b1, const CrystalPoint& b2) {
  CrystalPoint c;
  c.kind_ = Kind::Tensor;
  c.left_ = std::make_shared<const CrystalPoint>(b1);
  c.right_ = std::make_shared<const CrystalPoint>(b2);
  CrystalStats st = tensor_stats(r, b1, b2);
  c.wt_ = st.wt;
  c.eps_ = st.eps;
  c.phi_ = st.phi;
  return c;
}

inline GhostOrPoint crystal_e(const Realization& r, const CrystalPoint& b, int s, double x) {
  if (x == 0.0) return b;
  switch (b.kind()) {
    case CrystalPoint::Kind::Path: {
      GhostOr p = littelmann_e(r, s, x, b.path());
      if (!p) return std::nullopt;
      return CrystalPoint::make_path(r, *p);
    }
    case CrystalPoint::Kind::BAlpha: {
      if (s != b.balpha_root()) return std::nullopt;
      if (x > -b.balpha_t() + EPS_SHIFT) return std::nullopt;
      return CrystalPoint::make_balpha(r, s, b.balpha_t() + x);
    }
    case CrystalPoint::Kind::Tensor: {
      const CrystalPoint& b1 = b.left();
      const CrystalPoint& b2 = b.right();
      double sigma = detail::tensor_sigma(b1.phi(s), b2.eps(s));
      double x1, x2;
      if (sigma == NEG_INF) {
        x1 = 0.0;
        x2 = x;
      } else if (sigma == -NEG_INF) {
        x1 = x;
        x2 = 0.0;
      } else {
        double sp = std::max(sigma, 0.0), sm = std::max(-sigma, 0.0);
        x1 = std::max(x, -sigma) - sm;
        x2 = std::min(x, -sigma) + sp;
      }
      GhostOrPoint n1 = crystal_e(r, b1, s, x1);
      if (!n1) return std::nullopt;
      GhostOrPoint n2 = crystal_e(r, b2, s, x2);
      if (!n2) return std::nullopt;
      return CrystalPoint::make_tensor(r, *n1, *n2);
    }
  }
  return std::nullopt;
}

inline GhostOrPoint crystal_f(const Realization& r, const CrystalPoint& b, int s, double x) {
  return crystal_e(r, b, s, -x);
}

/// True iff P_{w0} eta = pi within EPS_PATH.
inline bool module_membership(const Realization& r, const PLPath& pi, const PLPath& eta) {
  detail::check_path(r, pi);
  if (!in_chamber_path(r, pi)) throw Error(Errc::NotDominant, "module_membership needs a dominant path");
  return sup_distance(pitman_w0(r, eta), pi) <= EPS_PATH;
}

/// Theta(e^x(eta1 x eta2)) = E^x(eta1 * eta2), ghosts included.
inline bool theta_check(const Realization& r, const PLPath& eta1, const PLPath& eta2, int s, double x,
                        double tol = EPS_PATH) {
  CrystalPoint t = CrystalPoint::make_tensor(r, CrystalPoint::make_path(r, eta1), CrystalPoint::make_path(r, eta2));
  GhostOrPoint lhs = crystal_e(r, t, s, x);
  GhostOr rhs = littelmann_e(r, s, x, concat_star(eta1, eta2));
  if (!lhs || !rhs) return !lhs && !rhs;
  return sup_distance(concat_star(lhs->left().path(), lhs->right().path()), *rhs) <= tol;
}

inline CrystalPoint highest_weight(const Realization& r, const PLPath& pi) {
  detail::check_path(r, pi);
  if (!in_chamber_path(r, pi)) throw Error(Errc::NotDominant, "highest weight element must be dominant");
  return CrystalPoint::make_path(r, pi);
}

}  // namespace plc
