#pragma once
/**
 * @file troplift.hpp
 * @brief Tropicalization of subtraction-free expressions and SL2 Sturm-Liouville lifts.
 *
 * Scalar lifts act on a = alpha^vee o eta, for which the Pitman transform reads
 * a - 2 inf a. Functions on [0,T] are sampled on a uniform grid.
 */

#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "plcrystal/stringparam.hpp"

namespace plc {

// ---------------------------------------------------------------------------
// Expressions

/// Tree over variables and positive constants with +, *, /.
struct SFExpr {
  enum class Op { Var, Const, Add, Mul, Div };
  Op op = Op::Const;
  std::string name;
  double value = 1.0;
  std::shared_ptr<const SFExpr> lhs, rhs;

  static std::shared_ptr<const SFExpr> var(std::string n) {
    auto e = std::make_shared<SFExpr>();
    e->op = Op::Var;
    e->name = std::move(n);
    return e;
  }
  static std::shared_ptr<const SFExpr> constant(double c) {
    if (!(c > 0)) throw Error(Errc::BadSpec, "constants must be positive");
    auto e = std::make_shared<SFExpr>();
    e->op = Op::Const;
    e->value = c;
    return e;
  }
  static std::shared_ptr<const SFExpr> node(Op op, std::shared_ptr<const SFExpr> a, std::shared_ptr<const SFExpr> b) {
    auto e = std::make_shared<SFExpr>();
    e->op = op;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }
};
using SFPtr = std::shared_ptr<const SFExpr>;

namespace detail {

class SFParser {
 public:
  explicit SFParser(const std::string& s) : s_(s) {}

  SFPtr parse() {
    SFPtr e = expr();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + std::string(1, s_[p_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  size_t p_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::BadSpec, "expression: " + what + " at position " + std::to_string(p_));
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  SFPtr expr() {
    SFPtr e = term();
    for (;;) {
      if (eat('+')) e = SFExpr::node(SFExpr::Op::Add, e, term());
      else if (eat('-')) fail("subtraction is not allowed");
      else return e;
    }
  }
  SFPtr term() {
    SFPtr e = factor();
    for (;;) {
      if (eat('*')) e = SFExpr::node(SFExpr::Op::Mul, e, factor());
      else if (eat('/')) e = SFExpr::node(SFExpr::Op::Div, e, factor());
      else {
        // Implicit product: "2t2" or "t1t2" with juxtaposed factors.
        skip();
        if (p_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[p_])) || s_[p_] == '('))
          e = SFExpr::node(SFExpr::Op::Mul, e, factor());
        else
          return e;
      }
    }
  }
  SFPtr factor() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    const char c = s_[p_];
    if (c == '(') {
      ++p_;
      SFPtr e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (c == '-') fail("subtraction is not allowed");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t used = 0;
      double v = std::stod(s_.substr(p_), &used);
      p_ += used;
      return SFExpr::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t q = p_;
      // Identifier: letters followed by digits, so "t1t2" splits as t1 * t2.
      while (q < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[q])) || s_[q] == '_')) ++q;
      while (q < s_.size() && std::isdigit(static_cast<unsigned char>(s_[q]))) ++q;
      std::string n = s_.substr(p_, q - p_);
      p_ = q;
      return SFExpr::var(n);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace detail

inline SFPtr parse_sf(const std::string& s) { return detail::SFParser(s).parse(); }

inline double eval_sf(const SFExpr& e, const std::map<std::string, double>& v) {
  switch (e.op) {
    case SFExpr::Op::Var: {
      auto it = v.find(e.name);
      if (it == v.end()) throw Error(Errc::BadSpec, "unbound variable " + e.name);
      if (!(it->second > 0)) throw Error(Errc::NonpositiveInput, "variables must be positive");
      return it->second;
    }
    case SFExpr::Op::Const: return e.value;
    case SFExpr::Op::Add: return eval_sf(*e.lhs, v) + eval_sf(*e.rhs, v);
    case SFExpr::Op::Mul: return eval_sf(*e.lhs, v) * eval_sf(*e.rhs, v);
    case SFExpr::Op::Div: return eval_sf(*e.lhs, v) / eval_sf(*e.rhs, v);
  }
  return 0;
}

inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

/// log F evaluated from the logarithms of the variables.
inline double eval_sf_log(const SFExpr& e, const std::map<std::string, double>& logv) {
  switch (e.op) {
    case SFExpr::Op::Var: {
      auto it = logv.find(e.name);
      if (it == logv.end()) throw Error(Errc::BadSpec, "unbound variable " + e.name);
      return it->second;
    }
    case SFExpr::Op::Const: return std::log(e.value);
    case SFExpr::Op::Add: return log_add_exp(eval_sf_log(*e.lhs, logv), eval_sf_log(*e.rhs, logv));
    case SFExpr::Op::Mul: return eval_sf_log(*e.lhs, logv) + eval_sf_log(*e.rhs, logv);
    case SFExpr::Op::Div: return eval_sf_log(*e.lhs, logv) - eval_sf_log(*e.rhs, logv);
  }
  return 0;
}

/// Tree over variables and 0 with max, +, -.
struct MaxPlusExpr {
  enum class Op { Var, Zero, Max, Plus, Minus };
  Op op = Op::Zero;
  std::string name;
  std::shared_ptr<const MaxPlusExpr> lhs, rhs;
};
using MPPtr = std::shared_ptr<const MaxPlusExpr>;

/// Variable names t<k> become x<k>.
inline std::string trop_name(const std::string& n) {
  if (n.size() > 1 && n[0] == 't' && std::isdigit(static_cast<unsigned char>(n[1]))) return "x" + n.substr(1);
  return n;
}

/// + -> max, * -> +, / -> -, constants -> 0.
inline MPPtr tropicalize(const SFExpr& e) {
  auto m = std::make_shared<MaxPlusExpr>();
  switch (e.op) {
    case SFExpr::Op::Var:
      m->op = MaxPlusExpr::Op::Var;
      m->name = trop_name(e.name);
      break;
    case SFExpr::Op::Const: m->op = MaxPlusExpr::Op::Zero; break;
    case SFExpr::Op::Add:
      m->op = MaxPlusExpr::Op::Max;
      break;
    case SFExpr::Op::Mul: m->op = MaxPlusExpr::Op::Plus; break;
    case SFExpr::Op::Div: m->op = MaxPlusExpr::Op::Minus; break;
  }
  if (e.lhs) m->lhs = tropicalize(*e.lhs);
  if (e.rhs) m->rhs = tropicalize(*e.rhs);
  return m;
}

inline double eval_maxplus(const MaxPlusExpr& e, const std::map<std::string, double>& x) {
  switch (e.op) {
    case MaxPlusExpr::Op::Var: {
      auto it = x.find(e.name);
      if (it == x.end()) throw Error(Errc::BadSpec, "unbound variable " + e.name);
      return it->second;
    }
    case MaxPlusExpr::Op::Zero: return 0.0;
    case MaxPlusExpr::Op::Max: return std::max(eval_maxplus(*e.lhs, x), eval_maxplus(*e.rhs, x));
    case MaxPlusExpr::Op::Plus: return eval_maxplus(*e.lhs, x) + eval_maxplus(*e.rhs, x);
    case MaxPlusExpr::Op::Minus: return eval_maxplus(*e.lhs, x) - eval_maxplus(*e.rhs, x);
  }
  return 0;
}

/// -F_trop(-x): the same expression read in the min-plus semiring.
inline double eval_minplus_dual(const MaxPlusExpr& e, const std::map<std::string, double>& x) {
  std::map<std::string, double> neg;
  for (const auto& [k, v] : x) neg[k] = -v;
  return -eval_maxplus(e, neg);
}

namespace detail {

inline bool is_zero(const MPPtr& e) { return e->op == MaxPlusExpr::Op::Zero; }

inline MPPtr simplify(const MPPtr& e) {
  if (!e->lhs) return e;
  MPPtr a = simplify(e->lhs), b = simplify(e->rhs);
  if (e->op == MaxPlusExpr::Op::Plus) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
  }
  if (e->op == MaxPlusExpr::Op::Minus && is_zero(b)) return a;
  auto m = std::make_shared<MaxPlusExpr>(*e);
  m->lhs = a;
  m->rhs = b;
  return m;
}

inline std::string render(const MPPtr& e) {
  using Op = MaxPlusExpr::Op;
  auto wrap = [](const MPPtr& c, bool need) { return need ? "(" + render(c) + ")" : render(c); };
  switch (e->op) {
    case Op::Var: return e->name;
    case Op::Zero: return "0";
    case Op::Max: {
      auto compound = [](const MPPtr& c) { return c->op == Op::Plus || c->op == Op::Minus; };
      return wrap(e->lhs, compound(e->lhs)) + " ∨ " + wrap(e->rhs, compound(e->rhs));
    }
    case Op::Plus:
      return wrap(e->lhs, e->lhs->op == Op::Max) + " + " + wrap(e->rhs, e->rhs->op == Op::Max || e->rhs->op == Op::Minus);
    case Op::Minus: {
      const bool rwrap = e->rhs->op != Op::Var && e->rhs->op != Op::Zero;
      if (is_zero(e->lhs)) return "−" + wrap(e->rhs, rwrap);
      return wrap(e->lhs, e->lhs->op == Op::Max) + " − " + wrap(e->rhs, rwrap);
    }
  }
  return "";
}

}  // namespace detail

/// Printable form with neutral zeros removed, e.g. "x1 ∨ (x2 − x3)".
inline std::string render_maxplus(const MaxPlusExpr& e) {
  return detail::render(detail::simplify(std::make_shared<MaxPlusExpr>(e)));
}

/// eps * (log 2 per sum node + |log c| per constant): bounds |eps log F(e^{x/eps}) - F_trop(x)|.
inline double trop_error_bound(const SFExpr& e, double eps) {
  double s = 0;
  switch (e.op) {
    case SFExpr::Op::Var: break;
    case SFExpr::Op::Const: s = std::abs(std::log(e.value)); break;
    case SFExpr::Op::Add: s = std::log(2.0); break;
    default: break;
  }
  s *= eps;
  if (e.lhs) s += trop_error_bound(*e.lhs, eps);
  if (e.rhs) s += trop_error_bound(*e.rhs, eps);
  return s;
}

/// |eps log F(e^{x/eps}) - F_trop(x)| for each eps.
inline std::vector<double> numeric_trop_limit(const SFExpr& e, const std::map<std::string, double>& x,
                                              const std::vector<double>& eps_list) {
  MPPtr t = tropicalize(e);
  std::map<std::string, double> xt;
  for (const auto& [k, v] : x) xt[trop_name(k)] = v;
  const double target = eval_maxplus(*t, xt);
  std::vector<double> out;
  for (double eps : eps_list) {
    std::map<std::string, double> logv;
    for (const auto& [k, v] : x) logv[k] = v / eps;
    out.push_back(std::abs(eps * eval_sf_log(e, logv) - target));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SL2 lifts on a uniform grid

/// Samples of a scalar function on t_k = k T / n, k = 0..n.
struct Grid {
  double T = 1;
  std::vector<double> v;
  size_t n() const { return v.size() - 1; }
  double h() const { return T / static_cast<double>(n()); }
  double t(size_t k) const { return T * static_cast<double>(k) / static_cast<double>(n()); }
};

inline Grid sample_grid(const ScalarPL& f, size_t n) {
  Grid g;
  g.T = f.T();
  g.v.resize(n + 1);
  for (size_t k = 0; k <= n; ++k) g.v[k] = f.eval(g.T * static_cast<double>(k) / static_cast<double>(n));
  return g;
}

namespace detail {

inline void check_positive(const Grid& phi, size_t from) {
  for (size_t k = from; k < phi.v.size(); ++k)
    if (!(phi.v[k] > 0)) throw Error(Errc::NonpositiveInput, "function must be positive");
}

/// I(t_k) = int_0^{t_k} phi^{-2} by the rule h / (phi_i phi_{i+1}), exact for linear phi.
inline std::vector<double> inv_sq_integral(const Grid& phi) {
  std::vector<double> I(phi.v.size(), 0.0);
  const double h = phi.h();
  for (size_t k = 1; k < phi.v.size(); ++k) I[k] = I[k - 1] + h / (phi.v[k - 1] * phi.v[k]);
  return I;
}

}  // namespace detail

struct TResult {
  Grid psi;
  /// xi = int_0^T phi^{-2}.
  double xi = 0;
};

/// T phi(t) = phi(t) int_0^t phi^{-2}.
inline TResult sl2_T(const Grid& phi) {
  detail::check_positive(phi, 0);
  std::vector<double> I = detail::inv_sq_integral(phi);
  TResult r;
  r.psi = phi;
  for (size_t k = 0; k < phi.v.size(); ++k) r.psi.v[k] = phi.v[k] * I[k];
  r.xi = I.back();
  return r;
}

/// E_{u,v} phi = u phi + v phi int_0^t phi^{-2}.
inline Grid sl2_E(const Grid& phi, double u, double v) {
  detail::check_positive(phi, 0);
  std::vector<double> I = detail::inv_sq_integral(phi);
  Grid out = phi;
  for (size_t k = 0; k < phi.v.size(); ++k) out.v[k] = u * phi.v[k] + v * phi.v[k] * I[k];
  return out;
}

/// phi_xi(t) = psi(t) (1/xi + int_t^T psi^{-2}); psi(0) = 0 is allowed and uses 1/psi'(0).
inline Grid sl2_inverse_family(const Grid& psi, double xi) {
  if (!(xi > 0)) throw Error(Errc::NonpositiveXi, "xi must be positive");
  const bool zero_start = psi.v[0] == 0.0;
  detail::check_positive(psi, zero_start ? 1 : 0);
  const size_t n = psi.n();
  const double h = psi.h();
  std::vector<double> tail(n + 1, 0.0);
  for (size_t k = n; k-- > 1;) tail[k] = tail[k + 1] + h / (psi.v[k] * psi.v[k + 1]);
  Grid out = psi;
  for (size_t k = 1; k <= n; ++k) out.v[k] = psi.v[k] * (1.0 / xi + tail[k]);
  if (zero_start) out.v[0] = h / psi.v[1];
  else out.v[0] = psi.v[0] * (1.0 / xi + tail[1] + h / (psi.v[0] * psi.v[1]));
  return out;
}

namespace detail {

/// log int_0^{t_k} e^{f} by trapezoid in log space.
inline std::vector<double> log_cum_integral(const std::vector<double>& f, double h) {
  std::vector<double> L(f.size(), -std::numeric_limits<double>::infinity());
  const double lh = std::log(h / 2);
  for (size_t k = 1; k < f.size(); ++k) L[k] = log_add_exp(L[k - 1], lh + log_add_exp(f[k - 1], f[k]));
  return L;
}

}  // namespace detail

/// eps log T(e^{a/eps}) at each grid point (-inf at t = 0).
inline Grid sl2_T_log(const Grid& a, double eps) {
  std::vector<double> f(a.v.size());
  for (size_t k = 0; k < f.size(); ++k) f[k] = -2 * a.v[k] / eps;
  std::vector<double> L = detail::log_cum_integral(f, a.h());
  Grid out = a;
  for (size_t k = 0; k < f.size(); ++k) out.v[k] = a.v[k] + eps * L[k];
  return out;
}

/// eps log(e^{a/eps}(e^{-x/eps} + int_t^T e^{-2a/eps})).
inline Grid sl2_H_log(const Grid& a, double x, double eps) {
  const size_t n = a.n();
  const double lh = std::log(a.h() / 2);
  std::vector<double> tail(n + 1, -std::numeric_limits<double>::infinity());
  for (size_t k = n; k-- > 0;) tail[k] = log_add_exp(tail[k + 1], lh + log_add_exp(-2 * a.v[k] / eps, -2 * a.v[k + 1] / eps));
  Grid out = a;
  for (size_t k = 0; k <= n; ++k) out.v[k] = a.v[k] + eps * log_add_exp(-x / eps, tail[k]);
  return out;
}

/// a - 2 inf_{s<=t} a.
inline Grid pitman_scalar(const Grid& a) {
  Grid out = a;
  double m = a.v[0];
  for (size_t k = 0; k < a.v.size(); ++k) {
    m = std::min(m, a.v[k]);
    out.v[k] = a.v[k] - 2 * m;
  }
  return out;
}

/// a - min(x, 2 inf_{t<=s<=T} a).
inline Grid h_scalar(const Grid& a, double x) {
  Grid out = a;
  double m = std::numeric_limits<double>::infinity();
  for (size_t k = a.v.size(); k-- > 0;) {
    m = std::min(m, a.v[k]);
    out.v[k] = a.v[k] - std::min(x, 2 * m);
  }
  return out;
}

/// max |f - g| over grid points with t >= t_min.
inline double grid_residual(const Grid& f, const Grid& g, double t_min) {
  double r = 0;
  for (size_t k = 0; k < f.v.size(); ++k)
    if (f.t(k) >= t_min) r = std::max(r, std::abs(f.v[k] - g.v[k]));
  return r;
}

// ---------------------------------------------------------------------------
// A2 Bruhat cell

struct Bruhat {
  double t1, t2, t3;
};

/// t1 = u3 + u2/u1, t2 = u1 u3, t3 = u1 u2 / (u2 + u1 u3).
inline Bruhat a2_bruhat_transition(double u1, double u2, double u3) {
  if (!(u1 > 0 && u2 > 0 && u3 > 0)) throw Error(Errc::NonpositiveInput, "Bruhat coordinates must be positive");
  return {u3 + u2 / u1, u1 * u3, u1 * u2 / (u2 + u1 * u3)};
}

/// Lower triangular matrix in the t coordinates of s2 s1 s2.
inline Eigen::Matrix3d a2_matrix_t(double t1, double t2, double t3) {
  Eigen::Matrix3d m;
  m << t2, 0, 0, t1, t1 * t3 / t2, 0, 1, t3 / t2 + 1 / t1, 1 / (t1 * t3);
  return m;
}

/// Lower triangular matrix in the u coordinates of s1 s2 s1.
inline Eigen::Matrix3d a2_matrix_u(double u1, double u2, double u3) {
  Eigen::Matrix3d m;
  m << u1 * u3, 0, 0, u3 + u2 / u1, u2 / (u1 * u3), 0, 1, 1 / u3, 1 / u2;
  return m;
}

/// The three transition maps as expressions in u1, u2, u3.
inline std::array<SFPtr, 3> a2_bruhat_expressions() {
  return {parse_sf("u3 + u2/u1"), parse_sf("u1*u3"), parse_sf("u1*u2/(u2 + u1*u3)")};
}

// ---------------------------------------------------------------------------
// Geometric string coordinates

struct StringLift {
  /// (eps/2) log u_k, in the indexing of string_coords.
  Vec x;
};

/// Geometric Pitman chain eta <- eta + (eps/2) log(int_0^t e^{-2 alpha^vee(eta)/eps}) alpha
/// along the word read from the last letter; u_k is the full integral at step k.
inline StringLift string_lift(const Realization& r, const Word& i, const PLPath& eta, double eps, size_t n) {
  if (r.rank > 2) throw Error(Errc::RankUnsupported, "string lift is implemented for rank <= 2");
  detail::check_longest(r, i);
  detail::check_path(r, eta);
  const int q = r.q;
  const double T = eta.T(), h = T / static_cast<double>(n);
  // Grid values of eta, excluding t = 0 where the lift is singular.
  std::vector<double> ts(n);
  for (size_t k = 0; k < n; ++k) ts[k] = h * static_cast<double>(k + 1);
  std::vector<double> flat = eta.resample(ts);
  const int d = r.dim;
  StringLift out;
  out.x = Vec::Zero(q);
  for (int k = q; k >= 1; --k) {
    const int s = i[k - 1];
    std::vector<double> f(n);
    for (size_t j = 0; j < n; ++j) {
      double g = 0;
      for (int c = 0; c < d; ++c) g += r.coroots(c, s) * flat[j * d + c];
      f[j] = -2 * g / eps;
    }
    // Right-endpoint rule on the first cell, trapezoid afterwards.
    std::vector<double> L(n);
    L[0] = std::log(h) + f[0];
    const double lh = std::log(h / 2);
    for (size_t j = 1; j < n; ++j) L[j] = log_add_exp(L[j - 1], lh + log_add_exp(f[j - 1], f[j]));
    out.x[k - 1] = 0.5 * eps * L[n - 1];
    for (size_t j = 0; j < n; ++j)
      for (int c = 0; c < d; ++c) flat[j * d + c] += 0.5 * eps * L[j] * r.roots(c, s);
  }
  return out;
}

}  // namespace plc
