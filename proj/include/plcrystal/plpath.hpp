#pragma once
// Piecewise-linear paths with exact running minima of linear functionals.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "plcrystal/coxeter.hpp"
#include "plcrystal/error.hpp"

namespace plc {

/// Path equality threshold in sup norm.
inline constexpr double EPS_PATH = 1e-9;

/// Scalar PL function; times strictly increasing.
struct ScalarPL {
  std::vector<double> t;
  std::vector<double> v;

  double T() const { return t.back(); }
  size_t size() const { return t.size(); }
  double eval(double s) const {
    if (s <= t.front()) return v.front();
    if (s >= t.back()) return v.back();
    auto it = std::upper_bound(t.begin(), t.end(), s);
    size_t i = static_cast<size_t>(it - t.begin()) - 1;
    double f = (s - t[i]) / (t[i + 1] - t[i]);
    return v[i] + f * (v[i + 1] - v[i]);
  }
  double min() const { return *std::min_element(v.begin(), v.end()); }
};

class PLPath {
 public:
  PLPath() = default;

  /// Validates and stores; point 0 must vanish.
  PLPath(std::vector<double> times, const std::vector<Vec>& points) {
    if (times.size() < 2 || times.size() != points.size())
      throw Error(Errc::BadSpec, "a path needs at least two breakpoints and matching points");
    dim_ = static_cast<int>(points[0].size());
    if (dim_ < 1) throw Error(Errc::BadSpec, "path dimension must be positive");
    t_ = std::move(times);
    x_.resize(t_.size() * dim_);
    for (size_t i = 0; i < points.size(); ++i) {
      if (points[i].size() != dim_) throw Error(Errc::DimMismatch, "inconsistent point dimension");
      for (int d = 0; d < dim_; ++d) x_[i * dim_ + d] = points[i][d];
    }
    validate();
  }

  /// Straight segment from 0 to v on [0,T].
  static PLPath straight(const Vec& v, double T = 1.0) {
    return PLPath({0.0, T}, {Vec::Zero(v.size()), v});
  }

  static PLPath from_flat(int dim, std::vector<double> t, std::vector<double> x) {
    PLPath p;
    p.dim_ = dim;
    p.t_ = std::move(t);
    p.x_ = std::move(x);
    return p;
  }

  int dim() const { return dim_; }
  size_t size() const { return t_.size(); }
  double T() const { return t_.back(); }
  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& flat() const { return x_; }
  Eigen::Map<const Vec> point(size_t i) const { return Eigen::Map<const Vec>(x_.data() + i * dim_, dim_); }
  Vec endpoint() const { return point(size() - 1); }
  std::vector<Vec> points() const {
    std::vector<Vec> out;
    for (size_t i = 0; i < size(); ++i) out.emplace_back(point(i));
    return out;
  }

  Vec eval(double s) const {
    if (s < -1e-12 || s > T() + 1e-12) throw Error(Errc::OutOfDomain, "time outside [0,T]");
    if (s <= 0) return point(0);
    if (s >= T()) return endpoint();
    auto it = std::upper_bound(t_.begin(), t_.end(), s);
    size_t i = static_cast<size_t>(it - t_.begin()) - 1;
    double f = (s - t_[i]) / (t_[i + 1] - t_[i]);
    return point(i) + f * (point(i + 1) - point(i));
  }

  /// Values f(p(t_i)) at the breakpoints.
  ScalarPL functional(const Vec& f) const {
    if (f.size() != dim_) throw Error(Errc::DimMismatch, "covector dimension");
    ScalarPL g;
    g.t = t_;
    g.v.resize(size());
    for (size_t i = 0; i < size(); ++i) g.v[i] = point(i).dot(f);
    return g;
  }

  /// Values at sorted times inside [0,T], row-major flat.
  std::vector<double> resample(const std::vector<double>& ts) const {
    std::vector<double> out(ts.size() * dim_);
    size_t seg = 0;
    for (size_t k = 0; k < ts.size(); ++k) {
      double s = ts[k];
      while (seg + 2 < t_.size() && t_[seg + 1] < s) ++seg;
      double a = t_[seg], b = t_[seg + 1];
      double f = s <= a ? 0.0 : (s >= b ? 1.0 : (s - a) / (b - a));
      for (int d = 0; d < dim_; ++d)
        out[k * dim_ + d] = x_[seg * dim_ + d] + f * (x_[(seg + 1) * dim_ + d] - x_[seg * dim_ + d]);
    }
    return out;
  }

 private:
  void validate() {
    if (t_[0] != 0.0) throw Error(Errc::BadSpec, "first time must be 0");
    for (size_t i = 1; i < t_.size(); ++i)
      if (!(t_[i] > t_[i - 1])) throw Error(Errc::BadSpec, "times must be strictly increasing");
    for (int d = 0; d < dim_; ++d) {
      if (std::abs(x_[d]) > 1e-12) throw Error(Errc::BadSpec, "path must start at 0");
      x_[d] = 0.0;
    }
    for (double v : x_)
      if (!std::isfinite(v)) throw Error(Errc::BadSpec, "non-finite coordinate");
  }

  int dim_ = 0;
  std::vector<double> t_;
  std::vector<double> x_;
};

namespace detail {

/// Sorted union of two time grids; near-duplicates collapse.
inline std::vector<double> merge_times(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  const double tol = 1e-14 * std::max(1.0, out.back());
  std::vector<double> u;
  u.reserve(out.size());
  for (double s : out)
    if (u.empty() || s - u.back() > tol) u.push_back(s);
  if (u.back() != out.back()) u.back() = out.back();
  return u;
}

inline bool near_same_T(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace detail

/// Removes breakpoints joining collinear segments (slope tolerance 1e-12, relative).
inline PLPath canonicalize(const PLPath& p) {
  const int dim = p.dim();
  const auto& t = p.times();
  const auto& x = p.flat();
  const size_t n = t.size();
  if (n <= 2) return p;
  std::vector<double> nt{t[0]};
  std::vector<double> nx(x.begin(), x.begin() + dim);
  size_t last = 0;
  for (size_t i = 1; i + 1 < n; ++i) {
    double d1 = t[i] - t[last], d2 = t[i + 1] - t[i];
    double diff = 0, scale = 1.0;
    for (int d = 0; d < dim; ++d) {
      double s1 = (x[i * dim + d] - x[last * dim + d]) / d1;
      double s2 = (x[(i + 1) * dim + d] - x[i * dim + d]) / d2;
      diff = std::max(diff, std::abs(s1 - s2));
      scale = std::max({scale, std::abs(s1), std::abs(s2)});
    }
    if (diff <= 1e-12 * scale) continue;
    nt.push_back(t[i]);
    nx.insert(nx.end(), x.begin() + i * dim, x.begin() + (i + 1) * dim);
    last = i;
  }
  nt.push_back(t[n - 1]);
  nx.insert(nx.end(), x.begin() + (n - 1) * dim, x.end());
  return PLPath::from_flat(dim, std::move(nt), std::move(nx));
}

/// Running infimum from the left, with crossing breakpoints inserted.
inline ScalarPL prefix_min(const ScalarPL& g) {
  ScalarPL m;
  m.t.reserve(g.size() + g.size() / 2);
  m.v.reserve(g.size() + g.size() / 2);
  double cur = g.v[0];
  m.t.push_back(g.t[0]);
  m.v.push_back(cur);
  for (size_t i = 0; i + 1 < g.size(); ++i) {
    double a = g.v[i], b = g.v[i + 1];
    if (b >= cur) {
      m.t.push_back(g.t[i + 1]);
      m.v.push_back(cur);
      continue;
    }
    if (a > cur) {
      double ts = g.t[i] + (a - cur) / (a - b) * (g.t[i + 1] - g.t[i]);
      if (ts > m.t.back() && ts < g.t[i + 1]) {
        m.t.push_back(ts);
        m.v.push_back(cur);
      }
    }
    cur = b;
    m.t.push_back(g.t[i + 1]);
    m.v.push_back(cur);
  }
  return m;
}

inline ScalarPL reverse_time(const ScalarPL& g) {
  ScalarPL r;
  const double T = g.T();
  r.t.resize(g.size());
  r.v.resize(g.size());
  for (size_t i = 0; i < g.size(); ++i) {
    r.t[i] = T - g.t[g.size() - 1 - i];
    r.v[i] = g.v[g.size() - 1 - i];
  }
  r.t.front() = 0.0;
  return r;
}

/// Running infimum from the right: t -> inf_{t<=s<=T} g(s).
inline ScalarPL suffix_min(const ScalarPL& g) {
  const size_t n = g.size();
  std::vector<double> rt{g.t[n - 1]}, rv{g.v[n - 1]};
  double cur = g.v[n - 1];
  for (size_t i = n - 1; i > 0; --i) {
    double a = g.v[i], b = g.v[i - 1];
    if (b >= cur) {
      rt.push_back(g.t[i - 1]);
      rv.push_back(cur);
      continue;
    }
    if (a > cur) {
      double ts = g.t[i] - (a - cur) / (a - b) * (g.t[i] - g.t[i - 1]);
      if (ts < rt.back() && ts > g.t[i - 1]) {
        rt.push_back(ts);
        rv.push_back(cur);
      }
    }
    cur = b;
    rt.push_back(g.t[i - 1]);
    rv.push_back(cur);
  }
  ScalarPL m;
  m.t.assign(rt.rbegin(), rt.rend());
  m.v.assign(rv.rbegin(), rv.rend());
  return m;
}

inline ScalarPL prefix_min(const PLPath& p, const Vec& f) { return prefix_min(p.functional(f)); }
inline ScalarPL suffix_min(const PLPath& p, const Vec& f) { return suffix_min(p.functional(f)); }

/// Pointwise min(g, c), inserting crossing breakpoints.
inline ScalarPL min_const(const ScalarPL& g, double c) {
  ScalarPL m;
  m.t.push_back(g.t[0]);
  m.v.push_back(std::min(g.v[0], c));
  for (size_t i = 0; i + 1 < g.size(); ++i) {
    double a = g.v[i], b = g.v[i + 1];
    if ((a < c && b > c) || (a > c && b < c)) {
      double ts = g.t[i] + (a - c) / (a - b) * (g.t[i + 1] - g.t[i]);
      if (ts > m.t.back() && ts < g.t[i + 1]) {
        m.t.push_back(ts);
        m.v.push_back(c);
      }
    }
    m.t.push_back(g.t[i + 1]);
    m.v.push_back(std::min(b, c));
  }
  return m;
}

/// Pointwise a*g + b*h on the union grid.
inline ScalarPL combine(double a, const ScalarPL& g, double b, const ScalarPL& h) {
  ScalarPL r;
  r.t = detail::merge_times(g.t, h.t);
  r.v.resize(r.t.size());
  size_t i = 0, j = 0;
  for (size_t k = 0; k < r.t.size(); ++k) {
    double s = r.t[k];
    while (i + 2 < g.t.size() && g.t[i + 1] < s) ++i;
    while (j + 2 < h.t.size() && h.t[j + 1] < s) ++j;
    auto lerp = [s](const ScalarPL& f, size_t seg) {
      double ta = f.t[seg], tb = f.t[seg + 1];
      double w = s <= ta ? 0.0 : (s >= tb ? 1.0 : (s - ta) / (tb - ta));
      return f.v[seg] + w * (f.v[seg + 1] - f.v[seg]);
    };
    r.v[k] = a * lerp(g, i) + b * lerp(h, j);
  }
  return r;
}

/// p(t) - c(t) * a on the union of both grids, canonicalized.
inline PLPath subtract_along(const PLPath& p, const ScalarPL& c, const Vec& a) {
  const int dim = p.dim();
  std::vector<double> ts = detail::merge_times(p.times(), c.t);
  std::vector<double> xs = p.resample(ts);
  size_t j = 0;
  for (size_t k = 0; k < ts.size(); ++k) {
    double s = ts[k];
    while (j + 2 < c.t.size() && c.t[j + 1] < s) ++j;
    double ta = c.t[j], tb = c.t[j + 1];
    double w = s <= ta ? 0.0 : (s >= tb ? 1.0 : (s - ta) / (tb - ta));
    double cv = c.v[j] + w * (c.v[j + 1] - c.v[j]);
    if (k == 0) cv = 0.0;
    for (int d = 0; d < dim; ++d) xs[k * dim + d] -= cv * a[d];
  }
  for (int d = 0; d < dim; ++d) xs[d] = 0.0;
  return canonicalize(PLPath::from_flat(dim, std::move(ts), std::move(xs)));
}

/// (p1 * p2)(t) = p1(2t) on [0,T/2], p1(T) + p2(2t-T) on [T/2,T].
inline PLPath concat_star(const PLPath& p1, const PLPath& p2) {
  if (p1.dim() != p2.dim()) throw Error(Errc::DimMismatch, "concatenation of paths of different dimension");
  if (!detail::near_same_T(p1.T(), p2.T())) throw Error(Errc::DomainMismatch, "concatenation needs a common T");
  const int dim = p1.dim();
  const double T = p1.T();
  std::vector<double> t, x;
  for (size_t i = 0; i < p1.size(); ++i) {
    t.push_back(p1.times()[i] / 2);
    for (int d = 0; d < dim; ++d) x.push_back(p1.flat()[i * dim + d]);
  }
  Vec e = p1.endpoint();
  for (size_t i = 1; i < p2.size(); ++i) {
    t.push_back(T / 2 + p2.times()[i] / 2);
    for (int d = 0; d < dim; ++d) x.push_back(e[d] + p2.flat()[i * dim + d]);
  }
  t.back() = T;
  return canonicalize(PLPath::from_flat(dim, std::move(t), std::move(x)));
}

/// Inverse of concat_star: the two halves rescaled to [0,T].
inline std::pair<PLPath, PLPath> split_star(const PLPath& p) {
  const int dim = p.dim();
  const double T = p.T(), h = T / 2;
  std::vector<double> grid = detail::merge_times(p.times(), {h});
  std::vector<double> xs = p.resample(grid);
  size_t mid = static_cast<size_t>(std::lower_bound(grid.begin(), grid.end(), h - 1e-14 * std::max(1.0, T)) - grid.begin());
  std::vector<double> t1, x1, t2, x2;
  for (size_t k = 0; k <= mid; ++k) {
    t1.push_back(2 * grid[k]);
    for (int d = 0; d < dim; ++d) x1.push_back(xs[k * dim + d]);
  }
  t1.back() = T;
  for (size_t k = mid; k < grid.size(); ++k) {
    t2.push_back(2 * (grid[k] - grid[mid]));
    for (int d = 0; d < dim; ++d) x2.push_back(xs[k * dim + d] - xs[mid * dim + d]);
  }
  t2.front() = 0.0;
  t2.back() = T;
  return {canonicalize(PLPath::from_flat(dim, std::move(t1), std::move(x1))),
          canonicalize(PLPath::from_flat(dim, std::move(t2), std::move(x2)))};
}

/// kappa p(t) = p(T-t) - p(T).
inline PLPath kappa_reverse(const PLPath& p) {
  const int dim = p.dim();
  const size_t n = p.size();
  const double T = p.T();
  Vec e = p.endpoint();
  std::vector<double> t(n), x(n * dim);
  for (size_t i = 0; i < n; ++i) {
    t[i] = T - p.times()[n - 1 - i];
    for (int d = 0; d < dim; ++d) x[i * dim + d] = p.flat()[(n - 1 - i) * dim + d] - e[d];
  }
  t.front() = 0.0;
  t.back() = T;
  for (int d = 0; d < dim; ++d) x[d] = 0.0;
  return PLPath::from_flat(dim, std::move(t), std::move(x));
}

/// Applies a linear map pointwise.
inline PLPath map_linear(const Mat& m, const PLPath& p) {
  if (m.cols() != p.dim()) throw Error(Errc::DimMismatch, "linear map dimension");
  const int od = static_cast<int>(m.rows());
  std::vector<double> x(p.size() * od);
  for (size_t i = 0; i < p.size(); ++i) {
    Vec y = m * p.point(i);
    for (int d = 0; d < od; ++d) x[i * od + d] = y[d];
  }
  return canonicalize(PLPath::from_flat(od, p.times(), std::move(x)));
}

/// S p = -w0 kappa p.
inline PLPath schutz_S_raw(const Realization& r, const PLPath& p) {
  if (p.dim() != r.dim) throw Error(Errc::DimMismatch, "path dimension");
  return map_linear(-r.w0_matrix, kappa_reverse(p));
}

inline PLPath scale(const PLPath& p, double lambda) {
  if (!(lambda > 0)) throw Error(Errc::OutOfRange, "scale factor must be positive");
  std::vector<double> x = p.flat();
  for (double& v : x) v *= lambda;
  return PLPath::from_flat(p.dim(), p.times(), std::move(x));
}

/// Time-rescaled copy on [0, T*c].
inline PLPath rescale_time(const PLPath& p, double c) {
  std::vector<double> t = p.times();
  for (double& s : t) s *= c;
  return PLPath::from_flat(p.dim(), std::move(t), p.flat());
}

/// Exact sup-norm distance (Euclidean norm) over the merged breakpoints.
inline double sup_distance(const PLPath& a, const PLPath& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimMismatch, "paths of different dimension");
  if (!detail::near_same_T(a.T(), b.T())) throw Error(Errc::DomainMismatch, "paths on different intervals");
  std::vector<double> ts = detail::merge_times(a.times(), b.times());
  std::vector<double> xa = a.resample(ts), xb = b.resample(ts);
  double best = 0;
  const int dim = a.dim();
  for (size_t k = 0; k < ts.size(); ++k) {
    double s = 0;
    for (int d = 0; d < dim; ++d) {
      double e = xa[k * dim + d] - xb[k * dim + d];
      s += e * e;
    }
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

}  // namespace plc
