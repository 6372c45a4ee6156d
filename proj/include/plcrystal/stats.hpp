#pragma once
// Small statistics toolkit: Kolmogorov-Smirnov, batch means, distance correlation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace plc::stats {

inline double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

struct Estimate {
  double mean = 0;
  double se = 0;
};

/// Mean with a batch-means standard error; batches = floor(sqrt(n)) unless given.
inline Estimate batch_means(const std::vector<double>& v, int batches = 0) {
  const size_t n = v.size();
  if (n == 0) return {};
  if (batches <= 0) batches = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(n))));
  batches = std::min<int>(batches, static_cast<int>(n));
  const size_t len = n / static_cast<size_t>(batches);
  std::vector<double> bm;
  for (int b = 0; b < batches; ++b) {
    double s = 0;
    for (size_t k = b * len; k < (b + 1) * len; ++k) s += v[k];
    bm.push_back(s / static_cast<double>(len));
  }
  Estimate e;
  e.mean = mean(v);
  e.se = std::sqrt(variance(bm) / batches);
  return e;
}

/// sup |F_n - F| for a continuous reference cdf.
inline double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

/// Q_KS(t) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 t^2).
inline double kolmogorov_q(double t) {
  if (t < 1e-3) return 1.0;
  if (t < 1.18) {
    // Small-t form: 1 - sqrt(2 pi)/t sum exp(-(2j-1)^2 pi^2 / (8 t^2)).
    double s = 0;
    for (int j = 1; j <= 20; ++j) s += std::exp(-(2 * j - 1) * (2 * j - 1) * M_PI * M_PI / (8 * t * t));
    return std::clamp(1.0 - std::sqrt(2 * M_PI) / t * s, 0.0, 1.0);
  }
  double s = 0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * t * t);
    s += (j % 2 ? 1 : -1) * term;
    if (term < 1e-300) break;
  }
  return std::clamp(2 * s, 0.0, 1.0);
}

/// Asymptotic p-value with the Stephens finite-n correction.
inline double ks_pvalue(double d, size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

struct KsResult {
  double d = 0;
  double p = 0;
};

inline KsResult ks_test(const std::vector<double>& x, const std::function<double(double)>& cdf) {
  KsResult r;
  r.d = ks_statistic(x, cdf);
  r.p = ks_pvalue(r.d, x.size());
  return r;
}

/// Sample distance correlation (Szekely-Rizzo), O(n^2).
inline double distance_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  auto centered = [n](const std::vector<double>& v) {
    std::vector<double> a(n * n), row(n, 0.0);
    double tot = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        a[i * n + j] = std::abs(v[i] - v[j]);
        row[i] += a[i * n + j];
      }
    for (double r : row) tot += r;
    const double dn = static_cast<double>(n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) a[i * n + j] += -row[i] / dn - row[j] / dn + tot / (dn * dn);
    return a;
  };
  std::vector<double> A = centered(x), B = centered(y);
  double xy = 0, xx = 0, yy = 0;
  for (size_t k = 0; k < n * n; ++k) {
    xy += A[k] * B[k];
    xx += A[k] * A[k];
    yy += B[k] * B[k];
  }
  if (xx <= 0 || yy <= 0) return 0.0;
  return std::sqrt(std::max(0.0, xy) / std::sqrt(xx * yy));
}

/// Maximum-likelihood exponential rate.
inline double exp_rate_mle(const std::vector<double>& v) { return 1.0 / mean(v); }

}  // namespace plc::stats
