#pragma once
// Random PL paths and random points of string cones for property checks.

#include <algorithm>

#include "plcrystal/rng.hpp"
#include "plcrystal/stringparam.hpp"

namespace plc {

/// A path on [0,T] with k >= 1 segments, Gaussian increments and jittered interior times.
inline PLPath random_path(int dim, int k, Rng& rng, double T = 1.0) {
  std::vector<double> ts{0.0};
  std::vector<double> cuts;
  for (int i = 0; i + 1 < k; ++i) cuts.push_back(rng.uniform(0.02, 0.98) * T);
  std::sort(cuts.begin(), cuts.end());
  for (double c : cuts)
    if (c - ts.back() > 1e-3 * T && T - c > 1e-3 * T) ts.push_back(c);
  ts.push_back(T);
  std::vector<Vec> pts{Vec::Zero(dim)};
  for (size_t i = 1; i < ts.size(); ++i) pts.push_back(pts.back() + rng.normal_vec(dim));
  return PLPath(ts, pts);
}

/// A path with between 1 and max_segments segments.
inline PLPath random_path_upto(int dim, int max_segments, Rng& rng, double T = 1.0) {
  return random_path(dim, 1 + rng.index(max_segments), rng, T);
}

/// A dominant path: P_{w0} of a random path.
inline PLPath random_dominant_path(const Realization& r, int max_segments, Rng& rng) {
  return pitman_w0(r, random_path_upto(r.dim, max_segments, rng));
}

/// A point of the dihedral cone: x_k / a_k nondecreasing in k.
inline Vec random_dihedral_cone_point(int m, Rng& rng, double scale = 1.0) {
  Vec x(m);
  double ratio = 0;
  for (int k = 1; k <= m; ++k) {
    if (k <= m - 1) ratio += rng.uniform() < 0.15 ? 0.0 : scale * rng.uniform();
    const double ak = dihedral_a(m, k);
    x[k - 1] = k == m ? scale * 2 * rng.uniform() : ratio * ak;
  }
  return x;
}

}  // namespace plc
