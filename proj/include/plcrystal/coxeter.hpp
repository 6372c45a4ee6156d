#pragma once
/**
 * @file coxeter.hpp
 * @brief Realizations of finite Coxeter systems and word arithmetic.
 *
 * Simple roots are built with Gram matrix 2B, B(s,s') = -cos(pi/m(s,s')),
 * so every simple root has squared norm 2 and the coroot equals the root
 * under the Euclidean identification.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "plcrystal/error.hpp"

namespace plc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
/// Generator indices, 0-based.
using Word = std::vector<int>;

struct Realization {
  int dim = 0;
  int rank = 0;
  /// 'A', 'B', 'I', 'H', 'R' (explicit roots) or 'X' (explicit matrix).
  char family = 'X';
  int family_param = 0;
  Eigen::MatrixXi coxeter;
  Mat roots;    ///< dim x rank, column s is alpha_s
  Mat coroots;  ///< dim x rank, column s represents alpha_s^vee via dot product
  Mat cartan;   ///< cartan(s,t) = alpha_s^vee(alpha_t)
  std::vector<Vec> positive_roots;
  std::vector<Vec> positive_coroots;
  int q = 0;
  Word w0;
  Mat w0_matrix;
  /// fundamental.col(s) pairs to delta_{s,t} with alpha_t^vee.
  Mat fundamental;
  /// Covector taking value 1 on every simple root; positive roots pair positively.
  Vec height;
  /// j(alpha): lexicographically smallest reduced word of w0 starting with s.
  std::vector<Word> first_words;
  /// Reversal of first_words[s]; ends with s.
  std::vector<Word> last_words;
  /// tilde[s] = s' with -w0 alpha_s = alpha_{s'}.
  std::vector<int> tilde;

  double pair(int s, const Vec& x) const { return coroots.col(s).dot(x); }
  Vec root(int s) const { return roots.col(s); }
  Vec coroot(int s) const { return coroots.col(s); }
  std::string name() const;
};

namespace detail {

inline void check_dim(const Realization& r, const Vec& x) {
  if (x.size() != r.dim)
    throw Error(Errc::DimMismatch,
                "vector of dimension " + std::to_string(x.size()) + ", expected " + std::to_string(r.dim));
}

inline void check_word(const Realization& r, const Word& w) {
  for (int s : w)
    if (s < 0 || s >= r.rank) throw Error(Errc::BadSpec, "generator index out of range: " + std::to_string(s + 1));
}

inline bool same_vec(const Vec& a, const Vec& b, double tol) { return (a - b).lpNorm<Eigen::Infinity>() <= tol; }

}  // namespace detail

inline Vec reflect(const Realization& r, int s, const Vec& x) {
  detail::check_dim(r, x);
  return x - r.pair(s, x) * r.roots.col(s);
}

/// w(x) = s_1(s_2(...s_k(x))).
inline Vec act_word(const Realization& r, const Word& w, const Vec& x) {
  detail::check_dim(r, x);
  detail::check_word(r, w);
  Vec y = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) y -= r.pair(*it, y) * r.roots.col(*it);
  return y;
}

inline Mat word_matrix(const Realization& r, const Word& w) {
  Mat m = Mat::Identity(r.dim, r.dim);
  for (int c = 0; c < r.dim; ++c) m.col(c) = act_word(r, w, m.col(c));
  return m;
}

inline int word_length(const Realization& r, const Word& w) {
  detail::check_word(r, w);
  Mat m = word_matrix(r, w);
  int n = 0;
  for (const Vec& b : r.positive_roots)
    if (r.height.dot(m * b) < 0) ++n;
  return n;
}

inline bool is_reduced(const Realization& r, const Word& w) {
  return word_length(r, w) == static_cast<int>(w.size());
}

inline bool in_chamber(const Realization& r, const Vec& x, double tol) {
  detail::check_dim(r, x);
  for (int s = 0; s < r.rank; ++s)
    if (r.pair(s, x) < -tol) return false;
  return true;
}

inline Word longest_word(const Realization& r) { return r.w0; }

/// Greedy lexicographically smallest reduced word of w0 with the given prefix.
inline Word greedy_longest_word(const Realization& r, const Word& prefix) {
  Vec x = r.fundamental.rowwise().sum();
  Word w;
  for (int s : prefix) {
    if (r.pair(s, x) <= 1e-9) throw Error(Errc::NotReduced, "prefix is not reduced");
    x -= r.pair(s, x) * r.roots.col(s);
    w.push_back(s);
  }
  for (;;) {
    int next = -1;
    for (int s = 0; s < r.rank; ++s)
      if (r.pair(s, x) > 1e-9) {
        next = s;
        break;
      }
    if (next < 0) break;
    x -= r.pair(next, x) * r.roots.col(next);
    w.push_back(next);
  }
  return w;
}

namespace detail {

inline void finish_realization(Realization& r) {
  const int n = r.rank;
  r.cartan = r.coroots.transpose() * r.roots;
  for (int s = 0; s < n; ++s) {
    if (std::abs(r.cartan(s, s) - 2.0) > 1e-12) throw Error(Errc::BadSpec, "alpha^vee(alpha) != 2");
    for (int t = 0; t < n; ++t)
      if (s != t && (r.cartan(s, t) > 1e-12)) throw Error(Errc::BadSpec, "positive off-diagonal pairing");
  }
  // Fundamental weights and the height covector, within span of the roots.
  Mat pinv_c = r.coroots.transpose().completeOrthogonalDecomposition().pseudoInverse();
  r.fundamental = pinv_c;  // dim x rank; coroots^T * fundamental = I
  Mat pinv_r = r.roots.transpose().completeOrthogonalDecomposition().pseudoInverse();
  r.height = pinv_r * Vec::Ones(n);

  // Close (root, coroot) pairs under the simple reflections.
  std::vector<Vec> rts, corts;
  for (int s = 0; s < n; ++s) {
    rts.push_back(r.roots.col(s));
    corts.push_back(r.coroots.col(s));
  }
  for (size_t k = 0; k < rts.size(); ++k) {
    for (int s = 0; s < n; ++s) {
      Vec b = rts[k] - r.coroots.col(s).dot(rts[k]) * r.roots.col(s);
      Vec c = corts[k] - corts[k].dot(r.roots.col(s)) * r.coroots.col(s);
      bool seen = false;
      for (const Vec& e : rts)
        if (same_vec(e, b, 1e-9)) {
          seen = true;
          break;
        }
      if (!seen) {
        rts.push_back(b);
        corts.push_back(c);
        if (rts.size() > 4000) throw Error(Errc::InfiniteGroup, "root orbit does not close");
      }
    }
  }
  r.positive_roots.clear();
  r.positive_coroots.clear();
  for (size_t k = 0; k < rts.size(); ++k)
    if (r.height.dot(rts[k]) > 0) {
      r.positive_roots.push_back(rts[k]);
      r.positive_coroots.push_back(corts[k]);
    }
  r.q = static_cast<int>(r.positive_roots.size());

  if (r.w0.empty() || !is_reduced(r, r.w0) || static_cast<int>(r.w0.size()) != r.q) r.w0 = greedy_longest_word(r, {});
  r.w0_matrix = word_matrix(r, r.w0);

  r.first_words.assign(n, {});
  r.last_words.assign(n, {});
  r.tilde.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    r.first_words[s] = greedy_longest_word(r, {s});
    r.last_words[s] = Word(r.first_words[s].rbegin(), r.first_words[s].rend());
    Vec img = -(r.w0_matrix * r.roots.col(s));
    for (int t = 0; t < n; ++t)
      if (same_vec(img, r.roots.col(t), 1e-9)) r.tilde[s] = t;
    if (r.tilde[s] < 0) throw Error(Errc::BadSpec, "-w0 does not permute the simple roots");
  }
}

inline double bilinear_entry(int m) {
  if (m == 1) return 1.0;
  return -std::cos(std::numbers::pi / m);
}

}  // namespace detail

/// Realization from a Coxeter matrix; entries m(s,s') >= 2 off-diagonal, 0 encodes infinity.
inline Realization realization_from_matrix(const Eigen::MatrixXi& m, const Word& preferred_w0 = {}) {
  const int n = static_cast<int>(m.rows());
  if (n < 1 || m.cols() != n) throw Error(Errc::BadSpec, "Coxeter matrix must be square and nonempty");
  Mat B(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (m(s, t) != m(t, s)) throw Error(Errc::BadSpec, "Coxeter matrix must be symmetric");
      if (s == t && m(s, t) != 1) throw Error(Errc::BadSpec, "diagonal entries must be 1");
      if (s != t && m(s, t) == 0) throw Error(Errc::InfiniteGroup, "infinite label");
      if (s != t && m(s, t) < 2) throw Error(Errc::BadSpec, "off-diagonal entries must be >= 2");
      B(s, t) = detail::bilinear_entry(m(s, t));
    }
  Eigen::SelfAdjointEigenSolver<Mat> es(B);
  if (es.eigenvalues().minCoeff() <= 1e-10) throw Error(Errc::InfiniteGroup, "bilinear form is not positive definite");
  Eigen::LLT<Mat> llt(2.0 * B);
  Mat L = llt.matrixL();
  Realization r;
  r.rank = n;
  r.dim = n;
  r.coxeter = m;
  r.roots = L.transpose();  // column s = row s of L
  r.coroots = r.roots;
  r.w0 = preferred_w0;
  detail::finish_realization(r);
  return r;
}

/// Realization from explicit roots and coroots (columns); used for unequal-length data.
inline Realization realization_from_roots(const Mat& roots, const Mat& coroots) {
  if (roots.rows() != coroots.rows() || roots.cols() != coroots.cols() || roots.cols() < 1)
    throw Error(Errc::BadSpec, "root and coroot matrices must have equal shape");
  Realization r;
  r.dim = static_cast<int>(roots.rows());
  r.rank = static_cast<int>(roots.cols());
  r.family = 'R';
  r.roots = roots;
  r.coroots = coroots;
  const int n = r.rank;
  r.coxeter = Eigen::MatrixXi::Ones(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      double p = coroots.col(s).dot(roots.col(t)) * coroots.col(t).dot(roots.col(s));
      if (p >= 4.0 - 1e-12) throw Error(Errc::InfiniteGroup, "pairing product >= 4");
      double c = std::sqrt(std::max(0.0, p)) / 2.0;
      double m = std::numbers::pi / std::acos(c);
      int mi = static_cast<int>(std::lround(m));
      if (std::abs(m - mi) > 1e-9) throw Error(Errc::BadSpec, "pairings do not match an integer label");
      r.coxeter(s, t) = mi;
    }
  detail::finish_realization(r);
  return r;
}

inline Realization build_A(int n) {
  if (n < 1) throw Error(Errc::BadSpec, "A_n needs n >= 1");
  Eigen::MatrixXi m = Eigen::MatrixXi::Constant(n, n, 2);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = 3;
  Word w;
  for (int b = 1; b <= n; ++b)
    for (int l = b; l >= 1; --l) w.push_back(l - 1);
  Realization r = realization_from_matrix(m, w);
  r.family = 'A';
  r.family_param = n;
  return r;
}

inline Realization build_B(int n) {
  if (n < 2) throw Error(Errc::BadSpec, "B_n needs n >= 2");
  Eigen::MatrixXi m = Eigen::MatrixXi::Constant(n, n, 2);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = 3;
  m(n - 2, n - 1) = m(n - 1, n - 2) = 4;
  Word w;
  for (int k = 0; k < n; ++k)
    for (int s = 0; s < n; ++s) w.push_back(s);
  Realization r = realization_from_matrix(m, w);
  r.family = 'B';
  r.family_param = n;
  return r;
}

inline Realization build_I(int mm) {
  if (mm < 2) throw Error(Errc::BadSpec, "I(m) needs m >= 2");
  Eigen::MatrixXi m(2, 2);
  m << 1, mm, mm, 1;
  Word w;
  for (int k = 0; k < mm; ++k) w.push_back(k % 2);
  Realization r = realization_from_matrix(m, w);
  r.family = 'I';
  r.family_param = mm;
  return r;
}

inline Realization build_H(int n) {
  if (n != 3 && n != 4) throw Error(Errc::BadSpec, "H_n exists for n = 3, 4");
  Eigen::MatrixXi m = Eigen::MatrixXi::Constant(n, n, 2);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  m(0, 1) = m(1, 0) = 5;
  for (int i = 1; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = 3;
  Word w;
  const int reps = n == 3 ? 5 : 15;
  for (int k = 0; k < reps; ++k)
    for (int s = 0; s < n; ++s) w.push_back(s);
  Realization r = realization_from_matrix(m, w);
  r.family = 'H';
  r.family_param = n;
  return r;
}

/// Parses labels such as "A2", "B3", "I5", "I(5)", "H3".
inline Realization build_realization(const std::string& label) {
  std::string s;
  for (char c : label)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '_') s += c;
  if (s.size() < 2) throw Error(Errc::BadSpec, "bad group label '" + label + "'");
  char f = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  int p = 0;
  try {
    size_t used = 0;
    p = std::stoi(s.substr(1), &used);
    if (used != s.size() - 1) throw Error(Errc::BadSpec, "bad group label '" + label + "'");
  } catch (const std::logic_error&) {
    throw Error(Errc::BadSpec, "bad group label '" + label + "'");
  }
  switch (f) {
    case 'A': return build_A(p);
    case 'B': return build_B(p);
    case 'I': return build_I(p);
    case 'H': return build_H(p);
    default: throw Error(Errc::BadSpec, "unknown family in '" + label + "'");
  }
}

inline std::string Realization::name() const {
  switch (family) {
    case 'A': return "A" + std::to_string(family_param);
    case 'B': return "B" + std::to_string(family_param);
    case 'I': return "I(" + std::to_string(family_param) + ")";
    case 'H': return "H" + std::to_string(family_param);
    default: return "rank" + std::to_string(rank);
  }
}

/// Every element of W as a matrix with its sign (-1)^length.
struct GroupElement {
  Mat matrix;
  int sign;
};

inline std::vector<GroupElement> enumerate_group(const Realization& r) {
  Vec x = r.fundamental * Vec::LinSpaced(r.rank, 1.0, 1.0 + 0.173 * (r.rank - 1));
  auto key = [](const Vec& v) {
    std::vector<long long> k(v.size());
    for (int i = 0; i < v.size(); ++i) k[i] = std::llround(v[i] * 1e7);
    return k;
  };
  std::map<std::vector<long long>, size_t> seen;
  std::vector<Vec> orbit{x};
  std::vector<GroupElement> els{{Mat::Identity(r.dim, r.dim), 1}};
  seen[key(x)] = 0;
  for (size_t k = 0; k < orbit.size(); ++k) {
    for (int s = 0; s < r.rank; ++s) {
      Vec y = reflect(r, s, orbit[k]);
      if (!seen.emplace(key(y), orbit.size()).second) continue;
      Mat sm = Mat::Identity(r.dim, r.dim) - r.roots.col(s) * r.coroots.col(s).transpose();
      orbit.push_back(y);
      els.push_back({sm * els[k].matrix, -els[k].sign});
    }
  }
  return els;
}

}  // namespace plc
