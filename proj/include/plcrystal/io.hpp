#pragma once
// File formats: paths and group specs as JSON, vectors and words as comma lists.
// Words are 1-based on input and output; in memory they are 0-based.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "plcrystal/coxeter.hpp"
#include "plcrystal/plpath.hpp"

namespace plc::io {

using json = nlohmann::ordered_json;

inline constexpr int SCHEMA = 1;

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw Error(Errc::BadSpec, "empty entry in list '" + s + "'");
    item = item.substr(a, b - a + 1);
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !std::isfinite(v)) throw Error(Errc::BadSpec, "not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(Errc::BadSpec, "empty list");
  return out;
}

inline Vec parse_vec(const std::string& s) {
  std::vector<double> v = parse_list(s);
  return Eigen::Map<Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

/// "1,2,1" -> {0,1,0}.
inline Word parse_word(const std::string& s) {
  Word w;
  for (double v : parse_list(s)) {
    if (v != std::floor(v) || v < 1) throw Error(Errc::BadSpec, "word letters are positive integers");
    w.push_back(static_cast<int>(v) - 1);
  }
  return w;
}

inline json word_json(const Word& w) {
  json j = json::array();
  for (int s : w) j.push_back(s + 1);
  return j;
}

inline json vec_json(const Vec& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

inline json path_json(const PLPath& p) {
  json j;
  j["schema"] = SCHEMA;
  j["dim"] = p.dim();
  j["times"] = p.times();
  json pts = json::array();
  for (size_t i = 0; i < p.size(); ++i) pts.push_back(vec_json(p.point(i)));
  j["points"] = pts;
  return j;
}

inline PLPath path_from_json(const json& j) {
  try {
    std::vector<double> t = j.at("times").get<std::vector<double>>();
    std::vector<Vec> pts;
    for (const auto& p : j.at("points")) {
      std::vector<double> v = p.get<std::vector<double>>();
      pts.push_back(Eigen::Map<Vec>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    if (pts.empty()) throw Error(Errc::BadSpec, "path has no points");
    for (const Vec& v : pts)
      if (v.size() != pts[0].size()) throw Error(Errc::BadSpec, "points of mixed dimension");
    return PLPath(t, pts);
  } catch (const json::exception& e) {
    throw Error(Errc::BadSpec, std::string("malformed path JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::BadSpec, path + ": " + e.what());
  }
}

inline PLPath read_path(const std::string& path) { return path_from_json(read_json(path)); }

/// Writes to a sibling temporary file, then renames over the target.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(Errc::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(Errc::IoError, "rename to " + path + " failed: " + ec.message());
}

/// A label such as "A2", "I(5)", "H3", or a JSON file holding one of
/// {"family":"I","m":5}, {"family":"A","n":2}, {"coxeter_matrix":[[1,5],[5,1]]},
/// {"label":"B3"} or {"roots":[..],"coroots":[..]}.
inline Realization read_group(const std::string& spec) {
  if (!std::filesystem::exists(spec)) return build_realization(spec);
  json j = read_json(spec);
  try {
    if (j.contains("label")) return build_realization(j["label"].get<std::string>());
    if (j.contains("family")) {
      const std::string f = j["family"].get<std::string>();
      if (f == "I") return build_realization("I(" + std::to_string(j.at("m").get<int>()) + ")");
      return build_realization(f + std::to_string(j.at("n").get<int>()));
    }
    if (j.contains("coxeter_matrix") || j.contains("coxeter")) {
      auto rows = j[j.contains("coxeter_matrix") ? "coxeter_matrix" : "coxeter"].get<std::vector<std::vector<int>>>();
      Eigen::MatrixXi m(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
      for (size_t a = 0; a < rows.size(); ++a) {
        if (rows[a].size() != rows.size()) throw Error(Errc::BadSpec, "Coxeter matrix must be square");
        for (size_t b = 0; b < rows.size(); ++b) m(static_cast<int>(a), static_cast<int>(b)) = rows[a][b];
      }
      return realization_from_matrix(m);
    }
    if (j.contains("roots") && j.contains("coroots")) {
      auto ro = j["roots"].get<std::vector<std::vector<double>>>();
      auto co = j["coroots"].get<std::vector<std::vector<double>>>();
      if (ro.empty() || ro.size() != co.size()) throw Error(Errc::BadSpec, "roots and coroots must match");
      const size_t dim = ro[0].size();
      Mat R(dim, ro.size()), C(dim, co.size());
      for (size_t s = 0; s < ro.size(); ++s) {
        if (ro[s].size() != dim || co[s].size() != dim) throw Error(Errc::BadSpec, "ragged root data");
        for (size_t d = 0; d < dim; ++d) {
          R(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(s)) = ro[s][d];
          C(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(s)) = co[s][d];
        }
      }
      return realization_from_roots(R, C);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::BadSpec, std::string("malformed group JSON: ") + e.what());
  }
  throw Error(Errc::BadSpec, "group JSON needs family, coxeter_matrix, label or roots/coroots");
}

/// Decimal form that round-trips through strtod.
inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace plc::io
