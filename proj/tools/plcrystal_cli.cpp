// plcrystal: command-line front end for the path, crystal and DH modules.
//
// Exit codes: 0 success, 2 validation error (one line on stderr), 1 internal failure.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "plcrystal/checks.hpp"
#include "plcrystal/io.hpp"

namespace {

using plc::Errc;
using plc::Error;
using plc::Mat;
using plc::PLPath;
using plc::Realization;
using plc::Vec;
using plc::Word;
using json = plc::io::json;

struct Options {
  std::string group = "A2";
  std::string word, to, path, lambda, mu, z, x, eps, out, format, op = "e", variant = "tilde", expr;
  int root = 1;
  long samples = 100000;
  std::uint64_t seed = 0;
  double tol = plc::EPS_PATH;
  bool pairings = false, quick = false, strict = false;
};

const char* CSV_DOC =
    "CSV outputs:\n"
    "  dh-sample   header v1..vd; one weight lambda - sum x_k alpha_{i_k} per row\n"
    "  lr-sample   header v1..vd; one accepted weight in M^{lambda,mu} per row\n"
    "  lift-check  A1: eps,T_residual[,H_residual]; rank 2: eps,string_residual\n";

// ---------------------------------------------------------------------------

struct Context {
  const Options& o;
  Realization r;

  explicit Context(const Options& opt) : o(opt), r(plc::io::read_group(opt.group)) {}

  Word word() const {
    if (o.word.empty()) return r.w0;
    Word w = plc::io::parse_word(o.word);
    plc::detail::check_word(r, w);
    return w;
  }
  Word target_word() const {
    if (o.to.empty()) throw Error(Errc::BadSpec, "--to is required");
    Word w = plc::io::parse_word(o.to);
    plc::detail::check_word(r, w);
    return w;
  }
  PLPath path() const {
    if (o.path.empty()) throw Error(Errc::BadSpec, "--path is required");
    PLPath p = plc::io::read_path(o.path);
    plc::detail::check_path(r, p);
    return p;
  }
  /// A chamber vector in ambient coordinates, or in coroot pairings under --pairings.
  Vec chamber_vec(const std::string& s, const char* flag) const {
    if (s.empty()) throw Error(Errc::BadSpec, std::string(flag) + " is required");
    Vec v = plc::io::parse_vec(s);
    if (o.pairings) {
      if (v.size() != r.rank) throw Error(Errc::DimMismatch, std::string(flag) + " needs one pairing per simple root");
      return r.fundamental * v;
    }
    plc::detail::check_dim(r, v);
    return v;
  }
  Vec ambient_vec(const std::string& s, const char* flag) const {
    if (s.empty()) throw Error(Errc::BadSpec, std::string(flag) + " is required");
    Vec v = plc::io::parse_vec(s);
    plc::detail::check_dim(r, v);
    return v;
  }
  int root() const {
    if (o.root < 1 || o.root > r.rank) throw Error(Errc::OutOfRange, "--root must lie in 1.." + std::to_string(r.rank));
    return o.root - 1;
  }
  std::string format(const char* fallback) const {
    std::string f = o.format.empty() ? fallback : o.format;
    if (f != "json" && f != "csv") throw Error(Errc::BadSpec, "--format must be json or csv");
    return f;
  }
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) std::cout << text << std::flush;
  else plc::io::write_atomic(o.out, text);
}

void emit(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

std::string csv_rows(const Mat& cols) {
  std::ostringstream ss;
  for (Eigen::Index d = 0; d < cols.rows(); ++d) ss << (d ? "," : "") << "v" << d + 1;
  ss << "\n";
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    for (Eigen::Index d = 0; d < cols.rows(); ++d) ss << (d ? "," : "") << plc::io::fmt(cols(d, c));
    ss << "\n";
  }
  return ss.str();
}

json samples_json(const Mat& cols) {
  json rows = json::array();
  for (Eigen::Index c = 0; c < cols.cols(); ++c) rows.push_back(plc::io::vec_json(cols.col(c)));
  json j;
  j["schema"] = plc::io::SCHEMA;
  j["samples"] = rows;
  return j;
}

json ghost_json() {
  json j;
  j["schema"] = plc::io::SCHEMA;
  j["ghost"] = true;
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_pitman(const Options& o) {
  Context c(o);
  emit(o, plc::io::path_json(plc::pitman_word(c.r, c.word(), c.path())));
}

void cmd_littelmann(const Options& o) {
  Context c(o);
  if (o.x.empty()) throw Error(Errc::BadSpec, "--x is required");
  const double x = plc::io::parse_list(o.x).at(0);
  const int s = c.root();
  PLPath p = c.path();
  plc::GhostOr out;
  if (o.op == "e") out = plc::littelmann_e(c.r, s, x, p);
  else if (o.op == "f") out = plc::littelmann_f(c.r, s, x, p);
  else if (o.op == "h") out = plc::littelmann_h(c.r, s, x, p);
  else throw Error(Errc::BadSpec, "--op must be e, f or h");
  emit(o, out ? plc::io::path_json(*out) : ghost_json());
}

void cmd_string_coords(const Options& o) {
  Context c(o);
  Word w = c.word();
  plc::StringChain ch = plc::string_chain(c.r, w, c.path());
  json j;
  j["schema"] = plc::io::SCHEMA;
  j["word"] = plc::io::word_json(w);
  j["coords"] = plc::io::vec_json(ch.x);
  j["lambda"] = plc::io::vec_json(ch.partial[0].endpoint());
  emit(o, j);
}

void cmd_inverse_string(const Options& o) {
  Context c(o);
  Word w = c.word();
  PLPath pi = o.path.empty() ? PLPath::straight(c.chamber_vec(o.lambda, "--lambda or --path")) : c.path();
  if (o.x.empty()) throw Error(Errc::BadSpec, "--x is required");
  Vec x = plc::io::parse_vec(o.x);
  plc::detail::check_longest(c.r, w);
  if (!plc::in_chamber_path(c.r, pi)) throw Error(Errc::NotDominant, "the highest weight path must be dominant");
  if (x.size() != c.r.q) throw Error(Errc::DimMismatch, "--x needs " + std::to_string(c.r.q) + " coordinates");
  auto eta = plc::try_inverse_string(c.r, w, pi, x, o.tol);
  if (!eta) throw Error(Errc::NotInPolytope, "coordinates are outside the string polytope");
  emit(o, plc::io::path_json(*eta));
}

void cmd_transition(const Options& o) {
  Context c(o);
  Word i = c.word(), j = c.target_word();
  if (o.x.empty()) throw Error(Errc::BadSpec, "--x is required");
  Vec x = plc::io::parse_vec(o.x);
  if (x.size() != c.r.q) throw Error(Errc::DimMismatch, "--x needs " + std::to_string(c.r.q) + " coordinates");
  Vec lambda = o.lambda.empty() ? plc::aux_lambda(c.r, i, x) : c.chamber_vec(o.lambda, "--lambda");
  Vec y = plc::transition(c.r, i, j, lambda, x);
  json out;
  out["schema"] = plc::io::SCHEMA;
  out["from"] = plc::io::word_json(i);
  out["to"] = plc::io::word_json(j);
  out["coords"] = plc::io::vec_json(y);
  emit(o, out);
}

void cmd_polytope(const Options& o) {
  Context c(o);
  plc::Polytope P = plc::polytope(c.r, c.word(), c.chamber_vec(o.lambda, "--lambda"));
  json j;
  j["schema"] = plc::io::SCHEMA;
  if (!P.explicit_cone) {
    j["oracle"] = true;
  } else {
    json A = json::array();
    for (Eigen::Index k = 0; k < P.A.rows(); ++k) A.push_back(plc::io::vec_json(P.A.row(k).transpose()));
    j["A"] = A;
    j["b"] = plc::io::vec_json(P.b);
  }
  emit(o, j);
}

void cmd_schutzenberger(const Options& o) {
  Context c(o);
  PLPath p = c.path();
  PLPath out;
  if (o.variant == "S") out = plc::schutz_S_raw(c.r, p);
  else if (o.variant == "I") out = plc::schutz_I(c.r, p);
  else if (o.variant == "tilde") out = plc::schutz_tilde(c.r, p);
  else throw Error(Errc::BadSpec, "--variant must be S, I or tilde");
  emit(o, plc::io::path_json(out));
}

void cmd_waction(const Options& o) {
  Context c(o);
  emit(o, plc::io::path_json(plc::w_action_word(c.r, c.word(), c.path())));
}

plc::SamplerConfig sampler(const Options& o) {
  if (o.samples < 1) throw Error(Errc::OutOfRange, "-n must be positive");
  plc::SamplerConfig cfg;
  cfg.n = o.samples;
  cfg.seed = o.seed;
  return cfg;
}

void cmd_dh_sample(const Options& o) {
  Context c(o);
  Mat W = plc::dh_sample(c.r, c.word(), c.chamber_vec(o.lambda, "--lambda"), sampler(o));
  if (c.format("csv") == "csv") emit(o, csv_rows(W));
  else emit(o, samples_json(W));
}

void cmd_dh_laplace(const Options& o) {
  Context c(o);
  plc::DHContext ctx(c.r);
  Vec lambda = c.chamber_vec(o.lambda, "--lambda");
  Vec z = c.ambient_vec(o.z, "--z");
  plc::LaplaceReport rep = plc::laplace_check(ctx, c.word(), lambda, z, sampler(o));
  json j;
  j["schema"] = plc::io::SCHEMA;
  j["mc"] = rep.mc;
  j["se"] = rep.se;
  j["closed_form"] = rep.closed_form;
  j["z_score"] = rep.z_score;
  emit(o, j);
}

void cmd_lr_sample(const Options& o) {
  Context c(o);
  plc::LRReport rep =
      plc::lr_sample(c.r, c.word(), c.chamber_vec(o.lambda, "--lambda"), c.chamber_vec(o.mu, "--mu"), sampler(o));
  if (c.format("csv") == "csv") {
    emit(o, csv_rows(rep.weights));
    return;
  }
  json j = samples_json(rep.weights);
  j["acceptance"] = rep.acceptance;
  j["gamma_mass"] = rep.gamma_mass.mean;
  j["gamma_mass_se"] = rep.gamma_mass.se;
  j["gamma_mass_normalized"] = rep.gamma_mass_normalized.mean;
  emit(o, j);
}

void cmd_braid_check(const Options& o) {
  Context c(o);
  double d = 0;
  long count = 0;
  if (!o.path.empty()) {
    d = plc::checks::braid_defect(c.r, c.path());
    count = 1;
  } else {
    plc::Rng rng(o.seed);
    for (count = 0; count < o.samples; ++count)
      d = std::max(d, plc::checks::braid_defect(c.r, plc::random_path_upto(c.r.dim, 8, rng)));
  }
  json j;
  j["schema"] = plc::io::SCHEMA;
  j["group"] = c.r.name();
  j["paths"] = count;
  j["max_dev"] = d;
  j["pass"] = d <= o.tol;
  emit(o, j);
}

void cmd_tropicalize(const Options& o) {
  if (o.expr.empty()) throw Error(Errc::BadSpec, "--expr is required");
  plc::SFPtr e = plc::parse_sf(o.expr);
  const std::string t = plc::render_maxplus(*plc::tropicalize(*e));
  if (o.format == "json") {
    json j;
    j["schema"] = plc::io::SCHEMA;
    j["expr"] = o.expr;
    j["tropical"] = t;
    emit(o, j);
  } else {
    emit(o, t + "\n");
  }
}

void cmd_lift_check(const Options& o) {
  Context c(o);
  if (o.eps.empty()) throw Error(Errc::BadSpec, "--eps is required");
  std::vector<double> eps = plc::io::parse_list(o.eps);
  for (double e : eps)
    if (!(e > 0)) throw Error(Errc::OutOfRange, "--eps values must be positive");
  PLPath eta = c.path();
  std::ostringstream ss;
  if (c.r.rank == 1) {
    const size_t n = static_cast<size_t>(std::max(16L, o.samples));
    plc::Grid a = plc::sample_grid(eta.functional(c.r.coroots.col(0)), n);
    const double tmin = 0.1 * a.T;
    plc::Grid pit = plc::pitman_scalar(a);
    const bool with_h = !o.x.empty();
    const double x = with_h ? plc::io::parse_list(o.x).at(0) : 0.0;
    ss << "eps,T_residual" << (with_h ? ",H_residual" : "") << "\n";
    for (double e : eps) {
      ss << plc::io::fmt(e) << "," << plc::io::fmt(plc::grid_residual(plc::sl2_T_log(a, e), pit, tmin));
      if (with_h) ss << "," << plc::io::fmt(plc::grid_residual(plc::sl2_H_log(a, x, e), plc::h_scalar(a, x), tmin));
      ss << "\n";
    }
  } else {
    Word w = c.word();
    Vec target = plc::string_coords(c.r, w, eta);
    const size_t n = static_cast<size_t>(std::max(16L, o.samples));
    ss << "eps,string_residual\n";
    for (double e : eps) {
      plc::StringLift L = plc::string_lift(c.r, w, eta, e, n);
      ss << plc::io::fmt(e) << "," << plc::io::fmt((L.x - target).lpNorm<Eigen::Infinity>()) << "\n";
    }
  }
  emit(o, ss.str());
}

int cmd_selftest(const Options& o) {
  plc::checks::Scale sc;
  sc.frac = o.quick ? 0.02 : 1.0;
  sc.seed = o.seed;
  std::string report = std::string("plcrystal selftest ") + (o.quick ? "quick" : "full") + " seed=" +
                       std::to_string(o.seed) + "\n";
  int failed = 0;
  std::string failing;
  const auto reg = plc::checks::registry();
  for (const auto& e : reg) {
    plc::checks::Report r = e.run(sc);
    report += plc::checks::render(r);
    if (!r.pass) {
      ++failed;
      failing += " " + std::to_string(r.id);
    }
  }
  report += "summary: " + std::to_string(reg.size() - failed) + "/" + std::to_string(reg.size()) + " passed" + (failed ? "; failing:" + failing : "") + "\n";
  emit(o, report);
  return o.strict && failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Piecewise-linear path crystals for finite Coxeter groups"};
  app.footer(CSV_DOC);
  app.require_subcommand(1);

  auto common = [&](CLI::App* s) {
    s->add_option("--group", o.group, "Group label (A2, B3, I(5), H3) or group JSON file");
    s->add_option("--word", o.word, "Reduced word, 1-based letters such as \"1,2,1\" (default: fixed w0)");
    s->add_option("--out", o.out, "Output file, written atomically (default: stdout)");
    s->add_option("--format", o.format, "json or csv");
    s->add_option("--seed", o.seed, "Random seed (default 0)");
    s->add_option("--tol", o.tol, "Tolerance");
  };
  auto path_opt = [&](CLI::App* s) { s->add_option("--path", o.path, "Path JSON file"); };
  auto vec_opts = [&](CLI::App* s) {
    s->add_option("--lambda", o.lambda, "Chamber vector, comma separated");
    s->add_flag("--pairings", o.pairings, "Read --lambda and --mu as coroot pairings");
  };

  std::map<std::string, std::function<int()>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<void()> f) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    handlers[name] = [f] {
      f();
      return 0;
    };
    return s;
  };

  auto* pit = add("pitman", "Apply P_{i} for a reduced word to a path", [&] { cmd_pitman(o); });
  path_opt(pit);
  auto* lit = add("littelmann", "Apply e, f or h of a simple root; ghosts print {\"ghost\":true}", [&] { cmd_littelmann(o); });
  path_opt(lit);
  lit->add_option("--op", o.op, "e, f or h")->check(CLI::IsMember({"e", "f", "h"}));
  lit->add_option("--root", o.root, "Simple root, 1-based");
  lit->add_option("--x", o.x, "Shift");
  auto* sc = add("string-coords", "String coordinates of a path", [&] { cmd_string_coords(o); });
  path_opt(sc);
  auto* inv = add("inverse-string", "Path with given highest weight path and string coordinates", [&] { cmd_inverse_string(o); });
  path_opt(inv);
  vec_opts(inv);
  inv->add_option("--x", o.x, "String coordinates");
  auto* tr = add("transition", "Change of string coordinates from --word to --to", [&] { cmd_transition(o); });
  tr->add_option("--to", o.to, "Target reduced word");
  tr->add_option("--x", o.x, "String coordinates for --word");
  vec_opts(tr);
  auto* po = add("polytope", "Halfspaces of the string polytope, or {\"oracle\":true}", [&] { cmd_polytope(o); });
  vec_opts(po);
  auto* sch = add("schutzenberger", "S, I or tilde-S involution", [&] { cmd_schutzenberger(o); });
  path_opt(sch);
  sch->add_option("--variant", o.variant, "S, I or tilde")->check(CLI::IsMember({"S", "I", "tilde"}));
  auto* wa = add("waction", "W-action S_{s_1}...S_{s_k} on a path", [&] { cmd_waction(o); });
  path_opt(wa);
  auto* dhs = add("dh-sample", "Hit-and-run weights of the DH measure", [&] { cmd_dh_sample(o); });
  vec_opts(dhs);
  dhs->add_option("-n,--samples", o.samples, "Number of samples");
  auto* dhl = add("dh-laplace", "Monte-Carlo Laplace transform against the closed form", [&] { cmd_dh_laplace(o); });
  vec_opts(dhl);
  dhl->add_option("--z", o.z, "Point z, ambient coordinates");
  dhl->add_option("-n,--samples", o.samples, "Number of samples");
  auto* lr = add("lr-sample", "Weights of M^{lambda,mu} and the gamma mass", [&] { cmd_lr_sample(o); });
  vec_opts(lr);
  lr->add_option("--mu", o.mu, "Second chamber vector");
  lr->add_option("-n,--samples", o.samples, "Number of hit-and-run samples");
  auto* br = add("braid-check", "Braid relations of Pitman products on one or random paths", [&] { cmd_braid_check(o); });
  path_opt(br);
  br->add_option("-n,--samples", o.samples, "Random paths when --path is absent");
  auto* tp = add("tropicalize", "Max-plus form of a subtraction-free expression", [&] { cmd_tropicalize(o); });
  tp->add_option("--expr", o.expr, "Expression with + * / constants and identifiers");
  auto* lc = add("lift-check", "Residuals of geometric lifts against their tropical limits", [&] { cmd_lift_check(o); });
  path_opt(lc);
  lc->add_option("--eps", o.eps, "Comma separated eps values");
  lc->add_option("--x", o.x, "Shift for the H lift (rank 1)");
  lc->add_option("-n,--samples", o.samples, "Grid size");

  CLI::App* st = app.add_subcommand("selftest", "Run the property suites and print a report");
  st->add_flag("--quick", o.quick, "Reduced sample counts");
  st->add_flag("--strict", o.strict, "Exit 3 when a check fails");
  st->add_option("--seed", o.seed, "Random seed (default 0)");
  st->add_option("--out", o.out, "Report file");
  handlers["selftest"] = [&] { return cmd_selftest(o); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    for (CLI::App* s : app.get_subcommands()) return handlers.at(s->get_name())();
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
