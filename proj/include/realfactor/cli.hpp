#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or parse error,
// 2 numerical failure (including a failed verify), 3 lift dimension cap hit.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "realfactor/config.hpp"
#include "realfactor/errors.hpp"
#include "realfactor/factorizer.hpp"
#include "realfactor/oracle.hpp"
#include "realfactor/textio.hpp"
#include "realfactor/truepair.hpp"

namespace realfactor {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitLimit = 3;

namespace detail {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !(v > 0.0))
    throw Usage(std::string(what) + ": expected a positive number, got '" + std::string(s) + "'");
  return v;
}

/// Flag wins over the REALFACTOR_TOL environment variable, which wins over the default.
inline Config make_config(const CLI::Option* tol_opt, double tol_flag, std::size_t max_lift_dim) {
  Config cfg;
  if (tol_opt && tol_opt->count() > 0) {
    if (!(tol_flag > 0.0)) throw Usage("--tol must be positive");
    cfg.tol = tol_flag;
  } else if (const char* env = std::getenv("REALFACTOR_TOL"); env && *env) {
    cfg.tol = parse_double(env, "REALFACTOR_TOL");
  }
  cfg.max_lift_dim = max_lift_dim;
  return cfg;
}

inline std::string product_text(const Factorization& f) {
  std::string s = shortest(f.constant);
  for (double r : f.linear_roots) s += " * (" + format_poly(Polynomial::linear(r)) + ")";
  for (const QuadPair& q : f.quad_pairs) s += " * (" + format_poly(Polynomial::shifted_square(q.alpha, q.beta)) + ")";
  return s;
}

inline void print_factorization(std::ostream& out, std::string_view method, const Factorization& f) {
  out << "method " << method << "\n";
  out << "factors " << product_text(f) << "\n";
  out << "constant " << shortest(f.constant) << "\n";
  for (double r : f.linear_roots) out << "root " << shortest(r) << "\n";
  for (const QuadPair& q : f.quad_pairs) out << "pair alpha " << shortest(q.alpha) << " beta " << shortest(q.beta) << "\n";
  out << "residual " << shortest(f.residual) << "\n";
}

inline void print_compare(std::ostream& out, const CompareReport& rep, double tol) {
  out << "compare " << (rep.equal ? "equal" : "different") << " tol " << shortest(tol) << " max_distance "
      << shortest(rep.max_distance) << "\n";
  for (double r : rep.unmatched_roots_first) out << "unmatched first root " << shortest(r) << "\n";
  for (double r : rep.unmatched_roots_second) out << "unmatched second root " << shortest(r) << "\n";
  for (const QuadPair& q : rep.unmatched_pairs_first)
    out << "unmatched first pair alpha " << shortest(q.alpha) << " beta " << shortest(q.beta) << "\n";
  for (const QuadPair& q : rep.unmatched_pairs_second)
    out << "unmatched second pair alpha " << shortest(q.alpha) << " beta " << shortest(q.beta) << "\n";
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Usage("cannot write " + path);
  f << text;
}

inline std::pair<std::size_t, std::size_t> parse_degree_range(const std::string& s) {
  auto num = [&](std::string_view part) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v == 0)
      throw Usage("--degrees: expected A..B with positive integers, got '" + s + "'");
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const std::size_t d = num(s);
    return {d, d};
  }
  const std::size_t lo = num(std::string_view(s).substr(0, dots));
  const std::size_t hi = num(std::string_view(s).substr(dots + 2));
  if (lo > hi) throw Usage("--degrees: empty range '" + s + "'");
  return {lo, hi};
}

struct FactorArgs {
  std::string poly;
  std::string method = "paper";
  double tol = 0.0;
  std::size_t max_lift_dim = 300;
  bool json = false;
  std::string trace_file;
  bool refine = false;
  CLI::Option* tol_opt = nullptr;
};

inline int run_factor(const FactorArgs& a, std::ostream& out) {
  Config cfg = make_config(a.tol_opt, a.tol, a.max_lift_dim);
  const Polynomial p = parse_poly(a.poly);
  if (p.is_zero() || p.degree() < 1) throw ContractViolation("factor: degree must be at least 1");
  const bool want_trace = !a.trace_file.empty();
  cfg.trace = want_trace;

  Trace trace;
  struct Run {
    std::string method;
    Factorization f;
    double ms;
  };
  auto timed = [&](std::string_view method) {
    const auto t0 = std::chrono::steady_clock::now();
    Factorization f = method == "paper" ? factor(p, cfg, want_trace ? &trace : nullptr) : bairstow_factor(p, cfg);
    if (a.refine) f = refine(f, p, cfg);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return Run{std::string(method), std::move(f), ms};
  };

  std::vector<Run> runs;
  if (a.method == "both") {
    runs.push_back(timed("paper"));
    runs.push_back(timed("bairstow"));
  } else {
    runs.push_back(timed(a.method));
  }
  if (want_trace) write_file(a.trace_file, trace_json(trace).dump(2) + "\n");
  const std::string* trace_ref = want_trace ? &a.trace_file : nullptr;
  constexpr double compare_tol = 1e-6;

  if (a.json) {
    if (runs.size() == 1) {
      out << factorization_json(runs[0].f, p, runs[0].method, runs[0].ms, trace_ref).dump(2) << "\n";
    } else {
      Json results = Json::array();
      for (const Run& r : runs) results.push_back(factorization_json(r.f, p, r.method, r.ms, trace_ref));
      Json doc;
      doc["results"] = std::move(results);
      doc["compare"] = compare_json(compare(runs[0].f, runs[1].f, compare_tol), compare_tol);
      out << doc.dump(2) << "\n";
    }
  } else {
    for (const Run& r : runs) print_factorization(out, r.method, r.f);
    if (runs.size() == 2) print_compare(out, compare(runs[0].f, runs[1].f, compare_tol), compare_tol);
    if (want_trace) out << "trace " << a.trace_file << "\n";
  }
  return kExitOk;
}

inline int run_truepair(const std::string& input, double tol, const CLI::Option* tol_opt,
                        std::size_t max_lift_dim, bool json, std::ostream& out) {
  const Config cfg = make_config(tol_opt, tol, max_lift_dim);
  Matrix a;
  std::error_code ec;
  if (std::filesystem::is_regular_file(input, ec)) {
    a = matrix_from_json(read_json_file(input));
  } else {
    const Polynomial p = parse_poly(input);
    if (p.is_zero() || p.degree() < 1) throw ContractViolation("truepair: degree must be at least 1");
    a = companion(p.monic());
  }
  const TruePair tp = true_pair(a, cfg);
  if (json) {
    out << true_pair_json(tp).dump(2) << "\n";
  } else {
    out << "alpha " << shortest(tp.alpha) << "\n";
    out << "beta " << shortest(tp.beta) << "\n";
    out << "vector";
    for (double x : tp.vector) out << " " << shortest(x);
    out << "\n";
    out << "residual " << shortest(tp.residual) << "\n";
  }
  return kExitOk;
}

inline int run_verify(const std::string& poly, const std::string& file, double tol, bool json, std::ostream& out) {
  const Polynomial p = parse_poly(poly);
  Json doc = read_json_file(file);
  if (doc.contains("results") && doc["results"].is_array() && !doc["results"].empty()) doc = doc["results"][0];
  const Factorization f = factorization_from_json(doc);
  const VerifyReport rep = verify(f, p);
  const bool ok = rep.passed(tol);
  if (json) {
    out << Json{{"max_abs_diff", rep.max_abs_diff},
                {"relative_residual", rep.relative_residual},
                {"factor_degree", rep.factor_degree},
                {"poly_degree", rep.poly_degree},
                {"degree_ok", rep.degree_ok},
                {"tol", tol},
                {"passed", ok}}
               .dump(2)
        << "\n";
  } else {
    out << "max_abs_diff " << shortest(rep.max_abs_diff) << "\n";
    out << "relative_residual " << shortest(rep.relative_residual) << "\n";
    out << "degree " << rep.factor_degree << " of " << rep.poly_degree << (rep.degree_ok ? " ok" : " MISMATCH")
        << "\n";
    out << (ok ? "verified" : "FAILED") << "\n";
  }
  return ok ? kExitOk : kExitNumerical;
}

struct BenchRow {
  std::size_t degree = 0, count = 0;
  std::size_t paper_ok = 0, bairstow_ok = 0, limit = 0;
  std::size_t agree_raw = 0, agree_refined = 0;
  double worst_refined = 0.0;
};

inline BenchRow bench_degree(std::size_t degree, std::size_t count, std::uint64_t seed, const Config& cfg) {
  BenchRow row;
  row.degree = degree;
  row.count = count;
  constexpr double tol = 1e-6;
  for (std::size_t i = 0; i < count; ++i) {
    InstanceSpec spec;
    spec.k = i % (degree / 2 + 1);
    spec.m = degree - 2 * spec.k;
    spec.seed = seed + 1000003 * degree + i;
    const Instance inst = random_poly(spec);
    std::optional<Factorization> lifted, oracle;
    try {
      lifted = factor(inst.p, cfg);
      ++row.paper_ok;
    } catch (const LimitExceeded&) {
      ++row.limit;
    } catch (const NumericalFailure&) {
    }
    try {
      oracle = bairstow_factor(inst.p, cfg);
      ++row.bairstow_ok;
    } catch (const NumericalFailure&) {
    }
    if (lifted && oracle) {
      if (compare(*lifted, *oracle, tol).equal) ++row.agree_raw;
      const Factorization rp = refine(*lifted, inst.p, cfg);
      const Factorization ro = refine(*oracle, inst.p, cfg);
      if (compare(rp, ro, tol).equal) ++row.agree_refined;
      row.worst_refined = std::max(row.worst_refined, rp.residual);
    }
  }
  return row;
}

inline int run_bench(const std::string& degrees, std::size_t count, std::uint64_t seed, double tol,
                     const CLI::Option* tol_opt, std::size_t max_lift_dim, bool json, std::ostream& out) {
  const Config cfg = make_config(tol_opt, tol, max_lift_dim);
  const auto [lo, hi] = parse_degree_range(degrees);
  std::vector<BenchRow> rows;
  for (std::size_t d = lo; d <= hi; ++d) rows.push_back(bench_degree(d, count, seed, cfg));
  if (json) {
    Json table = Json::array();
    for (const BenchRow& r : rows)
      table.push_back({{"degree", r.degree},
                       {"count", r.count},
                       {"paper_ok", r.paper_ok},
                       {"bairstow_ok", r.bairstow_ok},
                       {"limit_exceeded", r.limit},
                       {"agree_raw", r.agree_raw},
                       {"agree_refined", r.agree_refined},
                       {"worst_refined_residual", r.worst_refined}});
    out << Json{{"seed", seed}, {"compare_tol", 1e-6}, {"rows", std::move(table)}}.dump(2) << "\n";
    return kExitOk;
  }
  out << "degree  count  paper_ok  bairstow_ok  limit  agree_raw  agree_refined  worst_refined\n";
  for (const BenchRow& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%6zu  %5zu  %8zu  %11zu  %5zu  %9zu  %13zu  %.3g\n", r.degree, r.count,
                  r.paper_ok, r.bairstow_ok, r.limit, r.agree_raw, r.agree_refined, r.worst_refined);
    out << line;
  }
  return kExitOk;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Real polynomial factorization into linear and irreducible quadratic factors"};
  app.name("realfactor");
  app.require_subcommand(1);

  detail::FactorArgs fa;
  CLI::App* factor_cmd = app.add_subcommand("factor", "factor a polynomial such as \"t^4+5t^2+4\"");
  factor_cmd->add_option("poly", fa.poly, "polynomial in t")->required();
  factor_cmd->add_option("--method", fa.method, "paper, bairstow or both")
      ->check(CLI::IsMember({"paper", "bairstow", "both"}));
  fa.tol_opt = factor_cmd->add_option("--tol", fa.tol, "true-pair residual tolerance");
  factor_cmd->add_option("--max-lift-dim", fa.max_lift_dim, "largest lifted dimension");
  factor_cmd->add_flag("--json", fa.json, "print the result as JSON");
  factor_cmd->add_option("--trace", fa.trace_file, "write the recursion trace to FILE");
  factor_cmd->add_flag("--refine", fa.refine, "polish factors against the input");

  std::string tp_input;
  double tp_tol = 0.0;
  std::size_t tp_max_lift = 300;
  bool tp_json = false;
  CLI::App* tp_cmd = app.add_subcommand("truepair", "true-pair of a companion matrix or a matrix file");
  tp_cmd->add_option("input", tp_input, "polynomial, or JSON file with \"coeffs\" or \"matrix\"")->required();
  CLI::Option* tp_tol_opt = tp_cmd->add_option("--tol", tp_tol, "true-pair residual tolerance");
  tp_cmd->add_option("--max-lift-dim", tp_max_lift, "largest lifted dimension");
  tp_cmd->add_flag("--json", tp_json, "print the result as JSON");

  std::string v_poly, v_file;
  double v_tol = 1e-8;
  bool v_json = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a factorization document against a polynomial");
  verify_cmd->add_option("poly", v_poly, "polynomial in t")->required();
  verify_cmd->add_option("factors", v_file, "JSON document written by factor --json")->required();
  verify_cmd->add_option("--tol", v_tol, "largest accepted relative residual");
  verify_cmd->add_flag("--json", v_json, "print the report as JSON");

  std::string b_degrees = "1..7";
  std::size_t b_count = 20;
  std::uint64_t b_seed = 1;
  double b_tol = 0.0;
  std::size_t b_max_lift = 300;
  bool b_json = false;
  CLI::App* bench_cmd = app.add_subcommand("bench", "cross-method agreement on random polynomials");
  bench_cmd->add_option("--degrees", b_degrees, "degree range A..B");
  bench_cmd->add_option("--count", b_count, "instances per degree");
  bench_cmd->add_option("--seed", b_seed, "generator seed");
  CLI::Option* b_tol_opt = bench_cmd->add_option("--tol", b_tol, "true-pair residual tolerance");
  bench_cmd->add_option("--max-lift-dim", b_max_lift, "largest lifted dimension");
  bench_cmd->add_flag("--json", b_json, "print the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*factor_cmd) return detail::run_factor(fa, out);
    if (*tp_cmd) return detail::run_truepair(tp_input, tp_tol, tp_tol_opt, tp_max_lift, tp_json, out);
    if (*verify_cmd) return detail::run_verify(v_poly, v_file, v_tol, v_json, out);
    if (*bench_cmd)
      return detail::run_bench(b_degrees, b_count, b_seed, b_tol, b_tol_opt, b_max_lift, b_json, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const detail::Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kExitLimit;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace realfactor
