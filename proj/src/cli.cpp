#include "isoconv/cli.hpp"

#include "isoconv/catalog.hpp"
#include "isoconv/convexity_lab.hpp"
#include "isoconv/extremal_fn.hpp"
#include "isoconv/isoperimetry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

namespace isoconv::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::string>& examples() {
  static const std::map<std::string, std::string> ex = {
      {"eval-f", "isoconv eval-f --x 1/6"},
      {"beta", "isoconv beta --k 2"},
      {"estimate-sup", "isoconv estimate-sup --p 1 --n 128 --csv sup.csv"},
      {"check-class", "isoconv check-class --fn builtin:F --class F0 --n 64 --report report.json"},
      {"profile", "isoconv profile --group Z3xZ3 --s \"(1,0),(0,1)\" --out report.json"},
      {"verify-catalog", "isoconv verify-catalog --catalog data/catalog.json --out results.csv"},
      {"counterexample-s3", "isoconv counterexample-s3"},
  };
  return ex;
}

struct Globals {
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";
  std::ostream* data = nullptr;  // structured stdout output; text summaries go to the caller's stream
};

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

Json jnum(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << content;
  if (!f) throw UsageError("failed writing " + path);
}

Json run_config(const std::string& sub, const Globals& g, Json params) {
  Json c;
  c["subcommand"] = sub;
  c["params"] = std::move(params);
  c["seed"] = g.seed;
  c["threads"] = g.threads;
  return c;
}

Json report_header(const std::string& sub, const Globals& g, Json params) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = run_config(sub, g, std::move(params));
  return j;
}

void emit_json(const Json& j, const Globals& g) {
  if (!g.out.empty()) write_file(g.out, j.dump(2) + "\n");
  if (g.format == "json" && g.out.empty()) *g.data << j.dump(2) << "\n";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// ---------------------------------------------------------------- eval-f, beta

int cmd_eval_f(const std::string& x_text, unsigned k_cap, const Globals& g, std::ostream& out) {
  const Rational x = parse_rational(x_text);
  const FValue f = eval_F(x, k_cap == 0 ? default_k_cap() : k_cap);
  out << "F(" << to_string(x) << ") = " << num(f.value) << "  k=" << f.argmin_k << "\n";
  Json j = report_header("eval-f", g, {{"x", to_string(x)}, {"k_cap", k_cap == 0 ? default_k_cap() : k_cap}});
  j["x"] = to_string(x);
  j["value"] = f.value;
  j["argmin_k"] = f.argmin_k;
  emit_json(j, g);
  return kExitOk;
}

int cmd_beta(unsigned k, const Globals& g, std::ostream& out) {
  const Rational b = beta(k);
  out << "beta(" << k << ") = " << to_string(b) << "  (" << num(to_double(b)) << ")\n";
  Json j = report_header("beta", g, {{"k", k}});
  j["beta"] = to_string(b);
  j["value"] = to_double(b);
  emit_json(j, g);
  return kExitOk;
}

// ---------------------------------------------------------------- estimate-sup

std::string grid_csv(const GridFunction& f) {
  std::ostringstream os;
  os << "i,x,value\n";
  for (int i = 0; i <= f.n(); ++i) os << i << "," << i << "/" << f.n() << "," << num(f[i]) << "\n";
  return os.str();
}

int cmd_estimate_sup(double p, int n, double tol, int max_iters, const std::string& csv_path,
                     const Globals& g, std::ostream& out, std::ostream& err) {
  Json params{{"p", p}, {"n", n}, {"tol", tol}, {"max_iters", max_iters}};
  int code = kExitOk;
  std::optional<SupEstimate> est;
  try {
    est = estimate_sup(p, n, tol, max_iters, g.threads);
  } catch (const NonConvergenceError& e) {
    err << e.what() << "\n";
    est = e.last_iterate();
    code = kExitViolation;
  }
  const GridFunction& grid = est->grid;

  Json j = report_header("estimate-sup", g, params);
  j["converged"] = code == kExitOk;
  j["sweeps"] = est->iterations;
  j["last_decrease"] = est->last_decrease;
  if (p == 1.0) {
    double dev = 0.0;
    for (int i = 0; i <= n; ++i)
      dev = std::max(dev, std::abs(grid[i] - eval_F(make_rational(i, n)).value));
    j["max_deviation_from_F"] = dev;
    out << "max |sup - F| = " << num(dev) << "\n";
  }
  j["values"] = Json::array();
  for (double v : grid.values()) j["values"].push_back(v);

  out << "N=" << n << " p=" << num(p) << " sweeps=" << est->iterations
      << " last_decrease=" << num(est->last_decrease) << "\n";
  if (!csv_path.empty()) write_file(csv_path, grid_csv(grid));
  if (g.format == "csv" && csv_path.empty()) *g.data << grid_csv(grid);
  emit_json(j, g);
  return code;
}

// ---------------------------------------------------------------- check-class

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw UsageError(path + " is empty");
  if (line.rfind("i,x,value", 0) != 0) throw UsageError(path + ": expected header i,x,value");
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string i_str, x_str, v_str;
    std::getline(row, i_str, ',');
    std::getline(row, x_str, ',');
    std::getline(row, v_str, ',');
    try {
      if (std::stoi(i_str) != static_cast<int>(values.size()))
        throw UsageError(path + ": grid indices must be 0,1,2,...");
      values.push_back(std::stod(v_str));
    } catch (const std::logic_error&) {
      throw UsageError(path + ": malformed row '" + line + "'");
    }
  }
  if (values.size() < 3) throw UsageError(path + ": need at least 3 grid values");
  const int n = static_cast<int>(values.size()) - 1;
  return GridFunction(n, std::move(values), path);
}

GridFunction resolve_fn(const std::string& source, int n) {
  auto need_n = [&] {
    if (n < 2) throw UsageError("--n >= 2 is required for builtin functions");
  };
  if (source == "builtin:F") {
    need_n();
    return tabulate(n, [](double x) { return eval_F(x).value; }, "F");
  }
  if (source == "builtin:parabola") {
    need_n();
    std::vector<Rational> v;
    for (int i = 0; i <= n; ++i) {
      const Rational x = make_rational(i, n);
      v.push_back(4 * x * (1 - x));
    }
    return GridFunction(n, std::move(v), "parabola");
  }
  if (source.rfind("builtin:tent:", 0) == 0) {
    need_n();
    const std::string args = source.substr(13);
    const auto comma = args.find(',');
    if (comma == std::string::npos) throw UsageError("tent needs x0,h0, e.g. builtin:tent:1/4,0.76");
    return make_tent(parse_rational(args.substr(0, comma)), parse_rational(args.substr(comma + 1)), n);
  }
  if (source.rfind("builtin:", 0) == 0) throw UsageError("unknown builtin function '" + source + "'");
  GridFunction f = read_grid_csv(source);
  if (n != 0 && n != f.n())
    throw UsageError("--n " + std::to_string(n) + " does not match " + source + " (N=" + std::to_string(f.n()) + ")");
  return f;
}

Json violation_json(const Violation& v) {
  return Json{{"a", v.a}, {"b", v.b}, {"c", v.c}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"slack", v.slack}};
}

int cmd_check_class(const std::string& fn, const std::string& cls, int n, std::size_t samples,
                    const Globals& g, std::ostream& out) {
  const GridFunction f = resolve_fn(fn, n);
  Json params{{"fn", fn}, {"class", cls}, {"n", f.n()}};
  if (cls.rfind("Fm:", 0) == 0) params["samples"] = samples;
  Json j = report_header("check-class", g, params);
  j["input"] = fn;
  j["class"] = cls;
  j["N"] = f.n();

  std::size_t count = 0;
  if (cls == "F" || cls == "F0" || cls == "strong") {
    const ScanResult r = cls == "F" ? scan_class_F(f, 1.0, 1.0, g.threads)
                         : cls == "F0" ? scan_class_F0(f, g.threads)
                                       : scan_strong(f, g.threads);
    j["arithmetic"] = r.exact ? "exact" : "float";
    j["checked"] = r.checked;
    j["violations"] = Json::array();
    for (const auto& v : r.violations) j["violations"].push_back(violation_json(v));
    j["max_slack"] = r.worst_slack;
    count = r.violations.size();
    out << cls << " check of " << fn << " at N=" << f.n() << ": " << count << " violation(s), "
        << r.checked << " triples, worst slack " << num(r.worst_slack) << "\n";
  } else if (cls.rfind("Fm:", 0) == 0) {
    int m = 0;
    try {
      m = std::stoi(cls.substr(3));
    } catch (const std::logic_error&) {
      throw UsageError("bad class '" + cls + "' (expected Fm:<m>)");
    }
    const auto vs = check_class_Fm(f, m, samples, g.seed);
    j["arithmetic"] = f.is_exact() ? "exact" : "float";
    j["violations"] = Json::array();
    double worst = 0.0;
    for (const auto& v : vs) {
      j["violations"].push_back({{"xs", v.xs}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"slack", v.rhs - v.lhs}});
      worst = std::min(worst, v.rhs - v.lhs);
    }
    j["max_slack"] = vs.empty() ? Json(nullptr) : Json(worst);
    count = vs.size();
    out << "F_" << m << " check of " << fn << " at N=" << f.n() << ": " << count << " violation(s)"
        << (m == 2 ? " (exhaustive)" : " (" + std::to_string(samples) + " samples)") << "\n";
  } else {
    throw UsageError("unknown class '" + cls + "' (expected F, F0, Fm:<m>, strong)");
  }
  emit_json(j, g);
  return count == 0 ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- profile

std::string row_status(const ProfileReport& r, const ProfileEntry& e, bool digraph) {
  if (e.min_boundary >= e.bound - kBoundTol) return "ok";
  if (digraph) return "non-abelian";
  return r.generating ? "violation" : "hypothesis-unmet";
}

std::string profile_csv_header() { return "group,S,n,min_boundary,bound,ratio,witness,wall_ms,status\n"; }

std::string profile_csv_rows(const ProfileReport& r, bool digraph) {
  std::ostringstream os;
  for (const auto& e : r.entries) {
    os << csv_field(r.group) << "," << csv_field(r.connection_set) << "," << e.n << ","
       << e.min_boundary << "," << num(e.bound) << "," << num(e.ratio) << "," << to_hex(e.witness)
       << "," << std::fixed << std::setprecision(3) << r.stats.wall_ms << std::defaultfloat << ","
       << row_status(r, e, digraph) << "\n";
  }
  return os.str();
}

Json profile_json(const ProfileReport& r) {
  Json j;
  j["group"] = r.group;
  j["S"] = r.connection_set;
  j["m"] = r.m;
  j["generating"] = r.generating;
  j["hypothesis_met"] = r.hypothesis_met();
  j["warnings"] = r.warnings;
  j["entries"] = Json::array();
  for (const auto& e : r.entries) {
    j["entries"].push_back({{"n", e.n},
                            {"min_boundary", e.min_boundary},
                            {"bound", e.bound},
                            {"ratio", jnum(e.ratio)},
                            {"witness", to_hex(e.witness)}});
  }
  j["below_bound"] = r.below_bound;
  j["holds"] = r.holds();
  j["stats"] = {{"enumerated", r.stats.enumerated}, {"pruned", r.stats.pruned}, {"wall_ms", r.stats.wall_ms}};
  return j;
}

void print_profile(const ProfileReport& r, std::ostream& out) {
  out << r.group << "  S={" << r.connection_set << "}  m=" << r.m << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  out << "  n  min_boundary  bound                 ratio\n";
  for (const auto& e : r.entries) {
    out << std::setw(3) << e.n << "  " << std::setw(12) << e.min_boundary << "  " << std::left
        << std::setw(20) << num(e.bound) << "  " << num(e.ratio) << std::right << "\n";
  }
}

int cmd_profile(const std::string& group, const std::string& s_text, std::optional<int> m, int cap,
                const Globals& g, std::ostream& out) {
  const AbelianGroup grp = parse_group(group);
  const ConnectionSet s = parse_connection_set(grp, s_text);
  if (s.empty()) throw UsageError("S must be non-empty");
  const ProfileReport r = profile(grp, s, m, g.threads, cap);

  Json params{{"group", grp.to_string()}, {"S", format_connection_set(grp, s)}};
  if (m) params["m"] = *m;
  Json j = report_header("profile", g, params);
  j.update(profile_json(r));

  if (g.format == "csv") {
    const std::string csv = profile_csv_header() + profile_csv_rows(r, false);
    if (!g.out.empty())
      write_file(g.out, csv);
    else
      *g.data << csv;
  } else {
    print_profile(r, out);
    emit_json(j, g);
  }
  if (!r.holds()) {
    out << "BOUND VIOLATED at n =";
    for (int n : r.below_bound) out << " " << n;
    out << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify-catalog

int cmd_verify_catalog(const std::string& catalog_path, int cap, const Globals& g, std::ostream& out) {
  const auto entries = catalog_path.empty() ? default_catalog() : load_catalog(catalog_path);
  std::string csv = profile_csv_header();
  int failures = 0;
  std::ostringstream summary;
  for (const auto& e : entries) {
    ProfileReport r;
    if (e.is_digraph) {
      r = profile_generic(e.digraph, e.m, e.name);
    } else {
      const AbelianGroup grp = parse_group(e.group);
      r = profile(grp, parse_connection_set(grp, e.connection_set), std::nullopt, g.threads, cap);
    }
    csv += profile_csv_rows(r, e.is_digraph);
    const bool ok = e.is_digraph || r.holds();
    if (!ok) ++failures;
    double tightest = std::numeric_limits<double>::infinity();
    for (const auto& pe : r.entries) tightest = std::min(tightest, pe.ratio);
    summary << (ok ? "ok    " : "FAIL  ") << e.name << "  min ratio " << num(tightest)
            << (r.below_bound.empty() ? "" : "  below bound at " + std::to_string(r.below_bound.size()) + " n")
            << "\n";
  }
  if (!g.out.empty()) {
    write_file(g.out, csv);
    out << summary.str();
  } else {
    *g.data << csv;
  }
  return failures == 0 ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- counterexample-s3

int cmd_counterexample(int path_length, const Globals& g, std::ostream& out) {
  const CounterexampleResult r = counterexample_s3(path_length);
  const bool below = r.boundary < r.bound;
  out << r.boundary << (below ? " < " : " >= ") << num(r.bound) << "\n";
  out << "S3 with two involutions, A = path of " << r.n << " vertex(es): boundary " << r.boundary
      << ", (1/2)|G|F(" << r.n << "/6) = " << num(r.bound) << "\n";
  Json j = report_header("counterexample-s3", g, {{"path_length", path_length}});
  j["boundary"] = r.boundary;
  j["bound"] = r.bound;
  j["boundary_below_bound"] = below;
  emit_json(j, g);
  return below ? kExitOk : kExitViolation;
}

std::string find_subcommand(const std::vector<std::string>& args) {
  for (const auto& a : args)
    if (examples().count(a)) return a;
  return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal relaxed-convexity function and Cayley graph edge-isoperimetry toolkit", "isoconv"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_option("--out", g.out, "report path");
  app.add_option("--format", g.format, "stdout format")->check(CLI::IsMember({"text", "json", "csv"}));

  std::string x_text;
  unsigned k_cap = 0;
  auto* eval_cmd = app.add_subcommand("eval-f", "evaluate F at a rational or decimal x");
  eval_cmd->add_option("--x", x_text, "point in [0,1], p/q or decimal")->required();
  eval_cmd->add_option("--k-cap", k_cap, "largest k considered (default: smallest k with beta_k < 2^-64)");

  unsigned k = 0;
  auto* beta_cmd = app.add_subcommand("beta", "exact breakpoint beta_k");
  beta_cmd->add_option("--k", k, "index k >= 0")->required();

  double p = 1.0, tol = 1e-9;
  int n = 0, max_iters = 100000, path_length = 1, cap = kDefaultExhaustiveCap;
  std::string csv_path;
  auto* sup_cmd = app.add_subcommand("estimate-sup", "discrete sup-function of the (1,p)-convex class");
  sup_cmd->add_option("--p", p, "exponent p > 0")->required();
  sup_cmd->add_option("--n", n, "grid resolution N >= 2")->required();
  sup_cmd->add_option("--tol", tol, "stopping tolerance on the per-sweep decrease");
  sup_cmd->add_option("--max-iters", max_iters, "sweep limit");
  sup_cmd->add_option("--csv", csv_path, "write i,x,value rows");

  std::string fn, cls, report_path;
  std::size_t samples = 100000;
  auto* check_cmd = app.add_subcommand("check-class", "grid membership check");
  check_cmd->add_option("--fn", fn, "csv path | builtin:F | builtin:parabola | builtin:tent:x0,h0")->required();
  check_cmd->add_option("--class", cls, "F | F0 | Fm:<m> | strong")->required();
  check_cmd->add_option("--n", n, "grid resolution (builtins)");
  check_cmd->add_option("--samples", samples, "sampled tuples for Fm with m >= 3");
  check_cmd->add_option("--report", report_path, "JSON report path");

  std::string group, s_text;
  std::optional<int> m;
  auto* profile_cmd = app.add_subcommand("profile", "exhaustive isoperimetric profile of a Cayley digraph");
  profile_cmd->add_option("--group", group, "e.g. Z3xZ3 or Z2^3")->required();
  profile_cmd->add_option("--s", s_text, "connection set, e.g. \"(1,0),(0,1)\" or basis")->required();
  profile_cmd->add_option("--m", m, "exponent bound (default: largest element order in S)");
  profile_cmd->add_option("--cap", cap, "largest group order searched exhaustively");

  std::string catalog_path;
  auto* catalog_cmd = app.add_subcommand("verify-catalog", "profile every catalog entry");
  catalog_cmd->add_option("--catalog", catalog_path, "JSON catalog (default: built-in catalog)");
  catalog_cmd->add_option("--cap", cap, "largest group order searched exhaustively");

  auto* cx_cmd = app.add_subcommand("counterexample-s3", "non-abelian counterexample on S3");
  cx_cmd->add_option("--n", path_length, "path length 1..5");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    const std::string sub = find_subcommand(args);
    if (!sub.empty())
      err << "example: " << examples().at(sub) << "\n";
    else {
      for (auto it = args.begin(); it != args.end(); ++it)
        if (!it->empty() && it->front() != '-' && (it == args.begin() || (*std::prev(it)).rfind("--", 0) != 0)) {
          err << "unknown subcommand '" << *it << "'\n";
          break;
        }
      err << "subcommands: eval-f, beta, estimate-sup, check-class, profile, verify-catalog, counterexample-s3\n"
          << "example: " << examples().at("eval-f") << "\n";
    }
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub == check_cmd && !report_path.empty()) g.out = report_path;
  g.data = &out;
  std::ostream quiet(nullptr);
  std::ostream& text = g.format != "text" && g.out.empty() ? quiet : out;
  const std::string name = sub->get_name();
  try {
    if (sub == eval_cmd) return cmd_eval_f(x_text, k_cap, g, text);
    if (sub == beta_cmd) return cmd_beta(k, g, text);
    if (sub == sup_cmd) return cmd_estimate_sup(p, n, tol, max_iters, csv_path, g, text, err);
    if (sub == check_cmd) return cmd_check_class(fn, cls, n, samples, g, text);
    if (sub == profile_cmd) return cmd_profile(group, s_text, m, cap, g, text);
    if (sub == catalog_cmd) return cmd_verify_catalog(catalog_path, cap, g, text);
    if (sub == cx_cmd) return cmd_counterexample(path_length, g, text);
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range, domain_error: bad user input
    err << "error: " << e.what() << "\nexample: " << examples().at(name) << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace isoconv::cli
