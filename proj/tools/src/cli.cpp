#include "cayley_ising_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "cayley_ising/errors.hpp"
#include "cayley_ising/factor_type.hpp"
#include "cayley_ising/gibbs.hpp"
#include "cayley_ising/recursion.hpp"
#include "convert.hpp"
#include "emit.hpp"

namespace cayley_ising::cli {

namespace {

// Invalid flags or values: exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kMaxGridPoints = 1'000'000;

double parse_number(const std::string& text, const std::string& flag) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc{} || p != e || !std::isfinite(v))
    throw ConfigError(flag + ": not a finite number: '" + text + "'");
  return v;
}

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool is_point() const { return lo == hi; }
};

// "x" or "lo:hi" with lo < hi.
Range parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const double v = parse_number(text, flag);
    return {v, v};
  }
  Range r{parse_number(text.substr(0, colon), flag), parse_number(text.substr(colon + 1), flag)};
  if (!(r.lo < r.hi)) throw ConfigError(flag + ": range must satisfy lo < hi");
  return r;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), flag));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Grid {
  int n_theta1 = 1;
  int n_theta = 1;
};

Grid parse_grid(const std::string& text) {
  auto count = [](const std::string& s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 2)
      throw ConfigError("--grid: resolution must be an integer >= 2, got '" + s + "'");
    return v;
  };
  const auto x = text.find('x');
  if (x == std::string::npos) {
    const int n = count(text);
    return {n, n};
  }
  return {count(text.substr(0, x)), count(text.substr(x + 1))};
}

double grid_value(const Range& r, int n, int i) {
  if (r.is_point()) return r.lo;
  return i == n - 1 ? r.hi : r.lo + (r.hi - r.lo) * i / (n - 1);
}

struct Options {
  std::string theta, theta1, J, J1, beta;
  std::string measure;
  std::string depth;
  std::string grid;
  std::string tol;
  std::string max_exponent;
  std::string format = "json";
  std::string out;
  std::string example;
  std::string field;
};

bool has(const std::string& s) { return !s.empty(); }

enum class Style { Thetas, Couplings };

Style parameter_style(const Options& o) {
  const bool thetas = has(o.theta) || has(o.theta1);
  const bool couplings = has(o.J) || has(o.J1) || has(o.beta);
  if (thetas && couplings)
    throw ConfigError("use exactly one parameter style: (--theta, --theta1) or (--J, --J1, --beta)");
  if (!thetas && !couplings)
    throw ConfigError("missing parameters: give (--theta, --theta1) or (--J, --J1, --beta)");
  if (thetas && !(has(o.theta) && has(o.theta1))) throw ConfigError("--theta and --theta1 go together");
  if (couplings && !(has(o.J) && has(o.J1) && has(o.beta)))
    throw ConfigError("--J, --J1 and --beta go together");
  return thetas ? Style::Thetas : Style::Couplings;
}

ModelParams make_params(double a, double b, double beta, Style style) {
  try {
    return style == Style::Thetas ? ModelParams::from_thetas(a, b) : ModelParams::from_couplings(a, b, beta);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ModelParams point_params(const Options& o) {
  const Style style = parameter_style(o);
  if (style == Style::Thetas)
    return make_params(parse_number(o.theta, "--theta"), parse_number(o.theta1, "--theta1"), 1.0, style);
  return make_params(parse_number(o.J, "--J"), parse_number(o.J1, "--J1"), parse_number(o.beta, "--beta"),
                     style);
}

int parse_depth(const Options& o, int fallback) {
  if (!has(o.depth)) return fallback;
  const double d = parse_number(o.depth, "--depth");
  if (d != std::floor(d) || d < 0) throw ConfigError("--depth must be a non-negative integer");
  if (d > 64) throw ResourceLimitError("--depth " + o.depth + " exceeds every enumeration cap");
  return static_cast<int>(d);
}

double parse_tol(const Options& o, double fallback) {
  if (!has(o.tol)) return fallback;
  const double t = parse_number(o.tol, "--tol");
  if (!(t > 0.0)) throw ConfigError("--tol must be positive");
  return t;
}

CommensurabilityOptions commensurability_options(const Options& o) {
  CommensurabilityOptions c;
  c.tol = parse_tol(o, c.tol);
  if (has(o.max_exponent)) {
    const double m = parse_number(o.max_exponent, "--max-exponent");
    if (m != std::floor(m) || m < 1 || m > 64) throw ConfigError("--max-exponent must be an integer in [1, 64]");
    c.max_exponent = static_cast<int>(m);
  }
  if (c.tol > 1e-3) throw ConfigError("--tol must be in (0, 1e-3] for classification");
  return c;
}

FieldAssignment parse_field(const std::string& spec, const ModelParams& p) {
  if (spec.rfind("const:", 0) == 0) return FieldAssignment::constant(parse_number(spec.substr(6), "--field"));
  if (spec.rfind("parity:", 0) == 0) {
    const auto v = parse_list(spec.substr(7), "--field");
    if (v.size() != 2) throw ConfigError("--field parity:<h_even>,<h_odd>");
    return FieldAssignment::parity(v[0], v[1]);
  }
  for (auto& m : named_measures(p))
    if (m.name == spec) return m.field;
  if (spec == "mu1" || spec == "mu3" || spec == "mu12" || spec == "mu21")
    throw RegionError("measure " + spec + " does not exist at these parameters (region " +
                      to_string(classify_region(p).tag) + ")");
  throw ConfigError("--field: expected mu1|mu2|mu3|mu12|mu21|const:<h>|parity:<h_even>,<h_odd>");
}

Json base_document(const std::string& command) {
  return Json{{"schema_version", kSchemaVersion}, {"command", command}};
}

// Rows for CSV carry the schema version in their first column.
Json with_schema(Json row) {
  Json out{{"schema_version", kSchemaVersion}};
  for (auto it = row.begin(); it != row.end(); ++it) out[it.key()] = it.value();
  return out;
}

std::string render_rows(const Json& doc, const Json& rows, const std::string& format) {
  if (format == "json") return to_json_text(doc);
  Json csv_rows = Json::array();
  for (const auto& r : rows) csv_rows.push_back(with_schema(r));
  return to_csv_text(csv_rows);
}

std::string render_single(const Json& doc, const std::string& format) {
  if (format == "json") return to_json_text(doc);
  return to_csv_text(Json::array({doc}));
}

std::string cmd_regions(const Options& o) {
  const Style style = parameter_style(o);
  Range t, t1;
  Json doc = base_document("regions");
  if (style == Style::Thetas) {
    t = parse_range(o.theta, "--theta");
    t1 = parse_range(o.theta1, "--theta1");
  } else {
    const auto p = point_params(o);
    t = {p.theta(), p.theta()};
    t1 = {p.theta1(), p.theta1()};
  }
  Grid g{1, 1};
  if (!t.is_point() || !t1.is_point()) g = has(o.grid) ? parse_grid(o.grid) : Grid{100, 100};
  else if (has(o.grid)) parse_grid(o.grid);
  if (t1.is_point()) g.n_theta1 = 1;
  if (t.is_point()) g.n_theta = 1;
  if (static_cast<std::size_t>(g.n_theta1) * g.n_theta > kMaxGridPoints)
    throw ResourceLimitError("grid exceeds " + std::to_string(kMaxGridPoints) + " points");

  Json rows = Json::array();
  for (int i = 0; i < g.n_theta1; ++i) {
    for (int j = 0; j < g.n_theta; ++j) {
      const double th1 = grid_value(t1, g.n_theta1, i);
      const double th = grid_value(t, g.n_theta, j);
      rows.push_back(region_row(make_params(th, th1, 1.0, Style::Thetas)));
    }
  }
  doc["grid"] = Json{{"theta1", {t1.lo, t1.hi}}, {"theta", {t.lo, t.hi}},
                     {"n_theta1", g.n_theta1}, {"n_theta", g.n_theta}};
  doc["rows"] = rows;
  return render_rows(doc, rows, o.format);
}

std::string cmd_gibbs_check(const Options& o) {
  const auto p = point_params(o);
  const int n = parse_depth(o, 2);
  const double tol = parse_tol(o, 1e-10);
  const auto field = parse_field(has(o.field) ? o.field : "mu2", p);
  const auto consistency = check_consistency(p, field, n, tol);
  const auto recursion = verify_recursion(p, field, n, tol);
  Json doc = base_document("gibbs-check");
  doc["params"] = params_json(p);
  doc["field"] = field.describe();
  doc["depth"] = n;
  doc["tol"] = tol;
  doc["configurations"] = consistency.configurations;
  doc["level_discrepancy"] = consistency.level_discrepancy;
  doc["max_discrepancy"] = consistency.max_discrepancy;
  doc["consistency_passed"] = consistency.passed;
  doc["recursion_passed"] = recursion.passed;
  doc["recursion_max_residual"] = recursion.max_residual;
  doc["recursion_root_unverified"] = recursion.root_unverified;
  doc["equivalence_agrees"] = consistency.passed == recursion.passed;
  return render_single(doc, o.format);
}

std::string cmd_classify(const Options& o) {
  const auto opts = commensurability_options(o);
  if (has(o.example)) {
    if (has(o.theta) || has(o.theta1) || has(o.J) || has(o.J1) || has(o.beta) || has(o.measure))
      throw ConfigError("--example takes no parameters or --measure");
    Json doc = base_document("classify");
    if (o.example == "3.1") doc["report"] = zero_ternary_json(reproduce_zero_ternary_example());
    else if (o.example == "3.2") doc["report"] = equal_coupling_json(reproduce_equal_coupling_example());
    else throw ConfigError("--example must be 3.1 or 3.2");
    return render_single(doc, o.format);
  }
  const auto p = point_params(o);
  int measure = 2;
  if (has(o.measure)) {
    const double m = parse_number(o.measure, "--measure");
    if (m != 1 && m != 2 && m != 3) throw ConfigError("--measure must be 1, 2 or 3");
    measure = static_cast<int>(m);
  }
  Json doc = base_document("classify");
  doc["params"] = params_json(p);
  doc["region"] = to_string(classify_region(p).tag);
  doc["classification"] = classification_json(classify(p, measure, opts));
  return render_single(doc, o.format);
}

std::string cmd_zero_t(const Options& o) {
  if (has(o.theta) || has(o.theta1)) throw ConfigError("zero-t takes --J, --J1 and --beta");
  if (!has(o.J) || !has(o.J1)) throw ConfigError("zero-t needs --J and --J1");
  const double J = parse_number(o.J, "--J");
  const double J1 = parse_number(o.J1, "--J1");
  const auto betas = has(o.beta) ? parse_list(o.beta, "--beta") : kDefaultBetaSchedule;
  for (double b : betas)
    if (!(b > 0)) throw ConfigError("--beta values must be positive");
  for (std::size_t i = 1; i < betas.size(); ++i)
    if (!(betas[i] > betas[i - 1])) throw ConfigError("--beta schedule must be strictly increasing");
  const int n = parse_depth(o, 2);
  if (n < 1) throw ConfigError("--depth must be >= 1 for zero-t");
  require_enumerable(n);
  for (double b : betas) make_params(J, J1, b, Style::Couplings);

  const auto scan = zero_temperature_scan(J, J1, betas, n);
  Json rows = Json::array();
  for (const auto& r : scan.rows) {
    Json row = zero_temperature_row(r);
    row["ti_monotone"] = scan.ti_monotone;
    row["periodic_monotone"] = scan.periodic_monotone;
    rows.push_back(row);
  }
  Json doc = base_document("zero-t");
  doc["J"] = J;
  doc["J1"] = J1;
  doc["depth"] = n;
  doc["threshold"] = kZeroTemperatureThreshold;
  doc["ti_monotone"] = scan.ti_monotone;
  doc["ti_final_above_threshold"] = scan.ti_final_above_threshold;
  doc["periodic_monotone"] = scan.periodic_monotone;
  doc["periodic_final_above_threshold"] = scan.periodic_final_above_threshold;
  doc["outside_region_betas"] = scan.outside_region_betas;
  doc["rows"] = rows;
  return render_rows(doc, rows, o.format);
}

std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0')
      p = std::filesystem::path(dir) / p;
  }
  return p;
}

// Write to a sibling temporary and rename, so readers never see a torn file.
void write_file(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("--out: cannot open " + path.string());
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw ConfigError("--out: write failed for " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ConfigError("--out: cannot move output into place at " + path.string());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ising model with competing ternary and nearest-neighbour couplings on the order-2 Cayley tree",
               "cayley-ising"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out, "Output file (default: standard output)");
  };
  auto thetas = [&](CLI::App* sub, bool ranges) {
    sub->add_option("--theta", o.theta, ranges ? "theta = exp(2 beta J), value or lo:hi" : "theta = exp(2 beta J)");
    sub->add_option("--theta1", o.theta1,
                    ranges ? "theta1 = exp(2 beta J1), value or lo:hi" : "theta1 = exp(2 beta J1)");
  };
  auto couplings = [&](CLI::App* sub, const char* beta_help) {
    sub->add_option("--J", o.J, "Ternary (sibling) coupling");
    sub->add_option("--J1", o.J1, "Nearest-neighbour coupling");
    sub->add_option("--beta", o.beta, beta_help);
  };

  auto* regions = app.add_subcommand("regions", "Phase-diagram grid: region tag and fixed points per point");
  thetas(regions, true);
  couplings(regions, "Inverse temperature");
  regions->add_option("--grid", o.grid, "Resolution N or NxM (theta1 x theta), default 100");
  common(regions);

  auto* gibbs = app.add_subcommand("gibbs-check", "Consistency of finite-volume measures vs the recursion");
  thetas(gibbs, false);
  couplings(gibbs, "Inverse temperature");
  gibbs->add_option("--field", o.field, "mu1|mu2|mu3|mu12|mu21|const:<h>|parity:<h_even>,<h_odd>");
  gibbs->add_option("--depth", o.depth, "Volume depth n (2..3), default 2");
  gibbs->add_option("--tol", o.tol, "Tolerance, default 1e-10");
  common(gibbs);

  auto* cls = app.add_subcommand("classify", "Factor type of a translation-invariant Gibbs state");
  thetas(cls, false);
  couplings(cls, "Inverse temperature");
  cls->add_option("--measure", o.measure, "1, 2 or 3 (default 2)");
  cls->add_option("--tol", o.tol, "Commensurability tolerance, default 1e-9");
  cls->add_option("--max-exponent", o.max_exponent, "Largest exponent/denominator, default 64");
  cls->add_option("--example", o.example, "Reproduce a worked example: 3.1 or 3.2");
  common(cls);

  auto* zt = app.add_subcommand("zero-t", "Ground-state concentration as beta grows");
  couplings(zt, "Comma-separated increasing schedule, default 1,2,4,8,16");
  zt->add_option("--theta", o.theta)->group("");
  zt->add_option("--theta1", o.theta1)->group("");
  zt->add_option("--depth", o.depth, "Volume depth n (1..3), default 2");
  common(zt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    std::string text;
    if (regions->parsed()) text = cmd_regions(o);
    else if (gibbs->parsed()) text = cmd_gibbs_check(o);
    else if (cls->parsed()) text = cmd_classify(o);
    else text = cmd_zero_t(o);

    if (has(o.out)) write_file(resolve_out(o.out), text);
    else out << text;
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const RegionError& e) {
    err << "region error: " << e.what() << "\n";
    return kRegionError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kRegionError;
  }
}

}  // namespace cayley_ising::cli
