#include "tfsharp/cli.hpp"

#include <fftw3.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tfsharp/experiments.hpp"
#include "tfsharp/families.hpp"
#include "tfsharp/locop.hpp"
#include "tfsharp/norms.hpp"
#include "tfsharp/transforms.hpp"

namespace tfsharp::cli {

namespace {

using json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument("invalid value for '" + field + "': " + what) {}
};

ExtendedExponent parse_exponent(const std::string& field, const std::string& text) {
  try {
    return ExtendedExponent::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, "'" + text + "' (" + e.what() + ")");
  }
}

std::vector<ExtendedExponent> parse_exponents(const RunConfig& c) {
  std::vector<ExtendedExponent> out;
  for (const auto& s : c.exponents) out.push_back(parse_exponent("exponents", s));
  return out;
}

std::optional<ExtendedExponent> optional_exponent(const std::string& field, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_exponent(field, text);
}

Grid1D config_grid(const RunConfig& c) {
  try {
    return make_grid(c.L, c.m);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("L/m", e.what());
  }
}

std::vector<double> config_lambdas(const RunConfig& c) {
  std::vector<double> l = c.lambdas.empty() ? default_lambdas() : c.lambdas;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (!(l[i] > 0.0)) throw ConfigError("lambdas", "values must be positive");
    if (i > 0 && !(l[i] > l[i - 1])) throw ConfigError("lambdas", "values must be ascending");
  }
  if (l.size() < 4) throw ConfigError("lambdas", "at least 4 values are needed for a fit");
  return l;
}

WindowSpec family_spec(const std::string& field, const std::string& name, double param) {
  try {
    if (name == "gaussian") return gaussian_family(param);
    if (name == "chirp") return chirp_family(canonical_bump(), param);
    if (name == "bump") return bump(0.0, param);
    if (name == "chirped-gaussian") return chirped_gaussian(1.0, param);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "unknown family '" + name + "'");
}

SampledSignal config_signal(const RunConfig& c, const Grid1D& grid) {
  if (c.family == "random") {
    SeededRng rng(c.seed);
    return random_bandlimited(grid, rng);
  }
  return sample(family_spec("family", c.family, c.family_param), grid);
}

SampledSignal config_window(const RunConfig& c, const Grid1D& grid) {
  if (c.window != "gaussian" && c.window != "bump") {
    throw ConfigError("window", "unknown window '" + c.window + "'");
  }
  SampledSignal w = sample(family_spec("window", c.window, c.window_param), grid);
  const double n = lp_norm(w, ExtendedExponent(2.0));
  for (auto& z : w.samples) z /= n;
  return w;
}

SampledSymbol config_symbol(const RunConfig& c, const Grid1D& grid) {
  if (c.symbol == "sharpness") {
    try {
      return sharpness_symbol(canonical_bump(), c.symbol_param, grid);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("symbol-param", e.what());
    }
  }
  SampledSymbol a(grid, 1);
  for (int r = 0; r < a.rows(); ++r) {
    const double x = a.x_at(r);
    for (int k = 0; k < a.cols(); ++k) {
      const double w = a.omega_at(k);
      if (c.symbol == "ones") {
        a.at(r, k) = 1.0;
      } else if (c.symbol == "gaussian") {
        a.at(r, k) = std::exp(-std::numbers::pi * c.symbol_param * (x * x + w * w));
      } else if (c.symbol == "cube") {
        a.at(r, k) = (0.0 <= x && x < 1.0 && 0.0 <= w && w < 1.0) ? 1.0 : 0.0;
      } else {
        throw ConfigError("symbol", "unknown symbol '" + c.symbol + "'");
      }
    }
  }
  return a;
}

std::string status_text(bool passed) { return passed ? "pass" : "fail"; }

// ---- commands ----

RunResult run_norm(const RunConfig& c) {
  const Grid1D grid = config_grid(c);
  NormKind kind;
  try {
    kind = parse_norm_kind(c.norm);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("norm", e.what());
  }
  std::vector<ExtendedExponent> e = parse_exponents(c);
  if (e.empty()) e.assign(norm_arity(kind), ExtendedExponent(2.0));
  std::optional<NormSpec> spec;
  try {
    spec.emplace(kind, e);
  } catch (const std::invalid_argument& err) {
    throw ConfigError("exponents", err.what());
  }
  const SampledSignal f = config_signal(c, grid);
  double value;
  std::string target = c.family;
  if (spec->applies_to_signal()) {
    value = spec->evaluate(f);
  } else if (kind == NormKind::SymbolMixed) {
    target = "symbol:" + c.symbol;
    value = spec->evaluate(config_symbol(c, grid));
  } else {
    target = "stft:" + c.family;
    value = spec->evaluate(stft(f, config_window(c, grid)));
  }
  RunResult res;
  res.table.columns = {"norm", "exponents", "target", "window", "value"};
  std::string ex;
  for (std::size_t i = 0; i < e.size(); ++i) ex += (i ? ";" : "") + e[i].to_string();
  const std::string window =
      kind == NormKind::ModulationSTFT ? std::string(kModulationWindowId) : (spec->applies_to_signal() ? "" : c.window);
  res.table.rows.push_back({c.norm, ex, target, window, format_number(value)});
  res.assertions.push_back(Assertion::at_most("norm.finite", std::isfinite(value) ? 0.0 : 1.0, 0.0));
  return res;
}

RunResult run_stft(const RunConfig& c) {
  const Grid1D grid = config_grid(c);
  const SampledSignal f = config_signal(c, grid);
  const SampledSignal g = config_window(c, grid);
  const SampledSymbol v = stft(f, g);
  RunResult res;
  res.table.columns = {"x", "omega", "re", "im", "abs"};
  for (int r = 0; r < v.rows(); ++r) {
    for (int k = 0; k < v.cols(); ++k) {
      const cplx z = v.at(r, k);
      res.table.rows.push_back({format_number(v.x_at(r)), format_number(v.omega_at(k)), format_number(z.real()),
                                format_number(z.imag()), format_number(std::abs(z))});
    }
  }
  const double two = lp_norm(v, ExtendedExponent(2.0));
  const double expect = lp_norm(f, ExtendedExponent(2.0)) * lp_norm(g, ExtendedExponent(2.0));
  res.assertions.push_back(Assertion::equal("stft.orthogonality", two, expect, 1e-8 * expect));
  return res;
}

RunResult run_locop(const RunConfig& c) {
  const Grid1D grid = config_grid(c);
  const SampledSignal f = config_signal(c, grid);
  const SampledSignal w = config_window(c, grid);
  const SampledSymbol a = config_symbol(c, grid);
  const SampledSignal out = apply_locop(a, w, w, f);
  RunResult res;
  res.table.columns = {"t", "re_in", "im_in", "re_out", "im_out"};
  for (int j = 0; j < grid.N(); ++j) {
    res.table.rows.push_back({format_number(grid.point(j)), format_number(f.samples[j].real()),
                              format_number(f.samples[j].imag()), format_number(out.samples[j].real()),
                              format_number(out.samples[j].imag())});
  }
  const cplx pair = inner_product(out, f);
  const cplx weak = weak_pairing(a, w, w, f, f);
  res.assertions.push_back(
      Assertion::at_most("locop.weak_pairing", std::abs(pair - weak), 0.0, 1e-10 * std::max(std::abs(weak), 1e-300)));
  if (grid.N() <= 512) {
    const KernelMatrix K = build_kernel(a, w, w);
    const SampledSignal via = apply_kernel(K, f);
    double diff = 0.0;
    for (int j = 0; j < grid.N(); ++j) diff = std::max(diff, std::abs(via.samples[j] - out.samples[j]));
    double scale = 0.0;
    for (const auto& z : out.samples) scale = std::max(scale, std::abs(z));
    res.assertions.push_back(Assertion::at_most("locop.kernel_consistency", diff, 0.0, 1e-8 * scale));
    const SchurReport s = schur_report(K);
    const double bound = std::sqrt(s.c_sup_y * s.c_sup_x);
    res.assertions.push_back(Assertion::at_most("locop.schur_dominance", opnorm_l2(K).value, bound, 1e-6 * bound));
  }
  return res;
}

std::string exponent_cell(const ExtendedExponent& e) { return e.to_string(); }

void fill_points(RunResult& res, const std::vector<RegionVerdict>& verdicts, const char* first,
                 const char* second) {
  res.has_points = true;
  res.points.columns = {first, second, "probe", "kind", "lambda", "value", "fit"};
  for (const auto& v : verdicts) {
    for (const auto& p : v.probes) {
      for (std::size_t i = 0; i < p.fit.lambdas.size(); ++i) {
        res.points.rows.push_back({exponent_cell(v.first), exponent_cell(v.second), p.name, "sample",
                                   format_number(p.fit.lambdas[i]), format_number(p.fit.values[i]),
                                   format_number(p.fit.fitted(p.fit.lambdas[i]))});
      }
      res.points.rows.push_back({exponent_cell(v.first), exponent_cell(v.second), p.name, "fit", "",
                                 format_number(p.fit.slope), format_number(p.fit.intercept)});
    }
  }
}

void verdict_assertions(RunResult& res, const std::vector<RegionVerdict>& verdicts, const char* a,
                        const char* b) {
  for (const auto& v : verdicts) {
    if (v.status == PointStatus::Boundary) continue;
    const std::string name = std::string("region(") + a + "=" + v.first.to_string() + "," + b + "=" +
                             v.second.to_string() + ")";
    // Measured slope against the margin, on the side the region predicts.
    Assertion x = v.predicted_bounded ? Assertion::at_most(name, v.measured_slope, v.margin)
                                      : Assertion::at_most(name, -v.measured_slope, -v.margin);
    x.passed = v.status == PointStatus::Pass;
    res.assertions.push_back(x);
  }
}

RunResult run_scan_stft(const RunConfig& c) {
  StftScanOptions opts;
  opts.margin = c.margin;
  const auto verdicts = stft_region_scan(lattice_points(), config_lambdas(c), opts);
  RunResult res;
  res.table.columns = {"p", "q", "predicted", "slopeA", "slopeB", "classified", "residual", "status"};
  for (const auto& v : verdicts) {
    res.table.rows.push_back({exponent_cell(v.first), exponent_cell(v.second),
                              v.predicted_bounded ? "bounded" : "unbounded", format_number(v.probes[0].fit.slope),
                              v.probes.size() > 1 ? format_number(v.probes[1].fit.slope) : "",
                              v.classified_bounded ? "bounded" : "unbounded", format_number(v.max_residual()),
                              std::string(point_status_name(v.status))});
  }
  fill_points(res, verdicts, "p", "q");
  verdict_assertions(res, verdicts, "p", "q");
  return res;
}

RunResult run_scan_locop(const RunConfig& c, bool lq) {
  LocopScanOptions opts = lq ? lq_scan_options() : LocopScanOptions{};
  opts.margin = c.margin;
  opts.symbol_p = optional_exponent("symbol-p", c.symbol_p);
  opts.s1 = optional_exponent("s1", c.s1);
  opts.s2 = optional_exponent("s2", c.s2);
  const auto verdicts = locop_region_scan(lattice_points(), config_lambdas(c), opts);
  RunResult res;
  res.table.columns = {"q", "r", "predicted", "predicted_slope", "slope", "classified", "residual", "status"};
  for (const auto& v : verdicts) {
    res.table.rows.push_back({exponent_cell(v.first), exponent_cell(v.second),
                              v.predicted_bounded ? "bounded" : "unbounded", format_number(v.predicted_growth),
                              format_number(v.measured_slope), v.classified_bounded ? "bounded" : "unbounded",
                              format_number(v.max_residual()), std::string(point_status_name(v.status))});
  }
  fill_points(res, verdicts, "q", "r");
  verdict_assertions(res, verdicts, "q", "r");
  return res;
}

RunResult run_verify(const RunConfig& c) {
  RunResult res;
  res.assertions = run_verification_suite(c.seed);
  res.table.columns = {"name", "status", "measured", "expected", "tolerance"};
  for (const auto& a : res.assertions) {
    res.table.rows.push_back({a.name, status_text(a.passed), format_number(a.measured), format_number(a.expected),
                              format_number(a.tolerance)});
  }
  return res;
}

// ---- serialization ----

json table_json(const Table& t) {
  json j;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  return j;
}

Table table_from_json(const json& j) {
  Table t;
  t.columns = j.at("columns").get<std::vector<std::string>>();
  t.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
  return t;
}

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["L"] = c.L;
  j["m"] = c.m;
  j["exponents"] = c.exponents;
  j["lambdas"] = c.lambdas;
  j["norm"] = c.norm;
  j["family"] = c.family;
  j["family-param"] = c.family_param;
  j["window"] = c.window;
  j["window-param"] = c.window_param;
  j["symbol"] = c.symbol;
  j["symbol-param"] = c.symbol_param;
  j["symbol-p"] = c.symbol_p;
  j["s1"] = c.s1;
  j["s2"] = c.s2;
  j["margin"] = c.margin;
  j["format"] = c.format;
  j["seed"] = c.seed;
  return j;
}

json summary_json(const RunConfig& c, const RunResult& r) {
  json j;
  j["command"] = c.command;
  j["config"] = config_json(c);
  json list = json::array();
  std::size_t passed = 0;
  for (const auto& a : r.assertions) {
    json x;
    x["name"] = a.name;
    x["status"] = status_text(a.passed);
    x["measured"] = a.measured;
    x["expected"] = a.expected;
    x["tolerance"] = a.tolerance;
    x["relation"] = a.kind == Assertion::Kind::Equal ? "equal" : "at_most";
    list.push_back(x);
    passed += a.passed ? 1 : 0;
  }
  j["assertions"] = list;
  j["passed"] = passed;
  j["failed"] = r.assertions.size() - passed;
  json versions;
  versions["tfsharp"] = kVersion;
  versions["fftw"] = std::string(fftw_version);
  versions["cli11"] = CLI11_VERSION;
  versions["nlohmann_json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  j["versions"] = versions;
  j["table"] = table_json(r.table);
  if (r.has_points) j["points"] = table_json(r.points);
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("out", "cannot open '" + path + "' for writing");
  os << content;
  if (!os) throw ConfigError("out", "write to '" + path + "' failed");
}

std::string render_table(const Table& t, const std::string& format) {
  if (format == "json") return table_json(t).dump(2) + "\n";
  return to_csv(t);
}

int regenerate(const RunConfig& c) {
  if (c.summary.empty()) throw ConfigError("summary", "regenerate needs --summary <file>");
  std::ifstream is(c.summary);
  if (!is) throw ConfigError("summary", "cannot read '" + c.summary + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("summary", e.what());
  }
  const Table t = table_from_json(j.at("table"));
  const std::string text = render_table(t, c.format);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_file(c.out + (c.format == "json" ? ".json" : ".csv"), text);
    if (j.contains("points")) write_file(c.out + ".points.csv", to_csv(table_from_json(j.at("points"))));
  }
  return kPass;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

RunResult execute(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw ConfigError("format", "expected csv or json");
  if (!(c.margin > 0.0)) throw ConfigError("margin", "must be positive");
  parse_exponents(c);
  if (c.command == "norm") return run_norm(c);
  if (c.command == "stft") return run_stft(c);
  if (c.command == "locop") return run_locop(c);
  if (c.command == "scan-stft") return run_scan_stft(c);
  if (c.command == "scan-locop") return run_scan_locop(c, false);
  if (c.command == "scan-locop-lq") return run_scan_locop(c, true);
  if (c.command == "verify") return run_verify(c);
  throw ConfigError("command", "unknown command '" + c.command + "'");
}

int main(int argc, char** argv) {
  CLI::App app{"Time-frequency norms, localization operators and sharpness scans"};
  app.set_config("--config", "", "INI/TOML file with option values; flags override it");
  RunConfig c;
  app.add_option("command", c.command,
                 "norm | stft | locop | scan-stft | scan-locop | scan-locop-lq | verify | regenerate")
      ->required();
  app.add_option("--L", c.L, "Domain length in unit cubes (even)");
  app.add_option("--m", c.m, "Samples per unit cube");
  app.add_option("--exponents", c.exponents, "Exponents: numbers >= 1, a/b fractions or inf");
  app.add_option("--lambdas", c.lambdas, "Ascending lambda sweep for scans");
  app.add_option("--norm", c.norm, "lp | mixed-lpq | mixed-lplq | amalgam | flp | modulation | modulation-triebel | symbol-mixed");
  app.add_option("--family", c.family, "gaussian | chirp | bump | chirped-gaussian | random");
  app.add_option("--family-param", c.family_param, "Family parameter (lambda, radius or chirp rate)");
  app.add_option("--window", c.window, "gaussian | bump (normalised in L^2)");
  app.add_option("--window-param", c.window_param, "Window rate or radius");
  app.add_option("--symbol", c.symbol, "ones | gaussian | cube | sharpness");
  app.add_option("--symbol-param", c.symbol_param, "Symbol parameter (Gaussian rate or chirp rate)");
  app.add_option("--symbol-p", c.symbol_p, "Local exponent p of the symbol norm in localization scans");
  app.add_option("--s1", c.s1, "Local exponent of the input norm in localization scans");
  app.add_option("--s2", c.s2, "Global exponent of the input norm in localization scans");
  app.add_option("--margin", c.margin, "Slope margin for bounded/unbounded classification");
  app.add_option("--out", c.out, "Output prefix; writes <prefix>.csv|json and <prefix>.summary.json");
  app.add_option("--format", c.format, "csv | json");
  app.add_option("--summary", c.summary, "Summary JSON to regenerate the table from");
  app.add_option("--seed", c.seed, "Seed for random probes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    if (c.command == "regenerate") return regenerate(c);
    const RunResult r = execute(c);
    bool ok = true;
    for (const auto& a : r.assertions) ok = ok && a.passed;
    if (c.out.empty()) {
      std::cout << render_table(r.table, c.format);
    } else {
      write_file(c.out + (c.format == "json" ? ".json" : ".csv"), render_table(r.table, c.format));
      if (r.has_points) write_file(c.out + ".points.csv", to_csv(r.points));
      write_file(c.out + ".summary.json", summary_json(c, r).dump(2) + "\n");
    }
    for (const auto& a : r.assertions) {
      if (!a.passed) std::cerr << "FAIL " << a.name << ": measured " << format_number(a.measured) << "\n";
    }
    return ok ? kPass : kAssertionFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAssertionFailure;
  }
}

}  // namespace tfsharp::cli
