#include "chowla_cli/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include <CLI11.hpp>

#include "chowla/clt_audit.hpp"
#include "chowla/energy.hpp"
#include "chowla/errors.hpp"
#include "chowla/fluctuations.hpp"
#include "chowla/sieve.hpp"

#ifndef CHOWLA_VERSION
#define CHOWLA_VERSION "0.0.0"
#endif

namespace chowla::cli {

namespace {

constexpr std::int64_t kMaxThreads = 1024;
constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

std::string format_name(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json"; }

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// max over n <= N of |P(n)| is at most sum |a_i| N^i.
BigInt value_bound(const IntPolynomial& p, std::int64_t n) {
  BigInt bound = 0, power = 1;
  for (const BigInt& c : p.coeffs()) {
    bound += boost::multiprecision::abs(c) * power;
    power *= n;
  }
  return bound;
}

void check_values_fit(const IntPolynomial& p, std::int64_t n) {
  if (value_bound(p, n) <= kInt64Max) return;
  if (boost::multiprecision::abs(p.eval(BigInt(n))) > kInt64Max) {
    throw BudgetError("n", "|P(" + std::to_string(n) + ")| exceeds the 64-bit value range");
  }
}

void check_max_n(const RunConfig& c, const std::string& field, std::int64_t top) {
  if (top > c.max_n) {
    throw BudgetError(field, "N = " + std::to_string(top) + " exceeds --max-n " +
                                 std::to_string(c.max_n));
  }
}

void reject_pure_power(const IntPolynomial& p, const PolynomialClass& cls) {
  if (p.degree() < 2) throw ConfigError("poly", "degree must be at least 2");
  if (cls.is_pure_power) {
    throw ConfigError("poly", "P = " + p.to_string() +
                                  " has the excluded pure-power form w(x+c)^d");
  }
}

Json with_polynomial(const IntPolynomial& p, Json body) {
  Json out = {{"polynomial", to_json(p)}};
  for (auto& [key, value] : body.items()) out[key] = value;
  return out;
}

Json flatten_energy(const Json& report) {
  Json row = {{"n", report["range"]["n"]}, {"q", report["range"]["q"]}, {"a", report["range"]["a"]}};
  for (auto& [key, value] : report.items()) {
    if (key == "range" || key == "polynomial") continue;
    row[key] = value;
  }
  return row;
}

Rational parse_rational_flag(const std::string& field, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ConfigError& e) {
    throw ConfigError(field, "--" + field + " '" + text + "' is not a rational number");
  }
}

}  // namespace

Json RunConfig::echo() const {
  Json j = {{"subcommand", subcommand}, {"poly", poly_spec}};
  if (subcommand == "sieve" || subcommand == "energy" || subcommand == "clt") j["n"] = n;
  if (subcommand == "energy") {
    j["q"] = q;
    j["a"] = a;
    j["chunked"] = chunked;
    j["memory_budget"] = memory_budget;
    j["lpf_mode"] = lpf_mode.empty() ? Json(nullptr) : Json(lpf_mode);
  }
  if (subcommand == "energy" || subcommand == "audit") j["grid"] = grid;
  if (subcommand == "sieve") {
    j["lpf_scale"] = lpf_scale ? Json(to_string(*lpf_scale)) : Json(nullptr);
    j["no_table"] = no_table;
  }
  if (subcommand == "clt" || subcommand == "fluct") {
    j["seed"] = seed;
    j["reps"] = replicates;
  }
  if (subcommand == "clt") {
    j["dump_samples"] = dump_samples;
    j["skip_exact"] = skip_exact;
    j["memory_budget"] = memory_budget;
  }
  if (subcommand == "fluct") {
    j["x"] = x;
    j["k"] = k;
    j["ratio"] = to_string(ratio);
    j["conditional"] = conditional;
  }
  if (subcommand != "classify") {
    j["threads"] = threads;
    j["max_n"] = max_n;
  }
  j["dry_run"] = dry_run;
  j["out"] = out.empty() ? Json(nullptr) : Json(out);
  j["format"] = format_name(format);
  return j;
}

std::int64_t parse_count(const std::string& field, const std::string& text,
                         std::int64_t min, std::int64_t max) {
  auto fail = [&](const std::string& why) -> std::int64_t {
    throw ConfigError(field, "--" + field + " '" + text + "': " + why);
  };
  if (text.empty()) return fail("empty value");
  std::string mantissa = text;
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    const std::string exp_text = text.substr(e + 1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exponent < 0 ||
        exponent > 18) {
      return fail("not an integer");
    }
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(mantissa.data(), mantissa.data() + mantissa.size(), value);
  if (ec == std::errc::result_out_of_range) return fail("out of range");
  if (ec != std::errc() || ptr != mantissa.data() + mantissa.size() || mantissa.empty()) {
    return fail("not an integer");
  }
  for (int i = 0; i < exponent; ++i) {
    if (value > kInt64Max / 10 || value < -kInt64Max / 10) return fail("out of range");
    value *= 10;
  }
  if (value < min) return fail("must be at least " + std::to_string(min));
  if (value > max) return fail("must be at most " + std::to_string(max));
  return value;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const char* begin = text.data() + (hex ? 2 : 0);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value, hex ? 16 : 10);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("seed", "--seed '" + text + "' is not a decimal or 0x-hex 64-bit integer");
  }
  return value;
}

std::vector<std::int64_t> parse_grid(const std::string& field, const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(parse_count(field, text.substr(start, comma - start), 1, kInt64Max));
    start = comma + 1;
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw ConfigError(field, "--" + field + " must be strictly ascending");
  }
  return out;
}

std::string resolve_output_path(const RunConfig& config, const char* env_dir) {
  const std::string ext = config.format == OutputFormat::kCsv ? ".csv" : ".json";
  std::filesystem::path path;
  if (!config.out.empty()) {
    if (config.out == "-") return "";
    path = config.out;
    if (path.is_relative() && env_dir && *env_dir) path = std::filesystem::path(env_dir) / path;
  } else if (env_dir && *env_dir) {
    path = std::filesystem::path(env_dir) / (config.subcommand + ext);
  } else {
    return "";
  }
  return path.string();
}

Json validate(const RunConfig& c) {
  if (c.poly_spec.empty()) throw ConfigError("poly", "--poly is required");
  IntPolynomial p = IntPolynomial::parse(c.poly_spec);
  PolynomialClass cls = classify(p);
  Json estimates = {{"degree", p.degree()}};

  if (c.subcommand == "sieve") {
    if (c.n < 1) throw ConfigError("n", "--n is required and must be positive");
    check_max_n(c, "n", c.n);
    check_values_fit(p, c.n);
    if (c.lpf_scale && *c.lpf_scale < 0) throw ConfigError("lpf-scale", "must be >= 0");
    estimates["rows"] = c.n;
  } else if (c.subcommand == "energy") {
    reject_pure_power(p, cls);
    if (!c.lpf_mode.empty() && c.lpf_mode != "same-prime" && c.lpf_mode != "paired") {
      throw ConfigError("lpf-mode", "--lpf-mode must be same-prime or paired");
    }
    if (c.memory_budget < 1) throw ConfigError("memory-budget", "must be positive");
    std::vector<std::int64_t> sizes;
    if (!c.grid.empty()) {
      if (c.q != 1 || c.a != 0) throw ConfigError("grid", "--grid uses the full range; drop --q/--a");
      if (!c.lpf_mode.empty()) throw ConfigError("lpf-mode", "--lpf-mode needs --n, not --grid");
      for (std::int64_t n : c.grid) {
        check_values_fit(p, n);
        sizes.push_back(n);
      }
    } else {
      if (c.n < 1) throw ConfigError("n", "--n (or --grid) is required and must be positive");
      if (c.q < 1) throw ConfigError("q", "--q must be positive");
      if (c.a < 0 || c.a >= c.q) throw ConfigError("a", "--a must satisfy 0 <= a < q");
      if (!c.lpf_mode.empty()) {
        if (c.q != 1) throw ConfigError("lpf-mode", "--lpf-mode applies to the full range only");
        check_max_n(c, "n", c.n);
      }
      const std::int64_t members = ProgressionRange::member_count(c.n, c.q, c.a);
      if (members == 0) throw ConfigError("n", "the progression has no members in [1, N]");
      check_values_fit(p, c.n);
      sizes.push_back(members);
    }
    Json passes = Json::array();
    for (std::int64_t m : sizes) {
      const double products = static_cast<double>(m) * static_cast<double>(m + 1) / 2.0;
      if (products > static_cast<double>(c.memory_budget) && !c.chunked) {
        throw BudgetError("memory-budget",
                          std::to_string(static_cast<std::uint64_t>(products)) +
                              " products exceed --memory-budget " +
                              std::to_string(c.memory_budget) + "; rerun with --chunked");
      }
      passes.push_back(static_cast<std::int64_t>(
          std::ceil(products / (0.8 * static_cast<double>(c.memory_budget)))));
    }
    estimates["members"] = sizes;
    estimates["passes"] = passes;
  } else if (c.subcommand == "clt") {
    reject_pure_power(p, cls);
    if (c.n < 1) throw ConfigError("n", "--n is required and must be positive");
    if (c.replicates < 100) throw ConfigError("reps", "--reps must be at least 100");
    check_max_n(c, "n", c.n);
    check_values_fit(p, c.n);
    estimates["term_evaluations"] = Json(static_cast<double>(c.n) * static_cast<double>(c.replicates));
  } else if (c.subcommand == "fluct") {
    if (p.degree() < 2) throw ConfigError("poly", "degree must be at least 2");
    if (!cls.fluct_admissible) {
      throw ConfigError("poly", "P = " + p.to_string() + " is a product of linear factors");
    }
    if (c.replicates < 2) throw ConfigError("reps", "--reps must be at least 2");
    ScaleGrid grid = build_grid(c.x, c.k, c.ratio, c.max_n);
    check_values_fit(p, grid.points.back());
    estimates["grid"] = grid.points;
  } else if (c.subcommand == "audit") {
    reject_pure_power(p, cls);
    if (c.grid.empty()) throw ConfigError("grid", "--grid is required");
    check_max_n(c, "grid", c.grid.back());
    check_values_fit(p, c.grid.back());
    estimates["rows"] = c.grid.back();
  } else if (c.subcommand != "classify") {
    throw ConfigError("subcommand", "unknown subcommand '" + c.subcommand + "'");
  }
  if (c.threads < 1) throw ConfigError("threads", "--threads must be positive");
  return estimates;
}

Json dispatch(const RunConfig& c) {
  IntPolynomial p = IntPolynomial::parse(c.poly_spec);
  SieveOptions sieve_options;
  sieve_options.threads = c.threads;
  sieve_options.max_n = c.max_n;
  Json result, rows = Json::array();

  if (c.subcommand == "classify") {
    Json cls = to_json(classify(p));
    result = {{"polynomial", to_json(p)}, {"classification", cls}};
    Json row = {{"polynomial", p.to_string()}};
    for (auto& [key, value] : cls.items()) row[key] = value;
    rows.push_back(row);
  } else if (c.subcommand == "sieve") {
    FactorTable table = factor_values(p, c.n, sieve_options);
    const Rational scale = c.lpf_scale.value_or(default_lpf_scale(p.degree()));
    Json table_rows = Json::array();
    if (!c.no_table) {
      for (const auto& row : table.rows()) table_rows.push_back(to_json(row));
    }
    result = {{"polynomial", to_json(p)},
              {"n", c.n},
              {"distinct_primes", table.primes().size()},
              {"lpf_scale", to_string(scale)},
              {"lpf_density", to_json(lpf_density(table, scale))},
              {"table", table_rows}};
    rows = table_rows;
  } else if (c.subcommand == "energy") {
    EnergyOptions options;
    options.memory_budget = c.memory_budget;
    options.chunked = c.chunked;
    if (!c.grid.empty()) {
      ExponentFit fit = exponent_fit(p, c.grid, options);
      result = {{"polynomial", to_json(p)}, {"fit", to_json(fit)}};
      rows = result["fit"]["points"];
    } else {
      EnergyReport report = energy(p, ProgressionRange(c.n, c.q, c.a), options);
      result = to_json(report);
      if (p.degree() >= 2 && c.n > 15) result["bombieri_pila"] = to_json(bp_bound(p.degree(), c.n));
      if (!c.lpf_mode.empty()) {
        FactorTable table = factor_values(p, c.n, sieve_options);
        if (c.lpf_mode == "same-prime") {
          result["lpf_same_prime"] = energy_same_prime(table, c.n);
        } else {
          result["lpf_paired"] = to_json(energy_paired_primes(table, c.n));
        }
      }
      rows.push_back(flatten_energy(result));
    }
  } else if (c.subcommand == "clt") {
    CltOptions options;
    options.threads = c.threads;
    options.max_n = c.max_n;
    options.energy_memory_budget = c.memory_budget;
    options.skip_exact_fourth_moment = c.skip_exact;
    CltSampleSet set = run_clt(p, c.n, c.replicates, c.seed, options);
    result = {{"polynomial", to_json(p)},
              {"n", set.n},
              {"replicates", set.replicates},
              {"seed", set.seed},
              {"statistics", to_json(set.stats)}};
    if (c.dump_samples) {
      Json samples = Json::array();
      for (std::size_t r = 0; r < set.samples.size(); ++r) {
        Json row = {{"replicate", r}, {"re", set.samples[r].real()}, {"im", set.samples[r].imag()}};
        samples.push_back(row);
      }
      result["samples"] = samples;
      rows = samples;
    } else {
      rows.push_back(result["statistics"]);
    }
  } else if (c.subcommand == "fluct") {
    FluctConfig config;
    config.base = c.x;
    config.k = c.k;
    config.ratio = c.ratio;
    config.replicates = c.replicates;
    config.seed = c.seed;
    config.conditional = c.conditional;
    config.threads = c.threads;
    config.max_point = c.max_n;
    result = to_json(run_fluct(p, config));
    rows = result["scales"];
  } else if (c.subcommand == "audit") {
    FactorTable table = factor_values(p, c.grid.back(), sieve_options);
    McLeishAudit audit = mcleish_audit(table, c.grid);
    Json entries = Json::array();
    for (const auto& e : audit.entries) entries.push_back(to_json(e));
    result = with_polynomial(p, {{"entries", entries}});
    rows = entries;
  }
  return {{"result", result}, {"rows", rows}};
}

namespace {

struct RawArgs {
  std::string poly, n, q = "1", a = "0", grid, x, k, ratio = "8", seed = "0", reps,
                        threads = "1", memory_budget = "80000000", max_n = "10000000",
                        lpf_scale, lpf_mode, out, format;
  bool chunked = false, conditional = false, dump_samples = false, skip_exact = false,
       no_table = false, dry_run = false;
};

void add_common(CLI::App* sub, RawArgs& raw, bool parallel) {
  sub->add_option("--poly", raw.poly, "Polynomial: \"c0,c1,...,cd\" or \"x^2+1\" (required)");
  sub->add_option("--out", raw.out,
                  "Output path (.json or .csv); '-' for stdout. Relative paths and the "
                  "default file resolve against $CHOWLA_OUTPUT_DIR");
  sub->add_option("--format", raw.format, "json or csv (default: from --out, else json)");
  sub->add_flag("--dry-run", raw.dry_run, "Validate the config and budgets, compute nothing");
  if (parallel) {
    sub->add_option("--threads", raw.threads, "Worker threads (default 1)");
    sub->add_option("--max-n", raw.max_n, "Largest N the sieve may factor (default 1e7)");
  }
}

RunConfig to_config(const std::string& subcommand, const RawArgs& raw) {
  RunConfig c;
  c.subcommand = subcommand;
  c.poly_spec = raw.poly;
  if (c.poly_spec.empty()) throw ConfigError("poly", "--poly is required");
  IntPolynomial::parse(c.poly_spec);
  c.threads = static_cast<int>(parse_count("threads", raw.threads, 1, kMaxThreads));
  c.max_n = parse_count("max-n", raw.max_n, 1, kInt64Max);
  c.memory_budget = parse_count("memory-budget", raw.memory_budget, 1, kInt64Max);
  if (!raw.n.empty()) c.n = parse_count("n", raw.n, 1, kInt64Max);
  c.q = parse_count("q", raw.q, 1, kInt64Max);
  c.a = parse_count("a", raw.a, 0, kInt64Max);
  if (!raw.grid.empty()) c.grid = parse_grid("grid", raw.grid);
  if (!raw.x.empty()) c.x = parse_count("x", raw.x, 1, kInt64Max);
  if (!raw.k.empty()) c.k = static_cast<int>(parse_count("k", raw.k, 1, 64));
  c.ratio = parse_rational_flag("ratio", raw.ratio);
  c.seed = parse_seed(raw.seed);
  if (!raw.reps.empty()) c.replicates = parse_count("reps", raw.reps, 1, kInt64Max);
  if (!raw.lpf_scale.empty()) c.lpf_scale = parse_rational_flag("lpf-scale", raw.lpf_scale);
  c.lpf_mode = raw.lpf_mode;
  c.chunked = raw.chunked;
  c.conditional = raw.conditional;
  c.dump_samples = raw.dump_samples;
  c.skip_exact = raw.skip_exact;
  c.no_table = raw.no_table;
  c.dry_run = raw.dry_run;
  c.out = raw.out;
  if (raw.format == "csv" || (raw.format.empty() && ends_with(raw.out, ".csv"))) {
    c.format = OutputFormat::kCsv;
  } else if (!raw.format.empty() && raw.format != "json") {
    throw ConfigError("format", "--format must be json or csv");
  }
  if (subcommand == "fluct") {
    if (raw.x.empty()) throw ConfigError("x", "--x is required");
    if (raw.k.empty()) throw ConfigError("k", "--k is required");
    if (raw.reps.empty()) throw ConfigError("reps", "--reps is required");
  }
  if (subcommand == "clt" && raw.reps.empty()) throw ConfigError("reps", "--reps is required");
  return c;
}

Json error_json(const std::string& kind, int code, const std::string& field,
                const std::string& message) {
  Json e = {{"kind", kind}, {"exit_code", code}};
  e["field"] = field.empty() ? Json(nullptr) : Json(field);
  e["message"] = message;
  return {{"tool", "chowla"}, {"version", CHOWLA_VERSION}, {"error", e}};
}

void write_artifact(const RunConfig& c, const Json& metadata, const Json& payload,
                    std::ostream& out) {
  const std::string path = resolve_output_path(c, std::getenv(kOutputDirEnv));
  auto emit = [&](std::ostream& stream) {
    if (c.format == OutputFormat::kCsv) {
      write_csv(metadata, payload["rows"], stream);
    } else {
      Json doc = {{"metadata", metadata}, {"result", payload["result"]}};
      stream << doc.dump(2) << "\n";
    }
  };
  if (path.empty()) {
    emit(out);
    return;
  }
  std::filesystem::path fs_path(path);
  std::error_code ec;
  if (fs_path.has_parent_path()) std::filesystem::create_directories(fs_path.parent_path(), ec);
  std::ofstream file(fs_path);
  if (!file) throw ConfigError("out", "cannot write '" + path + "'");
  emit(file);
  if (!file) throw ConfigError("out", "write to '" + path + "' failed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicative energy, random multiplicative functions and polynomial values",
               "chowla"};
  app.set_version_flag("--version", CHOWLA_VERSION);
  app.require_subcommand(1);
  RawArgs raw;

  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a polynomial");
  add_common(classify_cmd, raw, false);

  CLI::App* sieve = app.add_subcommand("sieve", "Factor P(1..N) and measure largest-prime density");
  add_common(sieve, raw, true);
  sieve->add_option("--n", raw.n, "Largest argument N (required)");
  sieve->add_option("--lpf-scale", raw.lpf_scale, "Threshold scale s in P+ >= s n ln n (default 1/(2d^2))");
  sieve->add_flag("--no-table", raw.no_table, "Omit the per-n factor table");

  CLI::App* energy_cmd = app.add_subcommand("energy", "Exact multiplicative energy of P over a progression");
  add_common(energy_cmd, raw, true);
  energy_cmd->add_option("--n", raw.n, "Range [1, N]");
  energy_cmd->add_option("--q", raw.q, "Progression modulus (default 1)");
  energy_cmd->add_option("--a", raw.a, "Progression residue, 0 <= a < q (default 0)");
  energy_cmd->add_option("--grid", raw.grid, "N1,N2,... for an exponent fit instead of --n");
  energy_cmd->add_flag("--chunked", raw.chunked, "Count in several passes within the memory budget");
  energy_cmd->add_option("--memory-budget", raw.memory_budget, "Stored products per pass (default 8e7)");
  energy_cmd->add_option("--lpf-mode", raw.lpf_mode, "Also count with largest-prime constraints: same-prime or paired");

  CLI::App* clt = app.add_subcommand("clt", "Monte-Carlo sums of f(P(n)) for Steinhaus f");
  add_common(clt, raw, true);
  clt->add_option("--n", raw.n, "Sum length N (required)");
  clt->add_option("--reps", raw.reps, "Replicates, at least 100 (required)");
  clt->add_option("--seed", raw.seed, "Seed, decimal or 0x-hex (default 0)");
  clt->add_flag("--dump-samples", raw.dump_samples, "Include every sample");
  clt->add_flag("--skip-exact", raw.skip_exact, "Skip the exact fourth moment");
  clt->add_option("--memory-budget", raw.memory_budget, "Products per pass for the exact fourth moment");

  CLI::App* fluct = app.add_subcommand("fluct", "Split sums over a geometric grid of scales");
  add_common(fluct, raw, true);
  fluct->add_option("--x", raw.x, "Base scale X >= 100 (required)");
  fluct->add_option("--k", raw.k, "Number of scales, at least 2 (required)");
  fluct->add_option("--ratio", raw.ratio, "Grid ratio >= 2 (default 8)");
  fluct->add_option("--reps", raw.reps, "Replicates, at least 2 (required)");
  fluct->add_option("--seed", raw.seed, "Seed, decimal or 0x-hex (default 0)");
  fluct->add_flag("--conditional", raw.conditional,
                  "Resample only the selected primes; the rest stay frozen");

  CLI::App* audit = app.add_subcommand("audit", "Exact martingale moment audit over a grid");
  add_common(audit, raw, true);
  audit->add_option("--grid", raw.grid, "N1,N2,... strictly ascending (required)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_json("config", kConfigError, "args", e.what()).dump() << "\n";
    return kConfigError;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    const RunConfig config = to_config(subcommand, raw);
    const auto start = std::chrono::steady_clock::now();
    Json estimates = validate(config);
    Json payload;
    if (config.dry_run) {
      payload = {{"result", {{"dry_run", true}, {"valid", true}, {"estimates", estimates}}},
                 {"rows", Json::array({estimates})}};
    } else {
      payload = dispatch(config);
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json metadata = {{"tool", "chowla"},
                     {"version", CHOWLA_VERSION},
                     {"schema_version", kSchemaVersion},
                     {"subcommand", subcommand},
                     {"config", config.echo()},
                     {"wall_time_seconds", wall}};
    write_artifact(config, metadata, payload, out);
    return kOk;
  } catch (const ConfigError& e) {
    err << error_json("config", kConfigError, e.field(), e.what()).dump() << "\n";
    return kConfigError;
  } catch (const BudgetError& e) {
    err << error_json("budget", kBudgetError, e.field(), e.what()).dump() << "\n";
    return kBudgetError;
  } catch (const std::exception& e) {
    err << error_json("internal", kInternalError, "", e.what()).dump() << "\n";
    return kInternalError;
  }
}

}  // namespace chowla::cli
