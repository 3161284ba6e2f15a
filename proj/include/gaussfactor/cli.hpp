#pragma once

// Command-line front end. Parsing fills a RunConfig; run() executes it and
// returns 0 (ok), 1 (configuration error) or 2 (verification failure).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaussfactor/factorizer.hpp"
#include "gaussfactor/gauss_sums.hpp"
#include "gaussfactor/nslit.hpp"
#include "gaussfactor/verify.hpp"

namespace gaussfactor::cli {

enum class Command { scan, factor, lines, reciprocate, nslit, verify, ghost };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitVerify = 2;
inline constexpr const char* kOutputDirEnv = "GAUSSFACTOR_OUTPUT_DIR";

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::verify;
  u64 n_target = 0;
  std::optional<Scheme> scheme;
  std::optional<double> delta_m;
  std::optional<int> m_max;
  std::optional<u64> m_terms;
  std::optional<double> xi_min;
  std::optional<double> xi_max;
  double step = 0.01;
  std::optional<u64> l_min;
  std::optional<u64> l_max;
  std::optional<u64> l_talbot;
  std::optional<u64> n_prime;
  std::optional<u64> samples;
  double ratio = 2.0;
  double window = 0.4;
  double zero_fraction = kZeroFraction;
  double threshold = kGhostThreshold;
  double spread_threshold = kSpreadThreshold;
  u64 seed = 1;
  std::string suite = "all";
  std::string output_path;
  std::optional<Format> format;
  unsigned workers = 1;

  /// Figure defaults: dm = 10, except dm = 8 for even targets.
  double effective_delta_m() const {
    if (delta_m) return *delta_m;
    return n_target % 2 == 0 && n_target > 0 ? 8.0 : 10.0;
  }

  WeightProfile weights() const { return WeightProfile(effective_delta_m(), m_max); }
};

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

inline Format default_format(Command c) {
  switch (c) {
    case Command::scan:
    case Command::nslit: return Format::csv;
    default: return Format::json;
  }
}

inline Scheme default_scheme(u64 n) { return n % 2 == 1 ? Scheme::continuous_odd : Scheme::continuous_even; }

}  // namespace detail

/// Rejects inconsistent combinations before any computation starts.
inline void validate(const RunConfig& c) {
  using detail::require;
  if (c.command != Command::verify) require(c.n_target >= 1, "--n is required and must be >= 1");
  require(std::isfinite(c.step) && c.step > 0.0, "--step must be positive");
  if (c.delta_m) require(std::isfinite(*c.delta_m) && *c.delta_m > 0.0, "--dm must be positive");
  if (c.m_max) require(*c.m_max >= 1, "--m-max must be >= 1");
  if (c.m_terms) require(*c.m_terms >= 1, "--m-terms must be >= 1");
  if (c.xi_min && c.xi_max) require(*c.xi_max >= *c.xi_min, "--xi-max must not be below --xi-min");
  if (c.l_min && c.l_max) require(*c.l_max >= *c.l_min, "--l-max must not be below --l-min");
  require(c.ratio > 0.0, "--ratio must be positive");
  require(c.window > 0.0, "--window must be positive");
  require(c.zero_fraction > 0.0 && c.zero_fraction < 1.0, "--zero-fraction must lie in (0, 1)");
  require(c.threshold > 0.0 && c.threshold < 1.0, "--threshold must lie in (0, 1)");
  require(c.spread_threshold > 0.0 && c.spread_threshold < 1.0, "--spread-threshold must lie in (0, 1)");
  require(c.workers >= 1, "--workers must be >= 1");
  const Format fmt = c.format.value_or(detail::default_format(c.command));
  switch (c.command) {
    case Command::scan:
      require(fmt == Format::csv, "scan emits csv only");
      if (c.n_prime) require(*c.n_prime >= 1, "--n-prime must be >= 1");
      break;
    case Command::factor: {
      require(fmt == Format::json, "factor emits json only");
      const Scheme s = c.scheme.value_or(detail::default_scheme(c.n_target));
      if (s == Scheme::continuous_odd) require(c.n_target % 2 == 1 && c.n_target >= 3,
                                               "scheme continuous_odd needs odd N >= 3; use continuous_even");
      if (s == Scheme::continuous_even) require(c.n_target % 2 == 0, "scheme continuous_even needs even N");
      if (s == Scheme::reciprocate) {
        require(c.n_target % 2 == 1, "scheme reciprocate needs odd N");
        require(c.l_max.has_value(), "scheme reciprocate needs --l-max");
      }
      if (s == Scheme::truncated) require(c.m_terms.has_value(), "scheme truncated needs --m-terms");
      break;
    }
    case Command::lines: break;
    case Command::reciprocate:
      require(c.l_max.has_value(), "reciprocate needs --l-max");
      if (fmt == Format::json) require(c.n_target % 2 == 1, "reciprocate json report needs odd N");
      if (c.samples) require(!c.m_terms, "--samples and --m-terms are exclusive");
      break;
    case Command::nslit:
      if (fmt == Format::csv) require(c.l_talbot.has_value(), "nslit csv needs --l");
      else require(c.l_talbot || c.l_max, "nslit json needs --l or --l-max");
      if (fmt == Format::json) require(c.n_target % 2 == 1, "nslit spike analysis needs odd N");
      break;
    case Command::verify: {
      const auto names = suite_names();
      require(c.suite == "all" || std::find(names.begin(), names.end(), c.suite) != names.end(),
              "unknown suite '" + c.suite + "'");
      break;
    }
    case Command::ghost:
      require(c.m_terms.has_value(), "ghost needs --m-terms");
      require(fmt == Format::json, "ghost emits json only");
      break;
  }
}

/// Twelve significant digits, C locale.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_csv_header(std::ostream& os) { os << "xi,re,im,abs2\n"; }

inline void write_csv_row(std::ostream& os, double xi, cplx v) {
  os << format_number(xi) << ',' << format_number(v.real()) << ',' << format_number(v.imag()) << ','
     << format_number(std::norm(v)) << '\n';
}

inline nlohmann::ordered_json report_to_json(const FactorReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n_target;
  j["scheme"] = std::string(to_string(r.scheme));
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  nlohmann::ordered_json cands = nlohmann::ordered_json::array();
  for (const Candidate& c : r.candidates) {
    nlohmann::ordered_json e;
    e["l"] = c.l;
    e["measured"] = c.measured;
    e["predicted"] = c.predicted ? nlohmann::ordered_json(*c.predicted) : nlohmann::ordered_json(nullptr);
    e["class"] = std::string(to_string(c.cls));
    e["shared_factor"] = c.shared_factor ? nlohmann::ordered_json(*c.shared_factor) : nlohmann::ordered_json(nullptr);
    cands.push_back(e);
  }
  j["candidates"] = cands;
  j["factors"] = r.verified_factors;
  return j;
}

inline FactorReport run_factor(const RunConfig& c) {
  const Scheme s = c.scheme.value_or(detail::default_scheme(c.n_target));
  const PeakCriterion crit{c.window, c.ratio};
  switch (s) {
    case Scheme::continuous_odd:
      return factor_scan_continuous(c.n_target, c.weights(), c.step, c.l_max, crit, c.workers);
    case Scheme::continuous_even:
      return factor_scan_even(c.n_target, c.weights(), c.step, c.l_max, crit, c.zero_fraction, c.workers);
    case Scheme::discrete_lines: return factor_lines_discrete(c.n_target, c.weights(), c.zero_fraction, c.workers);
    case Scheme::reciprocate: return factor_reciprocate(c.n_target, *c.l_max, kReciprocateTolerance, c.workers);
    case Scheme::truncated: return factor_truncated(c.n_target, *c.m_terms, c.l_max, c.threshold, c.workers);
  }
  throw ConfigError("unknown scheme");
}

/// Emits the artifact for a validated config. Returns the exit status.
inline int execute(const RunConfig& c, std::ostream& os, std::ostream& err) {
  const Format fmt = c.format.value_or(detail::default_format(c.command));
  switch (c.command) {
    case Command::scan: {
      const double lo = c.xi_min.value_or(1.0);
      const double hi = c.xi_max.value_or(static_cast<double>(c.n_target));
      ScanSeries series = scan_series(c.n_target, c.weights(), lo, hi, c.step, c.workers);
      if (c.n_prime) series = pocket_rescale(series, *c.n_prime);
      write_csv_header(os);
      for (std::size_t i = 0; i < series.size(); ++i) write_csv_row(os, series.scaled(i), series.values[i]);
      return kExitOk;
    }
    case Command::factor: os << report_to_json(run_factor(c)).dump(2) << '\n'; return kExitOk;
    case Command::lines: {
      if (fmt == Format::json) {
        os << report_to_json(factor_lines_discrete(c.n_target, c.weights(), c.zero_fraction, c.workers)).dump(2)
           << '\n';
        return kExitOk;
      }
      const WeightProfile w = c.weights();
      write_csv_header(os);
      for (u64 l = 1; l <= c.n_target; ++l) write_csv_row(os, static_cast<double>(l), discrete_sum(c.n_target, l, w));
      return kExitOk;
    }
    case Command::reciprocate: {
      if (fmt == Format::json) {
        os << report_to_json(factor_reciprocate(c.n_target, *c.l_max, kReciprocateTolerance, c.workers)).dump(2)
           << '\n';
        return kExitOk;
      }
      write_csv_header(os);
      const u64 lo = c.l_min.value_or(1);
      for (u64 l = lo; l <= *c.l_max; ++l) {
        cplx v;
        if (c.samples) v = monte_carlo_sum(c.n_target, l, std::min(*c.samples, l), c.seed);
        else if (c.m_terms) v = reciprocate_truncated(c.n_target, l, *c.m_terms);
        else v = reciprocate_complete(c.n_target, l);
        write_csv_row(os, static_cast<double>(l), v);
      }
      return kExitOk;
    }
    case Command::nslit: {
      if (fmt == Format::csv) {
        const double lo = c.xi_min.value_or(0.0);
        const double hi = c.xi_max.value_or(static_cast<double>(*c.l_talbot));
        const NSlitConfig cfg(c.n_target, *c.l_talbot);
        write_csv_header(os);
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / c.step + 1e-9)) + 1;
        for (std::size_t k = 0; k < count; ++k) {
          const double xi = lo + static_cast<double>(k) * c.step;
          write_csv_row(os, xi, green_sum(xi, cfg));
        }
        return kExitOk;
      }
      nlohmann::ordered_json j;
      j["n"] = c.n_target;
      if (c.l_talbot) {
        const SpikeProfile p = spike_profile(NSlitConfig(c.n_target, *c.l_talbot));
        j["l"] = *c.l_talbot;
        j["positions"] = p.positions;
        j["heights"] = p.heights;
        j["relative_spread"] = p.relative_spread;
      }
      if (c.l_max) {
        nlohmann::ordered_json trials = nlohmann::ordered_json::array();
        std::vector<u64> factors;
        for (const NSlitTrial& t : nslit_factor_test(c.n_target, *c.l_max, c.spread_threshold)) {
          trials.push_back({{"l", t.l}, {"equal_spikes", t.equal_spikes}, {"relative_spread", t.relative_spread}});
          if (t.is_factor) factors.push_back(t.l);
        }
        j["trials"] = trials;
        j["factors"] = factors;
      }
      os << j.dump(2) << '\n';
      return kExitOk;
    }
    case Command::verify: {
      bool ok = true;
      for (const SuiteReport& r : run_suites(c.suite)) {
        os << (r.passed() ? "PASS " : "FAIL ") << r.name << " checks=" << r.checks << " failures=" << r.failures
           << " max_error=" << format_number(r.max_error) << '\n';
        if (!r.passed()) {
          ok = false;
          err << r.name << ": first failure at " << r.first_failure << '\n';
        }
      }
      return ok ? kExitOk : kExitVerify;
    }
    case Command::ghost: {
      const GhostCensus g = ghost_census(c.n_target, *c.m_terms, c.threshold, c.l_min, c.l_max, c.workers);
      nlohmann::ordered_json j;
      j["n"] = c.n_target;
      j["m_terms"] = *c.m_terms;
      j["threshold"] = c.threshold;
      j["ghosts"] = g.ghosts;
      j["count"] = g.count;
      os << j.dump(2) << '\n';
      return kExitOk;
    }
  }
  return kExitConfig;
}

/// Relative --output paths resolve against $GAUSSFACTOR_OUTPUT_DIR when set.
inline std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') return std::filesystem::path(dir) / p;
  }
  return p;
}

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.output_path.empty()) return execute(c, out, err);
    const auto path = resolve_output(c.output_path);
    std::ostringstream buffer;
    const int status = execute(c, buffer, err);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << path.string() << " for writing\n";
      return kExitConfig;
    }
    file << buffer.str();
    return status;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

/// Parses argv-style arguments (without the program name) and runs them.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauss-sum factorization toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string scheme_name;
  std::string format_name;

  auto common = [&](CLI::App* sub, bool needs_n) {
    auto* opt = sub->add_option("--n", cfg.n_target, "number N to analyse");
    if (needs_n) opt->required();
    sub->add_option("--output,-o", cfg.output_path, "write to file (relative to $" + std::string(kOutputDirEnv) + ")");
    sub->add_option("--format", format_name, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
  };
  auto weights = [&](CLI::App* sub) {
    sub->add_option("--dm", cfg.delta_m, "Gaussian weight width (default 10; 8 for even N)");
    sub->add_option("--m-max", cfg.m_max, "weight truncation M (default ceil(4 dm))");
  };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--xi-min", cfg.xi_min, "first grid point");
    sub->add_option("--xi-max", cfg.xi_max, "last grid point");
    sub->add_option("--step", cfg.step, "grid spacing");
  };

  auto* scan = app.add_subcommand("scan", "sample S_N(xi) on a grid (csv)");
  common(scan, true);
  weights(scan);
  grid(scan);
  scan->add_option("--n-prime", cfg.n_prime, "rescale the axis so integers mark trial divisors of N'");

  auto* factor = app.add_subcommand("factor", "run a factor-extraction scheme (json)");
  common(factor, true);
  weights(factor);
  factor->add_option("--scheme", scheme_name, "continuous_odd|continuous_even|discrete_lines|reciprocate|truncated");
  factor->add_option("--step", cfg.step, "grid spacing for continuous schemes");
  factor->add_option("--l-max", cfg.l_max, "largest trial divisor");
  factor->add_option("--m-terms", cfg.m_terms, "summands of the truncated sum");
  factor->add_option("--ratio", cfg.ratio, "peak / local-median ratio");
  factor->add_option("--window", cfg.window, "local-median half-width");
  factor->add_option("--zero-fraction", cfg.zero_fraction, "zero threshold relative to the series maximum");
  factor->add_option("--threshold", cfg.threshold, "truncated-sum signal threshold");

  auto* lines = app.add_subcommand("lines", "discrete sums S_N(l), l = 1..N, and the line test");
  common(lines, true);
  weights(lines);
  lines->add_option("--zero-fraction", cfg.zero_fraction, "zero threshold relative to the maximum");

  auto* recip = app.add_subcommand("reciprocate", "reciprocate sums for l = 1..l_max");
  common(recip, true);
  recip->add_option("--l-min", cfg.l_min, "first l (csv)");
  recip->add_option("--l-max", cfg.l_max, "last l")->required();
  recip->add_option("--m-terms", cfg.m_terms, "truncate to this many summands (csv)");
  recip->add_option("--samples", cfg.samples, "Monte-Carlo sample count (csv)");
  recip->add_option("--seed", cfg.seed, "Monte-Carlo seed");

  auto* nslit_cmd = app.add_subcommand("nslit", "N-slit intensity (csv) or spike analysis (json)");
  common(nslit_cmd, true);
  grid(nslit_cmd);
  nslit_cmd->add_option("--l", cfg.l_talbot, "dimensionless Talbot distance");
  nslit_cmd->add_option("--l-max", cfg.l_max, "sweep l = 2..l_max (json)");
  nslit_cmd->add_option("--spread-threshold", cfg.spread_threshold, "equal-spike tolerance");

  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  verify_cmd->add_option("--suite", cfg.suite, "all or one of: numtheory closedform reciprocity wtilde "
                                               "decomposition nslit ring");
  verify_cmd->add_option("--output,-o", cfg.output_path, "write to file");

  auto* ghost = app.add_subcommand("ghost", "count ghost factors of the truncated sum (json)");
  common(ghost, true);
  ghost->add_option("--m-terms", cfg.m_terms, "summands M + 1")->required();
  ghost->add_option("--threshold", cfg.threshold, "ghost threshold");
  ghost->add_option("--l-min", cfg.l_min, "first trial l (default 2)");
  ghost->add_option("--l-max", cfg.l_max, "last trial l (default floor(sqrt N))");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // help requests exit 0; everything else is a configuration error
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  const std::pair<CLI::App*, Command> table[] = {
      {scan, Command::scan},     {factor, Command::factor},       {lines, Command::lines},
      {recip, Command::reciprocate}, {nslit_cmd, Command::nslit}, {verify_cmd, Command::verify},
      {ghost, Command::ghost},
  };
  for (const auto& [sub, cmd] : table) {
    if (sub->parsed()) cfg.command = cmd;
  }
  if (!scheme_name.empty()) {
    cfg.scheme = parse_scheme(scheme_name);
    if (!cfg.scheme) {
      err << "error: unknown scheme '" << scheme_name << "'\n";
      return kExitConfig;
    }
  }
  if (!format_name.empty()) cfg.format = format_name == "csv" ? Format::csv : Format::json;
  return run(cfg, out, err);
}

}  // namespace gaussfactor::cli
