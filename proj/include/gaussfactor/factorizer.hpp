#pragma once

// Factor-extraction engines. Every engine measures a sum, classifies each
// trial l from the measurement alone, and then cross-checks by integer
// division; only candidates that pass the division check are reported as
// verified factors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gaussfactor/closed_form.hpp"
#include "gaussfactor/gauss_sums.hpp"
#include "gaussfactor/numtheory.hpp"
#include "gaussfactor/parallel.hpp"

namespace gaussfactor {

enum class Scheme { continuous_odd, continuous_even, discrete_lines, reciprocate, truncated };

enum class Classification { factor, multiple_of_factor, nonfactor, ghost, zero_signal };

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::continuous_odd: return "continuous_odd";
    case Scheme::continuous_even: return "continuous_even";
    case Scheme::discrete_lines: return "discrete_lines";
    case Scheme::reciprocate: return "reciprocate";
    case Scheme::truncated: return "truncated";
  }
  return "unknown";
}

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::factor: return "factor";
    case Classification::multiple_of_factor: return "multiple_of_factor";
    case Classification::nonfactor: return "nonfactor";
    case Classification::ghost: return "ghost";
    case Classification::zero_signal: return "zero_signal";
  }
  return "unknown";
}

inline std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::continuous_odd, Scheme::continuous_even, Scheme::discrete_lines, Scheme::reciprocate,
                   Scheme::truncated}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

struct Candidate {
  u64 l = 0;
  double measured = 0.0;
  std::optional<double> predicted;
  Classification cls = Classification::nonfactor;
  double background = 0.0;
  std::optional<u64> shared_factor;
};

struct FactorReport {
  u64 n_target = 0;
  Scheme scheme = Scheme::continuous_odd;
  std::vector<Candidate> candidates;  // ascending l
  std::vector<u64> verified_factors;  // nontrivial divisors only, ascending
  std::map<std::string, double> params;

  const Candidate* find(u64 l) const {
    auto it = std::lower_bound(candidates.begin(), candidates.end(), l,
                               [](const Candidate& c, u64 v) { return c.l < v; });
    return it != candidates.end() && it->l == l ? &*it : nullptr;
  }
};

/// Samples of a sum on an increasing xi grid. Integer values of xi / unit_c
/// mark trial divisors of n_target; n_label is the N that produced the sum.
struct ScanSeries {
  double unit_c = 1.0;
  std::vector<double> xi;
  std::vector<cplx> values;
  u64 n_label = 1;
  u64 n_target = 1;
  SumFamily family = SumFamily::continuous;

  std::size_t size() const { return xi.size(); }
  double scaled(std::size_t i) const { return xi[i] / unit_c; }
};

/// Local-maximum rule for the continuous schemes.
struct PeakCriterion {
  double window = 0.4;  // half-width, in units of the candidate spacing
  double ratio = 2.0;   // peak / local median
};

inline constexpr double kZeroFraction = 1e-3;
inline constexpr double kReciprocateTolerance = 1e-9;
inline constexpr double kLineFloor = 0.005;
inline constexpr double kLineRelative = 0.05;
inline const double kGhostThreshold = 1.0 / std::sqrt(2.0);

namespace detail {

inline bool nontrivial_divisor(u64 l, u64 n) { return l > 1 && l < n && n % l == 0; }

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

/// Cross-check a measurement-based signal against divisibility.
inline Classification classify_signal(u64 l, u64 n, bool zero) {
  if (n % l == 0) return zero ? Classification::zero_signal : Classification::factor;
  if (std::gcd(l, n) > 1) return Classification::multiple_of_factor;
  return Classification::ghost;
}

inline void collect_verified(FactorReport& report) {
  for (const Candidate& c : report.candidates) {
    const bool signalled = c.cls == Classification::factor || c.cls == Classification::zero_signal;
    if (signalled && nontrivial_divisor(c.l, report.n_target)) report.verified_factors.push_back(c.l);
  }
}

inline void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("grid step must be positive");
}

}  // namespace detail

/// |S_N|^2 over xi = xi_min + k step, k = 0.. while xi <= xi_max. Grid points
/// within 1e-9 of an integer are snapped onto it, so integer samples are the
/// exact discrete sums.
inline ScanSeries scan_series(u64 n, const WeightProfile& w, double xi_min, double xi_max, double step,
                              unsigned workers = 1) {
  if (n == 0) throw std::invalid_argument("scan_series: N must be positive");
  detail::check_step(step);
  if (!(xi_max >= xi_min)) throw std::invalid_argument("scan_series: empty range");
  const auto count = static_cast<std::size_t>(std::floor((xi_max - xi_min) / step + 1e-9)) + 1;
  ScanSeries series;
  series.n_label = n;
  series.n_target = n;
  series.xi.resize(count);
  series.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    double x = xi_min + static_cast<double>(k) * step;
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < 1e-9) x = nearest;
    series.xi[k] = x;
  }
  parallel_for(count, workers, [&](std::size_t k) { series.values[k] = scan_sum(series.xi[k], n, w); });
  return series;
}

/// Reinterpret a master curve for N so that integer xi' = xi / C mark trial
/// divisors of n_prime, C = N / n_prime. Samples are untouched.
inline ScanSeries pocket_rescale(const ScanSeries& master, u64 n_prime) {
  if (n_prime == 0) throw std::invalid_argument("pocket_rescale: N' must be positive");
  ScanSeries out = master;
  out.unit_c = master.unit_c * static_cast<double>(master.n_target) / static_cast<double>(n_prime);
  out.n_target = n_prime;
  return out;
}

struct SeriesPeak {
  u64 l = 0;
  double measured = 0.0;
  double background = 0.0;
  bool flagged = false;
};

/// For every integer l in [l_min, l_max] whose position l C lies on the grid
/// (nearest sample within half a step), compare |value|^2 there with the
/// median over the other samples within the window.
inline std::vector<SeriesPeak> flag_series_peaks(const ScanSeries& series, u64 l_min, u64 l_max,
                                                 const PeakCriterion& crit = {}) {
  std::vector<SeriesPeak> out;
  const std::size_t n = series.size();
  if (n < 2 || l_max < l_min) return out;
  const double step_scaled = (series.scaled(n - 1) - series.scaled(0)) / static_cast<double>(n - 1);
  for (u64 l = l_min; l <= l_max; ++l) {
    const double target = static_cast<double>(l);
    auto it = std::lower_bound(series.xi.begin(), series.xi.end(), target * series.unit_c);
    std::size_t best = static_cast<std::size_t>(it - series.xi.begin());
    if (best == n) best = n - 1;
    if (best > 0 && std::abs(series.scaled(best - 1) - target) < std::abs(series.scaled(best) - target)) --best;
    if (std::abs(series.scaled(best) - target) > 0.5 * step_scaled + 1e-12) continue;

    std::vector<double> local;
    const auto first = static_cast<std::size_t>(
        std::lower_bound(series.xi.begin(), series.xi.end(), (target - crit.window - 1e-9) * series.unit_c) -
        series.xi.begin());
    for (std::size_t i = first; i < n && series.scaled(i) <= target + crit.window + 1e-9; ++i) {
      const double d = std::abs(series.scaled(i) - target);
      if (i != best && d <= crit.window + 1e-12) local.push_back(std::norm(series.values[i]));
    }
    SeriesPeak peak;
    peak.l = l;
    peak.measured = std::norm(series.values[best]);
    peak.background = detail::median(std::move(local));
    peak.flagged = peak.measured >= crit.ratio * peak.background && peak.measured > 0.0;
    out.push_back(peak);
  }
  return out;
}

/// Odd N: scan |S_N|^2 on [l_min - window, l_max + window] and flag local
/// maxima at integers. Default range 2..N-1 reproduces full figures.
inline FactorReport factor_scan_continuous(u64 n, const WeightProfile& w, double grid_step = 0.01,
                                           std::optional<u64> l_max = std::nullopt,
                                           const PeakCriterion& crit = {}, unsigned workers = 1) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("factor_scan_continuous: N must be odd and >= 3; use factor_scan_even for even N");
  detail::check_step(grid_step);
  const u64 hi = std::min<u64>(l_max.value_or(n - 1), n - 1);
  FactorReport report;
  report.n_target = n;
  report.scheme = Scheme::continuous_odd;
  report.params = {{"delta_m", w.delta_m()},     {"m_max", static_cast<double>(w.m_max())},
                   {"step", grid_step},          {"window", crit.window},
                   {"ratio", crit.ratio},        {"l_max", static_cast<double>(hi)}};
  if (hi < 2) return report;
  const auto pad = static_cast<double>(std::llround(crit.window / grid_step)) * grid_step;
  const ScanSeries series = scan_series(n, w, 2.0 - pad, static_cast<double>(hi) + pad, grid_step, workers);
  for (const SeriesPeak& p : flag_series_peaks(series, 2, hi, crit)) {
    Candidate c;
    c.l = p.l;
    c.measured = p.measured;
    c.background = p.background;
    c.predicted = predict_discrete_modulus2(n, p.l).value;
    c.cls = p.flagged ? detail::classify_signal(p.l, n, false) : Classification::nonfactor;
    if (std::gcd(p.l, n) > 1) c.shared_factor = std::gcd(p.l, n);
    report.candidates.push_back(c);
  }
  detail::collect_verified(report);
  return report;
}

/// Even N: integer zeros (|S|^2 below kZeroFraction of the series maximum)
/// and local maxima both carry factor information.
inline FactorReport factor_scan_even(u64 n, const WeightProfile& w, double grid_step = 0.01,
                                     std::optional<u64> l_max = std::nullopt, const PeakCriterion& crit = {},
                                     double zero_fraction = kZeroFraction, unsigned workers = 1) {
  if (n == 0 || n % 2 == 1) throw std::invalid_argument("factor_scan_even: N must be even");
  detail::check_step(grid_step);
  if (!(zero_fraction > 0.0 && zero_fraction < 1.0))
    throw std::invalid_argument("factor_scan_even: zero fraction must lie in (0, 1)");
  const u64 hi = n < 3 ? 1 : std::min<u64>(l_max.value_or(n - 1), n - 1);
  FactorReport report;
  report.n_target = n;
  report.scheme = Scheme::continuous_even;
  report.params = {{"delta_m", w.delta_m()}, {"m_max", static_cast<double>(w.m_max())},
                   {"step", grid_step},      {"window", crit.window},
                   {"ratio", crit.ratio},    {"zero_fraction", zero_fraction},
                   {"l_max", static_cast<double>(hi)}};
  if (hi < 2) return report;
  const auto pad = static_cast<double>(std::llround(crit.window / grid_step)) * grid_step;
  const ScanSeries series = scan_series(n, w, 2.0 - pad, static_cast<double>(hi) + pad, grid_step, workers);
  double series_max = 0.0;
  for (const cplx& v : series.values) series_max = std::max(series_max, std::norm(v));
  const double zeta = zero_fraction * series_max;
  report.params["zero_threshold"] = zeta;
  for (const SeriesPeak& p : flag_series_peaks(series, 2, hi, crit)) {
    Candidate c;
    c.l = p.l;
    c.measured = p.measured;
    c.background = p.background;
    c.predicted = predict_discrete_modulus2(n, p.l).value;
    const bool zero = p.measured < zeta;
    c.cls = (zero || p.flagged) ? detail::classify_signal(p.l, n, zero) : Classification::nonfactor;
    if (std::gcd(p.l, n) > 1) c.shared_factor = std::gcd(p.l, n);
    report.candidates.push_back(c);
  }
  detail::collect_verified(report);
  return report;
}

/// Membership of (l, |S_N(l)|^2) on the lines l/N and, for N in M0, 2l/N.
inline FactorReport factor_lines_discrete(u64 n, const WeightProfile& w, double zero_fraction = kZeroFraction,
                                          unsigned workers = 1) {
  if (n == 0) throw std::invalid_argument("factor_lines_discrete: N must be positive");
  FactorReport report;
  report.n_target = n;
  report.scheme = Scheme::discrete_lines;
  report.params = {{"delta_m", w.delta_m()},
                   {"m_max", static_cast<double>(w.m_max())},
                   {"tolerance_floor", kLineFloor},
                   {"tolerance_relative", kLineRelative}};
  std::vector<double> measured(n);
  parallel_for(n, workers, [&](std::size_t i) { measured[i] = std::norm(discrete_sum(n, i + 1, w)); });
  const double series_max = *std::max_element(measured.begin(), measured.end());
  const double zeta = zero_fraction * series_max;
  const bool two_lines = residue_class(n) == kM0;
  const double nn = static_cast<double>(n);
  for (u64 l = 1; l <= n; ++l) {
    Candidate c;
    c.l = l;
    c.measured = measured[l - 1];
    const double ll = static_cast<double>(l);
    std::vector<double> lines{ll / nn};
    if (two_lines) lines.push_back(2.0 * ll / nn);
    bool on_line = false;
    for (double value : lines) {
      if (std::abs(c.measured - value) < std::max(kLineFloor, kLineRelative * value)) {
        on_line = true;
        c.predicted = value;
        break;
      }
    }
    if (!c.predicted) c.predicted = predict_discrete_modulus2(n, l).value;
    const bool zero = !on_line && c.measured < zeta;
    c.cls = (on_line || zero) ? detail::classify_signal(l, n, zero) : Classification::nonfactor;
    if (std::gcd(l, n) > 1) c.shared_factor = std::gcd(l, n);
    report.candidates.push_back(c);
  }
  detail::collect_verified(report);
  return report;
}

/// Odd N: |A_N^(l-1)(l)| for l in [1, l_max]. Value 1 marks a factor; a value
/// off the curves sqrt(2/l), sqrt(1/l), 0 reveals a shared factor, read off
/// from the value as s = l / k with k = 1/|A|^2 or 2/|A|^2.
inline FactorReport factor_reciprocate(u64 n, u64 l_max, double tolerance = kReciprocateTolerance,
                                       unsigned workers = 1) {
  if (n == 0 || n % 2 == 0) throw std::invalid_argument("factor_reciprocate: N must be odd");
  if (l_max == 0) throw std::invalid_argument("factor_reciprocate: l_max must be positive");
  FactorReport report;
  report.n_target = n;
  report.scheme = Scheme::reciprocate;
  report.params = {{"l_max", static_cast<double>(l_max)}, {"tolerance", tolerance}};
  std::vector<double> measured(l_max);
  parallel_for(l_max, workers, [&](std::size_t i) { measured[i] = std::abs(reciprocate_complete(n, i + 1)); });
  for (u64 l = 1; l <= l_max; ++l) {
    Candidate c;
    c.l = l;
    c.measured = measured[l - 1];
    c.predicted = predict_reciprocate_modulus(n, l).value;
    const double ll = static_cast<double>(l);
    if (std::abs(c.measured - 1.0) < tolerance) {
      c.cls = detail::classify_signal(l, n, false);
    } else {
      const bool on_baseline = std::abs(c.measured - std::sqrt(2.0 / ll)) < tolerance ||
                               std::abs(c.measured - std::sqrt(1.0 / ll)) < tolerance || c.measured < tolerance;
      if (on_baseline) {
        c.cls = Classification::nonfactor;
      } else {
        c.cls = Classification::multiple_of_factor;
        const double v2 = c.measured * c.measured;
        // |A|^2 = 1/k needs k odd, |A|^2 = 2/k needs k = 0 mod 4
        for (double num : {1.0, 2.0}) {
          const double k = num / v2;
          const auto kr = static_cast<u64>(std::llround(k));
          const bool class_ok = num == 1.0 ? kr % 2 == 1 : kr % 4 == 0;
          if (kr > 0 && class_ok && std::abs(k - static_cast<double>(kr)) < 1e-6 * k && l % kr == 0) {
            c.shared_factor = l / kr;
            break;
          }
        }
      }
    }
    report.candidates.push_back(c);
  }
  detail::collect_verified(report);
  return report;
}

/// |A_N^(M)(l)| with m_terms = M + 1 summands; values above the threshold
/// are signals, and non-divisors among them are ghosts.
inline FactorReport factor_truncated(u64 n, u64 m_terms, std::optional<u64> l_max = std::nullopt,
                                     double threshold = kGhostThreshold, unsigned workers = 1) {
  if (n == 0) throw std::invalid_argument("factor_truncated: N must be positive");
  if (m_terms == 0) throw std::invalid_argument("factor_truncated: need at least one term");
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("factor_truncated: threshold in (0, 1)");
  const u64 hi = l_max.value_or(static_cast<u64>(std::sqrt(static_cast<double>(n))));
  FactorReport report;
  report.n_target = n;
  report.scheme = Scheme::truncated;
  report.params = {{"m_terms", static_cast<double>(m_terms)},
                   {"threshold", threshold},
                   {"l_max", static_cast<double>(hi)}};
  if (hi < 2) return report;
  std::vector<double> measured(hi - 1);
  parallel_for(hi - 1, workers,
               [&](std::size_t i) { measured[i] = std::abs(reciprocate_truncated(n, i + 2, m_terms)); });
  for (u64 l = 2; l <= hi; ++l) {
    Candidate c;
    c.l = l;
    c.measured = measured[l - 2];
    c.cls = c.measured > threshold ? detail::classify_signal(l, n, false) : Classification::nonfactor;
    if (c.cls == Classification::multiple_of_factor) c.cls = Classification::ghost;
    report.candidates.push_back(c);
  }
  detail::collect_verified(report);
  return report;
}

struct GhostCensus {
  std::vector<u64> ghosts;
  std::size_t count = 0;
};

/// Non-divisors l in [l_min, l_max] (default 2..floor(sqrt N)) with
/// |A_N^(M)(l)| above the threshold.
inline GhostCensus ghost_census(u64 n, u64 m_terms, double threshold = kGhostThreshold,
                                std::optional<u64> l_min = std::nullopt, std::optional<u64> l_max = std::nullopt,
                                unsigned workers = 1) {
  if (n == 0) throw std::invalid_argument("ghost_census: N must be positive");
  if (m_terms == 0) throw std::invalid_argument("ghost_census: need at least one term");
  if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("ghost_census: threshold in (0, 1)");
  const u64 lo = std::max<u64>(l_min.value_or(2), 1);
  const u64 hi = l_max.value_or(static_cast<u64>(std::sqrt(static_cast<double>(n))));
  GhostCensus census;
  if (hi < lo) return census;
  std::vector<char> hit(hi - lo + 1, 0);
  parallel_for(hit.size(), workers, [&](std::size_t i) {
    const u64 l = lo + i;
    if (n % l != 0) hit[i] = std::abs(reciprocate_truncated(n, l, m_terms)) > threshold;
  });
  for (std::size_t i = 0; i < hit.size(); ++i) {
    if (hit[i]) census.ghosts.push_back(lo + i);
  }
  census.count = census.ghosts.size();
  return census;
}

}  // namespace gaussfactor
