#pragma once

// N-slit grating in the near field. Intensities depend on the optics only
// through the dimensionless Talbot distance l; each slit is a point source.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gaussfactor/gauss_sums.hpp"
#include "gaussfactor/numtheory.hpp"

namespace gaussfactor {

struct NSlitConfig {
  u64 n_slits = 2;
  u64 l_talbot = 1;
  std::vector<double> xi_grid;

  NSlitConfig() = default;
  NSlitConfig(u64 n, u64 l, std::vector<double> grid = {}) : n_slits(n), l_talbot(l), xi_grid(std::move(grid)) {
    validate();
  }

  void validate() const {
    if (n_slits < 1) throw std::invalid_argument("NSlitConfig: need at least one slit");
    if (l_talbot < 1) throw std::invalid_argument("NSlitConfig: Talbot distance must be >= 1");
    for (std::size_t i = 1; i < xi_grid.size(); ++i) {
      if (!(xi_grid[i] > xi_grid[i - 1])) throw std::invalid_argument("NSlitConfig: grid must be increasing");
    }
  }
};

struct SpikeProfile {
  std::vector<double> positions;
  std::vector<double> heights;
  double relative_spread = 0.0;
};

namespace detail {

/// exp(i pi t / l) for real t, reduced exactly in turns of 2l.
inline cplx half_turn(long double t, u64 l) { return phasor_of_turns(t / (2.0L * static_cast<long double>(l))); }

}  // namespace detail

/// sqrt(1/l) sum_{n<N} exp[i pi (xi - n)^2 / l]; the global sqrt(1/i) is dropped.
inline cplx green_sum(double xi, const NSlitConfig& cfg) {
  const long double x = xi;
  cplx total{0.0, 0.0};
  for (u64 n = 0; n < cfg.n_slits; ++n) {
    const long double d = x - static_cast<long double>(n);
    total += detail::half_turn(d * d, cfg.l_talbot);
  }
  return total / std::sqrt(static_cast<double>(cfg.l_talbot));
}

/// Same sum with the xi^2 phase factored out:
/// sqrt(1/l) sum_{n<N} exp[i pi (n^2 - 2 n xi) / l]. Equal modulus.
inline cplx green_sum_reduced(double xi, const NSlitConfig& cfg) {
  const u64 l = cfg.l_talbot;
  const long double x = xi;
  cplx total{0.0, 0.0};
  for (u64 n = 0; n < cfg.n_slits; ++n) {
    const long double nn = static_cast<long double>(n);
    const long double sq = static_cast<long double>(mulmod(n, n, 2 * l));
    total += detail::half_turn(sq - 2.0L * nn * x, l);
  }
  return total / std::sqrt(static_cast<double>(l));
}

/// W^(l)(xi) = sqrt(1/l) sum_{p<l} exp[i pi (p^2 - 2 p xi) / l]
inline cplx talbot_w(double xi, u64 l) {
  if (l == 0) throw std::invalid_argument("talbot_w: l must be positive");
  const long double x = xi;
  cplx total{0.0, 0.0};
  for (u64 p = 0; p < l; ++p) {
    const long double pp = static_cast<long double>(p);
    total += detail::half_turn(pp * pp - 2.0L * pp * x, l);
  }
  return total / std::sqrt(static_cast<double>(l));
}

/// Delta_k(zeta) = sum_{j<k} exp(-2 pi i j zeta)
inline cplx grating_delta(u64 k, double zeta) {
  cplx total{0.0, 0.0};
  for (u64 j = 0; j < k; ++j) total += phasor_of_turns(-static_cast<long double>(j) * zeta);
  return total;
}

/// Remainder from the last r = N mod l slits:
/// sqrt(1/l) exp[-2 pi i k (xi - l/2)] sum_{p<r} exp[2 pi i (p^2/(2l) - p xi / l)].
inline cplx green_remainder(double xi, const NSlitConfig& cfg) {
  const u64 l = cfg.l_talbot;
  const u64 k = cfg.n_slits / l;
  const u64 r = cfg.n_slits % l;
  if (r == 0) return {0.0, 0.0};
  const long double x = xi;
  cplx partial{0.0, 0.0};
  for (u64 p = 0; p < r; ++p) {
    const long double pp = static_cast<long double>(p);
    partial += detail::half_turn(pp * pp - 2.0L * pp * x, l);
  }
  const long double shift = static_cast<long double>(k) * (x - 0.5L * static_cast<long double>(l));
  return phasor_of_turns(-shift) * partial / std::sqrt(static_cast<double>(l));
}

/// W^(l)(xi) Delta_k(xi - l/2) + R(xi) with N = k l + r. Equals
/// green_sum_reduced, and green_sum in modulus.
inline cplx decomposed_green(double xi, const NSlitConfig& cfg) {
  const u64 l = cfg.l_talbot;
  const u64 k = cfg.n_slits / l;
  return talbot_w(xi, l) * grating_delta(k, xi - 0.5 * static_cast<double>(l)) + green_remainder(xi, cfg);
}

/// Intensities |G|^2 over the configured grid.
inline std::vector<double> intensity_pattern(const NSlitConfig& cfg) {
  std::vector<double> out;
  out.reserve(cfg.xi_grid.size());
  for (double xi : cfg.xi_grid) out.push_back(std::norm(green_sum(xi, cfg)));
  return out;
}

/// Heights at the grating spikes xi = l/2 + s (mod l), s in [0, l). For odd
/// l these are the half-integers q + 1/2, q in [0, l).
inline SpikeProfile spike_profile(const NSlitConfig& cfg) {
  if (cfg.n_slits % 2 == 0)
    throw std::invalid_argument("spike_profile: the equal-height criterion holds for odd N only");
  const u64 l = cfg.l_talbot;
  SpikeProfile prof;
  for (u64 s = 0; s < l; ++s) {
    double pos = std::fmod(0.5 * static_cast<double>(l) + static_cast<double>(s), static_cast<double>(l));
    prof.positions.push_back(pos);
  }
  std::sort(prof.positions.begin(), prof.positions.end());
  for (double pos : prof.positions) prof.heights.push_back(std::norm(green_sum(pos, cfg)));
  const auto [lo, hi] = std::minmax_element(prof.heights.begin(), prof.heights.end());
  prof.relative_spread = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
  return prof;
}

struct NSlitTrial {
  u64 l = 0;
  bool is_factor = false;  // equal spikes and division check passed
  bool equal_spikes = false;
  double relative_spread = 0.0;
};

inline constexpr double kSpreadThreshold = 1e-3;

/// Sweeps l in [2, l_max] for odd N. Only odd l can be flagged: an even l
/// can never divide odd N, and its spike heights are degenerate.
inline std::vector<NSlitTrial> nslit_factor_test(u64 n_slits, u64 l_max, double spread_threshold = kSpreadThreshold) {
  if (n_slits % 2 == 0) throw std::invalid_argument("nslit_factor_test: defined for odd N only");
  if (!(spread_threshold > 0.0 && spread_threshold < 1.0))
    throw std::invalid_argument("nslit_factor_test: threshold must lie in (0, 1)");
  std::vector<NSlitTrial> out;
  for (u64 l = 2; l <= l_max; ++l) {
    NSlitTrial t;
    t.l = l;
    t.relative_spread = spike_profile(NSlitConfig(n_slits, l)).relative_spread;
    t.equal_spikes = l % 2 == 1 && t.relative_spread < spread_threshold;
    t.is_factor = t.equal_spikes && n_slits % l == 0;
    out.push_back(t);
  }
  return out;
}

}  // namespace gaussfactor
