#pragma once

// Representation of the continuous sum near xi = (q/r) B as a sum over m of
// finite Gauss sums W_m^(r) times complex Gaussian shape functions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gaussfactor/gauss_sums.hpp"

namespace gaussfactor {

/// Geometry of the shape functions around xi = (q/r) B + delta.
struct PeakDescriptor {
  i64 q = 0;
  u64 r = 1;
  double location_xi = 0.0;  // q B / r
  double delta = 0.0;        // xi - q B / r
  double m_bar = 0.0;        // q B / A + r delta / A
  double sigma0 = 0.0;       // sigma0^2 = r^2 / (2 pi^2 dm^2)
  double d_coef = 0.0;       // D = 4 pi dm^2 / B
  double sigma = 0.0;        // sigma0 sqrt(1 + D^2 delta^2)
  bool integral_m_bar = false;  // q B / A integral (peak can form at delta = 0)
};

inline PeakDescriptor make_peak(double xi, i64 q, u64 r, const ContinuousSpec& spec, const WeightProfile& w) {
  if (r == 0) throw std::invalid_argument("make_peak: r must be positive");
  const double a = spec.a_param;
  const double b = spec.b_param;
  const double dm = w.delta_m();
  PeakDescriptor peak;
  peak.q = q;
  peak.r = r;
  peak.location_xi = static_cast<double>(q) * b / static_cast<double>(r);
  peak.delta = xi - peak.location_xi;
  const double m0 = static_cast<double>(q) * b / a;
  peak.m_bar = m0 + static_cast<double>(r) * peak.delta / a;
  peak.sigma0 = static_cast<double>(r) / (std::numbers::sqrt2 * std::numbers::pi * dm);
  peak.d_coef = 4.0 * std::numbers::pi * dm * dm / b;
  const double dd = peak.d_coef * peak.delta;
  peak.sigma = peak.sigma0 * std::sqrt(1.0 + dd * dd);
  peak.integral_m_bar = std::abs(m0 - std::round(m0)) <= 1e-9 * std::max(1.0, std::abs(m0));
  return peak;
}

/// Closed-form shape function N exp[-((m - m_bar)/sigma)^2 (1 + i D delta)],
/// N = sqrt(1 / (1 - i D delta)).
inline cplx shape_function(i64 m, const PeakDescriptor& peak) {
  const double dd = peak.d_coef * peak.delta;
  const cplx norm = std::sqrt(cplx{1.0, 0.0} / cplx{1.0, -dd});
  const double x = (static_cast<double>(m) - peak.m_bar) / peak.sigma;
  return norm * std::exp(-x * x * cplx{1.0, dd});
}

inline cplx shape_function(i64 m, const PeakDescriptor& peak, const ContinuousSpec&, const WeightProfile&) {
  return shape_function(m, peak);
}

/// sum_m W_m^(r) I_m^(r), truncated once |I_m| drops below the cutoff on
/// both sides of m_bar. Any q, r >= 1 is accepted; the representation is
/// exact without coprimality.
inline cplx decomposed_sum(double xi, i64 q, u64 r, const ContinuousSpec& spec, const WeightProfile& w,
                           double cutoff = 1e-14) {
  const PeakDescriptor peak = make_peak(xi, q, r, spec, w);
  std::vector<cplx> finite(r);
  for (u64 k = 0; k < r; ++k) finite[k] = finite_w(q, r, static_cast<i64>(k));
  auto w_of = [&](i64 m) { return finite[mod_floor(m, r)]; };

  const i64 center = static_cast<i64>(std::llround(peak.m_bar));
  cplx total = w_of(center) * shape_function(center, peak);
  for (i64 m = center + 1;; ++m) {
    const cplx shape = shape_function(m, peak);
    total += w_of(m) * shape;
    if (std::abs(shape) < cutoff && static_cast<double>(m) > peak.m_bar) break;
  }
  for (i64 m = center - 1;; --m) {
    const cplx shape = shape_function(m, peak);
    total += w_of(m) * shape;
    if (std::abs(shape) < cutoff && static_cast<double>(m) < peak.m_bar) break;
  }
  return total;
}

/// Candidate peak positions xi = q B / r with 1 <= q <= r <= r_max, gcd = 1,
/// i.e. one period (0, B]. Each is flagged with whether q B / A is integral.
inline std::vector<PeakDescriptor> locate_peaks(const ContinuousSpec& spec, u64 r_max, const WeightProfile& w) {
  std::vector<PeakDescriptor> peaks;
  for (u64 r = 1; r <= r_max; ++r) {
    for (u64 q = 1; q <= r; ++q) {
      if (std::gcd(q, r) != 1) continue;
      const double xi = static_cast<double>(q) * spec.b_param / static_cast<double>(r);
      peaks.push_back(make_peak(xi, static_cast<i64>(q), r, spec, w));
    }
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const PeakDescriptor& x, const PeakDescriptor& y) { return x.location_xi < y.location_xi; });
  return peaks;
}

inline std::vector<PeakDescriptor> locate_peaks(const ContinuousSpec& spec, u64 r_max) {
  return locate_peaks(spec, r_max, WeightProfile(10.0));
}

/// dm = margin N / sqrt(8), so that 8 dm^2 / N^2 = margin^2.
inline double recommend_weight_width(u64 n, double margin) {
  if (!(margin >= 1.0)) throw std::invalid_argument("recommend_weight_width: margin must be >= 1");
  return margin * static_cast<double>(n) / std::sqrt(8.0);
}

/// 8 dm^2 / N^2 >= margin^2, the resolution condition separating delta = 0
/// from delta != 0 at integer arguments.
inline bool weight_width_resolves(double delta_m, u64 n, double margin = 3.0) {
  const double nn = static_cast<double>(n);
  return 8.0 * delta_m * delta_m / (nn * nn) >= margin * margin;
}

}  // namespace gaussfactor
