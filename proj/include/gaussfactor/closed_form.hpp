#pragma once

// Closed-form values and moduli predicted from residue classes and shared
// factors. Every predictor here has a brute-force counterpart in gauss_sums.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "gaussfactor/gauss_sums.hpp"
#include "gaussfactor/numtheory.hpp"

namespace gaussfactor {

enum class PredictionRule {
  coprime_m0,
  coprime_odd,
  coprime_m2,
  shared_m0,
  shared_odd,
  shared_m2,
  factor,
  finite_odd,
  finite_even_allowed,
  finite_even_forbidden,
  wtilde_coprime,
};

inline std::string_view to_string(PredictionRule rule) {
  switch (rule) {
    case PredictionRule::coprime_m0: return "coprime-M0";
    case PredictionRule::coprime_odd: return "coprime-M1/M3";
    case PredictionRule::coprime_m2: return "coprime-M2";
    case PredictionRule::shared_m0: return "shared-M0";
    case PredictionRule::shared_odd: return "shared-M1/M3";
    case PredictionRule::shared_m2: return "shared-M2";
    case PredictionRule::factor: return "factor";
    case PredictionRule::finite_odd: return "finite-odd";
    case PredictionRule::finite_even_allowed: return "finite-even-allowed";
    case PredictionRule::finite_even_forbidden: return "finite-even-forbidden";
    case PredictionRule::wtilde_coprime: return "wtilde-coprime";
  }
  return "unknown";
}

struct ModulusPrediction {
  double value = 0.0;
  PredictionRule rule = PredictionRule::coprime_odd;
  std::optional<u64> shared_factor;
};

/// G(1, b) from the class of b: (1+i)sqrt(b), sqrt(b), 0, i sqrt(b).
inline cplx g1b_closed(u64 b) {
  if (b == 0) throw std::invalid_argument("g1b_closed: b must be positive");
  const double root = std::sqrt(static_cast<double>(b));
  switch (residue_class(b).k) {
    case 0: return {root, root};
    case 1: return {root, 0.0};
    case 2: return {0.0, 0.0};
    default: return {0.0, root};
  }
}

/// G(a, b) = (a/b) G(1, b) for odd b coprime to a.
inline cplx gab_closed(i64 a, u64 b) {
  if (b == 0 || b % 2 == 0) throw std::invalid_argument("gab_closed: b must be odd and positive");
  if (std::gcd(mod_floor(a, b), b) != 1)
    throw std::invalid_argument("gab_closed: a and b share a factor; apply factor_out first");
  return static_cast<double>(jacobi_symbol(a, b)) * g1b_closed(b);
}

struct FactorOut {
  u64 p = 1;
  i64 a = 0;
  u64 b = 1;
};

/// p = gcd(a, b), so that G(a, b) = p G(a/p, b/p).
inline FactorOut factor_out(i64 a, u64 b) {
  if (b == 0) throw std::invalid_argument("factor_out: b must be positive");
  const u64 p = std::gcd(static_cast<u64>(a < 0 ? -a : a), b);
  return FactorOut{p, a / static_cast<i64>(p), b / p};
}

/// 2/N, 1/N or 0 for l coprime to N, by the class of N.
inline double predict_nonfactor_baseline(u64 n) {
  const double nn = static_cast<double>(n);
  switch (residue_class(n).k) {
    case 0: return 2.0 / nn;
    case 2: return 0.0;
    default: return 1.0 / nn;
  }
}

/// |S_N(l)|^2 in the broad-weight limit S_N(l) ~ G(l, N) / N. With p the
/// shared factor and N = r p the value is (p/N){2, 1, 0} by the class of r.
inline ModulusPrediction predict_discrete_modulus2(u64 n, u64 l) {
  if (n == 0) throw std::invalid_argument("predict_discrete_modulus2: N must be positive");
  const u64 p = std::gcd(l, n);
  const u64 r = n / p;
  const double scale = static_cast<double>(p) / static_cast<double>(n);
  ModulusPrediction out;
  const bool shared = p > 1;
  if (shared) out.shared_factor = p;
  if (r == 1) {
    out.value = 1.0;
    out.rule = PredictionRule::factor;
    return out;
  }
  switch (residue_class(r).k) {
    case 0:
      out.value = 2.0 * scale;
      out.rule = shared ? PredictionRule::shared_m0 : PredictionRule::coprime_m0;
      break;
    case 2:
      out.value = 0.0;
      out.rule = shared ? PredictionRule::shared_m2 : PredictionRule::coprime_m2;
      break;
    default:
      out.value = scale;
      out.rule = shared ? PredictionRule::shared_odd : PredictionRule::coprime_odd;
      break;
  }
  return out;
}

/// |W_m^(r)| for q coprime to r.
inline ModulusPrediction predict_finite_w(i64 q, u64 r, i64 m) {
  if (r == 0) throw std::invalid_argument("predict_finite_w: r must be positive");
  if (std::gcd(mod_floor(q, r), r) != 1)
    throw std::invalid_argument("predict_finite_w: q and r must be coprime");
  const double rr = static_cast<double>(r);
  if (r % 2 == 1) return {std::sqrt(1.0 / rr), PredictionRule::finite_odd, std::nullopt};
  // q is odd here, so q r / 2 has the parity of r / 2
  const u64 half_parity = mod_floor(q, 2) * ((r / 2) % 2) % 2;
  const u64 m_parity = mod_floor(m, 2);
  if (half_parity == m_parity) return {std::sqrt(2.0 / rr), PredictionRule::finite_even_allowed, std::nullopt};
  return {0.0, PredictionRule::finite_even_forbidden, std::nullopt};
}

inline double predict_finite_w_modulus(i64 q, u64 r, i64 m) { return predict_finite_w(q, r, m).value; }

/// e^{-i pi/4} G(l, 4N) / (2 sqrt(2 l N)), equal to the complete reciprocate sum.
inline cplx reciprocity_transform(u64 n, u64 l) {
  if (l == 0 || n == 0) throw std::invalid_argument("reciprocity_transform: N and l must be positive");
  const cplx prefactor = std::polar(1.0, -std::numbers::pi / 4.0) /
                         (2.0 * std::sqrt(2.0 * static_cast<double>(l) * static_cast<double>(n)));
  return prefactor * standard_gauss(static_cast<i64>(l), 4 * n);
}

inline cplx reciprocity_transform(u64 n, u64 l, const RootTable& roots_4n) {
  if (roots_4n.order() != 4 * n) throw std::invalid_argument("reciprocity_transform: table order must be 4N");
  const cplx prefactor = std::polar(1.0, -std::numbers::pi / 4.0) /
                         (2.0 * std::sqrt(2.0 * static_cast<double>(l) * static_cast<double>(n)));
  return prefactor * standard_gauss(static_cast<i64>(l), roots_4n);
}

/// |A_N^(l-1)(l)| for odd N. With s = gcd(l, N) and k = l/s the value is
/// sqrt(2/k), 1/sqrt(k) or 0 by the class of k; k = 1 marks a factor.
inline ModulusPrediction predict_reciprocate_modulus(u64 n, u64 l) {
  if (n == 0 || n % 2 == 0) throw std::invalid_argument("predict_reciprocate_modulus: N must be odd");
  if (l == 0) throw std::invalid_argument("predict_reciprocate_modulus: l must be positive");
  const u64 s = std::gcd(l, n);
  const u64 k = l / s;
  const bool shared = s > 1;
  ModulusPrediction out;
  if (shared) out.shared_factor = s;
  if (k == 1) {
    out.value = 1.0;
    out.rule = PredictionRule::factor;
    return out;
  }
  const double kk = static_cast<double>(k);
  switch (residue_class(k).k) {
    case 0:
      out.value = std::sqrt(2.0 / kk);
      out.rule = shared ? PredictionRule::shared_m0 : PredictionRule::coprime_m0;
      break;
    case 2:
      out.value = 0.0;
      out.rule = shared ? PredictionRule::shared_m2 : PredictionRule::coprime_m2;
      break;
    default:
      out.value = 1.0 / std::sqrt(kk);
      out.rule = shared ? PredictionRule::shared_odd : PredictionRule::coprime_odd;
      break;
  }
  return out;
}

/// |wtilde(a, b, c, r)|^2, independent of b. Supported: gcd(a, r) = 1 with
/// a r - c even (value 1/r), and a = 2q, c = 0 with q coprime to r (the
/// W_m^(r) case, where m stands in the b slot).
inline ModulusPrediction predict_wtilde_modulus2(i64 a, i64 c, u64 r, i64 m) {
  if (r == 0) throw std::invalid_argument("wtilde_modulus2: r must be positive");
  const double rr = static_cast<double>(r);
  const u64 a_abs = mod_floor(a, 2 * r);
  const bool a_coprime = std::gcd(a_abs, r) == 1 || r == 1;
  const i64 parity = (mod_floor(a, 2) * (r % 2) + mod_floor(c, 2)) % 2;
  if (a_coprime && parity == 0) return {1.0 / rr, PredictionRule::wtilde_coprime, std::nullopt};
  if (mod_floor(a, 2) == 0 && mod_floor(c, 2 * r) == 0 && r % 2 == 0) {
    const i64 q = a / 2;
    if (std::gcd(mod_floor(q, r), r) != 1)
      throw std::domain_error("wtilde_modulus2: a/2 shares a factor with r");
    // |.|^2 = (1/r)(1 + cos(pi (q r/2 + m)))
    const u64 s = (mod_floor(q, 2) * ((r / 2) % 2) + mod_floor(m, 2)) % 2;
    if (s == 0) return {2.0 / rr, PredictionRule::finite_even_allowed, std::nullopt};
    return {0.0, PredictionRule::finite_even_forbidden, std::nullopt};
  }
  throw std::domain_error("wtilde_modulus2: parameter combination has no closed form here");
}

inline double wtilde_modulus2(i64 a, i64 c, u64 r, i64 m) { return predict_wtilde_modulus2(a, c, r, m).value; }

}  // namespace gaussfactor
