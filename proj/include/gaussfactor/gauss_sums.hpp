#pragma once

// Direct evaluators for the weighted, discrete, standard, finite, reciprocate,
// exponential, Monte-Carlo and ring Gauss sums. Rational phases are reduced
// exactly before the single complex exponential.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gaussfactor/numtheory.hpp"

namespace gaussfactor {

using cplx = std::complex<double>;

enum class SumFamily {
  continuous,
  discrete,
  standard,
  finite_w,
  wtilde,
  reciprocate_truncated,
  reciprocate_complete,
  exponential_j,
  monte_carlo,
  ring,
  green,
};

inline std::string_view to_string(SumFamily f) {
  switch (f) {
    case SumFamily::continuous: return "continuous";
    case SumFamily::discrete: return "discrete";
    case SumFamily::standard: return "standard";
    case SumFamily::finite_w: return "finite_w";
    case SumFamily::wtilde: return "wtilde";
    case SumFamily::reciprocate_truncated: return "reciprocate_truncated";
    case SumFamily::reciprocate_complete: return "reciprocate_complete";
    case SumFamily::exponential_j: return "exponential_j";
    case SumFamily::monte_carlo: return "monte_carlo";
    case SumFamily::ring: return "ring";
    case SumFamily::green: return "green";
  }
  return "unknown";
}

/// Gaussian weights w_m, |m| <= M, normalized by their own discrete sum.
class WeightProfile {
 public:
  explicit WeightProfile(double delta_m, std::optional<int> m_max = std::nullopt)
      : delta_m_(delta_m) {
    if (!(delta_m > 0.0) || !std::isfinite(delta_m))
      throw std::invalid_argument("WeightProfile: width must be positive");
    m_max_ = m_max.value_or(default_truncation(delta_m));
    if (m_max_ < 1) throw std::invalid_argument("WeightProfile: truncation must be >= 1");
    weights_.resize(2 * static_cast<std::size_t>(m_max_) + 1);
    double total = 0.0;
    for (int m = -m_max_; m <= m_max_; ++m) {
      double x = m / delta_m_;
      double w = std::exp(-0.5 * x * x);
      weights_[index(m)] = w;
      total += w;
    }
    for (double& w : weights_) w /= total;
  }

  /// M = ceil(4 dm), i.e. 81 terms at dm = 10.
  static int default_truncation(double delta_m) { return static_cast<int>(std::ceil(4.0 * delta_m)); }

  double delta_m() const { return delta_m_; }
  int m_max() const { return m_max_; }
  std::size_t size() const { return weights_.size(); }

  double weight(int m) const {
    if (m < -m_max_ || m > m_max_) return 0.0;
    return weights_[index(m)];
  }

  /// Weights indexed by m + M.
  std::span<const double> weights() const { return weights_; }

  /// Continuous extension w(mu) with its analytic normalization.
  double density(double mu) const {
    double x = mu / delta_m_;
    return std::exp(-0.5 * x * x) / (std::sqrt(2.0 * std::numbers::pi) * delta_m_);
  }

 private:
  std::size_t index(int m) const { return static_cast<std::size_t>(m + m_max_); }

  double delta_m_;
  int m_max_;
  std::vector<double> weights_;
};

/// Parameters A and B of the continuous sum.
struct ContinuousSpec {
  double a_param = 1.0;
  double b_param = 1.0;

  ContinuousSpec() = default;
  ContinuousSpec(double a, double b) : a_param(a), b_param(b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("ContinuousSpec: A and B must be positive");
  }

  /// A = 1, B = N.
  static ContinuousSpec for_number(u64 n) { return {1.0, static_cast<double>(n)}; }
};

/// sum_m w_m exp[2 pi i (m/A + m^2/B) xi]
inline cplx continuous_sum(double xi, const ContinuousSpec& spec, const WeightProfile& w) {
  const long double a = spec.a_param;
  const long double b = spec.b_param;
  const long double x = xi;
  cplx total{0.0, 0.0};
  for (int m = -w.m_max(); m <= w.m_max(); ++m) {
    const long double mm = m;
    total += w.weight(m) * phasor_of_turns((mm / a + mm * mm / b) * x);
  }
  return total;
}

/// S_N(xi) for A = 1, B = N. The integer part of xi enters the quadratic
/// phase as an exact residue m^2 floor(xi) mod N.
inline cplx scan_sum(double xi, u64 n, const WeightProfile& w) {
  if (n == 0) throw std::invalid_argument("scan_sum: N must be positive");
  const double whole = std::floor(xi);
  const long double frac = static_cast<long double>(xi) - whole;
  const i64 whole_i = static_cast<i64>(whole);
  const u64 whole_mod = mod_floor(whole_i, n);
  const long double nn = static_cast<long double>(n);
  cplx total{0.0, 0.0};
  for (int m = -w.m_max(); m <= w.m_max(); ++m) {
    const u64 am = static_cast<u64>(m < 0 ? -m : m);
    const u64 sq = mulmod(am, am, n);
    const u64 exact = mulmod(sq, whole_mod, n);
    const long double mm = m;
    // m * whole is an integer turn and drops out
    const long double turns = static_cast<long double>(exact) / nn + mm * frac + mm * mm * frac / nn;
    total += w.weight(m) * phasor_of_turns(turns);
  }
  return total;
}

/// S_N(l) = sum_m w_m exp[2 pi i m^2 l / N]
inline cplx discrete_sum(u64 n, u64 l, const WeightProfile& w) {
  if (n == 0) throw std::invalid_argument("discrete_sum: N must be positive");
  const u64 lr = l % n;
  cplx total{0.0, 0.0};
  for (int m = -w.m_max(); m <= w.m_max(); ++m) {
    const u64 am = static_cast<u64>(m < 0 ? -m : m);
    total += w.weight(m) * root_of_unity(mulmod(mulmod(am, am, n), lr, n), n);
  }
  return total;
}

/// G(a, b) = sum_{m=0}^{b-1} exp(2 pi i m^2 a / b)
inline cplx standard_gauss(i64 a, u64 b) {
  if (b == 0) throw std::invalid_argument("standard_gauss: b must be positive");
  const u64 ar = mod_floor(a, b);
  cplx total{0.0, 0.0};
  // (m+1)^2 a = m^2 a + (2m+1) a
  u64 residue = 0;
  u64 step = ar;
  const u64 two_a = addmod(ar, ar, b);
  for (u64 m = 0; m < b; ++m) {
    total += root_of_unity(residue, b);
    residue = addmod(residue, step, b);
    step = addmod(step, two_a, b);
  }
  return total;
}

/// Same as standard_gauss with a precomputed table of b-th roots.
inline cplx standard_gauss(i64 a, const RootTable& roots) {
  const u64 b = roots.order();
  const u64 ar = mod_floor(a, b);
  cplx total{0.0, 0.0};
  u64 residue = 0;
  u64 step = ar;
  const u64 two_a = addmod(ar, ar, b);
  for (u64 m = 0; m < b; ++m) {
    total += roots[residue];
    residue = addmod(residue, step, b);
    step = addmod(step, two_a, b);
  }
  return total;
}

/// W_m^(r) = (1/r) sum_{p=0}^{r-1} exp[2 pi i (q p^2 + m p) / r]
inline cplx finite_w(i64 q, u64 r, i64 m) {
  if (r == 0) throw std::invalid_argument("finite_w: r must be positive");
  const u64 qr = mod_floor(q, r);
  const u64 mr = mod_floor(m, r);
  cplx total{0.0, 0.0};
  for (u64 p = 0; p < r; ++p) {
    u64 residue = addmod(mulmod(mulmod(p, p, r), qr, r), mulmod(mr, p, r), r);
    total += root_of_unity(residue, r);
  }
  return total / static_cast<double>(r);
}

/// (1/r) sum_{p=0}^{r-1} exp[(i pi / r)(a p^2 + 2 b p + c p)]; phases are
/// residues mod 2r.
inline cplx wtilde(i64 a, i64 b, i64 c, u64 r) {
  if (r == 0) throw std::invalid_argument("wtilde: r must be positive");
  const u64 mod = 2 * r;
  const u64 ar = mod_floor(a, mod);
  const u64 lin = addmod(mod_floor(2 * (b % static_cast<i64>(r)), mod), mod_floor(c, mod), mod);
  cplx total{0.0, 0.0};
  for (u64 p = 0; p < r; ++p) {
    u64 residue = addmod(mulmod(mulmod(p, p, mod), ar, mod), mulmod(lin, p, mod), mod);
    total += root_of_unity(residue, mod);
  }
  return total / static_cast<double>(r);
}

/// Table-driven wtilde for sweeps; the table must have order 2r.
inline cplx wtilde(i64 a, i64 b, i64 c, const RootTable& roots) {
  const u64 mod = roots.order();
  if (mod % 2 != 0) throw std::invalid_argument("wtilde: table order must be 2r");
  const u64 r = mod / 2;
  const u64 ar = mod_floor(a, mod);
  const u64 lin = addmod(mod_floor(2 * (b % static_cast<i64>(r)), mod), mod_floor(c, mod), mod);
  cplx total{0.0, 0.0};
  u64 quad = 0;  // p^2 a mod 2r
  u64 quad_step = ar;
  const u64 two_a = addmod(ar, ar, mod);
  u64 linear = 0;
  for (u64 p = 0; p < r; ++p) {
    total += roots[addmod(quad, linear, mod)];
    quad = addmod(quad, quad_step, mod);
    quad_step = addmod(quad_step, two_a, mod);
    linear = addmod(linear, lin, mod);
  }
  return total / static_cast<double>(r);
}

namespace detail {

/// sum_{m=0}^{count-1} exp(-2 pi i m^2 N / l), residues by recurrence.
template <typename RootFn>
cplx reciprocate_accumulate(u64 n, u64 l, u64 count, RootFn&& root) {
  const u64 nr = n % l;
  const u64 two_n = addmod(nr, nr, l);
  cplx total{0.0, 0.0};
  u64 residue = 0;
  u64 step = nr;
  for (u64 m = 0; m < count; ++m) {
    total += std::conj(root(residue));
    residue = addmod(residue, step, l);
    step = addmod(step, two_n, l);
  }
  return total;
}

}  // namespace detail

/// A_N^(M)(l) = (1/(M+1)) sum_{m=0}^{M} exp(-2 pi i m^2 N / l), m_terms = M+1.
inline cplx reciprocate_truncated(u64 n, u64 l, u64 m_terms) {
  if (l == 0) throw std::invalid_argument("reciprocate_truncated: l must be positive");
  if (m_terms == 0) throw std::invalid_argument("reciprocate_truncated: need at least one term");
  cplx total = detail::reciprocate_accumulate(n, l, m_terms, [l](u64 k) { return root_of_unity(k, l); });
  return total / static_cast<double>(m_terms);
}

/// Complete reciprocate sum, M = l - 1.
inline cplx reciprocate_complete(u64 n, u64 l) {
  if (l == 0) throw std::invalid_argument("reciprocate_complete: l must be positive");
  return reciprocate_truncated(n, l, l);
}

/// Complete reciprocate sum sharing a table of l-th roots across many N.
inline cplx reciprocate_complete(u64 n, const RootTable& roots) {
  const u64 l = roots.order();
  cplx total = detail::reciprocate_accumulate(n, l, l, [&roots](u64 k) { return roots[k]; });
  return total / static_cast<double>(l);
}

/// (1/(M+1)) sum_{m=0}^{M} exp(-2 pi i m^j N / l)
inline cplx exponential_sum(u64 n, u64 l, unsigned j, u64 m_terms) {
  if (l == 0) throw std::invalid_argument("exponential_sum: l must be positive");
  if (j == 0) throw std::invalid_argument("exponential_sum: exponent must be >= 1");
  if (m_terms == 0) throw std::invalid_argument("exponential_sum: need at least one term");
  const u64 nr = n % l;
  cplx total{0.0, 0.0};
  for (u64 m = 0; m < m_terms; ++m) {
    total += std::conj(root_of_unity(mulmod(powmod(m, j, l), nr, l), l));
  }
  return total / static_cast<double>(m_terms);
}

namespace detail {

/// Uniform integer in [0, bound] from a 64-bit engine, using widening
/// multiplication with rejection so the stream is portable across libraries.
inline u64 uniform_below_or_equal(std::mt19937_64& engine, u64 bound) {
  if (bound == ~u64{0}) return engine();
  const u64 range = bound + 1;
  const u64 threshold = (0 - range) % range;
  while (true) {
    u128 product = static_cast<u128>(engine()) * range;
    if (static_cast<u64>(product) >= threshold) return static_cast<u64>(product >> 64);
  }
}

}  // namespace detail

/// Distinct indices drawn uniformly from [0, l) (Floyd's algorithm), sorted.
inline std::vector<u64> sample_indices(u64 l, u64 sample_count, u64 seed) {
  if (l == 0) throw std::invalid_argument("sample_indices: l must be positive");
  if (sample_count == 0 || sample_count > l)
    throw std::invalid_argument("sample_indices: sample count must lie in [1, l]");
  std::vector<u64> out;
  out.reserve(sample_count);
  if (sample_count == l) {
    for (u64 m = 0; m < l; ++m) out.push_back(m);
    return out;
  }
  std::mt19937_64 engine(seed);
  std::unordered_set<u64> chosen;
  chosen.reserve(sample_count * 2);
  for (u64 j = l - sample_count; j < l; ++j) {
    u64 t = detail::uniform_below_or_equal(engine, j);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  out.assign(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Average of exp(-2 pi i m^2 N / l) over sampled m, summed in ascending m
/// so the full index set reproduces reciprocate_complete bit for bit.
inline cplx monte_carlo_sum(u64 n, u64 l, u64 sample_count, u64 seed) {
  const auto indices = sample_indices(l, sample_count, seed);
  const u64 nr = n % l;
  cplx total{0.0, 0.0};
  for (u64 m : indices) {
    total += std::conj(root_of_unity(mulmod(mulmod(m, m, l), nr, l), l));
  }
  return total / static_cast<double>(indices.size());
}

/// chi_k(g^t) = exp(2 pi i k t / (n-1)) for prime n and primitive root g.
struct CharacterSpec {
  u64 modulus = 2;
  u64 index = 0;
};

/// Multiplicative character with a precomputed discrete-log table.
class Character {
 public:
  explicit Character(const CharacterSpec& spec) : spec_(spec) {
    const u64 n = spec.modulus;
    if (!is_prime(n)) throw std::invalid_argument("Character: modulus must be prime");
    if (spec.index >= n - 1)
      throw std::invalid_argument("Character: index must lie in [0, n-1)");
    generator_ = primitive_root(n);
    dlog_.assign(n, 0);
    u64 x = 1;
    for (u64 t = 0; t < n - 1; ++t) {
      dlog_[x] = t;
      x = mulmod(x, generator_, n);
    }
  }

  const CharacterSpec& spec() const { return spec_; }
  u64 modulus() const { return spec_.modulus; }
  u64 generator() const { return generator_; }
  bool trivial() const { return spec_.index == 0; }

  /// Discrete logarithm base g of a unit x.
  u64 log(u64 x) const { return dlog_[x % spec_.modulus]; }

  cplx operator()(i64 x) const {
    const u64 n = spec_.modulus;
    const u64 xr = mod_floor(x, n);
    if (xr == 0) return {0.0, 0.0};
    return root_of_unity(mulmod(spec_.index, dlog_[xr], n - 1), n - 1);
  }

 private:
  CharacterSpec spec_;
  u64 generator_ = 1;
  std::vector<u64> dlog_;
};

inline cplx character_eval(const Character& chi, i64 x) { return chi(x); }
inline cplx character_eval(const CharacterSpec& spec, i64 x) { return Character(spec)(x); }

/// G(Z/nZ, chi, beta) = sum_x chi(x) exp(2 pi i beta x / n). The combined
/// phase k t / (n-1) + beta x / n is a residue mod n(n-1).
inline cplx ring_gauss(const Character& chi, i64 beta, const RootTable* roots = nullptr) {
  const u64 n = chi.modulus();
  const u64 big = n * (n - 1);
  if (n == 2) {
    // single unit x = 1, chi(1) = 1
    return root_of_unity(mod_floor(beta, 2), 2);
  }
  if (roots != nullptr && roots->order() != big)
    throw std::invalid_argument("ring_gauss: table order must be n(n-1)");
  const u64 br = mod_floor(beta, n);
  const u64 k = chi.spec().index;
  cplx total{0.0, 0.0};
  for (u64 x = 1; x < n; ++x) {
    u64 char_part = mulmod(mulmod(k, chi.log(x), n - 1), n, big);
    u64 add_part = mulmod(mulmod(br, x, n), n - 1, big);
    u64 residue = addmod(char_part, add_part, big);
    total += roots != nullptr ? (*roots)[residue] : root_of_unity(residue, big);
  }
  return total;
}

inline cplx ring_gauss(const CharacterSpec& spec, i64 beta) { return ring_gauss(Character(spec), beta); }

}  // namespace gaussfactor
