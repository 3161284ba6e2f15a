#pragma once

// Integer substrate: gcd, exact modular arithmetic, primality, quadratic
// residue symbols, residue classes mod 4 and primitive roots.

#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gaussfactor {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 gcd(u64 a, u64 b) {
  if (a == 0 && b == 0) throw std::invalid_argument("gcd: both arguments are zero");
  return std::gcd(a, b);
}

/// Membership of an integer in one of the sets M_k = {4s + k}.
struct ResidueClass {
  unsigned k;

  constexpr bool odd() const { return k == 1 || k == 3; }
  friend constexpr bool operator==(ResidueClass, ResidueClass) = default;
};

inline constexpr ResidueClass kM0{0};
inline constexpr ResidueClass kM1{1};
inline constexpr ResidueClass kM2{2};
inline constexpr ResidueClass kM3{3};

inline ResidueClass residue_class(u64 n) {
  if (n == 0) throw std::invalid_argument("residue_class: n must be positive");
  return ResidueClass{static_cast<unsigned>(n % 4)};
}

/// Least non-negative residue of a signed value.
inline u64 mod_floor(i64 a, u64 m) {
  if (m == 0) throw std::invalid_argument("mod_floor: zero modulus");
  if (a >= 0) return static_cast<u64>(a) % m;
  // -(a+1) avoids overflow at INT64_MIN
  u64 neg = (static_cast<u64>(-(a + 1)) % m + 1) % m;
  return neg == 0 ? 0 : m - neg;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
  if (m <= (u64{1} << 32)) return ((a % m) * (b % m)) % m;
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

/// (a + b) mod m for a, b < m without overflow.
inline constexpr u64 addmod(u64 a, u64 b, u64 m) { return a >= m - b ? a - (m - b) : a + b; }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Jacobi symbol (a/b) for odd b >= 1. Equals the Legendre symbol for prime b.
inline int jacobi_symbol(i64 a, u64 b) {
  if (b == 0 || b % 2 == 0) throw std::invalid_argument("jacobi_symbol: b must be odd and positive");
  u64 x = mod_floor(a, b);
  u64 y = b;
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      u64 r = y % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

/// Literal existence-of-x quadratic residue indicator: +1 when a is coprime to
/// b and some x has b | (a - x^2), 0 when b | a, -1 otherwise. O(b).
inline int qr_indicator(i64 a, u64 b) {
  if (b == 0) throw std::invalid_argument("qr_indicator: b must be positive");
  u64 r = mod_floor(a, b);
  if (r == 0) return 0;
  if (std::gcd(r, b) != 1) return -1;
  for (u64 x = 0; x < b; ++x) {
    if (mulmod(x, x, b) == r) return 1;
  }
  return -1;
}

namespace detail {

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace detail

/// Deterministic for every 64-bit n: trial division below 10^6, Miller-Rabin
/// with the first twelve prime bases above.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr u64 kTrialLimit = 1'000'000;
  if (n < kTrialLimit) {
    if (n % 2 == 0) return n == 2;
    for (u64 p = 3; p * p <= n; p += 2) {
      if (n % p == 0) return false;
    }
    return true;
  }
  constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : kBases) {
    if (detail::miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

/// Distinct prime divisors by trial division.
inline std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> primes;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

/// Smallest generator of the multiplicative group mod a prime n.
inline u64 primitive_root(u64 n) {
  if (!is_prime(n)) throw std::invalid_argument("primitive_root: modulus must be prime");
  if (n == 2) return 1;
  const u64 order = n - 1;
  const auto primes = distinct_prime_factors(order);
  for (u64 g = 2; g < n; ++g) {
    bool generator = true;
    for (u64 q : primes) {
      if (powmod(g, order / q, n) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw std::logic_error("primitive_root: no generator found");
}

/// Exact phase as a fraction of a full turn, numerator in [0, denominator).
struct Phase {
  u64 numerator = 0;
  u64 denominator = 1;

  friend constexpr bool operator==(const Phase&, const Phase&) = default;
};

inline Phase reduced(u64 numerator, u64 denominator) {
  u64 g = std::gcd(numerator, denominator);
  return Phase{numerator / g, denominator / g};
}

/// ((m^2 c) mod d) / d, reduced, computed in 128-bit intermediates.
inline Phase mod_mul_phase(u64 m, i64 c, u64 d) {
  if (d == 0) throw std::invalid_argument("mod_mul_phase: denominator must be positive");
  u64 mm = m % d;
  u64 r = mulmod(mulmod(mm, mm, d), mod_floor(c, d), d);
  return reduced(r, d);
}

/// exp(2 pi i k / n) for 0 <= k < n. The angle is folded into (-pi, pi] in
/// extended precision before the single trigonometric evaluation.
inline std::complex<double> root_of_unity(u64 k, u64 n) {
  long double turn = static_cast<long double>(k) / static_cast<long double>(n);
  if (turn > 0.5L) turn -= 1.0L;
  const long double angle = 2.0L * std::numbers::pi_v<long double> * turn;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

inline std::complex<double> phasor(const Phase& p) { return root_of_unity(p.numerator, p.denominator); }

/// exp(2 pi i t) for real t, reduced mod 1 in extended precision.
inline std::complex<double> phasor_of_turns(long double turns) {
  long double frac = turns - std::floor(turns);
  if (frac > 0.5L) frac -= 1.0L;
  const long double angle = 2.0L * std::numbers::pi_v<long double> * frac;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

/// Tabulated n-th roots of unity; entries are bit-identical to root_of_unity.
class RootTable {
 public:
  explicit RootTable(u64 n) : n_(n) {
    if (n == 0) throw std::invalid_argument("RootTable: order must be positive");
    roots_.reserve(n);
    for (u64 k = 0; k < n; ++k) roots_.push_back(root_of_unity(k, n));
  }

  u64 order() const { return n_; }
  const std::complex<double>& operator[](u64 k) const { return roots_[k]; }

 private:
  u64 n_;
  std::vector<std::complex<double>> roots_;
};

}  // namespace gaussfactor
