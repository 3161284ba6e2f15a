#pragma once

// Built-in invariant sweeps, grouped into named suites for the CLI.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gaussfactor/closed_form.hpp"
#include "gaussfactor/decomposition.hpp"
#include "gaussfactor/gauss_sums.hpp"
#include "gaussfactor/nslit.hpp"
#include "gaussfactor/numtheory.hpp"

namespace gaussfactor {

struct SuiteReport {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double max_error = 0.0;
  double seconds = 0.0;
  std::string first_failure;

  bool passed() const { return failures == 0 && checks > 0; }

  /// Record one comparison; error <= tol counts as a pass.
  void expect(double error, double tol, const std::function<std::string()>& what) {
    ++checks;
    if (std::isfinite(error)) max_error = std::max(max_error, error);
    if (!(error <= tol)) {
      if (failures == 0) first_failure = what();
      ++failures;
    }
  }

  void expect_true(bool ok, const std::function<std::string()>& what) { expect(ok ? 0.0 : 1.0, 0.0, what); }
};

namespace verify {

inline std::string describe(std::initializer_list<std::pair<std::string_view, long double>> fields) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : fields) {
    os << (first ? "" : " ") << k << '=' << v;
    first = false;
  }
  return os.str();
}

inline void numtheory(SuiteReport& rep) {
  for (u64 b = 3; b <= 1999; b += 2) {
    if (!is_prime(b)) continue;
    for (u64 a = 0; a < b; ++a) {
      const i64 ai = static_cast<i64>(a);
      rep.expect_true(jacobi_symbol(ai, b) == qr_indicator(ai, b), [&] { return describe({{"a", a}, {"b", b}}); });
    }
  }
  for (u64 b = 1; b <= 201; b += 2) {
    for (i64 a = -300; a <= 300; a += 7) {
      rep.expect_true(jacobi_symbol(a, b) == jacobi_symbol(static_cast<i64>(mod_floor(a, b)), b),
                      [&] { return describe({{"a", a}, {"b", b}}); });
    }
  }
  for (u64 n = 2; n <= 199; ++n) {
    if (!is_prime(n)) continue;
    const u64 g = primitive_root(n);
    std::vector<char> seen(n, 0);
    u64 x = 1;
    for (u64 t = 0; t + 1 < n; ++t) {
      seen[x] = 1;
      x = mulmod(x, g, n);
    }
    rep.expect_true(std::count(seen.begin() + 1, seen.end(), 1) == static_cast<std::ptrdiff_t>(n - 1),
                    [&] { return describe({{"n", n}, {"g", g}}); });
  }
}

inline void closedform(SuiteReport& rep) {
  for (u64 b = 1; b <= 1000; ++b) {
    const RootTable roots(b);
    rep.expect(std::abs(standard_gauss(1, roots) - g1b_closed(b)), 1e-8, [&] { return describe({{"b", b}}); });
    if (b % 2 == 1 && b <= 501) {
      for (u64 a = 1; a < b; ++a) {
        if (std::gcd(a, b) != 1) continue;
        const i64 ai = static_cast<i64>(a);
        rep.expect(std::abs(standard_gauss(ai, roots) - gab_closed(ai, b)), 1e-8,
                   [&] { return describe({{"a", a}, {"b", b}}); });
      }
    }
  }
  for (u64 b = 2; b <= 120; ++b) {
    for (u64 a = 1; a <= 2 * b; ++a) {
      const FactorOut f = factor_out(static_cast<i64>(a), b);
      rep.expect(std::abs(standard_gauss(static_cast<i64>(a), b) -
                          static_cast<double>(f.p) * standard_gauss(f.a, f.b)),
                 1e-9, [&] { return describe({{"a", a}, {"b", b}}); });
    }
  }
}

inline void reciprocity(SuiteReport& rep) {
  // l-outer so one table of l-th roots serves every N
  constexpr u64 kMaxN = 2001;
  for (u64 l = 1; l <= kMaxN; ++l) {
    const RootTable roots(l);
    for (u64 n = (l % 2 == 1 ? l : l + 1); n <= kMaxN; n += 2) {
      const double measured = std::abs(reciprocate_complete(n, roots));
      rep.expect(std::abs(measured - predict_reciprocate_modulus(n, l).value), 1e-9,
                 [&] { return describe({{"N", n}, {"l", l}}); });
    }
  }
  // deterministic pair sample for the transform identity
  std::mt19937_64 engine(20241014);
  for (int i = 0; i < 600; ++i) {
    const u64 n = 1 + detail::uniform_below_or_equal(engine, 1999);
    const u64 l = 1 + detail::uniform_below_or_equal(engine, n - 1);
    rep.expect(std::abs(reciprocate_complete(n, l) - reciprocity_transform(n, l)), 1e-9,
               [&] { return describe({{"N", n}, {"l", l}}); });
  }
}

inline void wtilde_suite(SuiteReport& rep) {
  for (u64 r = 1; r <= 64; ++r) {
    const RootTable roots(2 * r);
    const double expected = 1.0 / static_cast<double>(r);
    for (i64 a = 0; a < static_cast<i64>(2 * r); ++a) {
      if (r > 1 && std::gcd(static_cast<u64>(a), r) != 1) continue;
      for (i64 c = 0; c < static_cast<i64>(2 * r); ++c) {
        if ((a * static_cast<i64>(r) - c) % 2 != 0) continue;
        const double predicted = wtilde_modulus2(a, c, r, 0);
        rep.expect(std::abs(predicted - expected), 1e-15, [&] { return describe({{"a", a}, {"c", c}, {"r", r}}); });
        for (i64 b = 0; b < static_cast<i64>(r); ++b) {
          rep.expect(std::abs(std::norm(wtilde(a, b, c, roots)) - expected), 1e-10,
                     [&] { return describe({{"a", a}, {"b", b}, {"c", c}, {"r", r}}); });
        }
      }
    }
  }
  for (u64 r = 2; r <= 50; r += 2) {
    for (i64 q = 1; q < static_cast<i64>(r); ++q) {
      if (std::gcd(static_cast<u64>(q), r) != 1) continue;
      for (i64 m = 0; m < static_cast<i64>(r); ++m) {
        const double brute = std::abs(finite_w(q, r, m));
        rep.expect(std::abs(brute - predict_finite_w_modulus(q, r, m)), 1e-10,
                   [&] { return describe({{"q", q}, {"r", r}, {"m", m}}); });
        rep.expect(std::abs(std::norm(wtilde(2 * q, m, 0, r)) - wtilde_modulus2(2 * q, 0, r, m)), 1e-10,
                   [&] { return describe({{"q", q}, {"r", r}, {"m", m}}); });
      }
    }
  }
}

inline void decomposition(SuiteReport& rep) {
  // M = 8 dm: the Poisson representation is of the untruncated sum, so the
  // direct sum needs a tail well below the tolerance
  const WeightProfile w(10.0, 80);
  struct Site {
    double b;
    i64 q;
    u64 r;
  };
  for (const Site s : {Site{33, 1, 11}, Site{33, 1, 3}, Site{51, 7, 35}}) {
    const ContinuousSpec spec(1.0, s.b);
    const double centre = static_cast<double>(s.q) * s.b / static_cast<double>(s.r);
    for (int k = -25; k <= 25; ++k) {
      const double xi = centre + 0.02 * k;
      const cplx direct = continuous_sum(xi, spec, w);
      rep.expect(std::abs(decomposed_sum(xi, s.q, s.r, spec, w) - direct), 1e-6,
                 [&] { return describe({{"B", s.b}, {"q", s.q}, {"r", s.r}, {"xi", xi}}); });
      const PeakDescriptor p = make_peak(xi, s.q, s.r, spec, w);
      const double dd = p.d_coef * p.delta;
      rep.expect(std::abs(p.sigma - p.sigma0 * std::sqrt(1.0 + dd * dd)), 1e-12,
                 [&] { return describe({{"xi", xi}}); });
    }
  }
  // single-term dominance for sharp peaks (sigma0 < 0.3) at integral m_bar
  const ContinuousSpec spec33(1.0, 33.0);
  for (u64 r : {1, 3, 11}) {
    const double xi = 33.0 / static_cast<double>(r);
    const PeakDescriptor p = make_peak(xi, 1, r, spec33, w);
    if (!(p.sigma0 < 0.3 && p.integral_m_bar)) continue;
    const cplx full = decomposed_sum(xi, 1, r, spec33, w);
    const i64 mb = std::llround(p.m_bar);
    const cplx single = finite_w(1, r, mb) * shape_function(mb, p);
    rep.expect(std::abs(single - full) / std::abs(full), 0.01, [&] { return describe({{"r", r}}); });
  }
}

inline void nslit(SuiteReport& rep) {
  for (u64 l = 1; l <= 41; l += 2) {
    for (u64 q = 0; q < l; ++q) {
      const double xi = static_cast<double>(q) + 0.5;
      rep.expect(std::abs(std::norm(talbot_w(xi, l)) - 1.0), 1e-9, [&] { return describe({{"l", l}, {"q", q}}); });
    }
  }
  for (u64 n : {1, 2, 9, 15, 16, 33, 101}) {
    for (u64 l = 1; l <= 12; ++l) {
      const NSlitConfig cfg(n, l);
      for (int k = 0; k <= 40; ++k) {
        const double xi = -3.0 + 0.37 * k;
        const cplx direct = green_sum(xi, cfg);
        const cplx decomposed = decomposed_green(xi, cfg);
        rep.expect(std::abs(std::abs(decomposed) - std::abs(direct)), 1e-9,
                   [&] { return describe({{"N", n}, {"l", l}, {"xi", xi}}); });
        rep.expect(std::abs(decomposed - green_sum_reduced(xi, cfg)), 1e-9,
                   [&] { return describe({{"N", n}, {"l", l}, {"xi", xi}}); });
      }
    }
  }
  for (u64 n = 3; n <= 201; n += 2) {
    for (const NSlitTrial& t : nslit_factor_test(n, static_cast<u64>(std::sqrt(static_cast<double>(n))))) {
      rep.expect_true(!t.equal_spikes || n % t.l == 0, [&] { return describe({{"N", n}, {"l", t.l}}); });
    }
  }
}

inline void ring(SuiteReport& rep) {
  for (u64 n = 3; n <= 199; ++n) {
    if (!is_prime(n)) continue;
    const RootTable roots(n * (n - 1));
    const double expected = std::sqrt(static_cast<double>(n));
    for (u64 k = 1; k + 1 < n; ++k) {
      const Character chi(CharacterSpec{n, k});
      const cplx base = ring_gauss(chi, 1, &roots);
      for (i64 beta = 1; beta < static_cast<i64>(n); ++beta) {
        const cplx g = ring_gauss(chi, beta, &roots);
        rep.expect(std::abs(std::abs(g) - expected), 1e-8,
                   [&] { return describe({{"n", n}, {"k", k}, {"beta", beta}}); });
        rep.expect(std::abs(g - base / chi(beta)), 1e-8,
                   [&] { return describe({{"n", n}, {"k", k}, {"beta", beta}}); });
      }
    }
  }
}

struct SuiteEntry {
  std::string_view name;
  void (*body)(SuiteReport&);
};

inline constexpr SuiteEntry kSuites[] = {
    {"numtheory", numtheory},         {"closedform", closedform}, {"reciprocity", reciprocity},
    {"wtilde", wtilde_suite},         {"decomposition", decomposition}, {"nslit", nslit},
    {"ring", ring},
};

}  // namespace verify

inline std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> out;
  for (const auto& s : verify::kSuites) out.push_back(s.name);
  return out;
}

inline SuiteReport run_suite(std::string_view name) {
  for (const auto& s : verify::kSuites) {
    if (s.name != name) continue;
    SuiteReport rep;
    rep.name = std::string(name);
    const auto start = std::chrono::steady_clock::now();
    s.body(rep);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }
  throw std::invalid_argument("unknown suite: " + std::string(name));
}

/// "all" expands to every suite in registration order.
inline std::vector<SuiteReport> run_suites(std::string_view selection) {
  std::vector<SuiteReport> out;
  if (selection == "all") {
    for (auto name : suite_names()) out.push_back(run_suite(name));
  } else {
    out.push_back(run_suite(selection));
  }
  return out;
}

}  // namespace gaussfactor
