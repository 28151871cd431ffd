#pragma once

// Exact elementary number theory: segmented sieve, primes in the progression
// 1 mod d, multiplicative functions, Ramanujan sums and Chebyshev functions
// restricted to residue classes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "vdc/error.hpp"
#include "vdc/numeric.hpp"

namespace vdc {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Memory budget for sieving, in bytes. VDC_MEMORY_BUDGET overrides the default.
inline u64 memory_budget() {
  constexpr u64 kDefault = u64{1} << 31;
  if (const char* env = std::getenv("VDC_MEMORY_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return kDefault;
}

inline constexpr u64 kSieveSegment = u64{1} << 18;

// Upper estimate of the bytes needed to hold all primes <= limit.
inline double sieve_bytes_estimate(u64 limit) {
  const double x = static_cast<double>(std::max<u64>(limit, 17));
  const double count = 1.25506 * x / std::log(x) + 16.0;
  return 8.0 * count + static_cast<double>(kSieveSegment) + 8.0 * std::sqrt(x);
}

inline void check_sieve_budget(u64 limit) {
  if (sieve_bytes_estimate(limit) > static_cast<double>(memory_budget())) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds memory budget of " +
                        std::to_string(memory_budget()) + " bytes");
  }
}

namespace detail {

inline std::vector<u64> simple_sieve(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

inline u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

// Calls visit(p) for every prime p <= limit in increasing order.
template <typename Visit>
void for_each_prime(u64 limit, Visit&& visit) {
  if (limit < 2) return;
  const u64 root = detail::isqrt(limit);
  const std::vector<u64> base = detail::simple_sieve(root);
  std::vector<char> seg(kSieveSegment);
  for (u64 lo = 2; lo <= limit; lo += kSieveSegment) {
    const u64 hi = std::min(limit, lo + kSieveSegment - 1);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo + 1), 1);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    for (u64 x = lo; x <= hi; ++x) {
      if (seg[x - lo]) visit(x);
    }
  }
}

struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;
};

inline PrimeTable sieve_primes(u64 limit) {
  if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2");
  check_sieve_budget(limit);
  PrimeTable t;
  t.limit = limit;
  for_each_prime(limit, [&](u64 p) { t.primes.push_back(p); });
  return t;
}

// Primes p <= d*N+1 with p = 1 (mod d).
struct ApPrimeSet {
  u64 d = 1;
  u64 N = 1;
  std::vector<u64> primes;

  u64 bound() const { return d * N + 1; }
};

inline u64 ap_bound(u64 d, u64 N) {
  if (d == 0 || N == 0) throw DomainError("primes_in_ap: d and N must be positive");
  if (N > (std::numeric_limits<u64>::max() - 1) / d) {
    throw RangeError("primes_in_ap: d*N+1 overflows");
  }
  return d * N + 1;
}

inline ApPrimeSet primes_in_ap(u64 d, u64 N) {
  const u64 bound = ap_bound(d, N);
  check_sieve_budget(bound);
  ApPrimeSet s;
  s.d = d;
  s.N = N;
  for_each_prime(bound, [&](u64 p) {
    if (d == 1 || p % d == 1) s.primes.push_back(p);
  });
  return s;
}

// ---------------------------------------------------------------------------
// Factorization and multiplicative functions

inline constexpr u64 kMaxFactorizable = 1'000'000'000'000ULL;

namespace detail {
inline const std::vector<u64>& trial_primes() {
  static const std::vector<u64> primes = simple_sieve(1'000'000);
  return primes;
}
}  // namespace detail

struct PrimePower {
  u64 p;
  unsigned e;
};

inline std::vector<PrimePower> factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n > kMaxFactorizable) {
    throw RangeError("factorize: n = " + std::to_string(n) + " exceeds 10^12");
  }
  std::vector<PrimePower> out;
  for (u64 p : detail::trial_primes()) {
    if (p * p > n) break;
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline u64 euler_phi(u64 n) {
  u64 phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

inline int mobius(u64 n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline unsigned omega(u64 n) { return static_cast<unsigned>(factorize(n).size()); }

inline bool is_squarefree(u64 n) {
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  auto f = factorize(n);
  return f.size() == 1 && f[0].e == 1;
}

// c_q(a) = mu(q/(q,a)) * phi(q) / phi(q/(q,a)).
inline i64 ramanujan_sum(u64 q, i64 a) {
  if (q == 0) throw DomainError("ramanujan_sum: q must be positive");
  const i64 qs = static_cast<i64>(q);
  const u64 ar = static_cast<u64>(((a % qs) + qs) % qs);
  const u64 g = std::gcd(q, ar);  // gcd(q, 0) = q
  const u64 m = q / g;
  return static_cast<i64>(mobius(m)) * static_cast<i64>(euler_phi(q) / euler_phi(m));
}

// theta(x; q, a) = sum of log p over primes p <= x, p = a (mod q).
inline double chebyshev_theta_ap(double x, u64 q, u64 a) {
  if (q == 0 || a >= q) throw DomainError("chebyshev_theta_ap: need q >= 1, 0 <= a < q");
  if (!(x >= 0.0)) throw DomainError("chebyshev_theta_ap: x must be nonnegative");
  const u64 lim = static_cast<u64>(std::floor(x));
  if (lim < 2) return 0.0;
  check_sieve_budget(lim);
  CompensatedSum s;
  for_each_prime(lim, [&](u64 p) {
    if (p % q == a) s += std::log(static_cast<double>(p));
  });
  return s.value();
}

// psi(x; q, a) = sum of Lambda(n) over n <= x, n = a (mod q).
inline double chebyshev_psi_ap(double x, u64 q, u64 a) {
  if (q == 0 || a >= q) throw DomainError("chebyshev_psi_ap: need q >= 1, 0 <= a < q");
  if (!(x >= 0.0)) throw DomainError("chebyshev_psi_ap: x must be nonnegative");
  const u64 lim = static_cast<u64>(std::floor(x));
  if (lim < 2) return 0.0;
  check_sieve_budget(lim);
  CompensatedSum s;
  for_each_prime(lim, [&](u64 p) {
    const double lp = std::log(static_cast<double>(p));
    for (u64 pk = p;; pk *= p) {
      if (pk % q == a) s += lp;
      if (pk > lim / p) break;
    }
  });
  return s.value();
}

}  // namespace vdc
