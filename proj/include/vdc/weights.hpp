#pragma once

// The modulus collection D and its weights w, built so that the weighted sum
// of tau(d, q) over d in D stays above -delta/2 for every positive q.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vdc/arith.hpp"
#include "vdc/error.hpp"
#include "vdc/tau.hpp"

namespace vdc {

struct SchemeParams {
  double delta = 0.5;
  u64 p_minus = 2;
  u64 p_plus = 7;
  u64 l = 2;
  std::optional<u64> d_exceptional;
};

// Asymptotic parameter choice: p+ = ceil(2/delta)+1,
// l = ceil(2 log(1/delta) (2 log log(2/delta)/log 2 + 1)), p- = 2 l^2 + 1.
inline SchemeParams asymptotic_preset(double delta, std::optional<u64> d_exceptional = std::nullopt) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("asymptotic_preset: delta must lie in (0, 1)");
  SchemeParams p;
  p.delta = delta;
  p.p_plus = static_cast<u64>(std::ceil(2.0 / delta)) + 1;
  const double inner = 2.0 * std::log(std::log(2.0 / delta)) / std::log(2.0) + 1.0;
  p.l = static_cast<u64>(std::max(0.0, std::ceil(2.0 * std::log(1.0 / delta) * inner)));
  p.p_minus = 2 * p.l * p.l + 1;
  p.d_exceptional = d_exceptional;
  return p;
}

struct SchemeMember {
  u64 d = 1;         // d_star * cofactor
  u64 cofactor = 1;  // product of l distinct primes in (p-, p+]
  Rational w;
};

struct WeightScheme {
  SchemeParams params;
  u64 d_star = 1;
  std::vector<u64> interval_primes;  // primes in (p-, p+] usable in cofactors
  std::vector<SchemeMember> members;
};

inline constexpr std::size_t kMaxSchemeMembers = 2'000'000;

namespace detail {

inline u64 checked_mul(u64 a, u64 b, const char* what) {
  if (a != 0 && b > std::numeric_limits<u64>::max() / a) {
    throw RangeError(std::string(what) + ": product overflows 64 bits");
  }
  return a * b;
}

inline u64 binomial_capped(u64 n, u64 k, u64 cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1;
  for (u64 i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<u64>(std::llround(c));
}

}  // namespace detail

inline WeightScheme build_scheme(const SchemeParams& params) {
  if (params.p_minus == 0) throw DomainError("build_scheme: p_minus must be positive");
  if (params.d_exceptional && *params.d_exceptional == 0) {
    throw DomainError("build_scheme: exceptional modulus must be positive");
  }
  WeightScheme s;
  s.params = params;
  u64 d_star = params.d_exceptional.value_or(1);
  for (u64 p : detail::simple_sieve(params.p_minus)) d_star = detail::checked_mul(d_star, p, "d_star");
  s.d_star = d_star;

  if (params.p_plus > params.p_minus) {
    for (u64 p : detail::simple_sieve(params.p_plus)) {
      if (p > params.p_minus && d_star % p != 0) s.interval_primes.push_back(p);
    }
  }
  const u64 k = s.interval_primes.size();
  if (k < params.l) {
    throw DomainError("build_scheme: infeasible parameters, (p-, p+] = (" +
                      std::to_string(params.p_minus) + ", " + std::to_string(params.p_plus) +
                      "] has " + std::to_string(k) + " usable primes but l = " +
                      std::to_string(params.l));
  }
  if (detail::binomial_capped(k, params.l, kMaxSchemeMembers) > kMaxSchemeMembers) {
    throw ResourceError("build_scheme: more than " + std::to_string(kMaxSchemeMembers) + " members");
  }

  // Enumerate l-subsets of the interval primes in lexicographic order.
  std::vector<std::size_t> idx(params.l);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::pair<u64, u64>> raw;  // (cofactor, phi(cofactor))
  while (true) {
    u64 cof = 1, phi = 1;
    for (std::size_t i : idx) {
      cof = detail::checked_mul(cof, s.interval_primes[i], "cofactor");
      phi *= s.interval_primes[i] - 1;
    }
    raw.emplace_back(cof, phi);
    if (idx.empty()) break;
    std::size_t i = idx.size();
    while (i > 0 && idx[i - 1] == k - idx.size() + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
  }

  Rational total = 0;
  for (auto& [cof, phi] : raw) total += Rational(BigInt(1), BigInt(phi));
  s.members.reserve(raw.size());
  for (auto& [cof, phi] : raw) {
    SchemeMember m;
    m.cofactor = cof;
    m.d = detail::checked_mul(d_star, cof, "scheme member");
    m.w = Rational(BigInt(1), BigInt(phi)) / total;
    s.members.push_back(std::move(m));
  }
  std::sort(s.members.begin(), s.members.end(),
            [](const SchemeMember& a, const SchemeMember& b) { return a.d < b.d; });
  return s;
}

// A(q) = sum over members of w(d) tau(d, q).
inline Rational cancellation_value(const WeightScheme& s, u64 q) {
  Rational a = 0;
  for (const auto& m : s.members) {
    const TauValue t = tau_value(m.d, q);
    if (t.sign != 0) a += m.w * t.exact();
  }
  return a;
}

// Primes that divide some member but not d_star. Only these can change A(q)
// among square-free q supported on primes dividing members.
inline std::vector<u64> varying_primes(const WeightScheme& s) {
  std::vector<u64> out;
  for (u64 p : s.interval_primes) {
    for (const auto& m : s.members) {
      if (m.cofactor % p == 0) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

// Smallest prime dividing no member of the scheme.
inline u64 outside_prime(const WeightScheme& s) {
  for (u64 p = 2;; ++p) {
    if (!is_prime(p)) continue;
    bool divides = false;
    for (const auto& m : s.members) {
      if (m.d % p == 0) {
        divides = true;
        break;
      }
    }
    if (!divides) return p;
  }
}

inline constexpr std::size_t kMaxVaryingPrimes = 24;

// All square-free products of the varying primes, ascending. Every positive q
// reduces to one of these: q with a squared prime factor not absorbed by d
// gives A(q) = 0, primes dividing d_star to at most their multiplicity are
// absorbed, and a remaining factor q2 coprime to every member gives
// A(q1 q2) = (A(q1) - 2 S(q1)) / phi(q2), S(q1) = sum of w(d) over q1 | d,
// which is extremal at the smallest such prime.
inline std::vector<u64> reduce_q_class(const WeightScheme& s) {
  const std::vector<u64> primes = varying_primes(s);
  if (primes.size() > kMaxVaryingPrimes) {
    throw ResourceError("reduce_q_class: too many varying primes (" + std::to_string(primes.size()) + ")");
  }
  std::vector<u64> reps{1};
  for (u64 p : primes) {
    const std::size_t n = reps.size();
    for (std::size_t i = 0; i < n; ++i) reps.push_back(detail::checked_mul(reps[i], p, "q representative"));
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

struct CancellationReport {
  std::string q_checked;
  Rational min_value;
  u64 argmin_q = 1;
  bool passed = false;
};

inline CancellationReport verify_cancellation(const WeightScheme& s, double delta) {
  const std::vector<u64> reps = reduce_q_class(s);
  const u64 out_p = outside_prime(s);
  CancellationReport rep;
  bool have = false;
  auto consider = [&](const Rational& v, u64 q) {
    if (!have || v < rep.min_value || (v == rep.min_value && q < rep.argmin_q)) {
      rep.min_value = v;
      rep.argmin_q = q;
      have = true;
    }
  };
  for (u64 q1 : reps) {
    Rational a = 0, divisible = 0;
    for (const auto& m : s.members) {
      const TauValue t = tau_value(m.d, q1);
      if (t.sign == 0) continue;
      const Rational term = m.w * t.exact();
      a += term;
      if (t.sign == 1) divisible += m.w;
    }
    consider(a, q1);
    const Rational twisted = (a - 2 * divisible) / Rational(BigInt(out_p - 1));
    consider(twisted, detail::checked_mul(q1, out_p, "q representative"));
  }
  rep.q_checked = std::to_string(reps.size()) +
                  " square-free products of varying primes, each also times the outside prime " +
                  std::to_string(out_p) + "; all other q give A(q) = 0 or reduce to these";
  const Rational bound = -Rational(delta) / 2;
  rep.passed = rep.min_value >= bound;
  return rep;
}

}  // namespace vdc
