#pragma once

// Main-term arithmetic for the prime cosine polynomials: the function
// tau(d, q), the exponential sums tau_{a,d,q}, and shape diagnostics for the
// error terms.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "vdc/arith.hpp"
#include "vdc/error.hpp"
#include "vdc/numeric.hpp"

namespace vdc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(i64 num, i64 den) { return Rational(BigInt(num), BigInt(den)); }

// tau(d, q) in the compact form sign / den with sign in {1, 0, -1}.
struct TauValue {
  int sign = 0;
  u64 den = 1;
  u64 r = 1;

  Rational exact() const { return Rational(BigInt(sign), BigInt(den)); }
  double value() const { return static_cast<double>(sign) / static_cast<double>(den); }
};

// With r = q/(q,d): 1 if q | d; 0 if (d,r) > 1 or r is not square-free;
// otherwise -1/phi(r).
inline TauValue tau_value(u64 d, u64 q) {
  if (d == 0 || q == 0) throw DomainError("tau: d and q must be positive");
  const u64 r = q / std::gcd(q, d);
  if (r == 1) return {1, 1, 1};
  if (std::gcd(d, r) > 1 || !is_squarefree(r)) return {0, 1, r};
  return {-1, euler_phi(r), r};
}

inline Rational tau(u64 d, u64 q) { return tau_value(d, q).exact(); }

// tau_{a,d,q} = sum over 0 <= m < q with (md+1, q) = 1 of e(ma/q).
inline std::complex<double> tau_adq(i64 a, u64 d, u64 q) {
  if (q == 0) throw DomainError("tau_adq: q must be positive");
  const i64 qs = static_cast<i64>(q);
  const u64 ar = static_cast<u64>(((a % qs) + qs) % qs);
  const u64 dr = d % q;
  double re = 0.0, im = 0.0;
  for (u64 m = 0; m < q; ++m) {
    const u64 lin = static_cast<u64>((static_cast<unsigned __int128>(m) * dr + 1) % q);
    if (std::gcd(lin, q) != 1 && q != 1) continue;
    const u64 k = static_cast<u64>((static_cast<unsigned __int128>(m) * ar) % q);
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
    re += std::cos(ang);
    im += std::sin(ang);
  }
  return {re, im};
}

inline constexpr double kLemmaTolerance = 1e-9;

// Compares |tau_{a*,d,r}| / phi(r) with |tau(d,q)|, where r = q/(q,d) and
// a* = a d/(q,d). Requires (a,q) = 1 and r > 1.
inline bool check_lemma_tau(u64 d, u64 q, i64 a) {
  if (d == 0 || q == 0) throw DomainError("check_lemma_tau: d and q must be positive");
  const i64 qs = static_cast<i64>(q);
  const u64 ar = static_cast<u64>(((a % qs) + qs) % qs);
  if (std::gcd(ar, q) != 1) throw DomainError("check_lemma_tau: requires (a, q) = 1");
  const u64 g = std::gcd(q, d);
  const u64 r = q / g;
  if (r <= 1) throw DomainError("check_lemma_tau: requires q/(q,d) > 1");
  // a* is only needed modulo r.
  const u64 a_star = static_cast<u64>((static_cast<unsigned __int128>(ar) * (d / g)) % r);
  const double lhs = std::abs(tau_adq(static_cast<i64>(a_star), d, r)) /
                     static_cast<double>(euler_phi(r));
  const double rhs = std::fabs(tau_value(d, q).value());
  return std::fabs(lhs - rhs) <= kLemmaTolerance;
}

// Magnitudes of the three error terms with every implied constant set to 1.
// These are shape diagnostics for choosing parameters, not rigorous bounds.
struct ErrorDiagnostics {
  double e1 = 0.0;  // 1/D1 + N/R
  double e2 = 0.0;  // D1 N / R
  double e3 = 0.0;  // D1^2 (log N)^4 (1/sqrt(Q) + N^(-1/5) + sqrt(R/N))
};

inline ErrorDiagnostics error_diagnostics(double d, double N, double Q, double R, double D1) {
  if (!(d > 0 && N > 0 && Q > 0 && R > 0 && D1 > 0)) {
    throw DomainError("error_diagnostics: all arguments must be positive");
  }
  if (!(N >= 2)) throw DomainError("error_diagnostics: N must be >= 2");
  ErrorDiagnostics e;
  e.e1 = 1.0 / D1 + N / R;
  e.e2 = D1 * N / R;
  const double logn = std::log(N);
  e.e3 = D1 * D1 * std::pow(logn, 4) * (1.0 / std::sqrt(Q) + std::pow(N, -0.2) + std::sqrt(R / N));
  return e;
}

}  // namespace vdc
