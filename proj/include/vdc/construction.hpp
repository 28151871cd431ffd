#pragma once

// Assembly of T = (1/m) sum_{d in D} sum_j w(d) F_{d, N_j} over a geometric
// N-schedule, with a certified floor and the resulting van der Corput bound.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vdc/arith.hpp"
#include "vdc/cosine_poly.hpp"
#include "vdc/error.hpp"
#include "vdc/parallel.hpp"
#include "vdc/tau.hpp"
#include "vdc/weights.hpp"

namespace vdc {

struct WeightedModulus {
  u64 d = 1;
  double w = 1.0;
};

inline std::vector<WeightedModulus> weighted_moduli(const WeightScheme& s) {
  std::vector<WeightedModulus> out;
  out.reserve(s.members.size());
  for (const auto& m : s.members) out.push_back({m.d, m.w.convert_to<double>()});
  return out;
}

struct ConstructionConfig {
  std::vector<WeightedModulus> members;
  std::vector<u64> schedule;
  u64 grid_size = 1 << 12;
  double delta_target = 0.5;
  u64 grid_cap = u64{1} << 24;
  // Diagnostic parameters; zero selects D1 = Q = max d and R = D1^2 N_j.
  double diag_Q = 0.0;
  double diag_D1 = 0.0;
  double diag_R_factor = 0.0;
};

struct DiagnosticEntry {
  u64 d = 1;
  u64 N = 1;
  ErrorDiagnostics e;
};

struct ConstructionResult {
  CosinePoly polynomial;
  CertifiedMin certificate;
  double certified_floor = 0.0;
  double a0_bound = 0.0;
  u64 max_frequency = 0;
  std::vector<DiagnosticEntry> diagnostics;
};

// N_j = round(N0 ratio^j) for j = 1..m, deduplicated.
inline std::vector<u64> default_schedule(std::span<const WeightedModulus> members, u64 m, double ratio, u64 N0) {
  if (m == 0) throw DomainError("default_schedule: m must be positive");
  if (!(ratio > 1.0)) throw DomainError("default_schedule: ratio must exceed 1");
  if (N0 == 0) throw DomainError("default_schedule: N0 must be positive");
  std::vector<u64> out;
  for (u64 j = 1; j <= m; ++j) {
    const long double v = std::roundl(static_cast<long double>(N0) * std::pow(static_cast<long double>(ratio), j));
    if (!(v < 1.8e19L)) throw RangeError("default_schedule: N_j overflows");
    const u64 n = static_cast<u64>(v);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  u64 dmax = 1;
  for (const auto& w : members) dmax = std::max(dmax, w.d);
  check_sieve_budget(ap_bound(dmax, out.back()));
  return out;
}

// The asymptotic choice m = ceil(4/delta), i.e. 4/delta <= m < 4/delta + 1.
inline u64 asymptotic_schedule_length(double delta) {
  if (!(delta > 0.0)) throw DomainError("asymptotic_schedule_length: delta must be positive");
  return static_cast<u64>(std::ceil(4.0 / delta));
}

inline ConstructionResult assemble(const ConstructionConfig& cfg) {
  if (cfg.members.empty()) throw DomainError("assemble: scheme has no members");
  if (cfg.schedule.empty()) throw DomainError("assemble: schedule must be nonempty");
  for (std::size_t i = 1; i < cfg.schedule.size(); ++i) {
    if (cfg.schedule[i] <= cfg.schedule[i - 1]) throw DomainError("assemble: schedule must be strictly increasing");
  }
  if (cfg.schedule.front() == 0) throw DomainError("assemble: schedule entries must be positive");
  CompensatedSum wsum;
  u64 dmax = 1;
  for (const auto& m : cfg.members) {
    if (m.d == 0 || !std::isfinite(m.w) || m.w < 0) throw DomainError("assemble: invalid scheme member");
    wsum += m.w;
    dmax = std::max(dmax, m.d);
  }
  if (std::fabs(wsum.value() - 1.0) > 1e-12) throw DomainError("assemble: weights must sum to 1");
  check_sieve_budget(ap_bound(dmax, cfg.schedule.back()));

  const std::size_t jobs = cfg.members.size() * cfg.schedule.size();
  const double inv_m = 1.0 / static_cast<double>(cfg.schedule.size());
  std::vector<std::pair<double, CosinePoly>> parts(jobs);
  parallel_chunks(jobs, jobs, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const auto& mem = cfg.members[k / cfg.schedule.size()];
      const u64 N = cfg.schedule[k % cfg.schedule.size()];
      parts[k] = {mem.w * inv_m, build_F(mem.d, N)};
    }
  });

  ConstructionResult res;
  res.polynomial = combine(parts);
  res.max_frequency = res.polynomial.degree();

  u64 grid = std::bit_ceil(std::max<u64>({cfg.grid_size, 8 * res.max_frequency, 64}));
  const u64 cap = std::max(cfg.grid_cap, grid);
  while (true) {
    res.certificate = certified_min(res.polynomial, grid);
    const double slack = res.certificate.grid_min - res.certificate.certified_lower;
    if (slack <= 0.1 * std::fabs(res.certificate.grid_min) || grid * 2 > cap) break;
    grid *= 2;
  }
  // a0 - sum |a_f| is a second rigorous bound; the better one is kept.
  const double trivial = res.polynomial.a0() - res.polynomial.l1();
  res.certified_floor = std::max(res.certificate.certified_lower, trivial);
  res.a0_bound = res.certified_floor < 0 ? -res.certified_floor / (1.0 - res.certified_floor) : 0.0;

  const double D1 = cfg.diag_D1 > 0 ? cfg.diag_D1 : static_cast<double>(dmax);
  const double Q = cfg.diag_Q > 0 ? cfg.diag_Q : static_cast<double>(dmax);
  const double rf = cfg.diag_R_factor > 0 ? cfg.diag_R_factor : D1 * D1;
  for (const auto& mem : cfg.members) {
    for (u64 N : cfg.schedule) {
      if (N < 2) continue;
      const double Nd = static_cast<double>(N);
      res.diagnostics.push_back({mem.d, N, error_diagnostics(static_cast<double>(mem.d), Nd, Q, rf * Nd, D1)});
    }
  }
  return res;
}

struct SweepRow {
  u64 n = 0;
  double a0_bound = 0.0;
  double inv_log_n = 0.0;
  double a0_log_n = 0.0;
};

inline std::vector<SweepRow> sweep(std::span<const ConstructionConfig> configs) {
  std::vector<SweepRow> rows;
  for (const auto& cfg : configs) {
    const ConstructionResult r = assemble(cfg);
    SweepRow row;
    row.n = r.max_frequency;
    row.a0_bound = r.a0_bound;
    const double ln = std::log(static_cast<double>(std::max<u64>(row.n, 2)));
    row.inv_log_n = 1.0 / ln;
    row.a0_log_n = r.a0_bound * ln;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Dirichlet approximation

struct DirichletApprox {
  i64 a = 0;
  u64 q = 1;
};

// Smallest q >= 1 with |theta - a/q| <= 1/(q R) for some integer a. Such q is
// always a continued-fraction convergent denominator. theta is taken mod 1
// and quantized to a multiple of 2^-60.
inline DirichletApprox dirichlet_approx(double theta, double R) {
  if (!(R >= 1.0)) throw DomainError("dirichlet_approx: R must be >= 1");
  using i128 = __int128;
  const i128 S = static_cast<i128>(1) << 60;
  const long double t = static_cast<long double>(wrap_unit(theta));
  const i128 P = static_cast<i128>(std::llroundl(t * static_cast<long double>(static_cast<u64>(1) << 60)));
  auto satisfies = [&](i128 p, i128 q) {
    i128 diff = q * P - p * S;
    if (diff < 0) diff = -diff;
    return static_cast<long double>(diff) * static_cast<long double>(R) <= static_cast<long double>(S);
  };
  i128 num = P, den = S;
  i128 p_prev = 1, q_prev = 0, p_cur = 0, q_cur = 1;
  // First convergent: floor(P/S) / 1.
  {
    const i128 a0 = num / den;
    p_cur = a0;
    q_cur = 1;
    const i128 r = num - a0 * den;
    num = den;
    den = r;
  }
  while (true) {
    if (satisfies(p_cur, q_cur)) return {static_cast<i64>(p_cur), static_cast<u64>(q_cur)};
    if (den == 0) break;
    const i128 ak = num / den;
    const i128 r = num - ak * den;
    const i128 p_next = ak * p_cur + p_prev, q_next = ak * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    num = den;
    den = r;
  }
  return {static_cast<i64>(p_cur), static_cast<u64>(q_cur)};
}

}  // namespace vdc
