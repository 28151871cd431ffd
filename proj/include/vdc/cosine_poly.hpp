#pragma once

// Sparse even trigonometric polynomials a0 + sum a_f cos(2 pi f theta):
// construction of the normalized prime polynomials, evaluation, linear
// combination and certified lower bounds for the global minimum.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "vdc/arith.hpp"
#include "vdc/error.hpp"
#include "vdc/numeric.hpp"
#include "vdc/parallel.hpp"

namespace vdc {

struct CosineTerm {
  u64 freq = 1;
  double coeff = 0.0;

  friend bool operator==(const CosineTerm&, const CosineTerm&) = default;
};

class CosinePoly {
 public:
  CosinePoly() = default;

  // Terms may come in any order; equal frequencies are summed.
  explicit CosinePoly(double a0, std::vector<CosineTerm> terms = {}) : a0_(a0) {
    std::sort(terms.begin(), terms.end(),
              [](const CosineTerm& x, const CosineTerm& y) { return x.freq < y.freq; });
    for (const auto& t : terms) {
      if (t.freq == 0) throw DomainError("CosinePoly: frequencies must be positive");
      if (!terms_.empty() && terms_.back().freq == t.freq) {
        terms_.back().coeff += t.coeff;
      } else {
        terms_.push_back(t);
      }
    }
  }

  double a0() const { return a0_; }
  std::span<const CosineTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  u64 degree() const { return terms_.empty() ? 0 : terms_.back().freq; }

  double value_at_zero() const {
    CompensatedSum s;
    s += a0_;
    for (const auto& t : terms_) s += t.coeff;
    return s.value();
  }

  // sum |a_f| f; the derivative is bounded by 2 pi times this.
  double weighted_l1() const {
    CompensatedSum s;
    for (const auto& t : terms_) s += std::fabs(t.coeff) * static_cast<double>(t.freq);
    return s.value();
  }

  double l1() const {
    CompensatedSum s;
    for (const auto& t : terms_) s += std::fabs(t.coeff);
    return s.value();
  }

  friend bool operator==(const CosinePoly&, const CosinePoly&) = default;

 private:
  double a0_ = 0.0;
  std::vector<CosineTerm> terms_;
};

// F_{N,d}(theta) = (1/k) sum over p <= dN+1, p = 1 (mod d) of
// log p cos(2 pi (p-1) theta), with k chosen so that F(0) = 1.
inline CosinePoly build_F(u64 d, u64 N) {
  const ApPrimeSet set = primes_in_ap(d, N);
  if (set.primes.empty()) {
    throw DomainError("build_F: no primes p <= " + std::to_string(set.bound()) + " with p = 1 mod " +
                      std::to_string(d));
  }
  CompensatedSum k;
  std::vector<CosineTerm> terms;
  terms.reserve(set.primes.size());
  for (u64 p : set.primes) {
    const double lp = std::log(static_cast<double>(p));
    k += lp;
    terms.push_back({p - 1, lp});
  }
  const double norm = k.value();
  for (auto& t : terms) t.coeff /= norm;
  return CosinePoly(0.0, std::move(terms));
}

inline double evaluate(const CosinePoly& poly, double theta) {
  const long double x = static_cast<long double>(wrap_unit(theta));
  CompensatedSum s;
  s += poly.a0();
  for (const auto& t : poly.terms()) {
    long double phase = static_cast<long double>(t.freq) * x;
    phase -= std::floor(phase);
    s += t.coeff * std::cos(2.0 * std::numbers::pi * static_cast<double>(phase));
  }
  return s.value();
}

// Values at i/grid_size for i in [0, count), by direct summation with the
// phase f*i reduced modulo grid_size in integer arithmetic.
inline std::vector<double> evaluate_grid_direct(const CosinePoly& poly, u64 grid_size, u64 count) {
  if (grid_size == 0) throw DomainError("evaluate_grid: grid_size must be positive");
  std::vector<double> out(count);
  parallel_chunks(count, 64, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      CompensatedSum s;
      s += poly.a0();
      for (const auto& t : poly.terms()) {
        const u64 k = static_cast<u64>((static_cast<unsigned __int128>(t.freq) * i) % grid_size);
        s += t.coeff * cos_turns(k, grid_size);
      }
      out[i] = s.value();
    }
  });
  return out;
}

namespace detail {
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

// Values at i/grid_size for i in [0, grid_size/2] via a real-to-complex FFT.
// Frequencies at or above grid_size alias exactly onto f mod grid_size.
inline std::vector<double> evaluate_half_grid_fft(const CosinePoly& poly, u64 grid_size) {
  if (grid_size == 0) throw DomainError("evaluate_grid: grid_size must be positive");
  const std::size_t n = grid_size;
  const std::size_t half = n / 2 + 1;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(half);
  if (!in || !out) {
    fftw_free(in);
    fftw_free(out);
    throw ResourceError("evaluate_grid: cannot allocate FFT buffers of size " + std::to_string(n));
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }
  std::fill(in, in + n, 0.0);
  in[0] = poly.a0();
  for (const auto& t : poly.terms()) in[t.freq % n] += t.coeff;
  fftw_execute(plan);
  std::vector<double> vals(half);
  for (std::size_t j = 0; j < half; ++j) vals[j] = out[j][0];
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return vals;
}

inline constexpr std::size_t kFftTermThreshold = 32;

// Values at i/grid_size for i in [0, grid_size/2]; by evenness this covers
// the full period.
inline std::vector<double> evaluate_half_grid(const CosinePoly& poly, u64 grid_size) {
  if (grid_size == 0) throw DomainError("evaluate_grid: grid_size must be positive");
  if (poly.size() > kFftTermThreshold && grid_size >= 64) return evaluate_half_grid_fft(poly, grid_size);
  return evaluate_grid_direct(poly, grid_size, grid_size / 2 + 1);
}

inline std::vector<double> evaluate_grid(const CosinePoly& poly, u64 grid_size) {
  const std::vector<double> half = evaluate_half_grid(poly, grid_size);
  std::vector<double> out(grid_size);
  for (u64 i = 0; i < grid_size; ++i) out[i] = half[std::min(i, grid_size - i)];
  return out;
}

inline CosinePoly combine(std::span<const std::pair<double, CosinePoly>> parts) {
  CompensatedSum a0;
  std::map<u64, CompensatedSum> acc;
  for (const auto& [w, p] : parts) {
    if (!std::isfinite(w)) throw DomainError("combine: weights must be finite");
    a0 += w * p.a0();
    for (const auto& t : p.terms()) acc[t.freq] += w * t.coeff;
  }
  std::vector<CosineTerm> terms;
  terms.reserve(acc.size());
  for (const auto& [f, s] : acc) terms.push_back({f, s.value()});
  return CosinePoly(a0.value(), std::move(terms));
}

struct CertifiedMin {
  double grid_min = 0.0;
  double grid_argmin = 0.0;
  double lipschitz = 0.0;
  double certified_lower = 0.0;
  double grid_step = 0.0;
  u64 grid_size = 0;
};

// Scans theta = i/grid_size over [0, 1/2]. Every theta lies within h/2 of a
// grid point and |T'| <= 2 pi sum |a_f| f, so grid_min - pi (sum |a_f| f) h is
// a global lower bound.
inline CertifiedMin certified_min(const CosinePoly& poly, u64 grid_size) {
  const u64 required = std::max<u64>(4 * poly.degree(), 1);
  if (grid_size < required) {
    throw DomainError("certified_min: grid_size " + std::to_string(grid_size) +
                      " too coarse, need at least " + std::to_string(required));
  }
  const std::vector<double> vals = evaluate_half_grid(poly, grid_size);
  std::size_t best = 0;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  CertifiedMin cm;
  cm.grid_size = grid_size;
  cm.grid_step = 1.0 / static_cast<double>(grid_size);
  cm.grid_min = vals[best];
  cm.grid_argmin = static_cast<double>(best) / static_cast<double>(grid_size);
  cm.lipschitz = 2.0 * std::numbers::pi * poly.weighted_l1();
  cm.certified_lower = cm.grid_min - cm.lipschitz * cm.grid_step / 2.0;
  return cm;
}

inline constexpr double kNormTolerance = 1e-9;

struct ShiftResult {
  CosinePoly poly;
  double a0_readout = 0.0;
};

// (T + s)/(1 + s) with s = -floor: value 1 at 0, nonnegative whenever T >= floor.
// a0_readout is the free coefficient of the result.
inline ShiftResult shift_normalize(const CosinePoly& poly, double floor) {
  if (!(floor <= 0.0)) throw DomainError("shift_normalize: floor must be nonpositive");
  const double at0 = poly.value_at_zero();
  if (std::fabs(at0 - 1.0) > kNormTolerance) {
    throw DomainError("shift_normalize: polynomial must equal 1 at 0, got " + fmt12(at0));
  }
  const double s = -floor;
  if (s == 0.0) return {poly, poly.a0()};
  const double scale = 1.0 / (1.0 + s);
  std::vector<CosineTerm> terms(poly.terms().begin(), poly.terms().end());
  for (auto& t : terms) t.coeff *= scale;
  const double a0 = (poly.a0() + s) * scale;
  return {CosinePoly(a0, std::move(terms)), a0};
}

}  // namespace vdc
