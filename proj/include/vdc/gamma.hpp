#pragma once

// gamma(n): the least free coefficient a0 of a nonnegative cosine polynomial
// with T(0) = 1 and spectrum in {p-1 <= n}. Bracketed by a finite-grid LP
// relaxation from below and a shift-repaired feasible witness from above,
// refined by cutting planes at the relaxed solution's negative minima.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "vdc/arith.hpp"
#include "vdc/cosine_poly.hpp"
#include "vdc/error.hpp"
#include "vdc/numeric.hpp"
#include "vdc/simplex.hpp"
#include "vdc/spectrum.hpp"

namespace vdc {

// ---------------------------------------------------------------------------
// Rigorous global minimum by adaptive bisection

struct AdaptiveMin {
  double lower = 0.0;   // certified: T(theta) >= lower for every theta
  double upper = 0.0;   // smallest sampled value
  double argmin = 0.0;  // where upper was sampled
  std::size_t evaluations = 0;
};

namespace detail {

struct ValueSlope {
  double value;
  double slope;
};

inline ValueSlope value_and_slope(const CosinePoly& p, double theta) {
  CompensatedSum v, s;
  v += p.a0();
  for (const auto& t : p.terms()) {
    long double ph = static_cast<long double>(t.freq) * static_cast<long double>(theta);
    ph -= std::floor(ph);
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(ph);
    v += t.coeff * std::cos(ang);
    s += -2.0 * std::numbers::pi * static_cast<double>(t.freq) * t.coeff * std::sin(ang);
  }
  return {v.value(), s.value()};
}

}  // namespace detail

// Branch and bound over cells of [0, 1/2] with the bound
// T(c + t) >= T(c) - |T'(c)| h/2 - M2 h^2/8, M2 = 4 pi^2 sum |a_f| f^2.
// Stops once every open cell's bound is within eps of the best sample.
inline AdaptiveMin adaptive_min(const CosinePoly& poly, double eps, std::size_t max_evals = 4'000'000) {
  const double two_pi = 2.0 * std::numbers::pi;
  CompensatedSum m2s;
  for (const auto& t : poly.terms()) {
    const double f = static_cast<double>(t.freq);
    m2s += std::fabs(t.coeff) * f * f;
  }
  const double m2 = two_pi * two_pi * m2s.value();
  const double round_err = 64.0 * std::numeric_limits<double>::epsilon() *
                           (std::fabs(poly.a0()) + poly.l1()) * (1.0 + std::log2(1.0 + poly.size()));

  struct Cell {
    double bound, lo, hi;
    bool operator>(const Cell& o) const { return bound > o.bound; }
  };
  AdaptiveMin res;
  res.upper = std::numeric_limits<double>::infinity();
  auto sample = [&](double theta) {
    const auto vs = detail::value_and_slope(poly, theta);
    ++res.evaluations;
    if (vs.value < res.upper) {
      res.upper = vs.value;
      res.argmin = theta;
    }
    return vs;
  };
  auto make_cell = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = hi - lo;
    const auto vs = sample(c);
    return Cell{vs.value - std::fabs(vs.slope) * h / 2.0 - m2 * h * h / 8.0 - round_err, lo, hi};
  };

  std::priority_queue<Cell, std::vector<Cell>, std::greater<>> open;
  double stuck = std::numeric_limits<double>::infinity();
  const std::size_t initial = std::max<std::size_t>(64, 8 * poly.degree());
  sample(0.0);
  sample(0.5);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = 0.5 * static_cast<double>(i) / static_cast<double>(initial);
    const double hi = 0.5 * static_cast<double>(i + 1) / static_cast<double>(initial);
    open.push(make_cell(lo, hi));
  }
  while (!open.empty() && res.evaluations < max_evals) {
    const Cell c = open.top();
    if (c.bound >= res.upper - eps) break;
    open.pop();
    const double mid = 0.5 * (c.lo + c.hi);
    if (mid <= c.lo || mid >= c.hi) {
      // Cannot split further in double precision; keep its bound as final.
      stuck = std::min(stuck, c.bound);
      continue;
    }
    open.push(make_cell(c.lo, mid));
    open.push(make_cell(mid, c.hi));
  }
  res.lower = std::min({res.upper, stuck, open.empty() ? res.upper : open.top().bound});
  return res;
}

// ---------------------------------------------------------------------------
// Grid relaxation

struct LpRelaxation {
  double a0 = 1.0;
  CosinePoly poly;
  std::size_t iterations = 0;
};

// min a0 subject to a0 + sum a_f cos(2 pi f theta_i) >= 0 on the grid and
// a0 + sum a_f = 1, plus |a_f| <= 2 a0 (valid for every nonnegative T since
// a_f = 2 * integral of T cos). Solved through the dual in standard form.
inline LpRelaxation lp_relax(const Spectrum& spec, const std::vector<double>& grid,
                             const SimplexOptions& opt = {}) {
  if (grid.empty()) throw DomainError("lp_relax: grid must be nonempty");
  const std::size_t s = spec.freqs.size();
  if (s == 0) throw DomainError("lp_relax: empty spectrum");

  // Primal in a = (a_f): maximize sum a_f subject to rows g_i . a <= h_i.
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (double theta : grid) {
    Eigen::VectorXd g(s);
    bool nonzero = false;
    for (std::size_t k = 0; k < s; ++k) {
      long double ph = static_cast<long double>(spec.freqs[k]) * static_cast<long double>(theta);
      ph -= std::floor(ph);
      g(static_cast<Eigen::Index>(k)) = 1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(ph));
      nonzero = nonzero || g(static_cast<Eigen::Index>(k)) > 1e-15;
    }
    if (!nonzero) continue;
    rows.push_back(std::move(g));
    rhs.push_back(1.0);
  }
  for (std::size_t k = 0; k < s; ++k) {
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd g = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(s), 2.0);
      g(static_cast<Eigen::Index>(k)) += sign;
      rows.push_back(std::move(g));
      rhs.push_back(2.0);
    }
  }
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd A(static_cast<Eigen::Index>(s), m);
  Eigen::VectorXd cost(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    A.col(i) = rows[static_cast<std::size_t>(i)];
    cost(i) = rhs[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(s));
  const LpSolution sol = solve_standard_lp(A, ones, cost, opt);
  if (sol.status != LpStatus::optimal) {
    throw ResourceError("lp_relax: simplex did not reach optimality");
  }
  std::vector<CosineTerm> terms;
  CompensatedSum sum;
  for (std::size_t k = 0; k < s; ++k) {
    const double a = sol.duals(static_cast<Eigen::Index>(k));
    sum += a;
    terms.push_back({spec.freqs[k], a});
  }
  LpRelaxation r;
  r.a0 = 1.0 - sum.value();
  r.poly = CosinePoly(r.a0, std::move(terms));
  r.iterations = sol.iterations;
  return r;
}

// Chebyshev-Lobatto points on [0, 1/2], endpoints included.
inline std::vector<double> chebyshev_grid(std::size_t count) {
  count = std::max<std::size_t>(count, 2);
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = 0.25 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(count - 1)));
  }
  g.front() = 0.0;
  g.back() = 0.5;
  return g;
}

// Golden-section search for a local minimum on [lo, hi].
template <typename F>
double golden_section(F&& f, double lo, double hi, double tol = 1e-12) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

// Refined local minima of poly on [0, 1/2] with negative value.
inline std::vector<double> negative_local_minima(const CosinePoly& poly) {
  const std::size_t n = std::max<std::size_t>(256, 16 * poly.degree());
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = evaluate(poly, 0.5 * static_cast<double>(i) / static_cast<double>(n));
  auto f = [&](double t) { return evaluate(poly, t); };
  std::vector<double> out;
  for (std::size_t i = 0; i <= n; ++i) {
    const double left = i == 0 ? vals[1] : vals[i - 1];
    const double right = i == n ? vals[n - 1] : vals[i + 1];
    if (!(vals[i] <= left && vals[i] <= right) || vals[i] >= 0.0) continue;
    const double lo = 0.5 * static_cast<double>(i == 0 ? 0 : i - 1) / static_cast<double>(n);
    const double hi = 0.5 * static_cast<double>(std::min(n, i + 1)) / static_cast<double>(n);
    const double t = golden_section(f, lo, hi);
    if (f(t) < 0.0) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cutting-plane bracket

struct GammaBracket {
  u64 n = 0;
  double lower = 0.0;
  double upper = 1.0;
  CosinePoly witness;
  std::size_t grid_final = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct GammaOptions {
  u64 max_n = 200;
  std::size_t max_iterations = 200;
  double certify_eps = 1e-12;
};

inline GammaBracket bracket_gamma(u64 n, double tol, const GammaOptions& opt = {}) {
  if (!(tol > 0.0)) throw DomainError("bracket_gamma: tol must be positive");
  if (n == 0) throw DomainError("bracket_gamma: n must be positive");
  if (n > opt.max_n) {
    throw ResourceError("bracket_gamma: n = " + std::to_string(n) + " exceeds configured max " +
                        std::to_string(opt.max_n));
  }
  const Spectrum spec = build_spectrum(n);
  std::vector<double> grid = chebyshev_grid(4 * spec.freqs.back());

  GammaBracket br;
  br.n = n;
  // (1 + cos 2 pi theta)/2 is always feasible since 1 is in the spectrum.
  br.witness = CosinePoly(0.5, {{1, 0.5}});
  br.upper = 0.5;
  br.lower = -std::numeric_limits<double>::infinity();

  while (br.iterations < opt.max_iterations) {
    ++br.iterations;
    const LpRelaxation lp = lp_relax(spec, grid);
    br.lower = std::max(br.lower, lp.a0);

    const AdaptiveMin am = adaptive_min(lp.poly, opt.certify_eps);
    const double floor = std::min(0.0, am.lower);
    const ShiftResult repaired = shift_normalize(lp.poly, floor);
    if (repaired.poly.a0() < br.upper) {
      br.upper = repaired.poly.a0();
      br.witness = repaired.poly;
    }
    if (br.upper - br.lower <= tol) {
      br.converged = true;
      break;
    }
    std::vector<double> cuts = negative_local_minima(lp.poly);
    if (am.upper < 0.0) cuts.push_back(am.argmin);
    if (cuts.empty()) {
      // Relaxed optimum is feasible up to certification slack; tighten it.
      grid.push_back(am.argmin);
    }
    grid.insert(grid.end(), cuts.begin(), cuts.end());
  }
  br.lower = std::min(br.lower, br.upper);
  br.grid_final = grid.size();
  return br;
}

struct GammaComparison {
  double construction_a0 = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;  // construction_a0 - upper
  bool consistent = true;
};

// Any feasible construction bounds gamma(n) from above, so it can never sit
// below the LP lower bound.
inline GammaComparison compare_construction(const GammaBracket& br, const CosinePoly& construction,
                                            double construction_a0) {
  const Spectrum spec = build_spectrum(br.n);
  for (const auto& t : construction.terms()) {
    if (!std::binary_search(spec.freqs.begin(), spec.freqs.end(), t.freq)) {
      throw DomainError("compare_construction: frequency " + std::to_string(t.freq) +
                        " is outside the shifted-prime spectrum up to " + std::to_string(br.n));
    }
  }
  GammaComparison c;
  c.construction_a0 = construction_a0;
  c.lower = br.lower;
  c.upper = br.upper;
  c.gap = construction_a0 - br.upper;
  c.consistent = br.lower <= construction_a0 + 1e-9;
  return c;
}

}  // namespace vdc
