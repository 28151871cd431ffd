#pragma once

// Companion measures for a spectrum H: the Heilbronn quantity
// eta = sup_theta min_{h in H} ||h theta||, maximum difference-avoiding sets
// on a finite window, and periodic extension of an avoiding set.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vdc/arith.hpp"
#include "vdc/error.hpp"
#include "vdc/spectrum.hpp"

namespace vdc {

// ---------------------------------------------------------------------------
// Heilbronn eta

enum class EtaMethod { exact, grid_bracket };

struct EtaResult {
  u64 n = 0;
  double value = 0.0;
  u64 value_num = 0;  // value = value_num / value_den exactly
  u64 value_den = 1;
  u64 argmax_num = 0;
  u64 argmax_den = 1;
  EtaMethod method = EtaMethod::exact;
  double upper = 0.0;  // equals value for the exact method
};

namespace detail {

// min over h of ||h k / D||, as a numerator over D.
inline u64 eta_numerator(std::span<const u64> freqs, u64 k, u64 D) {
  u64 best = D;
  for (u64 h : freqs) {
    const u64 x = static_cast<u64>((static_cast<unsigned __int128>(h) * k) % D);
    best = std::min(best, std::min(x, D - x));
    if (best == 0) break;
  }
  return best;
}

struct EtaCandidate {
  u64 num = 0, den = 1;  // g value
  u64 k = 0, D = 1;      // at theta = k/D
};

// a/b > c/d, or equal value with smaller theta.
inline bool eta_better(const EtaCandidate& a, const EtaCandidate& b) {
  const unsigned __int128 l = static_cast<unsigned __int128>(a.num) * b.den;
  const unsigned __int128 r = static_cast<unsigned __int128>(b.num) * a.den;
  if (l != r) return l > r;
  return static_cast<unsigned __int128>(a.k) * b.D < static_cast<unsigned __int128>(b.k) * a.D;
}

inline void finish_eta(EtaResult& r, const EtaCandidate& c) {
  const u64 g = std::gcd(c.num, c.den);
  r.value_num = c.num / g;
  r.value_den = c.den / g;
  r.value = static_cast<double>(c.num) / static_cast<double>(c.den);
  const u64 ga = std::gcd(c.k, c.D);
  r.argmax_num = c.k / ga;
  r.argmax_den = c.D / ga;
}

inline void check_freqs(std::span<const u64> freqs) {
  if (freqs.empty()) throw DomainError("eta: spectrum must be nonempty");
  for (u64 h : freqs) {
    if (h == 0) throw DomainError("eta: frequencies must be positive");
  }
}

}  // namespace detail

// Sum of p-1 over primes p <= 501, the admissible total for n = 500.
inline u64 default_eta_budget() {
  u64 s = 0;
  for_each_prime(501, [&](u64 p) { s += p - 1; });
  return s;
}

// g(theta) = min_h ||h theta|| is piecewise linear; its local maxima sit at
// tent peaks (2a+1)/(2h) or at crossings with denominators h1+h2, |h1-h2|.
// All such rationals are evaluated exactly.
inline EtaResult eta_exact_freqs(std::span<const u64> freqs, u64 budget = default_eta_budget()) {
  detail::check_freqs(freqs);
  const u64 total = std::accumulate(freqs.begin(), freqs.end(), u64{0});
  if (total > budget) {
    throw ResourceError("eta_exact: spectrum sum " + std::to_string(total) + " exceeds budget " +
                        std::to_string(budget));
  }
  std::set<u64> dens{2};
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    dens.insert(2 * freqs[i]);
    for (std::size_t j = i + 1; j < freqs.size(); ++j) {
      dens.insert(freqs[i] + freqs[j]);
      if (freqs[i] != freqs[j]) dens.insert(freqs[i] > freqs[j] ? freqs[i] - freqs[j] : freqs[j] - freqs[i]);
    }
  }
  detail::EtaCandidate best{0, 1, 0, 1};
  for (u64 D : dens) {
    for (u64 k = 0; 2 * k <= D; ++k) {
      const detail::EtaCandidate c{detail::eta_numerator(freqs, k, D), D, k, D};
      if (detail::eta_better(c, best)) best = c;
    }
  }
  EtaResult r;
  r.method = EtaMethod::exact;
  detail::finish_eta(r, best);
  r.upper = r.value;
  return r;
}

// Grid scan at i/grid_size over [0, 1/2]; g is Lipschitz with constant
// max h, so the true value lies in [lower, lower + max_h/(2 grid_size)].
inline EtaResult eta_bracket_freqs(std::span<const u64> freqs, u64 grid_size) {
  detail::check_freqs(freqs);
  if (grid_size == 0) throw DomainError("eta_bracket: grid_size must be positive");
  detail::EtaCandidate best{0, 1, 0, 1};
  for (u64 k = 0; 2 * k <= grid_size; ++k) {
    const detail::EtaCandidate c{detail::eta_numerator(freqs, k, grid_size), grid_size, k, grid_size};
    if (detail::eta_better(c, best)) best = c;
  }
  EtaResult r;
  r.method = EtaMethod::grid_bracket;
  detail::finish_eta(r, best);
  const u64 hmax = *std::max_element(freqs.begin(), freqs.end());
  r.upper = std::min(0.5, r.value + static_cast<double>(hmax) / (2.0 * static_cast<double>(grid_size)));
  return r;
}

inline EtaResult eta_exact(const Spectrum& spec, u64 budget = default_eta_budget()) {
  EtaResult r = eta_exact_freqs(spec.freqs, budget);
  r.n = spec.n;
  return r;
}

inline EtaResult eta_bracket(const Spectrum& spec, u64 grid_size) {
  EtaResult r = eta_bracket_freqs(spec.freqs, grid_size);
  r.n = spec.n;
  return r;
}

// Exact when within budget, otherwise a grid bracket with 64 * max freq points
// (rounded to a power of two). warned is set on fallback.
inline EtaResult eta_auto(const Spectrum& spec, bool& warned, u64 budget = default_eta_budget()) {
  warned = false;
  try {
    return eta_exact(spec, budget);
  } catch (const ResourceError&) {
    warned = true;
    return eta_bracket(spec, std::bit_ceil(std::max<u64>(64, 64 * spec.freqs.back())));
  }
}

// ---------------------------------------------------------------------------
// Difference-avoiding sets on a window

struct AvoidingSetResult {
  u64 window = 0;
  std::vector<u64> forbidden;
  std::vector<u64> best_set;
  u64 density_num = 0;
  u64 density_den = 1;
  bool optimal = false;
  u64 nodes = 0;
};

inline constexpr u64 kExhaustiveWindowCap = 64;

namespace detail {

class AvoidSearch {
 public:
  AvoidSearch(u64 window, const std::vector<u64>& forbidden) : m_(window), adj_(window, 0) {
    for (u64 x = 0; x < m_; ++x) {
      for (u64 f : forbidden) {
        if (x + f < m_) adj_[x] |= bit(x + f);
        if (f <= x) adj_[x] |= bit(x - f);
      }
    }
    // Degree order for building the clique cover bound.
    order_.resize(m_);
    std::iota(order_.begin(), order_.end(), u64{0});
    std::stable_sort(order_.begin(), order_.end(), [&](u64 a, u64 b) {
      return std::popcount(adj_[a]) > std::popcount(adj_[b]);
    });
  }

  void run() {
    const std::uint64_t all = m_ == 64 ? ~std::uint64_t{0} : (bit(m_) - 1);
    search(all, 0, 0);
  }

  std::uint64_t best() const { return best_set_; }
  int best_size() const { return best_size_; }
  u64 nodes() const { return nodes_; }

 private:
  static std::uint64_t bit(u64 i) { return std::uint64_t{1} << i; }

  // Number of cliques in a greedy clique cover of cand; an independent set
  // takes at most one vertex from each clique.
  int clique_cover(std::uint64_t cand) const {
    int count = 0;
    for (u64 v : order_) {
      if (!(cand & bit(v))) continue;
      std::uint64_t clique_common = adj_[v] & cand;
      cand &= ~bit(v);
      while (clique_common) {
        const u64 u = static_cast<u64>(std::countr_zero(clique_common));
        cand &= ~bit(u);
        clique_common &= adj_[u];
      }
      ++count;
    }
    return count;
  }

  void search(std::uint64_t cand, std::uint64_t chosen, int size) {
    ++nodes_;
    if (cand == 0) {
      if (size > best_size_) {
        best_size_ = size;
        best_set_ = chosen;
      }
      return;
    }
    if (size + clique_cover(cand) <= best_size_) return;
    const u64 v = static_cast<u64>(std::countr_zero(cand));
    search(cand & ~adj_[v] & ~bit(v), chosen | bit(v), size + 1);
    search(cand & ~bit(v), chosen, size);
  }

  u64 m_;
  std::vector<std::uint64_t> adj_;
  std::vector<u64> order_;
  std::uint64_t best_set_ = 0;
  int best_size_ = -1;
  u64 nodes_ = 0;
};

inline std::vector<u64> normalize_forbidden(std::span<const u64> forbidden) {
  std::vector<u64> f;
  for (u64 x : forbidden) {
    if (x > 0) f.push_back(x);
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace detail

// Largest subset of {0, ..., window-1} with no two elements differing by a
// forbidden integer; ties resolve to the lexicographically smallest set.
// Exhaustive branch and bound up to the cap, greedy beyond it.
inline AvoidingSetResult max_avoiding_set(u64 window, std::span<const u64> forbidden,
                                          u64 cap = kExhaustiveWindowCap) {
  if (window == 0) throw DomainError("max_avoiding_set: window must be positive");
  AvoidingSetResult r;
  r.window = window;
  r.forbidden = detail::normalize_forbidden(forbidden);
  if (window <= std::min<u64>(cap, 64)) {
    detail::AvoidSearch s(window, r.forbidden);
    s.run();
    for (u64 x = 0; x < window; ++x) {
      if (s.best() & (std::uint64_t{1} << x)) r.best_set.push_back(x);
    }
    r.optimal = true;
    r.nodes = s.nodes();
  } else {
    std::vector<char> blocked(window, 0);
    for (u64 x = 0; x < window; ++x) {
      if (blocked[x]) continue;
      r.best_set.push_back(x);
      for (u64 f : r.forbidden) {
        if (x + f < window) blocked[x + f] = 1;
      }
    }
    r.optimal = false;
  }
  const u64 g = std::gcd<u64>(r.best_set.size(), window);
  r.density_num = r.best_set.size() / g;
  r.density_den = window / g;
  return r;
}

// ---------------------------------------------------------------------------
// Periodic extension

struct PeriodicSet {
  u64 modulus = 1;
  std::vector<u64> residues;
  u64 density_num = 0;
  u64 density_den = 1;
};

inline PeriodicSet make_periodic(u64 modulus, std::span<const u64> residues) {
  if (modulus == 0) throw DomainError("periodic set: modulus must be positive");
  std::set<u64> rs;
  for (u64 r : residues) rs.insert(r % modulus);
  PeriodicSet p;
  p.modulus = modulus;
  p.residues.assign(rs.begin(), rs.end());
  const u64 g = std::gcd<u64>(p.residues.size(), modulus);
  p.density_num = p.residues.size() / g;
  p.density_den = modulus / g;
  return p;
}

// B = {x : x mod 2n in A} for A a subset of {1, ..., n}.
inline PeriodicSet periodize(std::span<const u64> set, u64 n) {
  if (n == 0) throw DomainError("periodize: n must be positive");
  if (set.empty()) throw DomainError("periodize: set must be nonempty");
  for (u64 a : set) {
    if (a < 1 || a > n) {
      throw DomainError("periodize: element " + std::to_string(a) + " outside [1, " + std::to_string(n) + "]");
    }
  }
  return make_periodic(2 * n, set);
}

// Translate a window set {0..M-1} into {1..M}; differences are unchanged.
inline std::vector<u64> to_one_based(std::span<const u64> set) {
  std::vector<u64> out(set.begin(), set.end());
  for (auto& x : out) ++x;
  return out;
}

struct AvoidanceCheck {
  bool passed = true;
  u64 difference = 0;  // forbidden difference realized, on failure
  u64 x = 0, y = 0;    // residues with x - y = difference (mod modulus)
};

// Differences of B are exactly r1 - r2 + k*modulus over residues r1, r2, so a
// residue-level scan decides every forbidden f <= check_limit.
inline AvoidanceCheck verify_avoidance(const PeriodicSet& b, std::span<const u64> forbidden, u64 check_limit) {
  std::vector<char> in(b.modulus, 0);
  for (u64 r : b.residues) in[r % b.modulus] = 1;
  for (u64 f : detail::normalize_forbidden(forbidden)) {
    if (f > check_limit) break;
    for (u64 r : b.residues) {
      const u64 s = (r + f) % b.modulus;
      if (in[s]) return {false, f, s, r};
    }
  }
  return {};
}

}  // namespace vdc
