#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vdc/recurrence.hpp"

using namespace vdc;

namespace {

double dist_int(double x) { return std::fabs(x - std::round(x)); }

// Dense scan of min_h ||h theta|| with exact rational refinement skipped;
// serves as a lower estimate of eta.
double eta_scan(const std::vector<u64>& h, u64 steps) {
  double best = 0;
  for (u64 i = 0; i <= steps; ++i) {
    const double t = 0.5 * static_cast<double>(i) / static_cast<double>(steps);
    double g = 1;
    for (u64 f : h) g = std::min(g, dist_int(static_cast<double>(f) * t));
    best = std::max(best, g);
  }
  return best;
}

bool avoids(const std::vector<u64>& set, const std::vector<u64>& forbidden) {
  for (u64 a : set) {
    for (u64 b : set) {
      if (a <= b) continue;
      for (u64 f : forbidden) {
        if (a - b == f) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST(Spectrum, Examples) {
  EXPECT_EQ(build_spectrum(1).freqs, (std::vector<u64>{1}));
  EXPECT_EQ(build_spectrum(2).freqs, (std::vector<u64>{1, 2}));
  EXPECT_EQ(build_spectrum(10).freqs, (std::vector<u64>{1, 2, 4, 6, 10}));
  EXPECT_THROW(build_spectrum(0), DomainError);
}

TEST(Eta, Examples) {
  const std::vector<u64> one{1}, two{1, 2};
  const EtaResult a = eta_exact_freqs(one);
  EXPECT_EQ(a.value_num, 1u);
  EXPECT_EQ(a.value_den, 2u);
  EXPECT_EQ(a.argmax_num, 1u);
  EXPECT_EQ(a.argmax_den, 2u);
  const EtaResult b = eta_exact_freqs(two);
  EXPECT_EQ(b.value_num, 1u);
  EXPECT_EQ(b.value_den, 3u);
  EXPECT_EQ(b.argmax_num, 1u);
  EXPECT_EQ(b.argmax_den, 3u);
  const EtaResult c = eta_exact(build_spectrum(10));
  EXPECT_EQ(c.n, 10u);
  EXPECT_LE(c.value, 1.0 / 3.0);
  EXPECT_THROW(eta_exact_freqs(std::vector<u64>{}), DomainError);
  EXPECT_THROW(eta_exact(build_spectrum(100), 10), ResourceError);
}

TEST(Eta, ExactDominatesDenseScan) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 30; ++k) {
    std::vector<u64> h;
    const int s = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < s; ++i) h.push_back(1 + rng() % 40);
    const EtaResult e = eta_exact_freqs(h);
    const double scan = eta_scan(h, 200'000);
    EXPECT_GE(e.value + 1e-12, scan);
    EXPECT_LE(e.value - scan, 40.0 / 400'000 + 1e-12);
    double g = 1;
    for (u64 f : h) {
      const u64 x = (f * e.argmax_num) % e.argmax_den;
      g = std::min(g, static_cast<double>(std::min(x, e.argmax_den - x)) / static_cast<double>(e.argmax_den));
    }
    EXPECT_DOUBLE_EQ(g, e.value);
  }
}

TEST(EtaBracket, Examples) {
  const std::vector<u64> one{1}, two{1, 2};
  const EtaResult a = eta_bracket_freqs(one, 4);
  EXPECT_DOUBLE_EQ(a.value, 0.5);
  EXPECT_EQ(a.method, EtaMethod::grid_bracket);
  EXPECT_DOUBLE_EQ(eta_bracket_freqs(two, 24).value, 1.0 / 3.0);
  EXPECT_LT(eta_bracket_freqs(two, 32).value, 1.0 / 3.0);
}

TEST(EtaBracket, ContainsExact) {
  for (u64 n = 1; n <= 40; ++n) {
    const Spectrum s = build_spectrum(n);
    const EtaResult e = eta_exact(s);
    for (u64 G : {u64{16}, u64{100}, u64{1024}}) {
      const EtaResult b = eta_bracket(s, G);
      EXPECT_LE(b.value, e.value + 1e-15);
      EXPECT_GE(b.upper + 1e-15, e.value);
    }
  }
}

TEST(EtaAuto, FallsBack) {
  bool warned = false;
  const EtaResult r = eta_auto(build_spectrum(50), warned, 10);
  EXPECT_TRUE(warned);
  EXPECT_EQ(r.method, EtaMethod::grid_bracket);
  eta_auto(build_spectrum(50), warned);
  EXPECT_FALSE(warned);
}

TEST(Avoid, Examples) {
  const std::vector<u64> f12{1, 2};
  const AvoidingSetResult a = max_avoiding_set(6, f12);
  EXPECT_EQ(a.best_set, (std::vector<u64>{0, 3}));
  EXPECT_EQ(a.density_num, 1u);
  EXPECT_EQ(a.density_den, 3u);
  EXPECT_TRUE(a.optimal);
  const AvoidingSetResult b = max_avoiding_set(4, std::vector<u64>{});
  EXPECT_EQ(b.best_set.size(), 4u);
  EXPECT_EQ(b.density_num, 1u);
  EXPECT_EQ(b.density_den, 1u);
  const AvoidingSetResult c = max_avoiding_set(12, build_spectrum(10).freqs);
  EXPECT_TRUE(avoids(c.best_set, c.forbidden));
  EXPECT_THROW(max_avoiding_set(0, f12), DomainError);
}

TEST(Avoid, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 40; ++k) {
    const u64 M = 1 + rng() % 16;
    std::vector<u64> f;
    for (u64 x = 1; x < 16; ++x) {
      if (rng() % 3 == 0) f.push_back(x);
    }
    std::vector<u64> best;
    for (u64 mask = 0; mask < (u64{1} << M); ++mask) {
      std::vector<u64> s;
      for (u64 i = 0; i < M; ++i) {
        if (mask >> i & 1) s.push_back(i);
      }
      if (!avoids(s, f)) continue;
      if (s.size() > best.size() || (s.size() == best.size() && s < best)) best = s;
    }
    const AvoidingSetResult r = max_avoiding_set(M, f);
    EXPECT_EQ(r.best_set, best) << M;
  }
}

TEST(Avoid, GreedyAboveCap) {
  const AvoidingSetResult r = max_avoiding_set(200, build_spectrum(30).freqs);
  EXPECT_FALSE(r.optimal);
  EXPECT_TRUE(avoids(r.best_set, r.forbidden));
}

TEST(Periodize, Examples) {
  const std::vector<u64> one{1}, three{3};
  const PeriodicSet a = periodize(one, 1);
  EXPECT_EQ(a.modulus, 2u);
  EXPECT_EQ(a.residues, (std::vector<u64>{1}));
  EXPECT_EQ(a.density_num, 1u);
  EXPECT_EQ(a.density_den, 2u);
  const PeriodicSet b = periodize(three, 3);
  EXPECT_EQ(b.modulus, 6u);
  EXPECT_EQ(b.residues, (std::vector<u64>{3}));
  EXPECT_EQ(b.density_den, 6u);
  const AvoidingSetResult w = max_avoiding_set(6, build_spectrum(5).freqs);
  const PeriodicSet c = periodize(to_one_based(w.best_set), 6);
  EXPECT_EQ(c.modulus, 12u);
  EXPECT_EQ(static_cast<double>(c.density_num) / c.density_den, w.best_set.size() / 12.0);
  EXPECT_THROW(periodize(std::vector<u64>{}, 3), DomainError);
  EXPECT_THROW(periodize(std::vector<u64>{0}, 3), DomainError);
  EXPECT_THROW(periodize(std::vector<u64>{4}, 3), DomainError);
}

TEST(Avoidance, Examples) {
  const std::vector<u64> f12{1, 2}, f1{1};
  EXPECT_TRUE(verify_avoidance(make_periodic(3, std::vector<u64>{0}), f12, 2).passed);
  const AvoidanceCheck bad = verify_avoidance(make_periodic(4, std::vector<u64>{0, 1}), f1, 1);
  EXPECT_FALSE(bad.passed);
  EXPECT_EQ(bad.difference, 1u);
}

TEST(Avoidance, PeriodizedOptimalSets) {
  for (u64 n : {5u, 10u, 20u, 30u}) {
    const Spectrum s = build_spectrum(n);
    std::vector<u64> below;
    for (u64 f : s.freqs) {
      if (f < n) below.push_back(f);
    }
    const AvoidingSetResult w = max_avoiding_set(n, below);
    const PeriodicSet b = periodize(to_one_based(w.best_set), n);
    EXPECT_TRUE(verify_avoidance(b, below, n - 1).passed) << n;
  }
}

TEST(Avoidance, ResidueScanMatchesIntegerScan) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const u64 m = 2 + rng() % 20;
    std::vector<u64> res;
    for (u64 r = 0; r < m; ++r) {
      if (rng() % 3 == 0) res.push_back(r);
    }
    if (res.empty()) res.push_back(0);
    const PeriodicSet b = make_periodic(m, res);
    std::vector<u64> f;
    for (u64 x = 1; x < 40; ++x) {
      if (rng() % 4 == 0) f.push_back(x);
    }
    bool ok = true;
    for (u64 x = 0; x < 3 * m + 40 && ok; ++x) {
      for (u64 y = x + 1; y < 3 * m + 80 && ok; ++y) {
        const bool in_x = std::binary_search(b.residues.begin(), b.residues.end(), x % m);
        const bool in_y = std::binary_search(b.residues.begin(), b.residues.end(), y % m);
        if (in_x && in_y && std::find(f.begin(), f.end(), y - x) != f.end()) ok = false;
      }
    }
    EXPECT_EQ(verify_avoidance(b, f, 40).passed, ok);
  }
}
