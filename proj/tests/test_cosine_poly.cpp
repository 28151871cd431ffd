#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vdc/cosine_poly.hpp"

using namespace vdc;

namespace {

CosinePoly random_sparse(std::mt19937_64& rng, u64 max_degree, std::size_t terms) {
  std::uniform_int_distribution<u64> freq(1, max_degree);
  std::normal_distribution<double> coeff(0.0, 1.0);
  std::vector<CosineTerm> t;
  for (std::size_t i = 0; i < terms; ++i) t.push_back({freq(rng), coeff(rng)});
  return CosinePoly(coeff(rng), std::move(t));
}

}  // namespace

TEST(BuildF, SmallExamples) {
  const CosinePoly f = build_F(1, 4);
  ASSERT_EQ(f.size(), 3u);
  const double k = std::log(30.0);
  EXPECT_EQ(f.terms()[0].freq, 1u);
  EXPECT_NEAR(f.terms()[0].coeff, std::log(2.0) / k, 1e-15);
  EXPECT_EQ(f.terms()[1].freq, 2u);
  EXPECT_NEAR(f.terms()[1].coeff, std::log(3.0) / k, 1e-15);
  EXPECT_EQ(f.terms()[2].freq, 4u);
  EXPECT_NEAR(f.terms()[2].coeff, std::log(5.0) / k, 1e-15);
  EXPECT_EQ(f.a0(), 0.0);

  const CosinePoly g = build_F(4, 10);
  std::vector<u64> freqs;
  for (const auto& t : g.terms()) freqs.push_back(t.freq);
  EXPECT_EQ(freqs, (std::vector<u64>{4, 12, 16, 28, 36, 40}));
  EXPECT_THROW(build_F(0, 5), DomainError);
}

TEST(BuildF, EmptyPrimeSetIsDomainError) {
  // d = 24, N = 1: only 25 qualifies and it is not prime.
  EXPECT_THROW(build_F(24, 1), DomainError);
}

TEST(BuildF, Normalized) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    const u64 d = 1 + rng() % 50, N = 1 + rng() % 1000;
    try {
      EXPECT_NEAR(evaluate(build_F(d, N), 0.0), 1.0, 1e-12);
    } catch (const DomainError&) {
    }
  }
}

TEST(Evaluate, Examples) {
  EXPECT_NEAR(evaluate(build_F(1, 4), 0.0), 1.0, 1e-15);
  EXPECT_NEAR(evaluate(CosinePoly(0.25, {{1, 1.0}}), 0.5), 0.25 - 1.0, 1e-15);
  EXPECT_NEAR(evaluate(build_F(1, 4), 0.5), 0.5924099058189876, 1e-14);
  EXPECT_NEAR(evaluate(build_F(1, 4), 0.5), (-std::log(2.0) + std::log(3.0) + std::log(5.0)) / std::log(30.0), 1e-14);
}

TEST(Evaluate, EvenAndPeriodic) {
  std::mt19937_64 rng(3);
  const CosinePoly p = random_sparse(rng, 500, 30);
  for (double t : {0.1, 0.37, 0.49}) {
    EXPECT_NEAR(evaluate(p, t), evaluate(p, -t), 1e-9);
    EXPECT_NEAR(evaluate(p, t), evaluate(p, t + 3.0), 1e-9);
    EXPECT_NEAR(evaluate(p, t), evaluate(p, 1.0 - t), 1e-9);
  }
}

TEST(Grid, Examples) {
  for (double v : evaluate_grid(CosinePoly(2.5), 7)) EXPECT_DOUBLE_EQ(v, 2.5);
  const auto g = evaluate_grid(CosinePoly(0.5, {{1, 1.0}}), 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_NEAR(g[0], 1.5, 1e-15);
  EXPECT_NEAR(g[1], 0.5, 1e-15);
  EXPECT_NEAR(g[2], -0.5, 1e-15);
  EXPECT_NEAR(g[3], 0.5, 1e-15);
  const CosinePoly f = build_F(1, 4);
  const auto h = evaluate_grid(f, 64);
  for (u64 i = 0; i < 64; ++i) EXPECT_NEAR(h[i], evaluate(f, static_cast<double>(i) / 64), 1e-12);
}

TEST(Grid, FastPathMatchesDirect) {
  std::mt19937_64 rng(5);
  for (u64 deg : {100u, 1000u, 20000u}) {
    const CosinePoly p = random_sparse(rng, deg, 200);
    for (u64 G : {u64{4} * deg, u64{6} * deg + 2, u64{1} << 17}) {
      const auto fast = evaluate_half_grid_fft(p, G);
      const auto slow = evaluate_grid_direct(p, G, G / 2 + 1);
      ASSERT_EQ(fast.size(), slow.size());
      for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_NEAR(fast[i], slow[i], 1e-9) << deg << ' ' << G << ' ' << i;
    }
  }
}

TEST(Grid, AliasedFrequenciesStillMatch) {
  // Frequencies above G/2 fold back; the fast path must agree anyway.
  const CosinePoly p(0.1, {{3, 0.5}, {13, -0.25}, {29, 0.75}});
  const auto fast = evaluate_half_grid_fft(p, 16);
  const auto slow = evaluate_grid_direct(p, 16, 9);
  for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_NEAR(fast[i], slow[i], 1e-12);
}

TEST(Combine, Identities) {
  const CosinePoly f = build_F(1, 4), g = build_F(4, 10);
  const std::vector<std::pair<double, CosinePoly>> one{{1.0, f}};
  EXPECT_EQ(combine(one), f);
  const std::vector<std::pair<double, CosinePoly>> halves{{0.5, f}, {0.5, f}};
  const CosinePoly h = combine(halves);
  ASSERT_EQ(h.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(h.terms()[i].coeff, f.terms()[i].coeff, 1e-16);
  const std::vector<std::pair<double, CosinePoly>> mix{{0.5, f}, {0.5, g}};
  const CosinePoly m = combine(mix);
  EXPECT_NEAR(evaluate(m, 0.0), 1.0, 1e-12);
  for (double t : {0.03, 0.21, 0.44}) EXPECT_NEAR(evaluate(m, t), 0.5 * evaluate(f, t) + 0.5 * evaluate(g, t), 1e-9);
}

TEST(CertifiedMin, Examples) {
  const CertifiedMin c = certified_min(CosinePoly(-0.3), 8);
  EXPECT_DOUBLE_EQ(c.certified_lower, -0.3);
  double prev = -1.0;
  for (u64 G : {64u, 1024u, 16384u}) {
    const CertifiedMin m = certified_min(CosinePoly(1.0, {{1, 1.0}}), G);
    EXPECT_LE(m.certified_lower, 0.0);
    EXPECT_GT(m.certified_lower, prev);
    prev = m.certified_lower;
  }
  EXPECT_GT(prev, -1e-3);
  EXPECT_THROW(certified_min(build_F(1, 100), 100), DomainError);
}

TEST(CertifiedMin, CloseToRandomScan) {
  const CosinePoly f = build_F(1, 4);
  const CertifiedMin c = certified_min(f, 1 << 14);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double brute = 10;
  for (int i = 0; i < 1'000'000; ++i) brute = std::min(brute, evaluate(f, u(rng)));
  EXPECT_LE(c.certified_lower, brute);
  EXPECT_NEAR(c.certified_lower, brute, 1e-3);
}

TEST(CertifiedMin, SoundOnRandomPolys) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const CosinePoly p = random_sparse(rng, 2000, 20);
    const CertifiedMin c = certified_min(p, 4 * p.degree());
    for (int i = 0; i < 20000; ++i) EXPECT_LE(c.certified_lower, evaluate(p, u(rng)));
  }
}

TEST(Shift, Examples) {
  const CosinePoly f = build_F(1, 4);
  EXPECT_EQ(shift_normalize(f, 0.0).poly, f);
  const ShiftResult s = shift_normalize(CosinePoly(0.0, {{1, 1.0}}), -1.0);
  EXPECT_DOUBLE_EQ(s.poly.a0(), 0.5);
  EXPECT_DOUBLE_EQ(s.poly.terms()[0].coeff, 0.5);
  EXPECT_DOUBLE_EQ(s.a0_readout, 0.5);
  const double d = 0.37;
  EXPECT_NEAR(shift_normalize(f, -d).a0_readout, d / (1 + d), 1e-15);
  EXPECT_NEAR(shift_normalize(f, -d).poly.value_at_zero(), 1.0, 1e-12);
  EXPECT_THROW(shift_normalize(CosinePoly(0.5, {{1, 0.4}}), -0.1), DomainError);
  EXPECT_THROW(shift_normalize(f, 0.1), DomainError);
}
