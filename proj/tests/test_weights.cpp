#include <gtest/gtest.h>

#include "vdc/weights.hpp"

using namespace vdc;

namespace {

WeightScheme toy() { return build_scheme({0.5, 2, 7, 2, std::nullopt}); }

Rational brute_min(const WeightScheme& s, u64 qmax, u64* argmin = nullptr) {
  Rational best = cancellation_value(s, 1);
  u64 arg = 1;
  for (u64 q = 2; q <= qmax; ++q) {
    const Rational v = cancellation_value(s, q);
    if (v < best) {
      best = v;
      arg = q;
    }
  }
  if (argmin) *argmin = arg;
  return best;
}

}  // namespace

TEST(Scheme, ToyMembers) {
  const WeightScheme s = toy();
  EXPECT_EQ(s.d_star, 2u);
  ASSERT_EQ(s.members.size(), 3u);
  EXPECT_EQ(s.members[0].d, 30u);
  EXPECT_EQ(s.members[0].w, make_rational(1, 2));
  EXPECT_EQ(s.members[1].d, 42u);
  EXPECT_EQ(s.members[1].w, make_rational(1, 3));
  EXPECT_EQ(s.members[2].d, 70u);
  EXPECT_EQ(s.members[2].w, make_rational(1, 6));
}

TEST(Scheme, SingleCofactorPrime) {
  const WeightScheme s = build_scheme({0.5, 2, 5, 1, std::nullopt});
  ASSERT_EQ(s.members.size(), 2u);
  EXPECT_EQ(s.members[0].d, 6u);
  EXPECT_EQ(s.members[0].w, make_rational(2, 3));
  EXPECT_EQ(s.members[1].d, 10u);
  EXPECT_EQ(s.members[1].w, make_rational(1, 3));
  EXPECT_EQ(reduce_q_class(s), (std::vector<u64>{1, 3, 5, 15}));
}

TEST(Scheme, EmptyProduct) {
  const WeightScheme s = build_scheme({0.5, 5, 11, 0, std::nullopt});
  ASSERT_EQ(s.members.size(), 1u);
  EXPECT_EQ(s.members[0].d, 30u);
  EXPECT_EQ(s.members[0].w, Rational(1));
  EXPECT_EQ(reduce_q_class(s), (std::vector<u64>{1}));
}

TEST(Scheme, ExceptionalModulusDividesEveryMember) {
  const WeightScheme s = build_scheme({0.5, 3, 13, 2, u64{4}});
  EXPECT_EQ(s.d_star, 24u);
  for (const auto& m : s.members) EXPECT_EQ(m.d % 4, 0u);
  Rational sum = 0;
  for (const auto& m : s.members) sum += m.w;
  EXPECT_EQ(sum, Rational(1));
}

TEST(Scheme, Infeasible) {
  EXPECT_THROW(build_scheme(asymptotic_preset(0.5)), DomainError);
  EXPECT_THROW(build_scheme({0.5, 2, 5, 3, std::nullopt}), DomainError);
  EXPECT_THROW(build_scheme({0.5, 7, 5, 1, std::nullopt}), DomainError);
}

TEST(Scheme, AsymptoticPreset) {
  const SchemeParams p = asymptotic_preset(0.5);
  EXPECT_EQ(p.p_plus, 5u);
  EXPECT_EQ(p.l, 3u);
  EXPECT_EQ(p.p_minus, 19u);
  EXPECT_THROW(asymptotic_preset(0.0), DomainError);
}

TEST(Cancellation, ToyValues) {
  const WeightScheme s = toy();
  EXPECT_EQ(cancellation_value(s, 1), Rational(1));
  EXPECT_EQ(cancellation_value(s, 5), make_rational(7, 12));
  EXPECT_EQ(cancellation_value(s, 11), make_rational(-1, 10));
  EXPECT_EQ(reduce_q_class(s), (std::vector<u64>{1, 3, 5, 7, 15, 21, 35, 105}));
}

TEST(Cancellation, ToyMatchesBruteForce) {
  const WeightScheme s = toy();
  const CancellationReport r = verify_cancellation(s, 0.5);
  u64 arg = 0;
  EXPECT_EQ(r.min_value, brute_min(s, 10'000, &arg));
  EXPECT_EQ(r.argmin_q, arg);
  EXPECT_TRUE(r.passed);
}

TEST(Cancellation, OtherSchemesMatchBruteForce) {
  const std::vector<SchemeParams> ps = {
      {0.5, 2, 5, 1, std::nullopt}, {0.5, 3, 13, 2, std::nullopt}, {0.5, 2, 11, 3, std::nullopt},
      {0.5, 3, 11, 1, u64{4}},      {0.5, 5, 11, 0, std::nullopt}, {0.5, 2, 13, 1, u64{9}},
  };
  for (const auto& p : ps) {
    const WeightScheme s = build_scheme(p);
    const CancellationReport r = verify_cancellation(s, p.delta);
    EXPECT_EQ(r.min_value, brute_min(s, 4000)) << p.p_minus << ' ' << p.p_plus << ' ' << p.l;
  }
}

TEST(Cancellation, ThresholdIsHalfDelta) {
  const WeightScheme s = toy();
  // The toy minimum is -1/4, so it passes at delta = 1/2 but not below.
  EXPECT_TRUE(verify_cancellation(s, 0.5).passed);
  EXPECT_FALSE(verify_cancellation(s, 0.4).passed);
}
