#include <gtest/gtest.h>

#include <vector>

#include "cli/instances.hpp"
#include "motzfree/motzfree.hpp"
#include "support.hpp"

using namespace motzfree;
using namespace testing_support;
using motzfree::cli::Centering;
using motzfree::cli::RandomSpec;

namespace {

SpecContext context(Mode mode, int order, std::uint64_t seed) {
  RandomSpec spec;
  spec.mode = mode;
  spec.order = order;
  spec.seed = seed;
  return cli::random_context(spec);
}

}  // namespace

TEST(Reduce, PullsScalarsAndMerges) {
  const auto x = Element::generator("A", "x");
  const auto y = Element::generator("B", "x");
  const auto r = detail::reduce({x, Element::scalar("B", 3), x, y, Element::unit("A"), y});
  EXPECT_EQ(r.scale, 3);
  ASSERT_EQ(r.factors.size(), 2u);
  EXPECT_EQ(r.factors[0], x * x);
  EXPECT_EQ(r.factors[1], y * y);
  EXPECT_EQ(detail::canonical_key({x, y}), detail::canonical_key({x, y}));
  EXPECT_NE(detail::canonical_key({x, y}), detail::canonical_key({y, x}));
}

TEST(FreeOracle, AgreesWithCumulantOracle) {
  Rng rng(12);
  for (int trial = 0; trial < 120; ++trial) {
    const auto ctx = context(Mode::free, 2, 40 + static_cast<std::uint64_t>(trial));
    const std::size_t n = 1 + trial % 6;
    const auto f = cli::random_factors(ctx, cli::random_alternating_labels(n, 3, rng), rng, Centering::none);
    const Jet a = free_oracle(ctx, f);
    EXPECT_EQ(a, nc_oracle(ctx, f)) << "n=" << n;
    EXPECT_EQ(a, moment_jet(ctx, f)) << "n=" << n;
  }
}

TEST(FreeOracle, MemoizationIsTransparent) {
  const auto ctx = context(Mode::free, 2, 3);
  Rng rng(3);
  const auto f = cli::random_factors(ctx, {"A", "B", "A", "C", "B", "A"}, rng, Centering::none);
  RecursionTrace with, without;
  const Jet a = free_oracle(ctx, f, {true, &with});
  const Jet b = free_oracle(ctx, f, {false, &without});
  EXPECT_EQ(a, b);
  EXPECT_GT(with.cache_hits, 0u);
  EXPECT_EQ(without.cache_hits, 0u);
  EXPECT_LT(with.calls, without.calls);
  EXPECT_GE(with.max_depth, 1u);
}

TEST(FreeOracle, TrivialInputs) {
  const auto ctx = context(Mode::free, 1, 1);
  const auto x = Element::generator("A", "x");
  EXPECT_TRUE(free_oracle(ctx, {x, Element::scalar("B", 0), x}).is_zero());
  EXPECT_EQ(free_oracle(ctx, {Element::scalar("A", 5)}), Jet::constant(5, 1));
  EXPECT_EQ(free_oracle(ctx, {x}), evaluate(ctx.phi("A"), x));
  EXPECT_EQ(nc_oracle(ctx, {Element::unit("A"), Element::unit("B")}), Jet::unit(1));
}

// Centered alternating products vanish at t = 0.
TEST(FreeOracle, CenteredAlternatingVanish) {
  Rng rng(4);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto ctx = context(Mode::free, 1, n);
    const auto f = cli::random_factors(ctx, cli::random_alternating_labels(n, 3, rng), rng, Centering::mode);
    EXPECT_EQ(free_oracle(ctx, f).value(), 0);
  }
}

TEST(CfreeOracle, SidesAndModes) {
  Rng rng(5);
  const auto ctx = context(Mode::cfree, 2, 5);
  const auto free_ctx = context(Mode::free, 2, 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto f = cli::random_factors(ctx, cli::random_alternating_labels(n, 3, rng), rng, Centering::none);
    const auto [phi_side, psi_side] = cfree_oracle(ctx, f);
    EXPECT_EQ(phi_side, moment_jet(ctx, f));
    EXPECT_EQ(psi_side, nc_oracle(ctx.psi_view(), f));
    // a c-free context read by the free oracle is the free product of its phi families
    EXPECT_EQ(free_oracle(ctx, f), nc_oracle(ctx.phi_view(), f));
    EXPECT_EQ(free_oracle(ctx, f), free_oracle(free_ctx, f));
  }
  EXPECT_THROW(cfree_oracle(free_ctx, {Element::generator("A", "x")}), Error);
}

// Pattern-centered c-free products vanish at t = 0 on the phi side.
TEST(CfreeOracle, PatternCenteredVanish) {
  Rng rng(6);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto ctx = context(Mode::cfree, 1, 60 + n);
    const auto f = cli::random_factors(ctx, cli::random_alternating_labels(n, 3, rng), rng, Centering::mode);
    EXPECT_EQ(cfree_oracle(ctx, f).first.value(), 0);
  }
}

TEST(BooleanOracle, KeepsUnits) {
  const auto ctx = context(Mode::free, 1, 2);
  const auto x = Element::generator("B", "x");
  const auto u = Element::unit("A");
  EXPECT_EQ(boolean_oracle(ctx, {u, x, u}), evaluate(ctx.phi("B"), x));
  Rng rng(2);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto f = cli::random_factors(ctx, cli::random_alternating_labels(n, 3, rng), rng, Centering::none);
    EXPECT_EQ(boolean_oracle(ctx, f), boolean_moment(ctx, f));
  }
}
