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

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::invalid_argument;
}

SpecContext context(Mode mode, int order, std::uint64_t seed, bool degenerate = false) {
  RandomSpec spec;
  spec.mode = mode;
  spec.order = order;
  spec.seed = seed;
  spec.degenerate_psi = degenerate;
  return cli::random_context(spec);
}

std::vector<Element> quadratics(const std::vector<Label>& labels, Rng& rng) {
  std::vector<Element> out;
  for (const auto& l : labels) out.push_back(draw_quadratic(l, rng));
  return out;
}

}  // namespace

TEST(Normalize, MergesNeighboursKeepsUnits) {
  const auto x = Element::generator("A", "x");
  const auto y = Element::generator("B", "x");
  const auto u = Element::unit("A");
  const auto f = normalize_alternating(std::vector<Element>{x, x, y, u, x});
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], x * x);
  EXPECT_EQ(f[2], u * x);
  const auto g = normalize_alternating(std::vector<Element>{u, y, u});
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(code_of([] { normalize_alternating(std::vector<Element>{}); }), Errc::invalid_argument);
}

// Semicircular families: the Motzkin-word sum reproduces the pairing count,
// for arbitrary quadratic polynomials and deformed variances.
TEST(ProductMoment, FreeSemicircularFamilies) {
  Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const auto model = draw_model(rng, 3, 2, false);
    const auto ctx = pairing_context(model, Mode::free);
    const std::size_t n = 1 + trial % 5;
    const auto f = quadratics(draw_alternating(n, 3, rng), rng);
    const Jet want = pairing_oracle(model, f);
    EXPECT_EQ(moment_jet(ctx, f), want) << "n=" << n;
    EXPECT_EQ(free_oracle(ctx, f), want) << "n=" << n;
    EXPECT_EQ(nc_oracle(ctx, f), want) << "n=" << n;
  }
}

// c-free analogue: outer pairs carry phi-variances, nested pairs psi-variances.
TEST(ProductMoment, CfreeSemicircularFamilies) {
  Rng rng(202);
  for (int trial = 0; trial < 30; ++trial) {
    const auto model = draw_model(rng, 3, 2, true);
    const auto ctx = pairing_context(model, Mode::cfree);
    PairingModel psi_model = model;
    psi_model.outer = model.inner;
    const std::size_t n = 1 + trial % 5;
    const auto f = quadratics(draw_alternating(n, 3, rng), rng);
    const auto pm = product_moment(ctx, f);
    EXPECT_EQ(pm.phi, pairing_oracle(model, f)) << "n=" << n;
    ASSERT_TRUE(pm.psi.has_value());
    EXPECT_EQ(*pm.psi, pairing_oracle(psi_model, f)) << "n=" << n;
    const auto [op, os] = cfree_oracle(ctx, f);
    EXPECT_EQ(op, pm.phi);
    EXPECT_EQ(os, *pm.psi);
  }
}

// With psi the point mass at 0 the c-free product of elements without
// constant term is their Boolean product (units are identified only in the
// c-free product, so constants would add nested singleton terms).
TEST(ProductMoment, CfreeWithDeltaPsiIsBoolean) {
  Rng rng(303);
  for (int trial = 0; trial < 40; ++trial) {
    const auto base = context(Mode::free, 2, 300 + static_cast<std::uint64_t>(trial));
    SpecContext ctx(Mode::cfree, 2);
    for (const auto& [label, alg] : base.algebras()) {
      FunctionalTable delta(label, FunctionalKind::psi, 2,
                            [](const Word& w) { return std::optional<Jet>(Jet::constant(w.empty() ? 1 : 0, 2)); });
      ctx.add_algebra(label, alg.generators, alg.phi, delta);
    }
    const std::size_t n = 1 + trial % 6;
    auto f = cli::random_factors(ctx, cli::random_alternating_labels(n, 3, rng), rng, Centering::none);
    for (auto& a : f) a -= Element::scalar(a.label(), a.constant_term());
    EXPECT_EQ(moment_jet(ctx, f), boolean_moment(ctx, f)) << "n=" << n;
    EXPECT_EQ(boolean_oracle(ctx, f), boolean_moment(ctx, f)) << "n=" << n;
  }
}

TEST(WordTerms, LexicographicAndSumToMoment) {
  const auto ctx = context(Mode::free, 2, 7);
  Rng rng(7);
  const auto f = cli::random_factors(ctx, {"A", "B", "A", "C", "A"}, rng, Centering::none);
  const auto terms = word_terms(ctx, f);
  ASSERT_EQ(terms.size(), 9u);
  Jet sum(2);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k) EXPECT_LT(terms[k - 1].word.letters(), terms[k].word.letters());
    sum += terms[k].value;
  }
  EXPECT_EQ(sum, moment_jet(ctx, f));
}

TEST(HigherMoment, PruningIsExact) {
  const auto ctx = context(Mode::free, 3, 8);
  Rng rng(8);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto f = cli::random_factors(ctx, cli::random_alternating_labels(n, 3, rng), rng, Centering::mode);
    const Jet j = moment_jet(ctx, f);
    for (int m = 0; m <= 3; ++m) {
      EXPECT_EQ(higher_moment(ctx, f, m), j.derivative(m)) << n;
      EXPECT_EQ(higher_moment(ctx, f, m, false), j.derivative(m)) << n;
    }
  }
  EXPECT_EQ(code_of([&] { higher_moment(ctx, {Element::generator("A", "x")}, 4); }), Errc::order_exceeded);
}

// Leibniz rule, characteristic pairing formula and the Motzkin-word sum agree.
TEST(Infinitesimal, ThreeDefinitionsAgree) {
  Rng rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ctx = context(Mode::free, 1, 500 + static_cast<std::uint64_t>(trial));
    const std::size_t n = 1 + trial % 7;
    const auto labels = trial % 2 ? cli::palindromic_labels(n | 1, 3, rng) : cli::random_alternating_labels(n, 3, rng);
    const auto f = cli::random_factors(ctx, labels, rng, Centering::mode);
    const Rational m = infinitesimal_moment(ctx, f);
    EXPECT_EQ(leibniz_free(ctx, f), m);
    EXPECT_EQ(characteristic_free(ctx, f), m);
    EXPECT_EQ(free_oracle(ctx, f).derivative(1), m);
    if (f.size() % 2 == 0) EXPECT_EQ(m, 0);
  }
}

TEST(Infinitesimal, SemicircleCheck) {
  // x y x with semicircles, phi'(x^2) = 1 and phi'(y) = 2: phi'(x y x) = phi(x^2) phi'(y) = 2
  SpecContext ctx(Mode::free, 1);
  FunctionalTable::DerivativeStreams dx(1), dy(1);
  dx[0][{"x", "x"}] = 1;
  dy[0][{"x"}] = 2;
  ctx.add_algebra("A", {"x"}, FunctionalTable::from_law("A", FunctionalKind::phi, 1, builtin_law("semicircle"), dx));
  ctx.add_algebra("B", {"x"}, FunctionalTable::from_law("B", FunctionalKind::phi, 1, builtin_law("semicircle"), dy));
  const auto x = Element::generator("A", "x"), y = Element::generator("B", "x");
  EXPECT_EQ(infinitesimal_moment(ctx, {x, y, x}), 2);
  EXPECT_EQ(infinitesimal_moment(ctx, {x, y, y, x}), 1);  // phi'(x^2) phi(y^2) + phi(x^2) phi'(y^2), phi'(y^2) = 0
}

TEST(Infinitesimal, ModeAndCenteringErrors) {
  const auto c = context(Mode::cfree, 1, 1);
  const auto f = context(Mode::free, 1, 1);
  Rng rng(1);
  const auto x = cli::random_factors(f, {"A", "B"}, rng, Centering::none);
  EXPECT_EQ(code_of([&] { leibniz_free(c, x); }), Errc::invalid_argument);
  EXPECT_EQ(code_of([&] { cfree_closed(f, x); }), Errc::invalid_argument);
  if (!satisfies_centering(f, x)) {
    EXPECT_EQ(code_of([&] { leibniz_free(f, x); }), Errc::centering_violation);
    EXPECT_NO_THROW(characteristic_free(f, x, CenteringPolicy::skip));
  }
}

TEST(Cfree, LeibnizClosedAndJetAgree) {
  Rng rng(66);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ctx = context(Mode::cfree, 1, 700 + static_cast<std::uint64_t>(trial));
    const std::size_t n = 1 + trial % 7;
    const auto labels = trial % 3 == 0 ? cli::palindromic_labels(n | 1, 3, rng) : cli::random_alternating_labels(n, 3, rng);
    const auto f = cli::random_factors(ctx, labels, rng, Centering::mode);
    const Rational jet = moment_jet(ctx, f).derivative(1);
    EXPECT_EQ(cfree_leibniz(ctx, f), jet);
    EXPECT_EQ(cfree_closed(ctx, f), jet);
    EXPECT_EQ(cfree_oracle(ctx, f).first.derivative(1), jet);
  }
}

// psi = phi collapses the c-free product to the free one.
TEST(Cfree, DegenerateCollapsesToFree) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto seed = 900 + static_cast<std::uint64_t>(trial);
    const auto c = context(Mode::cfree, 2, seed, true);
    const auto f = context(Mode::free, 2, seed);
    const std::size_t n = 1 + trial % 6;
    const auto labels = cli::random_alternating_labels(n, 3, rng);
    const auto any = cli::random_factors(f, labels, rng, Centering::none);
    EXPECT_EQ(moment_jet(c, any), moment_jet(f, any));
    EXPECT_EQ(*product_moment(c, any).psi, moment_jet(f, any));
    const auto centered = cli::random_factors(f, labels, rng, Centering::mode);
    EXPECT_EQ(cfree_closed(c, centered), leibniz_free(f, centered));
    EXPECT_EQ(cfree_leibniz(c, centered), characteristic_free(f, centered));
  }
}

TEST(Boolean, LeibnizAndSingleSlot) {
  Rng rng(88);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ctx = context(Mode::free, 1, 1000 + static_cast<std::uint64_t>(trial));
    const std::size_t n = 1 + trial % 7;
    const auto labels = cli::random_alternating_labels(n, 3, rng);
    const auto f = cli::random_factors(ctx, labels, rng, Centering::none);
    EXPECT_EQ(boolean_leibniz(ctx, f), boolean_moment(ctx, f).derivative(1));
    // units everywhere except one centered slot
    FactorTuple g;
    const std::size_t slot = static_cast<std::size_t>(trial) % n;
    for (std::size_t k = 0; k < n; ++k)
      g.push_back(k == slot ? center(f[k], ctx.phi(labels[k])) : Element::unit(labels[k]));
    EXPECT_EQ(boolean_single_slot(ctx, g), evaluate(ctx.phi(labels[slot]), g[slot]).derivative(1));
    EXPECT_EQ(boolean_moment(ctx, g).derivative(1), boolean_single_slot(ctx, g));
  }
  const auto ctx = context(Mode::free, 1, 3);
  const FactorTuple bad{Element::generator("A", "x") + Element::unit("A"), Element::unit("B")};
  if (evaluate(ctx.phi("A"), bad[0]).value() != 0)
    EXPECT_EQ(code_of([&] { boolean_single_slot(ctx, bad); }), Errc::centering_violation);
}
