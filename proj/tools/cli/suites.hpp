#pragma once

// Verification suites behind `motzfree verify`. Each suite checks one family
// of identities exactly and stops recording at the first counterexample.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/instances.hpp"
#include "motzfree/motzfree.hpp"

namespace motzfree::cli {

using nlohmann::json;

struct SuiteOptions {
  std::optional<std::size_t> n_max;
  std::optional<std::size_t> cases;
  std::uint64_t seed = 1;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t n_max = 0;
  std::size_t cases = 0;
  json counterexample;  // null when passed
  double seconds = 0;
};

inline json to_json(const Rational& q) { return to_string(q); }

inline json to_json(const Jet& j) {
  json a = json::array();
  for (const auto& c : j.coeffs()) a.push_back(to_string(c));
  return a;
}

inline json to_json(const FactorTuple& f) {
  json a = json::array();
  for (const auto& e : f) a.push_back({{"label", e.label()}, {"element", e.to_string()}});
  return a;
}

inline json to_json(const std::vector<std::size_t>& positions) {
  json a = json::array();
  for (auto p : positions) a.push_back(p + 1);
  return a;
}

class Checker {
 public:
  explicit Checker(SuiteResult& r) : r_(r) {}

  /// Records one check; `detail` is only built for the first failure.
  bool expect(bool ok, const std::string& what, const std::function<json()>& detail = {}) {
    ++r_.checks;
    if (!ok && r_.passed) {
      r_.passed = false;
      r_.counterexample = {{"check", what}};
      if (detail) r_.counterexample["detail"] = detail();
    }
    return ok;
  }

  template <class T>
  bool equal(const T& got, const T& want, const std::string& what, const std::function<json()>& context = {}) {
    return expect(got == want, what, [&] {
      json d = context ? context() : json::object();
      d["got"] = to_json(got);
      d["expected"] = to_json(want);
      return d;
    });
  }

  bool ok() const { return r_.passed; }

 private:
  SuiteResult& r_;
};

namespace detail {

inline Rng case_rng(const std::string& suite, std::uint64_t seed, std::size_t c) {
  return Rng(fnv1a(suite + "#" + std::to_string(seed) + "#" + std::to_string(c)));
}

inline std::uint64_t case_seed(const std::string& suite, std::uint64_t seed, std::size_t c) {
  return fnv1a(suite + "/" + std::to_string(seed) + "/" + std::to_string(c));
}

inline Rational val(const SpecContext& ctx, FunctionalKind k, const Element& a) {
  return evaluate(ctx.table(a.label(), k), a).value();
}

inline Rational der(const SpecContext& ctx, FunctionalKind k, const Element& a, int m = 1) {
  return evaluate(ctx.table(a.label(), k), a).derivative(m);
}

inline Rational phi(const SpecContext& ctx, const Element& a) { return val(ctx, FunctionalKind::phi, a); }
inline Rational psi(const SpecContext& ctx, const Element& a) { return val(ctx, FunctionalKind::psi, a); }
inline Rational dphi(const SpecContext& ctx, const Element& a) { return der(ctx, FunctionalKind::phi, a); }
inline Rational dpsi(const SpecContext& ctx, const Element& a) { return der(ctx, FunctionalKind::psi, a); }

inline Rational delta(const Element& a, const Element& b) { return a.label() == b.label() ? 1 : 0; }

/// phi_{label}(a b) when a and b share a label; the explicit formulas only use
/// such products behind a Kronecker delta, so anything else is zero.
inline Rational pair(const SpecContext& ctx, FunctionalKind k, const Element& a, const Element& b) {
  return a.label() == b.label() ? val(ctx, k, a * b) : Rational(0);
}

inline bool is_return_block(const MotzkinWord& w, const std::vector<std::size_t>& pos, int level) {
  for (auto p : pos)
    if (w[p] != level) return false;
  for (std::size_t s = 1; s < pos.size(); ++s) {
    if (pos[s] - pos[s - 1] <= 1) return false;
    for (auto r = pos[s - 1] + 1; r < pos[s]; ++r)
      if (w[r] <= level) return false;
  }
  return true;
}

/// First violated invariant of pi(w), if any.
inline std::optional<std::string> partition_defect(const MotzkinWord& w, const LevelReturnPartition& pi) {
  std::vector<int> seen(w.size(), 0);
  SetPartition sp;
  for (const auto& b : pi.blocks) {
    if (!is_return_block(w, b.positions, b.level)) return "block violates level, gap or return condition";
    for (auto p : b.positions) ++seen[p];
    sp.push_back(b.positions);
  }
  for (auto s : seen)
    if (s != 1) return "blocks do not partition the positions";
  if (!is_noncrossing(sp)) return "partition is crossing";
  for (std::size_t a = 0; a < pi.blocks.size(); ++a)
    for (std::size_t b = a + 1; b < pi.blocks.size(); ++b) {
      if (pi.blocks[a].level != pi.blocks[b].level) continue;
      auto merged = pi.blocks[a].positions;
      merged.insert(merged.end(), pi.blocks[b].positions.begin(), pi.blocks[b].positions.end());
      std::sort(merged.begin(), merged.end());
      if (is_return_block(w, merged, pi.blocks[a].level)) return "two blocks could be merged";
    }
  std::vector<std::size_t> singles;
  for (const auto& b : pi.blocks)
    if (b.singleton()) singles.push_back(b.positions.front());
  std::sort(singles.begin(), singles.end());
  if (singles != local_maxima(w)) return "singletons differ from local maxima";
  return std::nullopt;
}

inline std::vector<std::vector<std::size_t>> one_based(const LevelReturnPartition& pi) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& b : pi.blocks) {
    out.emplace_back();
    for (auto p : b.positions) out.back().push_back(p + 1);
  }
  return out;
}

/// Motzkin numbers M_0..M_k by M_k = M_{k-1} + sum_{i=0}^{k-2} M_i M_{k-2-i}.
inline std::vector<std::uint64_t> motzkin_numbers(std::size_t k) {
  std::vector<std::uint64_t> m{1};
  for (std::size_t j = 1; j <= k; ++j) {
    std::uint64_t v = m[j - 1];
    for (std::size_t i = 0; i + 2 <= j; ++i) v += m[i] * m[j - 2 - i];
    m.push_back(v);
  }
  return m;
}

inline std::uint64_t binom2(std::uint64_t m) { return m * (m - (m > 0 ? 1 : 0)) / 2; }

/// An element of `label` that is centered under both phi and psi, built as
/// x + alpha y + beta; falls back to a phi-centered element when the linear
/// system is singular.
inline Element doubly_centered(const SpecContext& ctx, const Label& label, Rng& rng) {
  const auto& gens = ctx.algebra(label).generators;
  Element x = random_element(label, gens, rng);
  Element y = Element::monomial(label, {gens.back(), gens.front()});
  const Rational px = phi(ctx, x), sx = psi(ctx, x), py = phi(ctx, y), sy = psi(ctx, y);
  if (py == sy) return center(x, ctx.phi(label));
  const Rational alpha = -(px - sx) / (py - sy);
  Element e = x + y * alpha;
  return center(e, ctx.phi(label));
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

inline SuiteResult begin(const std::string& name, const SuiteOptions& o, std::size_t n_max, std::size_t cases) {
  SuiteResult r;
  r.name = name;
  r.n_max = o.n_max.value_or(n_max);
  r.cases = o.cases.value_or(cases);
  r.counterexample = nullptr;
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Worked examples with explicit formulas. Each takes a checker and a seed.

inline void example_partitions(Checker& ck) {
  using detail::one_based;
  using V = std::vector<std::vector<std::size_t>>;
  const std::vector<std::tuple<std::string, V, std::vector<std::size_t>>> fixtures{
      {"123332112121", {{1, 7}, {2, 6}, {3}, {4}, {5}, {8, 10, 12}, {9}, {11}}, {3, 4, 5, 9, 11}},
      {"112323223211", {{1}, {2, 11}, {3, 5, 7}, {4}, {6}, {8, 10}, {9}, {12}}, {1, 4, 6, 9, 12}},
      {"123432334321", {{1, 12}, {2, 6, 11}, {3, 5}, {4}, {7}, {8, 10}, {9}}, {4, 7, 9}},
  };
  for (const auto& [text, blocks, maxima] : fixtures) {
    const auto w = MotzkinWord::parse(text);
    const auto pi = one_based(level_return_partition(w));
    ck.expect(pi == blocks, "partition of " + text, [&] { return json{{"got", pi}, {"expected", blocks}}; });
    std::vector<std::size_t> lm;
    for (auto k : local_maxima(w)) lm.push_back(k + 1);
    ck.expect(lm == maxima, "local maxima of " + text, [&] { return json{{"got", lm}, {"expected", maxima}}; });
  }
}

inline void example_adaptedness(Checker& ck) {
  using L = std::vector<std::string>;
  const auto w1 = MotzkinWord::parse("123332112121");
  // i1=i7, i2=i6, i8=i10=i12; i2 != i4 forced by nested alternation
  const L good{"a", "b", "c", "d", "c", "b", "a", "e", "f", "e", "g", "e"};
  const L bad{"a", "b", "c", "b", "c", "b", "a", "e", "f", "e", "g", "e"};
  ck.expect(is_adapted(w1, good).adapted, "w1 adapted when i2 != i4");
  ck.expect(!is_adapted(w1, bad).adapted, "w1 not adapted when i2 = i4");
  const auto pyr = MotzkinWord::parse("12321");
  ck.expect(is_adapted(pyr, L{"a", "b", "c", "b", "a"}).adapted, "12321 adapted to (a,b,c,b,a)");
  ck.expect(!is_adapted(pyr, L{"a", "b", "c", "b", "d"}).adapted, "12321 not adapted to (a,b,c,b,d)");
  ck.expect(is_adapted(MotzkinWord::parse("11111"), L{"a", "b", "a", "c", "a"}).adapted, "flat word always adapted");
}

inline void example_classification(Checker& ck) {
  auto c = classify_path(MotzkinWord::parse("12321"));
  ck.expect(c.kind == PathKind::pyramid && c.middle == std::size_t{2}, "12321 is a pyramid with apex 3");
  c = classify_path(MotzkinWord::parse("12111"));
  ck.expect(c.kind == PathKind::pyramid_then_flat && c.middle == std::size_t{1} && c.split == std::size_t{3},
            "12111 is pyramid then flat, apex 2, tail from 4");
  ck.expect(classify_path(MotzkinWord::parse("123321")).kind == PathKind::other, "123321 is other");
  c = classify_path(MotzkinWord::parse("1"));
  ck.expect(c.kind == PathKind::flat && c.pyramid_compatible, "1 is flat and pyramid-compatible");
}

inline void example_counting(Checker& ck) {
  const std::vector<std::uint64_t> seq{0, 1, 0, 3, 1, 6, 3, 10, 6, 15, 10, 21, 15};
  std::vector<std::uint64_t> got;
  for (std::size_t n = 1; n <= 13; ++n) got.push_back(count_by_local_maxima(n, 2));
  ck.expect(got == seq, "two-maxima counts n=1..13", [&] { return json{{"got", got}, {"expected", seq}}; });
  ck.expect(count_by_local_maxima(6, 2) == 6, "six words of length 6 with two maxima");
  ck.expect(count_by_local_maxima(1, 1) == 1, "the word 1 has one maximum");
}

/// Boolean cumulants of low order against their expanded formulas.
inline void example_boolean_cumulants(Checker& ck, std::uint64_t seed) {
  RandomSpec spec;
  spec.seed = seed;
  spec.algebras = 1;
  const auto ctx = random_context(spec);
  Rng rng(seed);
  const auto& t = ctx.phi("A");
  std::vector<Element> a;
  for (int k = 0; k < 3; ++k) a.push_back(random_element("A", spec.generators, rng));
  auto ph = [&](const Element& e) { return evaluate(t, e); };
  ck.equal(boolean_cumulant(t, std::vector<Element>{a[0]}), ph(a[0]), "beta_1 = phi");
  ck.equal(boolean_cumulant(t, std::vector<Element>{a[0], a[1]}), ph(a[0] * a[1]) - ph(a[0]) * ph(a[1]),
           "beta_2 expansion");
  const Jet b3 = ph(a[0] * a[1] * a[2]) - ph(a[0] * a[1]) * ph(a[2]) - ph(a[0]) * ph(a[1] * a[2]) +
                 ph(a[0]) * ph(a[1]) * ph(a[2]);
  ck.equal(boolean_cumulant(t, a), b3, "beta_3 expansion");
}

/// Motzkin functionals of 111, 121 and 12121 as jets.
inline void example_motzkin_functionals(Checker& ck, std::uint64_t seed) {
  RandomSpec spec;
  spec.seed = seed;
  const auto ctx = random_context(spec);
  Rng rng(seed + 1);
  auto make = [&](std::vector<Label> labels) { return random_factors(ctx, labels, rng, Centering::none); };
  auto ph = [&](const Element& e) { return evaluate(ctx.phi(e.label()), e); };
  auto f = make({"A", "B", "C"});
  ck.equal(motzkin_functional(ctx, MotzkinWord::parse("111"), f), ph(f[0]) * ph(f[1]) * ph(f[2]), "Phi_111");
  f = make({"A", "B", "A"});
  const Jet b2 = ph(f[0] * f[2]) - ph(f[0]) * ph(f[2]);
  ck.equal(motzkin_functional(ctx, MotzkinWord::parse("121"), f), b2 * ph(f[1]), "Phi_121");
  f = make({"A", "B", "A", "B", "A"});
  const Jet b3 = ph(f[0] * f[2] * f[4]) - ph(f[0] * f[2]) * ph(f[4]) - ph(f[0]) * ph(f[2] * f[4]) +
                 ph(f[0]) * ph(f[2]) * ph(f[4]);
  ck.equal(motzkin_functional(ctx, MotzkinWord::parse("12121"), f), b3 * ph(f[1]) * ph(f[3]), "Phi_12121");
  f = make({"A", "B", "C"});
  ck.expect(motzkin_functional(ctx, MotzkinWord::parse("121"), f).is_zero(), "Phi_121 vanishes off adaptedness");
}

/// Free products of semicircular elements and a first infinitesimal moment.
inline void example_products(Checker& ck) {
  SpecContext ctx(Mode::free, 1);
  const auto law = builtin_law("semicircle");
  ctx.add_algebra("A", {"x"}, FunctionalTable::from_law("A", FunctionalKind::phi, 1, law, {{{{"x"}, 1}}}));
  ctx.add_algebra("B", {"x"}, FunctionalTable::from_law("B", FunctionalKind::phi, 1, law, {{{{"x"}, 2}}}));
  const auto s1 = Element::generator("A", "x"), s2 = Element::generator("B", "x");
  const std::vector<Element> f1{s1, s2, s2, s1}, f2{s1, s2, s1, s2}, f3{s1, s2, s1};
  ck.equal(moment_jet(ctx, f1).value(), Rational(1), "phi(s1 s2 s2 s1) = 1");
  ck.equal(free_oracle(ctx, f1).value(), Rational(1), "oracle phi(s1 s2 s2 s1) = 1");
  ck.equal(nc_oracle(ctx, f1).value(), Rational(1), "nc oracle phi(s1 s2 s2 s1) = 1");
  ck.equal(moment_jet(ctx, f2).value(), Rational(0), "phi(s1 s2 s1 s2) = 0");
  ck.equal(nc_oracle(ctx, f2).value(), Rational(0), "nc oracle phi(s1 s2 s1 s2) = 0");
  ck.equal(infinitesimal_moment(ctx, f3), Rational(2), "phi'(x y x) = 2");
  ck.equal(free_oracle(ctx, f3).derivative(1), Rational(2), "oracle phi'(x y x) = 2");
}

/// The n = 5 pyramid: Phi'_12321 and phi'(a1..a5) on centered factors.
inline void example_pyramid_n5(Checker& ck, std::uint64_t seed) {
  using namespace detail;
  RandomSpec spec;
  spec.seed = seed;
  const auto ctx = random_context(spec);
  Rng rng(seed + 2);
  for (const std::vector<Label> labels : {std::vector<Label>{"A", "B", "C", "B", "A"}, {"A", "B", "C", "A", "B"}}) {
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    const Rational want = delta(f[0], f[4]) * delta(f[1], f[3]) * pair(ctx, FunctionalKind::phi, f[0], f[4]) *
                          pair(ctx, FunctionalKind::phi, f[1], f[3]) * dphi(ctx, f[2]);
    const auto w = MotzkinWord::parse("12321");
    auto context = [&] { return json{{"factors", to_json(f)}}; };
    ck.equal(motzkin_derivative_leibniz(ctx, w, f), want, "Phi'_12321", context);
    ck.equal(motzkin_derivative_closed(ctx, w, f), want, "closed Phi'_12321", context);
    ck.equal(infinitesimal_moment(ctx, f), want, "phi'(a1..a5)", context);
    ck.equal(free_oracle(ctx, f).derivative(1), want, "oracle phi'(a1..a5)", context);
  }
}

/// The six words of length 6 with two local maxima and their second derivatives.
inline void example_second_order(Checker& ck, std::uint64_t seed) {
  using namespace detail;
  RandomSpec spec;
  spec.seed = seed;
  spec.order = 2;
  const auto ctx = random_context(spec);
  Rng rng(seed + 3);
  const auto P = FunctionalKind::phi;
  // (word, pairs, singletons), 1-based as printed
  struct Case {
    std::string word;
    std::array<std::size_t, 4> pairs;
    std::array<std::size_t, 2> singles;
  };
  const std::vector<Case> cases{
      {"123321", {1, 6, 2, 5}, {3, 4}}, {"112321", {2, 6, 3, 5}, {1, 4}}, {"123211", {1, 5, 2, 4}, {3, 6}},
      {"122321", {1, 6, 3, 5}, {2, 4}}, {"123221", {1, 6, 2, 4}, {3, 5}}, {"121121", {1, 3, 4, 6}, {2, 5}},
  };
  auto term = [&](const FactorTuple& f, const Case& c) -> Rational {
    auto a = [&](std::size_t k) -> const Element& { return f[k - 1]; };
    return 2 * pair(ctx, P, a(c.pairs[0]), a(c.pairs[1])) * pair(ctx, P, a(c.pairs[2]), a(c.pairs[3])) *
           dphi(ctx, a(c.singles[0])) * dphi(ctx, a(c.singles[1]));
  };
  for (const auto& c : cases) {
    const auto w = MotzkinWord::parse(c.word);
    const auto labels = adapted_labels(w, 3, rng);
    if (!ck.expect(labels.has_value(), "adapted labels for " + c.word)) return;
    const auto f = random_factors(ctx, *labels, rng, Centering::mode);
    auto context = [&] { return json{{"word", c.word}, {"factors", to_json(f)}}; };
    ck.equal(motzkin_higher(ctx, w, f, 2), term(f, c), "Phi''_" + c.word, context);
    ck.equal(motzkin_functional(ctx, w, f).derivative(2), term(f, c), "jet Phi''_" + c.word, context);
  }
  // the product-level sum with Kronecker deltas
  for (int rep = 0; rep < 4; ++rep) {
    const auto labels = rep % 2 ? random_alternating_labels(6, 3, rng)
                                : *adapted_labels(MotzkinWord::parse(cases[static_cast<std::size_t>(rep)].word), 3, rng);
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    Rational want = 0;
    for (const auto& c : cases)
      if (is_adapted(MotzkinWord::parse(c.word), labels_of(f)).adapted) want += term(f, c);
    auto context = [&] { return json{{"factors", to_json(f)}}; };
    ck.equal(higher_moment(ctx, f, 2), want, "phi''(a1..a6) as six terms", context);
    ck.equal(free_oracle(ctx, f).derivative(2), want, "oracle phi''(a1..a6)", context);
  }
}

/// c-free first derivatives of the three contributing words of length 5.
inline void example_cfree_words(Checker& ck, std::uint64_t seed) {
  using namespace detail;
  RandomSpec spec;
  spec.seed = seed;
  spec.mode = Mode::cfree;
  const auto ctx = random_context(spec);
  Rng rng(seed + 4);
  const auto P = FunctionalKind::phi, S = FunctionalKind::psi;
  const std::vector<std::vector<Label>> label_sets{
      {"A", "B", "A", "B", "A"}, {"A", "B", "C", "B", "A"}, {"A", "B", "A", "C", "B"}, {"A", "B", "C", "A", "B"}};
  for (const auto& labels : label_sets) {
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    auto a = [&](std::size_t k) -> const Element& { return f[k - 1]; };
    auto context = [&] { return json{{"factors", to_json(f)}}; };
    const Rational flat = dphi(ctx, a(1)) * phi(ctx, a(2)) * phi(ctx, a(3)) * phi(ctx, a(4)) * phi(ctx, a(5));
    const Rational pf = dpsi(ctx, a(2)) * pair(ctx, P, a(1), a(3)) * phi(ctx, a(4)) * phi(ctx, a(5));
    const Rational pyr = dpsi(ctx, a(3)) * pair(ctx, P, a(1), a(5)) * pair(ctx, S, a(2), a(4));
    const auto w_flat = MotzkinWord::parse("11111"), w_pf = MotzkinWord::parse("12111"),
               w_pyr = MotzkinWord::parse("12321");
    ck.equal(motzkin_derivative_leibniz(ctx, w_flat, f), flat, "Phi'_11111", context);
    ck.equal(motzkin_derivative_closed(ctx, w_flat, f), flat, "closed Phi'_11111", context);
    const bool pf_adapted = labels[0] == labels[2];
    const bool pyr_adapted = labels[0] == labels[4] && labels[1] == labels[3];
    ck.equal(motzkin_derivative_leibniz(ctx, w_pf, f), pf_adapted ? pf : Rational(0), "Phi'_12111", context);
    ck.equal(motzkin_derivative_closed(ctx, w_pf, f), pf_adapted ? pf : Rational(0), "closed Phi'_12111", context);
    ck.equal(motzkin_derivative_leibniz(ctx, w_pyr, f), pyr_adapted ? pyr : Rational(0), "Phi'_12321", context);
    ck.equal(motzkin_derivative_closed(ctx, w_pyr, f), pyr_adapted ? pyr : Rational(0), "closed Phi'_12321",
             context);
    const Rational total = flat + delta(a(1), a(3)) * pf + delta(a(1), a(5)) * delta(a(2), a(4)) * pyr;
    ck.equal(cfree_oracle(ctx, f).first.derivative(1), total, "oracle phi'(a1..a5)", context);
    ck.equal(moment_jet(ctx, f).derivative(1), total, "phi'(a1..a5) from Motzkin sum", context);
  }
  // psi side, with every factor psi-centered and a1 also phi-centered
  for (const auto& labels : label_sets) {
    Rng r2(seed + 5);
    FactorTuple f;
    f.push_back(doubly_centered(ctx, labels[0], r2));
    for (std::size_t k = 1; k < labels.size(); ++k)
      f.push_back(center(random_element(labels[k], spec.generators, r2), ctx.psi(labels[k])));
    if (psi(ctx, f[0]) != 0) continue;
    const Rational want = delta(f[0], f[4]) * delta(f[1], f[3]) * pair(ctx, S, f[0], f[4]) *
                          pair(ctx, S, f[1], f[3]) * dpsi(ctx, f[2]);
    ck.equal(cfree_oracle(ctx, f).second.derivative(1), want, "oracle psi'(a1..a5)",
             [&] { return json{{"factors", to_json(f)}}; });
    ck.equal(product_moment(ctx, f).psi->derivative(1), want, "psi'(a1..a5) from Motzkin sum",
             [&] { return json{{"factors", to_json(f)}}; });
  }
}

/// c-free first moments for n = 3, 4, 5 against their expanded forms.
inline void example_cfree_moments(Checker& ck, std::uint64_t seed) {
  using namespace detail;
  RandomSpec spec;
  spec.seed = seed;
  spec.mode = Mode::cfree;
  const auto ctx = random_context(spec);
  Rng rng(seed + 6);
  const auto P = FunctionalKind::phi, S = FunctionalKind::psi;
  const std::vector<std::vector<Label>> label_sets{{"A", "B", "A"},           {"A", "B", "C"},
                                                   {"A", "B", "A", "B"},      {"A", "B", "C", "A"},
                                                   {"A", "B", "C", "B", "A"}, {"A", "B", "A", "B", "A"},
                                                   {"A", "C", "B", "C", "B"}};
  for (const auto& labels : label_sets) {
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    auto a = [&](std::size_t k) -> const Element& { return f[k - 1]; };
    Rational want = dphi(ctx, a(1));
    for (std::size_t k = 2; k <= f.size(); ++k) want *= phi(ctx, a(k));
    if (f.size() >= 3) {
      Rational t = delta(a(1), a(3)) * pair(ctx, P, a(1), a(3)) * dpsi(ctx, a(2));
      for (std::size_t k = 4; k <= f.size(); ++k) t *= phi(ctx, a(k));
      want += t;
    }
    if (f.size() == 5)
      want += delta(a(1), a(5)) * delta(a(2), a(4)) * pair(ctx, P, a(1), a(5)) * pair(ctx, S, a(2), a(4)) *
              dpsi(ctx, a(3));
    auto context = [&] { return json{{"factors", to_json(f)}}; };
    ck.equal(cfree_leibniz(ctx, f), want, "c-free Leibniz n=" + std::to_string(f.size()), context);
    ck.equal(cfree_closed(ctx, f), want, "c-free closed n=" + std::to_string(f.size()), context);
    ck.equal(cfree_oracle(ctx, f).first.derivative(1), want, "c-free oracle n=" + std::to_string(f.size()), context);
  }
}

/// Boolean products: the flat word and the single-slot rule.
inline void example_boolean(Checker& ck, std::uint64_t seed) {
  RandomSpec spec;
  spec.seed = seed;
  const auto ctx = random_context(spec);
  Rng rng(seed + 7);
  const auto x = center(random_element("B", spec.generators, rng), ctx.phi("B"));
  const auto u = Element::unit("A");
  const FactorTuple one{u, x, u};
  ck.equal(boolean_single_slot(ctx, one), detail::dphi(ctx, x), "(1, a, 1) gives phi'(a)");
  ck.equal(boolean_moment(ctx, one).derivative(1), detail::dphi(ctx, x), "Boolean moment of (1, a, 1)");
  const auto y = center(random_element("A", spec.generators, rng), ctx.phi("A"));
  const FactorTuple two{y, Element::unit("B"), y};
  ck.equal(boolean_single_slot(ctx, two), Rational(0), "(a, 1, b) gives 0");
  ck.equal(boolean_moment(ctx, two).derivative(1), Rational(0), "Boolean moment of (a, 1, b)");
}

// ---------------------------------------------------------------------------
// Suites

inline SuiteResult suite_partitions(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("partitions", o, 10, 200);
  Checker ck(r);
  example_partitions(ck);
  for (std::size_t n = 1; n <= r.n_max && ck.ok(); ++n) {
    for (const auto& w : enumerate_words(n)) {
      const auto pi = level_return_partition(w);
      const auto defect = detail::partition_defect(w, pi);
      ck.expect(!defect, "partition invariants", [&] {
        return json{{"word", w.to_string()}, {"defect", *defect}, {"partition", detail::one_based(pi)}};
      });
      const auto cls = classify_path(w);
      const auto lm = local_maxima(w).size();
      ck.expect((cls.kind == PathKind::pyramid || cls.pyramid_compatible) == (lm == 1 && n % 2 == 1),
                "pyramid iff one local maximum and odd length", [&] { return json{{"word", w.to_string()}}; });
      if (cls.kind == PathKind::flat && n >= 2)
        ck.expect(lm == n, "flat word has n local maxima", [&] { return json{{"word", w.to_string()}}; });
    }
  }
  // relabelling by a bijection preserves adaptedness
  const auto rng_base = detail::case_seed("partitions", o.seed, 0);
  Rng rng(rng_base);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(r.n_max)));
    const auto words = enumerate_words(n);
    const auto& w = words[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(words.size()) - 1))];
    auto labels = c % 2 ? random_alternating_labels(n, 3, rng) : adapted_labels(w, 3, rng).value_or(
                                                                     random_alternating_labels(n, 3, rng));
    std::map<Label, Label> perm{{"A", "C"}, {"B", "A"}, {"C", "B"}};
    std::vector<Label> renamed;
    for (const auto& l : labels) renamed.push_back(perm[l]);
    ck.expect(is_adapted(w, labels).adapted == is_adapted(w, renamed).adapted, "adaptedness under relabelling",
              [&] { return json{{"word", w.to_string()}, {"labels", labels}}; });
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_counting(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("counting", o, 13, 0);
  Checker ck(r);
  example_counting(ck);
  const auto motzkin = detail::motzkin_numbers(r.n_max);
  for (std::size_t n = 1; n <= r.n_max; ++n) {
    const auto words = enumerate_words(n);
    if (n <= 12)
      ck.expect(words.size() == motzkin[n - 1], "Motzkin count n=" + std::to_string(n),
                [&] { return json{{"got", words.size()}, {"expected", motzkin[n - 1]}}; });
    ck.expect(std::is_sorted(words.begin(), words.end(),
                             [](const MotzkinWord& a, const MotzkinWord& b) { return a.letters() < b.letters(); }),
              "lexicographic order n=" + std::to_string(n));
    const std::uint64_t m = n / 2;
    const std::uint64_t closed = n % 2 ? detail::binom2(m) : detail::binom2(m + 1);
    std::uint64_t two = 0;
    for (const auto& w : words) two += local_maxima(w).size() == 2;
    ck.expect(two == closed, "two-maxima closed form n=" + std::to_string(n),
              [&] { return json{{"got", two}, {"expected", closed}}; });
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_oracle_free(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("oracle-free", o, 6, 200);
  Checker ck(r);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    RandomSpec spec;
    spec.seed = detail::case_seed(r.name, o.seed, c);
    spec.order = 2;
    const auto ctx = random_context(spec);
    Rng rng = detail::case_rng(r.name, o.seed, c);
    const std::size_t n = 1 + c % r.n_max;
    const auto f = random_factors(ctx, random_alternating_labels(n, spec.algebras, rng), rng, Centering::none);
    auto context = [&] { return json{{"case", c}, {"factors", to_json(f)}}; };
    const Jet motz = moment_jet(ctx, f);
    ck.equal(motz, free_oracle(ctx, f), "Motzkin sum = centering oracle", context);
    ck.equal(motz, nc_oracle(ctx, f), "Motzkin sum = noncrossing oracle", context);
    if (c % 10 == 0 && n <= 5)
      ck.equal(free_oracle(ctx, f, {false, nullptr}), motz, "oracle without memoization", context);
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_pyramid(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("pyramid", o, 9, 50);
  Checker ck(r);
  example_pyramid_n5(ck, o.seed);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    RandomSpec spec;
    spec.seed = detail::case_seed(r.name, o.seed, c);
    spec.order = 1;
    const auto ctx = random_context(spec);
    Rng rng = detail::case_rng(r.name, o.seed, c);
    const std::size_t n = 1 + c % r.n_max;
    const auto labels = n % 2 && c % 3 != 2 ? palindromic_labels(n, spec.algebras, rng)
                                            : random_alternating_labels(n, spec.algebras, rng);
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    for (const auto& w : enumerate_words(n)) {
      auto context = [&] { return json{{"case", c}, {"word", w.to_string()}, {"factors", to_json(f)}}; };
      const Rational leib = motzkin_derivative_leibniz(ctx, w, f);
      ck.equal(leib, motzkin_functional(ctx, w, f).derivative(1), "Leibniz = jet derivative", context);
      const auto cls = classify_path(w);
      if (cls.kind == PathKind::pyramid || cls.pyramid_compatible)
        ck.equal(motzkin_derivative_closed(ctx, w, f), leib, "pyramid closed form = Leibniz", context);
      else
        ck.equal(leib, Rational(0), "non-pyramid word vanishes", context);
      if (!ck.ok()) break;
    }
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_infinitesimal(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("infinitesimal", o, 7, 70);
  Checker ck(r);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    RandomSpec spec;
    spec.seed = detail::case_seed(r.name, o.seed, c);
    spec.order = 1;
    const auto ctx = random_context(spec);
    Rng rng = detail::case_rng(r.name, o.seed, c);
    const std::size_t n = 1 + c % r.n_max;
    const auto labels = n % 2 && c % 4 != 3 ? palindromic_labels(n, spec.algebras, rng)
                                            : random_alternating_labels(n, spec.algebras, rng);
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    auto context = [&] { return json{{"case", c}, {"factors", to_json(f)}}; };
    const Rational leib = leibniz_free(ctx, f);
    ck.equal(characteristic_free(ctx, f), leib, "characteristic = Leibniz", context);
    ck.equal(infinitesimal_moment(ctx, f), leib, "Motzkin sum = Leibniz", context);
    ck.equal(free_oracle(ctx, f).derivative(1), leib, "oracle derivative = Leibniz", context);
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_higher(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("higher", o, 8, 24);
  Checker ck(r);
  example_second_order(ck, o.seed);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    RandomSpec spec;
    spec.seed = detail::case_seed(r.name, o.seed, c);
    spec.order = 3;
    const auto ctx = random_context(spec);
    Rng rng = detail::case_rng(r.name, o.seed, c);
    const std::size_t n = 1 + c % r.n_max;
    const auto words = enumerate_words(n);
    const auto& target = words[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(words.size()) - 1))];
    const auto labels = c % 2 ? adapted_labels(target, spec.algebras, rng).value_or(
                                    random_alternating_labels(n, spec.algebras, rng))
                              : random_alternating_labels(n, spec.algebras, rng);
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    for (const auto& w : words) {
      const Jet phi_w = motzkin_functional(ctx, w, f);
      const auto lm = local_maxima(w).size();
      for (int m = 2; m <= 3; ++m) {
        auto context = [&] { return json{{"case", c}, {"word", w.to_string()}, {"m", m}, {"factors", to_json(f)}}; };
        const Rational multi = motzkin_higher(ctx, w, f, m);
        ck.equal(multi, phi_w.derivative(m), "multinomial = jet derivative", context);
        if (lm > static_cast<std::size_t>(m)) ck.equal(multi, Rational(0), "more maxima than m vanishes", context);
      }
      if (!ck.ok()) break;
    }
    for (int m = 1; m <= 3 && ck.ok(); ++m) {
      auto context = [&] { return json{{"case", c}, {"m", m}, {"factors", to_json(f)}}; };
      const Rational pruned = higher_moment(ctx, f, m, true);
      ck.equal(pruned, higher_moment(ctx, f, m, false), "pruning by local maxima is sound", context);
      if (n <= 7) ck.equal(pruned, free_oracle(ctx, f).derivative(m), "Motzkin sum = oracle derivative", context);
    }
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_boolean(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("boolean", o, 7, 100);
  Checker ck(r);
  example_boolean(ck, o.seed);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    RandomSpec spec;
    spec.seed = detail::case_seed(r.name, o.seed, c);
    spec.order = 2;
    const auto ctx = random_context(spec);
    Rng rng = detail::case_rng(r.name, o.seed, c);
    const std::size_t n = 1 + c % r.n_max;
    const auto labels = random_alternating_labels(n, spec.algebras, rng);
    const auto f = random_factors(ctx, labels, rng, Centering::none);
    auto context = [&] { return json{{"case", c}, {"factors", to_json(f)}}; };
    const Jet bm = boolean_moment(ctx, f);
    const Jet bo = boolean_oracle(ctx, f);
    ck.equal(bm, bo, "Boolean moment = product oracle", context);
    ck.equal(bm.derivative(1), boolean_leibniz(ctx, f), "derivative = Leibniz sum", context);
    std::vector<int> flat(n, 1);
    ck.equal(motzkin_derivative_leibniz(ctx, MotzkinWord::validate(flat), f), boolean_leibniz(ctx, f),
             "flat Motzkin functional = Leibniz sum", context);
    // each slot centered or a unit
    FactorTuple g;
    for (std::size_t k = 0; k < n; ++k)
      g.push_back(uniform(rng, 0, 2) == 0 ? Element::unit(labels[k]) : center(f[k], ctx.phi(labels[k])));
    ck.equal(boolean_single_slot(ctx, g), boolean_oracle(ctx, g).derivative(1), "single centered slot rule",
             [&] { return json{{"case", c}, {"factors", to_json(g)}}; });
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_cfree_class(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("cfree-class", o, 8, 40);
  Checker ck(r);
  example_cfree_words(ck, o.seed);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    RandomSpec spec;
    spec.seed = detail::case_seed(r.name, o.seed, c);
    spec.mode = Mode::cfree;
    spec.order = 1;
    const auto ctx = random_context(spec);
    Rng rng = detail::case_rng(r.name, o.seed, c);
    const std::size_t n = 1 + c % r.n_max;
    const auto words = enumerate_words(n);
    const auto& target = words[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(words.size()) - 1))];
    const auto labels = c % 2 ? adapted_labels(target, spec.algebras, rng).value_or(
                                    random_alternating_labels(n, spec.algebras, rng))
                              : random_alternating_labels(n, spec.algebras, rng);
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    for (const auto& w : words) {
      auto context = [&] { return json{{"case", c}, {"word", w.to_string()}, {"factors", to_json(f)}}; };
      const Rational leib = motzkin_derivative_leibniz(ctx, w, f);
      ck.equal(leib, motzkin_functional(ctx, w, f).derivative(1), "Leibniz = jet derivative", context);
      if (classify_path(w).kind == PathKind::other)
        ck.equal(leib, Rational(0), "unclassified word vanishes", context);
      else
        ck.equal(motzkin_derivative_closed(ctx, w, f), leib, "closed form = Leibniz", context);
      if (!ck.ok()) break;
    }
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_cfree_leibniz(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("cfree-leibniz", o, 7, 60);
  Checker ck(r);
  example_cfree_moments(ck, o.seed);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    RandomSpec spec;
    spec.seed = detail::case_seed(r.name, o.seed, c);
    spec.mode = Mode::cfree;
    spec.order = 2;
    const auto ctx = random_context(spec);
    Rng rng = detail::case_rng(r.name, o.seed, c);
    const std::size_t n = 1 + c % r.n_max;
    const auto labels = n % 2 && c % 3 == 0 ? palindromic_labels(n, spec.algebras, rng)
                                            : random_alternating_labels(n, spec.algebras, rng);
    const auto f = random_factors(ctx, labels, rng, Centering::mode);
    auto context = [&] { return json{{"case", c}, {"factors", to_json(f)}}; };
    const Rational leib = cfree_leibniz(ctx, f);
    ck.equal(cfree_closed(ctx, f), leib, "closed = Leibniz", context);
    const auto oracle = cfree_oracle(ctx, f);
    ck.equal(oracle.first.derivative(1), leib, "oracle derivative = Leibniz", context);
    Rational by_words = 0;
    for (const auto& w : enumerate_words(n)) by_words += motzkin_derivative_closed(ctx, w, f);
    ck.equal(by_words, leib, "sum of closed word terms = Leibniz", context);

    // moments of arbitrary factors on both sides
    const auto g = random_factors(ctx, labels, rng, Centering::none);
    auto gcontext = [&] { return json{{"case", c}, {"factors", to_json(g)}}; };
    const auto pm = product_moment(ctx, g);
    const auto go = cfree_oracle(ctx, g);
    ck.equal(pm.phi, go.first, "phi side = c-free oracle", gcontext);
    ck.equal(*pm.psi, go.second, "psi side = oracle over psi", gcontext);

    // psi = phi collapses to the free product
    RandomSpec deg = spec;
    deg.degenerate_psi = true;
    const auto dctx = random_context(deg);
    const auto h = random_factors(dctx, labels, rng, Centering::none);
    auto hcontext = [&] { return json{{"case", c}, {"factors", to_json(h)}}; };
    const Jet cf = moment_jet(dctx, h);
    ck.equal(cf, moment_jet(dctx.phi_view(), h), "degenerate c-free = free (Motzkin)", hcontext);
    ck.equal(cfree_oracle(dctx, h).first, free_oracle(dctx, h), "degenerate c-free = free (oracle)", hcontext);
  }
  r.seconds = timer.seconds();
  return r;
}

inline SuiteResult suite_paper_examples(const SuiteOptions& o) {
  detail::Timer timer;
  auto r = detail::begin("paper-examples", o, 0, 6);
  Checker ck(r);
  example_partitions(ck);
  example_adaptedness(ck);
  example_classification(ck);
  example_counting(ck);
  example_products(ck);
  for (std::size_t c = 0; c < r.cases && ck.ok(); ++c) {
    const auto s = detail::case_seed(r.name, o.seed, c);
    example_boolean_cumulants(ck, s);
    example_motzkin_functionals(ck, s);
    example_pyramid_n5(ck, s);
    example_second_order(ck, s);
    example_boolean(ck, s);
    example_cfree_words(ck, s);
    example_cfree_moments(ck, s);
  }
  r.seconds = timer.seconds();
  return r;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

inline const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"partitions", suite_partitions},       {"counting", suite_counting},
      {"oracle-free", suite_oracle_free},     {"pyramid", suite_pyramid},
      {"infinitesimal", suite_infinitesimal}, {"higher", suite_higher},
      {"boolean", suite_boolean},             {"cfree-class", suite_cfree_class},
      {"cfree-leibniz", suite_cfree_leibniz}, {"paper-examples", suite_paper_examples},
  };
  return all;
}

inline std::optional<SuiteFn> find_suite(const std::string& name) {
  for (const auto& [n, fn] : suites())
    if (n == name) return fn;
  return std::nullopt;
}

}  // namespace motzfree::cli
