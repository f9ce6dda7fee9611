#include <gtest/gtest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "motzfree/motzkin.hpp"
#include "support.hpp"

using namespace motzfree;
using namespace testing_support;

namespace {

using Blocks = std::vector<std::vector<std::size_t>>;

Blocks one_based(const LevelReturnPartition& pi) {
  Blocks out;
  for (const auto& b : pi.blocks) {
    std::vector<std::size_t> p;
    for (auto k : b.positions) p.push_back(k + 1);
    out.push_back(p);
  }
  return out;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto k : v) out.push_back(k + 1);
  return out;
}

std::vector<std::uint64_t> motzkin_numbers(std::size_t count) {
  std::vector<std::uint64_t> m{1, 1};
  for (std::size_t k = 2; k < count; ++k) {
    std::uint64_t v = m[k - 1];
    for (std::size_t i = 0; i + 2 <= k; ++i) v += m[i] * m[k - 2 - i];
    m.push_back(v);
  }
  return m;
}

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

}  // namespace

TEST(MotzkinWord, ParseFormats) {
  EXPECT_EQ(MotzkinWord::parse("12321").letters(), (std::vector<int>{1, 2, 3, 2, 1}));
  EXPECT_EQ(MotzkinWord::parse("1,2,3,2,1").letters(), (std::vector<int>{1, 2, 3, 2, 1}));
  EXPECT_EQ(MotzkinWord::from_steps("UUDD").to_string(), "12321");
  EXPECT_EQ(MotzkinWord::from_steps("").to_string(), "1");
  EXPECT_EQ(MotzkinWord::parse("12111").steps(), "UDHH");
  std::vector<int> tall{1};
  for (int k = 2; k <= 11; ++k) tall.push_back(k);
  for (int k = 10; k >= 1; --k) tall.push_back(k);
  const auto w = MotzkinWord::validate(tall);
  EXPECT_EQ(MotzkinWord::parse(w.to_string()).letters(), tall);
  EXPECT_NE(w.to_string().find(','), std::string::npos);
}

TEST(MotzkinWord, RejectsMalformed) {
  EXPECT_EQ(code_of([] { MotzkinWord::parse(""); }), Errc::empty_word);
  EXPECT_EQ(code_of([] { MotzkinWord::parse("1232"); }), Errc::bad_endpoint);
  EXPECT_EQ(code_of([] { MotzkinWord::parse("2321"); }), Errc::bad_endpoint);
  EXPECT_EQ(code_of([] { MotzkinWord::parse("131"); }), Errc::bad_step);
  EXPECT_EQ(code_of([] { MotzkinWord::validate({1, 0, 1}); }), Errc::non_positive);
}

TEST(Enumerate, MatchesBruteForce) {
  for (std::size_t n = 1; n <= 9; ++n) {
    std::vector<std::vector<int>> got;
    for (const auto& w : enumerate_words(n)) got.push_back(w.letters());
    EXPECT_EQ(got, brute_force_words(n)) << "n=" << n;
  }
}

TEST(Enumerate, MotzkinRecurrence) {
  const auto m = motzkin_numbers(13);
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_EQ(enumerate_words(n).size(), m[n - 1]) << "n=" << n;
}

TEST(Enumerate, SmallCases) {
  EXPECT_EQ(enumerate_words(1).size(), 1u);
  EXPECT_EQ(enumerate_words(2).size(), 1u);
  EXPECT_EQ(enumerate_words(3).size(), 2u);
  EXPECT_EQ(enumerate_words(4).size(), 4u);
}

TEST(LocalMaxima, MatchDefinition) {
  for (std::size_t n = 1; n <= 10; ++n)
    for (const auto& w : enumerate_words(n)) EXPECT_EQ(local_maxima(w), brute_force_local_maxima(w.letters()));
}

TEST(Partition, FixtureWords) {
  const std::vector<std::tuple<std::string, Blocks, std::vector<std::size_t>>> fixtures{
      {"123332112121", {{1, 7}, {2, 6}, {3}, {4}, {5}, {8, 10, 12}, {9}, {11}}, {3, 4, 5, 9, 11}},
      {"112323223211", {{1}, {2, 11}, {3, 5, 7}, {4}, {6}, {8, 10}, {9}, {12}}, {1, 4, 6, 9, 12}},
      {"123432334321", {{1, 12}, {2, 6, 11}, {3, 5}, {4}, {7}, {8, 10}, {9}}, {4, 7, 9}},
  };
  for (const auto& [text, blocks, maxima] : fixtures) {
    const auto w = MotzkinWord::parse(text);
    EXPECT_EQ(one_based(level_return_partition(w)), blocks) << text;
    EXPECT_EQ(one_based(local_maxima(w)), maxima) << text;
  }
}

TEST(Partition, SecondOrderFixtures) {
  const std::map<std::string, std::pair<Blocks, std::vector<std::size_t>>> words{
      {"123321", {{{1, 6}, {2, 5}, {3}, {4}}, {3, 4}}}, {"112321", {{{1}, {2, 6}, {3, 5}, {4}}, {1, 4}}},
      {"123211", {{{1, 5}, {2, 4}, {3}, {6}}, {3, 6}}}, {"122321", {{{1, 6}, {2}, {3, 5}, {4}}, {2, 4}}},
      {"123221", {{{1, 6}, {2, 4}, {3}, {5}}, {3, 5}}}, {"121121", {{{1, 3}, {2}, {4, 6}, {5}}, {2, 5}}},
  };
  for (const auto& [text, expected] : words) {
    const auto w = MotzkinWord::parse(text);
    EXPECT_EQ(one_based(level_return_partition(w)), expected.first) << text;
    EXPECT_EQ(one_based(local_maxima(w)), expected.second) << text;
  }
}

// Structural properties checked against brute-force definitions for every
// word up to length 10.
TEST(Partition, Properties) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (const auto& w : enumerate_words(n)) {
      const auto& l = w.letters();
      const auto pi = level_return_partition(w);
      std::vector<std::vector<std::size_t>> as_sets;
      std::vector<int> seen(n, 0);
      std::set<std::size_t> singles;
      for (const auto& b : pi.blocks) {
        as_sets.push_back(b.positions);
        for (auto k : b.positions) {
          ++seen[k];
          EXPECT_EQ(l[k], b.level);
        }
        if (b.singleton()) singles.insert(b.positions[0]);
        // gap and return: consecutive members are separated by a strictly higher excursion
        for (std::size_t s = 1; s < b.positions.size(); ++s) {
          const auto p = b.positions[s - 1], q = b.positions[s];
          ASSERT_GT(q - p, 1u) << w.to_string();
          for (auto k = p + 1; k < q; ++k) EXPECT_GT(l[k], b.level) << w.to_string();
        }
      }
      EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), static_cast<long>(n)) << w.to_string();
      EXPECT_FALSE(crossing(as_sets)) << w.to_string();
      const auto lm = brute_force_local_maxima(l);
      EXPECT_EQ(singles, std::set<std::size_t>(lm.begin(), lm.end())) << w.to_string();
      // maximality: consecutive same-level letters joined by a higher excursion share a block
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 2; q < n; ++q) {
          if (l[q] != l[p]) continue;
          bool above = true;
          for (auto k = p + 1; k < q; ++k) above = above && l[k] > l[p];
          if (above) EXPECT_EQ(pi.block_of(p), pi.block_of(q)) << w.to_string();
          break;
        }
    }
  }
}

TEST(Adapted, FixtureLabels) {
  using L = std::vector<std::string>;
  const auto w1 = MotzkinWord::parse("123332112121");
  EXPECT_TRUE(is_adapted(w1, L{"a", "b", "c", "d", "c", "b", "a", "e", "f", "e", "g", "e"}).adapted);
  const auto bad = is_adapted(w1, L{"a", "b", "c", "b", "c", "b", "a", "e", "f", "e", "g", "e"});
  ASSERT_FALSE(bad.adapted);
  EXPECT_EQ(bad.violation->kind, AdaptednessViolation::Kind::nested_alternation);
  const auto uniform = is_adapted(w1, L{"a", "b", "c", "d", "c", "b", "c", "e", "f", "e", "g", "e"});
  ASSERT_FALSE(uniform.adapted);
  EXPECT_EQ(uniform.violation->kind, AdaptednessViolation::Kind::label_uniformity);
  EXPECT_EQ(uniform.violation->first, 0u);
  EXPECT_EQ(uniform.violation->second, 6u);
  const auto pyr = MotzkinWord::parse("12321");
  EXPECT_TRUE(is_adapted(pyr, L{"a", "b", "c", "b", "a"}).adapted);
  EXPECT_FALSE(is_adapted(pyr, L{"a", "b", "c", "b", "d"}).adapted);
  EXPECT_TRUE(is_adapted(MotzkinWord::parse("11111"), L{"a", "b", "a", "c", "a"}).adapted);
}

TEST(Adapted, Errors) {
  using L = std::vector<std::string>;
  const auto w = MotzkinWord::parse("121");
  EXPECT_EQ(code_of([&] { is_adapted(w, L{"a", "b"}); }), Errc::length_mismatch);
  EXPECT_EQ(code_of([&] { is_adapted(w, L{"a", "a", "b"}); }), Errc::not_alternating);
}

// Pyramids are adapted exactly to palindromic labels.
TEST(Adapted, PyramidsNeedPalindromes) {
  Rng rng(11);
  for (std::size_t m = 1; m <= 5; ++m) {
    std::vector<int> letters;
    for (int k = 1; k <= static_cast<int>(m); ++k) letters.push_back(k);
    for (int k = static_cast<int>(m) - 1; k >= 1; --k) letters.push_back(k);
    const auto w = MotzkinWord::validate(letters);
    for (int trial = 0; trial < 40; ++trial) {
      const auto labels = draw_alternating(w.size(), 3, rng);
      bool palindrome = true;
      for (std::size_t k = 0; k < w.size(); ++k) palindrome = palindrome && labels[k] == labels[w.size() - 1 - k];
      EXPECT_EQ(is_adapted(w, labels).adapted, palindrome);
    }
  }
}

TEST(Classify, Kinds) {
  auto c = classify_path(MotzkinWord::parse("12321"));
  EXPECT_EQ(c.kind, PathKind::pyramid);
  EXPECT_EQ(c.middle, std::size_t{2});
  EXPECT_EQ(c.pyramid_length(), 5u);
  c = classify_path(MotzkinWord::parse("12111"));
  EXPECT_EQ(c.kind, PathKind::pyramid_then_flat);
  EXPECT_EQ(c.middle, std::size_t{1});
  EXPECT_EQ(c.split, std::size_t{3});
  EXPECT_EQ(classify_path(MotzkinWord::parse("123321")).kind, PathKind::other);
  EXPECT_EQ(classify_path(MotzkinWord::parse("11211")).kind, PathKind::other);
  c = classify_path(MotzkinWord::parse("1"));
  EXPECT_EQ(c.kind, PathKind::flat);
  EXPECT_TRUE(c.pyramid_compatible);
  c = classify_path(MotzkinWord::parse("111"));
  EXPECT_EQ(c.kind, PathKind::flat);
  EXPECT_FALSE(c.pyramid_compatible);
}

// Exactly one pyramid for odd n, none for even n; pyramid words are the ones
// with a single local maximum.
TEST(Classify, PyramidCountsAndMaxima) {
  for (std::size_t n = 1; n <= 11; ++n) {
    std::size_t pyramids = 0, pf = 0;
    for (const auto& w : enumerate_words(n)) {
      const auto c = classify_path(w);
      const bool is_pyr = c.kind == PathKind::pyramid || c.pyramid_compatible;
      pyramids += is_pyr;
      pf += c.kind == PathKind::pyramid_then_flat;
      EXPECT_EQ(is_pyr, local_maxima(w).size() == 1) << w.to_string();
    }
    EXPECT_EQ(pyramids, n % 2);
    EXPECT_EQ(pf, n >= 4 ? (n - 2) / 2 : 0u) << n;
  }
}

TEST(Count, TwoMaximaSequence) {
  const std::vector<std::uint64_t> printed{0, 1, 0, 3, 1, 6, 3, 10, 6, 15, 10, 21, 15};
  for (std::size_t n = 1; n <= 13; ++n) {
    EXPECT_EQ(count_by_local_maxima(n, 2), printed[n - 1]) << n;
    const std::uint64_t m = n / 2;
    const std::uint64_t closed = n % 2 ? m * (m - (m > 0)) / 2 : (m + 1) * m / 2;
    EXPECT_EQ(count_by_local_maxima(n, 2), closed) << n;
  }
  EXPECT_EQ(count_by_local_maxima(6, 2), 6u);
}

TEST(Count, SumsToMotzkinNumbers) {
  const auto m = motzkin_numbers(12);
  for (std::size_t n = 1; n <= 11; ++n) {
    std::uint64_t total = 0;
    for (std::size_t k = 0; k <= n; ++k) total += count_by_local_maxima(n, k);
    EXPECT_EQ(total, m[n - 1]);
    EXPECT_EQ(count_by_local_maxima(n, 0), 0u);
  }
}

TEST(LocalMaxima, FlatWordsHaveEveryPosition) {
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(local_maxima(MotzkinWord::validate(std::vector<int>(n, 1))).size(), n);
}

// Renaming labels by a bijection never changes the verdict.
TEST(Adapted, InvariantUnderRelabeling) {
  Rng rng(5);
  const std::map<std::string, std::string> perm{{"A", "C"}, {"B", "A"}, {"C", "B"}};
  for (std::size_t n = 1; n <= 8; ++n)
    for (const auto& w : enumerate_words(n))
      for (int trial = 0; trial < 3; ++trial) {
        const auto labels = draw_alternating(n, 3, rng);
        std::vector<std::string> renamed;
        for (const auto& l : labels) renamed.push_back(perm.at(l));
        EXPECT_EQ(is_adapted(w, labels).adapted, is_adapted(w, renamed).adapted) << w.to_string();
      }
}
