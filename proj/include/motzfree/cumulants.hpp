#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "motzfree/element.hpp"
#include "motzfree/jet.hpp"
#include "motzfree/table.hpp"

namespace motzfree {

using SetPartition = std::vector<std::vector<std::size_t>>;

/// All set partitions of {0..n-1}, blocks ordered by their least element.
inline std::vector<SetPartition> set_partitions(std::size_t n) {
  std::vector<SetPartition> out;
  std::vector<std::size_t> rgs(n, 0);  // restricted growth string
  auto rec = [&](auto& self, std::size_t k, std::size_t blocks) -> void {
    if (k == n) {
      SetPartition p(blocks);
      for (std::size_t i = 0; i < n; ++i) p[rgs[i]].push_back(i);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[k] = b;
      self(self, k + 1, b == blocks ? blocks + 1 : blocks);
    }
  };
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  rec(rec, 0, 0);
  return out;
}

inline bool is_noncrossing(const SetPartition& p) {
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (a == b) continue;
      // a crossing is s1 < t1 < s2 < t2 with s's in block a and t's in block b
      for (std::size_t i = 0; i + 1 < p[a].size(); ++i)
        for (std::size_t k = 0; k + 1 < p[b].size(); ++k) {
          const auto s1 = p[a][i], s2 = p[a][i + 1], t1 = p[b][k], t2 = p[b][k + 1];
          if (s1 < t1 && t1 < s2 && s2 < t2) return false;
        }
    }
  return true;
}

inline std::vector<SetPartition> noncrossing_partitions(std::size_t n) {
  std::vector<SetPartition> out;
  for (auto& p : set_partitions(n))
    if (is_noncrossing(p)) out.push_back(std::move(p));
  return out;
}

/// Boolean cumulant beta_n(a_1, ..., a_n) of the deformed functional, by the
/// prefix recursion beta_n = phi(a_1...a_n) - sum_k beta_k(a_1..a_k) phi(a_{k+1}...a_n).
inline Jet boolean_cumulant(const FunctionalTable& table, std::span<const Element> args) {
  const std::size_t n = args.size();
  if (n == 0) throw Error(Errc::invalid_argument, "Boolean cumulant of an empty tuple");
  // interval[i][j] = phi(a_i ... a_{j-1})
  std::vector<std::vector<Jet>> interval(n, std::vector<Jet>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    Element prod = Element::unit(args[i].label());
    for (std::size_t j = i; j < n; ++j) {
      prod = prod * args[j];
      interval[i][j + 1] = evaluate(table, prod);
    }
  }
  std::vector<Jet> beta(n + 1);  // beta[k] = beta_k(a_1..a_k)
  for (std::size_t j = 1; j <= n; ++j) {
    Jet b = interval[0][j];
    for (std::size_t k = 1; k < j; ++k) b -= beta[k] * interval[k][j];
    beta[j] = std::move(b);
  }
  return beta[n];
}

inline Jet boolean_cumulant(const FunctionalTable& table, const std::vector<Element>& args) {
  return boolean_cumulant(table, std::span<const Element>(args));
}

/// Free cumulant kappa_n by Moebius inversion over noncrossing partitions.
inline Jet free_cumulant(const FunctionalTable& table, std::span<const Element> args) {
  const std::size_t n = args.size();
  if (n == 0) throw Error(Errc::invalid_argument, "free cumulant of an empty tuple");
  if (n > 20) throw Error(Errc::invalid_argument, "free cumulant order too large");
  std::vector<std::vector<SetPartition>> nc(n + 1);
  for (std::size_t k = 1; k <= n; ++k) nc[k] = noncrossing_partitions(k);

  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<Jet> kappa(full + 1);
  // Subsets in increasing popcount order, so every proper sub-block is ready.
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m <= full; ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  for (std::uint32_t mask : masks) {
    std::vector<std::size_t> pos;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1u) pos.push_back(k);
    Element prod = Element::unit(args[0].label());
    for (auto k : pos) prod = prod * args[k];
    Jet value = evaluate(table, prod);
    for (const auto& p : nc[pos.size()]) {
      if (p.size() == 1) continue;
      Jet term = Jet::unit(table.order());
      for (const auto& block : p) {
        std::uint32_t sub = 0;
        for (auto b : block) sub |= std::uint32_t{1} << pos[b];
        term *= kappa[sub];
      }
      value -= term;
    }
    kappa[mask] = std::move(value);
  }
  return kappa[full];
}

inline Jet free_cumulant(const FunctionalTable& table, const std::vector<Element>& args) {
  return free_cumulant(table, std::span<const Element>(args));
}

}  // namespace motzfree
