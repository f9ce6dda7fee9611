#pragma once

// Test-side oracles. None of these call into the library's combinatorics:
// words, partitions and pairings are enumerated by brute force here.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <ostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "motzfree/motzfree.hpp"

namespace testing_support {

using namespace motzfree;

/// All sequences in {1..n}^n with endpoints 1 and unit steps, lexicographic.
inline std::vector<std::vector<int>> brute_force_words(std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 1);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      if (cur.back() == 1) out.push_back(cur);
      return;
    }
    for (int v = 1; v <= static_cast<int>(n); ++v) {
      if (k == 0 && v != 1) continue;
      if (k > 0 && std::abs(v - cur[k - 1]) > 1) continue;
      cur[k] = v;
      rec(k + 1);
    }
  };
  if (n > 0) rec(0);
  return out;
}

/// Weak local maxima straight from the definition, one-sided at the ends.
inline std::vector<std::size_t> brute_force_local_maxima(const std::vector<int>& l) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < l.size(); ++k) {
    const bool left = k == 0 || l[k - 1] <= l[k];
    const bool right = k + 1 == l.size() || l[k + 1] <= l[k];
    if (left && right) out.push_back(k);
  }
  return out;
}

/// Restricted-growth enumeration of all set partitions of {0..n-1}.
inline std::vector<std::vector<std::vector<std::size_t>>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t blocks) {
    if (k == n) {
      std::vector<std::vector<std::size_t>> p(blocks);
      for (std::size_t i = 0; i < n; ++i) p[rgs[i]].push_back(i);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      rgs[k] = b;
      rec(k + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

inline bool crossing(const std::vector<std::vector<std::size_t>>& p) {
  for (const auto& a : p)
    for (const auto& b : p) {
      if (&a == &b) continue;
      for (auto i : a)
        for (auto j : a)
          for (auto k : b)
            for (auto l : b)
              if (i < k && k < j && j < l) return true;
    }
  return false;
}

inline bool is_interval(const std::vector<std::vector<std::size_t>>& p) {
  for (const auto& b : p)
    if (b.back() - b.front() + 1 != b.size()) return false;
  return true;
}

/// Semicircular-type variables: x_i has phi-variance a_i(t) for outer pairs
/// and psi-variance b_i(t) for pairs nested inside another pair. With b = a
/// this is a free semicircular family; otherwise the c-free analogue whose
/// only nonzero cumulants are of order two.
struct PairingModel {
  int order = 1;
  std::map<Label, Jet> outer;
  std::map<Label, Jet> inner;

  Jet moment(const std::vector<Label>& letters, bool nested = false) const {
    return rec(letters, 0, letters.size(), nested);
  }

 private:
  Jet rec(const std::vector<Label>& l, std::size_t lo, std::size_t hi, bool nested) const {
    if (lo == hi) return Jet::unit(order);
    Jet sum(order);
    for (std::size_t q = lo + 1; q < hi; q += 2) {
      if (l[q] != l[lo]) continue;
      Jet term = (nested ? inner : outer).at(l[lo]);
      term *= rec(l, lo + 1, q, true);
      term *= rec(l, q + 1, hi, nested);
      sum += term;
    }
    return sum;
  }
};

/// phi (or psi) table of one algebra of the pairing model; the generator is x.
inline FunctionalTable pairing_table(const PairingModel& m, const Label& label, FunctionalKind kind) {
  PairingModel single = m;
  if (kind == FunctionalKind::psi) single.outer = single.inner;
  return FunctionalTable(label, kind, m.order, [single, label](const Word& w) -> std::optional<Jet> {
    for (const auto& g : w)
      if (g != "x") return std::nullopt;
    return single.moment(std::vector<Label>(w.size(), label));
  });
}

inline SpecContext pairing_context(const PairingModel& m, Mode mode) {
  SpecContext ctx(mode, m.order);
  for (const auto& [label, a] : m.outer) {
    std::optional<FunctionalTable> psi;
    if (mode == Mode::cfree) psi = pairing_table(m, label, FunctionalKind::psi);
    ctx.add_algebra(label, {"x"}, pairing_table(m, label, FunctionalKind::phi), psi);
  }
  return ctx;
}

/// Expands each factor into monomials and sums the pairing moments.
inline Jet pairing_oracle(const PairingModel& m, const std::vector<Element>& factors) {
  Jet sum(m.order);
  std::vector<Label> letters;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t k, Rational coeff) {
    if (k == factors.size()) {
      Jet j = m.moment(letters);
      j *= coeff;
      sum += j;
      return;
    }
    for (const auto& [w, c] : factors[k].terms()) {
      const auto mark = letters.size();
      letters.insert(letters.end(), w.size(), factors[k].label());
      rec(k + 1, coeff * c);
      letters.resize(mark);
    }
  };
  rec(0, 1);
  return sum;
}

using Rng = std::mt19937_64;

inline long draw(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational draw_rational(Rng& rng) { return make_rational(draw(rng, -3, 3), draw(rng, 1, 3)); }

inline Jet draw_variance(Rng& rng, int order) {
  Jet j(order);
  j[0] = make_rational(draw(rng, 1, 4), draw(rng, 1, 2));
  for (int k = 1; k <= order; ++k) j[k] = draw_rational(rng);
  return j;
}

inline PairingModel draw_model(Rng& rng, std::size_t algebras, int order, bool cfree) {
  PairingModel m;
  m.order = order;
  for (std::size_t i = 0; i < algebras; ++i) {
    const Label l(1, static_cast<char>('A' + i));
    m.outer[l] = draw_variance(rng, order);
    m.inner[l] = cfree ? draw_variance(rng, order) : m.outer[l];
  }
  return m;
}

/// c0 + c1 x + c2 x^2 with random rational coefficients.
inline Element draw_quadratic(const Label& l, Rng& rng) {
  Element e = Element::scalar(l, draw_rational(rng));
  e += Element::monomial(l, {"x"}, draw_rational(rng));
  e += Element::monomial(l, {"x", "x"}, draw_rational(rng));
  return e;
}

inline std::vector<Label> draw_alternating(std::size_t n, std::size_t algebras, Rng& rng) {
  std::vector<Label> out;
  for (std::size_t k = 0; k < n; ++k) {
    Label l;
    do l = Label(1, static_cast<char>('A' + draw(rng, 0, static_cast<long>(algebras) - 1)));
    while (!out.empty() && out.back() == l);
    out.push_back(l);
  }
  return out;
}

inline Element centered(const Element& e, const FunctionalTable& t) {
  return e - Element::scalar(e.label(), evaluate(t, e).value());
}

}  // namespace testing_support

namespace motzfree {
inline void PrintTo(const Jet& j, std::ostream* os) { *os << j.to_string(); }
}  // namespace motzfree
