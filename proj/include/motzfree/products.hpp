#pragma once

// Moments of free, Boolean and c-free products assembled from Motzkin
// functionals, plus the Leibniz and characteristic forms of the
// infinitesimal moments used to cross-check them.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motzfree/context.hpp"
#include "motzfree/element.hpp"
#include "motzfree/error.hpp"
#include "motzfree/functionals.hpp"
#include "motzfree/jet.hpp"
#include "motzfree/motzkin.hpp"

namespace motzfree {

/// Merges runs of adjacent same-label factors by multiplying inside their
/// algebra. Units are kept: they are harmless in the free and c-free sums and
/// meaningful in Boolean ones.
inline FactorTuple normalize_alternating(std::span<const Element> factors) {
  if (factors.empty()) throw Error(Errc::invalid_argument, "empty factor list");
  FactorTuple out;
  for (const auto& a : factors) {
    if (!out.empty() && out.back().label() == a.label())
      out.back() = out.back() * a;
    else
      out.push_back(a);
  }
  return out;
}

inline FactorTuple normalize_alternating(const std::vector<Element>& factors) {
  return normalize_alternating(std::span<const Element>(factors));
}

struct WordTerm {
  MotzkinWord word;
  Jet value;
};

/// Phi_{w,t}(f) for every w of the right length, in lexicographic word order.
inline std::vector<WordTerm> word_terms(const SpecContext& ctx, const std::vector<Element>& factors) {
  const auto f = normalize_alternating(factors);
  std::vector<WordTerm> out;
  for (auto& w : enumerate_words(f.size())) {
    Jet v = motzkin_functional(ctx, w, f);
    out.push_back({std::move(w), std::move(v)});
  }
  return out;
}

/// phi_t(a_1 ... a_n) as the sum of Motzkin functionals. In c-free mode this
/// is the phi side (gamma-selected cumulants).
inline Jet moment_jet(const SpecContext& ctx, const std::vector<Element>& factors) {
  Jet sum(ctx.order());
  for (const auto& t : word_terms(ctx, factors)) sum += t.value;
  return sum;
}

struct ProductMoment {
  Jet phi;
  std::optional<Jet> psi;  // c-free mode only
};

/// Mixed moment of the product state; in c-free mode also its psi side, which
/// is the free product of the psi families.
inline ProductMoment product_moment(const SpecContext& ctx, const std::vector<Element>& factors) {
  ProductMoment out{moment_jet(ctx, factors), std::nullopt};
  if (ctx.mode() == Mode::cfree) out.psi = moment_jet(ctx.psi_view(), factors);
  return out;
}

/// m-th derivative at t = 0 of the product moment, summed word by word. In
/// free mode with centered factors, words with more than m local maxima are
/// skipped since their contribution vanishes.
inline Rational higher_moment(const SpecContext& ctx, const std::vector<Element>& factors, int m,
                              bool prune = true) {
  if (m < 0 || m > ctx.order())
    throw Error(Errc::order_exceeded, "derivative of order " + std::to_string(m) + " beyond jet order " +
                                          std::to_string(ctx.order()));
  const auto f = normalize_alternating(factors);
  const bool skip = prune && ctx.mode() == Mode::free && satisfies_centering(ctx, f);
  Rational sum = 0;
  for (const auto& w : enumerate_words(f.size())) {
    if (skip && local_maxima(w).size() > static_cast<std::size_t>(m)) continue;
    sum += motzkin_functional(ctx, w, f).derivative(m);
  }
  return sum;
}

inline Rational infinitesimal_moment(const SpecContext& ctx, const std::vector<Element>& factors) {
  return higher_moment(ctx, factors, 1);
}

namespace detail {

inline void require_mode(const SpecContext& ctx, Mode mode, const char* what) {
  if (ctx.mode() != mode)
    throw Error(Errc::invalid_argument, std::string(what) + " needs " + std::string(to_string(mode)) + " mode");
}

inline std::vector<Element> without(const FactorTuple& f, std::size_t k) {
  std::vector<Element> rest;
  for (std::size_t j = 0; j < f.size(); ++j)
    if (j != k) rest.push_back(f[j]);
  return rest;
}

/// Undeformed phi-side moment of the product, with the empty product = 1.
inline Rational companion_moment(const SpecContext& ctx, const std::vector<Element>& factors) {
  if (factors.empty()) return 1;
  return moment_jet(ctx, factors).value();
}

}  // namespace detail

/// phi'(a_1...a_n) = sum_k phi'(a_k) phi(a_1..a_{k-1} a_{k+1}..a_n) for centered
/// alternating factors; the deleted-slot moments are re-normalized.
inline Rational leibniz_free(const SpecContext& ctx, const FactorTuple& f,
                            CenteringPolicy policy = CenteringPolicy::enforce) {
  detail::require_mode(ctx, Mode::free, "leibniz_free");
  require_alternating(f);
  require_centering(ctx, f, policy);
  Rational sum = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Rational d = detail::moment_derivative(ctx, FunctionalKind::phi, f[k]);
    if (d != 0) sum += d * detail::companion_moment(ctx, detail::without(f, k));
  }
  return sum;
}

/// Characteristic form: zero unless n is odd and the labels are palindromic,
/// in which case prod_{k<mid} phi(a_k a_{n+1-k}) * phi'(a_mid).
inline Rational characteristic_free(const SpecContext& ctx, const FactorTuple& f,
                                   CenteringPolicy policy = CenteringPolicy::enforce) {
  detail::require_mode(ctx, Mode::free, "characteristic_free");
  require_alternating(f);
  require_centering(ctx, f, policy);
  const std::size_t n = f.size();
  if (n % 2 == 0) return 0;
  const std::size_t mid = n / 2;
  for (std::size_t k = 0; k < mid; ++k)
    if (f[k].label() != f[n - 1 - k].label()) return 0;
  Rational out = detail::moment_derivative(ctx, FunctionalKind::phi, f[mid]);
  for (std::size_t k = 0; k < mid && out != 0; ++k)
    out *= detail::moment_value(ctx, FunctionalKind::phi, f[k] * f[n - 1 - k]);
  return out;
}

/// Boolean product moment: prod_k phi_{i_k,t}(a_k) after merging.
inline Jet boolean_moment(const SpecContext& ctx, const std::vector<Element>& factors) {
  Jet out = Jet::unit(ctx.order());
  for (const auto& a : normalize_alternating(factors)) out *= evaluate(ctx.phi(a.label()), a);
  return out;
}

/// sum_k phi(a_1) ... phi'(a_k) ... phi(a_n).
inline Rational boolean_leibniz(const SpecContext& ctx, const FactorTuple& f) {
  require_alternating(f);
  Rational sum = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    Rational term = detail::moment_derivative(ctx, FunctionalKind::phi, f[k]);
    for (std::size_t j = 0; j < f.size() && term != 0; ++j)
      if (j != k) term *= detail::moment_value(ctx, FunctionalKind::phi, f[j]);
    sum += term;
  }
  return sum;
}

/// For factors that are each either phi-centered or a unit: phi' of the one
/// centered factor if there is exactly one, else zero.
inline Rational boolean_single_slot(const SpecContext& ctx, const FactorTuple& f) {
  require_alternating(f);
  std::optional<std::size_t> slot;
  std::size_t centered = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k].is_unit()) continue;
    if (!is_centered(f[k], ctx.phi(f[k].label())))
      throw Error(Errc::centering_violation, "factor " + std::to_string(k + 1) + " is neither a unit nor centered");
    ++centered;
    slot = k;
  }
  if (centered != 1) return 0;
  return detail::moment_derivative(ctx, FunctionalKind::phi, f[*slot]);
}

/// c-free Leibniz form:
///   phi'(a_1) phi(a_2..a_n) + sum_{m>=2} psi'(a_m) phi(a_1..a_{m-1} a_{m+1}..a_n)
/// for pattern-centered alternating factors.
inline Rational cfree_leibniz(const SpecContext& ctx, const FactorTuple& f,
                             CenteringPolicy policy = CenteringPolicy::enforce) {
  detail::require_mode(ctx, Mode::cfree, "cfree_leibniz");
  require_alternating(f);
  require_centering(ctx, f, policy);
  Rational sum = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto kind = k == 0 ? FunctionalKind::phi : FunctionalKind::psi;
    const Rational d = detail::moment_derivative(ctx, kind, f[k]);
    if (d != 0) sum += d * detail::companion_moment(ctx, detail::without(f, k));
  }
  return sum;
}

/// c-free closed form: the flat term phi'(a_1) prod phi(a_k) plus, for every
/// m >= 2 with 2m-1 <= n and labels i_k = i_{2m-k} (k < m),
///   phi(a_1 a_{2m-1}) prod_{1<k<m} psi(a_k a_{2m-k}) psi'(a_m) prod_{k>=2m} phi(a_k).
inline Rational cfree_closed(const SpecContext& ctx, const FactorTuple& f,
                            CenteringPolicy policy = CenteringPolicy::enforce) {
  using detail::moment_derivative;
  using detail::moment_value;
  detail::require_mode(ctx, Mode::cfree, "cfree_closed");
  require_alternating(f);
  require_centering(ctx, f, policy);
  const auto phi = FunctionalKind::phi;
  const auto psi = FunctionalKind::psi;
  const std::size_t n = f.size();

  Rational sum = moment_derivative(ctx, phi, f[0]);
  for (std::size_t k = 1; k < n && sum != 0; ++k) sum *= moment_value(ctx, phi, f[k]);

  // m is 1-based apex position; 0-based apex is m - 1 and the pyramid ends at 2m - 2.
  for (std::size_t m = 2; 2 * m - 1 <= n; ++m) {
    const std::size_t last = 2 * m - 2;
    bool paired = true;
    for (std::size_t k = 0; k + 1 < m; ++k) paired = paired && f[k].label() == f[last - k].label();
    if (!paired) continue;
    Rational term = moment_derivative(ctx, psi, f[m - 1]);
    if (term != 0) term *= moment_value(ctx, phi, f[0] * f[last]);
    for (std::size_t k = 1; k + 1 < m && term != 0; ++k) term *= moment_value(ctx, psi, f[k] * f[last - k]);
    for (std::size_t k = last + 1; k < n && term != 0; ++k) term *= moment_value(ctx, phi, f[k]);
    sum += term;
  }
  return sum;
}

}  // namespace motzfree
