#pragma once

// Motzkin functionals: for a reduced Motzkin word w and an alternating tuple
// of factors, the deformed functional Phi_{w,t} is the product over the level
// return blocks of w of Boolean cumulants (zero when w is not adapted to the
// labels). In c-free mode blocks at level 1 use phi and higher blocks use psi.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "motzfree/context.hpp"
#include "motzfree/cumulants.hpp"
#include "motzfree/element.hpp"
#include "motzfree/error.hpp"
#include "motzfree/jet.hpp"
#include "motzfree/motzkin.hpp"

namespace motzfree {

/// Factors a_1, ..., a_n; the label of a_k is a_k.label().
using FactorTuple = std::vector<Element>;

inline std::vector<Label> labels_of(const FactorTuple& f) {
  std::vector<Label> out;
  out.reserve(f.size());
  for (const auto& a : f) out.push_back(a.label());
  return out;
}

inline void require_alternating(const FactorTuple& f) {
  const auto labels = labels_of(f);
  require_alternating(std::span<const Label>(labels));
}

/// Which functional family a block at `level` is evaluated with.
constexpr FunctionalKind gamma_selector(Mode mode, int level) noexcept {
  return mode == Mode::cfree && level > 1 ? FunctionalKind::psi : FunctionalKind::phi;
}

/// Mode-appropriate centering hypothesis: in free mode every factor is
/// phi-centered; in c-free mode the first factor is phi-centered and the
/// remaining ones psi-centered. Returns the first offending slot, if any.
inline std::optional<std::size_t> centering_violation(const SpecContext& ctx, const FactorTuple& f) {
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto kind = ctx.mode() == Mode::cfree && k > 0 ? FunctionalKind::psi : FunctionalKind::phi;
    if (!is_centered(f[k], ctx.table(f[k].label(), kind))) return k;
  }
  return std::nullopt;
}

inline bool satisfies_centering(const SpecContext& ctx, const FactorTuple& f) {
  return !centering_violation(ctx, f).has_value();
}

/// Closed forms check their centering hypothesis unless told to skip it.
enum class CenteringPolicy { enforce, skip };

inline void require_centering(const SpecContext& ctx, const FactorTuple& f,
                              CenteringPolicy policy = CenteringPolicy::enforce) {
  if (policy == CenteringPolicy::skip) return;
  if (auto k = centering_violation(ctx, f)) {
    const bool psi = ctx.mode() == Mode::cfree && *k > 0;
    throw Error(Errc::centering_violation,
                "factor " + std::to_string(*k + 1) + " is not " + (psi ? "psi" : "phi") + "-centered");
  }
}

namespace detail {

inline void require_matching(const MotzkinWord& w, const FactorTuple& f) {
  if (w.size() != f.size())
    throw Error(Errc::length_mismatch,
                std::to_string(f.size()) + " factors for a word of length " + std::to_string(w.size()));
}

inline std::vector<Element> block_args(const FactorTuple& f, const Block& b) {
  std::vector<Element> args;
  args.reserve(b.positions.size());
  for (auto k : b.positions) args.push_back(f[k]);
  return args;
}

}  // namespace detail

/// The gamma-selected Boolean cumulant jet of every block of pi(w), or nothing
/// when w is not adapted to the labels of f.
struct BlockJets {
  LevelReturnPartition partition;
  std::vector<Jet> jets;  // parallel to partition.blocks
};

inline std::optional<BlockJets> block_jets(const SpecContext& ctx, const MotzkinWord& w, const FactorTuple& f) {
  detail::require_matching(w, f);
  const auto labels = labels_of(f);
  BlockJets out{level_return_partition(w), {}};
  if (!is_adapted(w, out.partition, std::span<const Label>(labels)).adapted) return std::nullopt;
  out.jets.reserve(out.partition.blocks.size());
  for (const auto& b : out.partition.blocks) {
    const auto& table = ctx.table(labels[b.positions.front()], gamma_selector(ctx.mode(), b.level));
    out.jets.push_back(boolean_cumulant(table, detail::block_args(f, b)));
  }
  return out;
}

/// Phi_{w,t}(a_1, ..., a_n) as a jet of order ctx.order().
inline Jet motzkin_functional(const SpecContext& ctx, const MotzkinWord& w, const FactorTuple& f) {
  auto blocks = block_jets(ctx, w, f);
  if (!blocks) return Jet(ctx.order());
  Jet out = Jet::unit(ctx.order());
  for (const auto& j : blocks->jets) out *= j;
  return out;
}

/// First derivative at t = 0 by the Leibniz rule over blocks:
/// sum_V gamma'_V prod_{U != V} gamma_U.
inline Rational motzkin_derivative_leibniz(const SpecContext& ctx, const MotzkinWord& w, const FactorTuple& f) {
  if (ctx.order() < 1) throw Error(Errc::order_exceeded, "first derivative needs jet order >= 1");
  auto blocks = block_jets(ctx, w, f);
  if (!blocks) return 0;
  const auto& jets = blocks->jets;
  Rational sum = 0;
  for (std::size_t v = 0; v < jets.size(); ++v) {
    Rational term = jets[v].derivative(1);
    for (std::size_t u = 0; u < jets.size() && term != 0; ++u)
      if (u != v) term *= jets[u].value();
    sum += term;
  }
  return sum;
}

namespace detail {

inline Rational moment_value(const SpecContext& ctx, FunctionalKind kind, const Element& e) {
  return evaluate(ctx.table(e.label(), kind), e).value();
}

inline Rational moment_derivative(const SpecContext& ctx, FunctionalKind kind, const Element& e) {
  return evaluate(ctx.table(e.label(), kind), e).derivative(1);
}

}  // namespace detail

/// First derivative in closed form on the centered domain.
///
/// Free mode: nonzero only for adapted pyramid words 1 2 ... m ... 2 1, where
/// it is prod_{k<m} phi(a_k a_{n+1-k}) * phi'(a_m). C-free mode: the flat word
/// gives phi'(a_1) prod_{k>1} phi(a_k); a pyramid of length 2m-1 followed by a
/// (possibly empty) flat tail gives
///   phi(a_1 a_{2m-1}) prod_{1<k<m} psi(a_k a_{2m-k}) psi'(a_m) prod_{k>=2m} phi(a_k)
/// when the pyramid part is adapted; every other word gives zero.
inline Rational motzkin_derivative_closed(const SpecContext& ctx, const MotzkinWord& w, const FactorTuple& f,
                                          CenteringPolicy policy = CenteringPolicy::enforce) {
  using detail::moment_derivative;
  using detail::moment_value;
  detail::require_matching(w, f);
  if (ctx.order() < 1) throw Error(Errc::order_exceeded, "first derivative needs jet order >= 1");
  require_alternating(f);
  require_centering(ctx, f, policy);
  const auto cls = classify_path(w);
  const std::size_t n = w.size();
  const auto phi = FunctionalKind::phi;
  const auto psi = FunctionalKind::psi;

  if (ctx.mode() == Mode::free) {
    if (cls.kind != PathKind::pyramid && !cls.pyramid_compatible) return 0;
    if (!is_adapted(w, labels_of(f)).adapted) return 0;
    const std::size_t apex = *cls.middle;
    Rational out = moment_derivative(ctx, phi, f[apex]);
    for (std::size_t k = 0; k < apex && out != 0; ++k) out *= moment_value(ctx, phi, f[k] * f[n - 1 - k]);
    return out;
  }

  if (cls.kind == PathKind::flat) {
    Rational out = moment_derivative(ctx, phi, f[0]);
    for (std::size_t k = 1; k < n && out != 0; ++k) out *= moment_value(ctx, phi, f[k]);
    return out;
  }
  if (cls.kind == PathKind::other) return 0;
  const std::size_t apex = *cls.middle;
  const std::size_t len = cls.pyramid_length();
  const std::vector<int> prefix(w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(len));
  const auto labels = labels_of(f);
  if (!is_adapted(MotzkinWord::validate(prefix), std::span<const Label>(labels.data(), len)).adapted) return 0;
  Rational out = moment_derivative(ctx, psi, f[apex]);
  if (out != 0) out *= moment_value(ctx, phi, f[0] * f[len - 1]);
  for (std::size_t k = 1; k < apex && out != 0; ++k) out *= moment_value(ctx, psi, f[k] * f[len - 1 - k]);
  for (std::size_t k = len; k < n && out != 0; ++k) out *= moment_value(ctx, phi, f[k]);
  return out;
}

/// Singleton blocks that must absorb at least one derivative: every singleton
/// in free mode; in c-free mode the singletons above level 1 together with
/// the first position when it forms a singleton.
inline std::vector<bool> derivative_carriers(Mode mode, const LevelReturnPartition& pi) {
  std::vector<bool> out(pi.blocks.size(), false);
  for (std::size_t b = 0; b < pi.blocks.size(); ++b) {
    const auto& block = pi.blocks[b];
    if (!block.singleton()) continue;
    out[b] = mode == Mode::free || block.level > 1 || block.positions.front() == 0;
  }
  return out;
}

/// m-th derivative at t = 0 by the multinomial Leibniz formula over blocks,
/// restricted to distributions giving every derivative carrier order >= 1.
/// Requires the mode's centering hypothesis.
inline Rational motzkin_higher(const SpecContext& ctx, const MotzkinWord& w, const FactorTuple& f, int m,
                               CenteringPolicy policy = CenteringPolicy::enforce) {
  detail::require_matching(w, f);
  if (m < 1) throw Error(Errc::invalid_argument, "derivative order must be positive");
  if (m > ctx.order())
    throw Error(Errc::order_exceeded, "derivative of order " + std::to_string(m) + " beyond jet order " +
                                          std::to_string(ctx.order()));
  require_alternating(f);
  require_centering(ctx, f, policy);
  auto blocks = block_jets(ctx, w, f);
  if (!blocks) return 0;
  const auto carriers = derivative_carriers(ctx.mode(), blocks->partition);
  const auto p = static_cast<int>(std::count(carriers.begin(), carriers.end(), true));
  if (p > m) return 0;

  const auto& jets = blocks->jets;
  const std::size_t r = jets.size();
  const Rational m_fact = factorial(static_cast<unsigned>(m));
  // derivative values per block and order, computed once
  std::vector<std::vector<Rational>> deriv(r);
  for (std::size_t s = 0; s < r; ++s)
    for (int k = 0; k <= m; ++k) deriv[s].push_back(jets[s].derivative(k));

  Rational sum = 0;
  std::vector<int> orders(r, 0);
  auto rec = [&](auto& self, std::size_t s, int left, int carriers_left) -> void {
    if (s == r) {
      if (left != 0) return;
      Rational term = m_fact;
      for (std::size_t q = 0; q < r && term != 0; ++q)
        term *= deriv[q][static_cast<std::size_t>(orders[q])] / factorial(static_cast<unsigned>(orders[q]));
      sum += term;
      return;
    }
    const int lo = carriers[s] ? 1 : 0;
    const int reserve = carriers_left - (carriers[s] ? 1 : 0);
    for (int k = lo; k <= left - reserve; ++k) {
      orders[s] = k;
      self(self, s + 1, left - k, reserve);
    }
  };
  rec(rec, 0, m, p);
  return sum;
}

}  // namespace motzfree
