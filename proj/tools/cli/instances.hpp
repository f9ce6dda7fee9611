#pragma once

// Seeded random problem instances for the verification suites. Moment tables
// are generated on demand from a hash of (seed, label, kind, word), so any
// word of any degree has a value and results only depend on the seed.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "motzfree/motzfree.hpp"

namespace motzfree::cli {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi]; plain modulo keeps the stream identical
/// across standard libraries.
inline long uniform(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational small_rational(Rng& rng, long num_max = 4, long den_max = 3) {
  Rational q(uniform(rng, -num_max, num_max), uniform(rng, 1, den_max));
  q.canonicalize();
  return q;
}

inline FunctionalTable random_table(const Label& label, FunctionalKind kind, int order, std::uint64_t salt,
                                    std::vector<Generator> generators) {
  auto src = [order, salt, gens = std::move(generators)](const Word& w) -> std::optional<Jet> {
    for (const auto& g : w)
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) return std::nullopt;
    Rng rng(fnv1a(word_key(w), salt));
    Jet j(order);
    for (int k = 0; k <= order; ++k) j[static_cast<std::size_t>(k)] = small_rational(rng);
    return j;
  };
  return FunctionalTable(label, kind, order, std::move(src));
}

struct RandomSpec {
  Mode mode = Mode::free;
  int order = 2;
  std::size_t algebras = 3;
  std::vector<Generator> generators{"x", "y"};
  bool degenerate_psi = false;  // psi_i = phi_i with identical derivatives
  std::uint64_t seed = 0;
};

inline Label algebra_name(std::size_t k) { return std::string(1, static_cast<char>('A' + k)); }

inline SpecContext random_context(const RandomSpec& spec) {
  SpecContext ctx(spec.mode, spec.order);
  for (std::size_t k = 0; k < spec.algebras; ++k) {
    const Label label = algebra_name(k);
    const auto salt = fnv1a(label, spec.seed * 0x9e3779b97f4a7c15ull + 1);
    auto phi = random_table(label, FunctionalKind::phi, spec.order, fnv1a("phi", salt), spec.generators);
    std::optional<FunctionalTable> psi;
    if (spec.mode == Mode::cfree)
      psi = random_table(label, FunctionalKind::psi, spec.order, fnv1a(spec.degenerate_psi ? "phi" : "psi", salt),
                         spec.generators);
    ctx.add_algebra(label, spec.generators, std::move(phi), std::move(psi));
  }
  return ctx;
}

/// A random non-scalar element: a constant plus one to three monomials of
/// degree one or two.
inline Element random_element(const Label& label, const std::vector<Generator>& gens, Rng& rng) {
  Element e = Element::scalar(label, small_rational(rng));
  const long terms = uniform(rng, 1, 3);
  for (long t = 0; t < terms; ++t) {
    Word w;
    const long deg = uniform(rng, 1, 2);
    for (long d = 0; d < deg; ++d) w.push_back(gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(gens.size()) - 1))]);
    Rational c = small_rational(rng);
    if (c == 0) c = 1;
    e.add_term(std::move(w), c);
  }
  if (e.is_scalar()) e.add_term({gens.front()}, 1);
  return e;
}

enum class Centering {
  none,     // arbitrary factors
  mode,     // free: all phi-centered; c-free: first phi-, the rest psi-centered
  all_phi,  // every factor phi-centered
};

inline FactorTuple random_factors(const SpecContext& ctx, const std::vector<Label>& labels, Rng& rng,
                                  Centering centering) {
  FactorTuple f;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    Element e = random_element(labels[k], ctx.algebra(labels[k]).generators, rng);
    if (centering == Centering::all_phi || (centering == Centering::mode && (ctx.mode() == Mode::free || k == 0)))
      e = center(e, ctx.phi(labels[k]));
    else if (centering == Centering::mode)
      e = center(e, ctx.psi(labels[k]));
    f.push_back(std::move(e));
  }
  return f;
}

inline std::vector<Label> random_alternating_labels(std::size_t n, std::size_t algebras, Rng& rng) {
  std::vector<Label> out;
  for (std::size_t k = 0; k < n; ++k) {
    Label l;
    do l = algebra_name(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(algebras) - 1)));
    while (k > 0 && l == out.back());
    out.push_back(l);
  }
  return out;
}

/// Alternating labels with i_k = i_{n+1-k}; n must be odd for adjacency to
/// hold at the middle.
inline std::vector<Label> palindromic_labels(std::size_t n, std::size_t algebras, Rng& rng) {
  auto half = random_alternating_labels((n + 1) / 2, algebras, rng);
  std::vector<Label> out = half;
  for (std::size_t k = n / 2; k-- > 0;) out.push_back(half[k]);
  return out;
}

/// Random alternating labels adapted to w, found by rejection sampling over
/// per-block label choices.
inline std::optional<std::vector<Label>> adapted_labels(const MotzkinWord& w, std::size_t algebras, Rng& rng,
                                                        int attempts = 400) {
  const auto pi = level_return_partition(w);
  for (int a = 0; a < attempts; ++a) {
    std::vector<Label> labels(w.size());
    for (const auto& b : pi.blocks) {
      const Label l = algebra_name(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(algebras) - 1)));
      for (auto k : b.positions) labels[k] = l;
    }
    bool alternating = true;
    for (std::size_t k = 1; k < labels.size(); ++k) alternating = alternating && labels[k] != labels[k - 1];
    if (alternating && is_adapted(w, pi, std::span<const Label>(labels)).adapted) return labels;
  }
  return std::nullopt;
}

}  // namespace motzfree::cli
