#pragma once

// Brute-force product moments that share no code with the Motzkin engine.
//
// The free and c-free oracles expand every factor as (centered part) + scalar
// and use the vanishing of fully centered alternating products:
//   0 = phi_t(prod_k (a_k - c_k))  =>
//   phi_t(a_1...a_n) = sum_{S nonempty} (-1)^{|S|+1} prod_{k in S} c_k * phi_t(prod_{k not in S} a_k)
// with c_k = phi_t(a_k) (free) or c_1 = phi_t(a_1), c_k = psi_t(a_k) for k > 1
// (c-free). The shorter products are reduced (scalars pulled out, equal
// neighbours merged) and handled recursively, so the c-free pattern re-anchors
// at whatever factor ends up first.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motzfree/context.hpp"
#include "motzfree/cumulants.hpp"
#include "motzfree/element.hpp"
#include "motzfree/jet.hpp"
#include "motzfree/table.hpp"

namespace motzfree {

struct RecursionTrace {
  std::size_t calls = 0;
  std::size_t cache_hits = 0;
  std::size_t max_depth = 0;
  std::size_t terms = 0;  // nonvanishing subset terms expanded
};

struct OracleOptions {
  bool memoize = true;
  RecursionTrace* trace = nullptr;
};

namespace detail {

struct Reduced {
  Rational scale = 1;
  std::vector<Element> factors;
};

/// Pulls scalar factors out and merges equal-label neighbours until stable.
inline Reduced reduce(std::vector<Element> factors) {
  Reduced r;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Element> merged;
    for (auto& a : factors) {
      if (a.is_scalar()) {
        r.scale *= a.constant_term();
        changed = true;
      } else if (!merged.empty() && merged.back().label() == a.label()) {
        merged.back() = merged.back() * a;
        changed = true;
      } else {
        merged.push_back(std::move(a));
      }
    }
    factors = std::move(merged);
    if (r.scale == 0) return {0, {}};
  }
  r.factors = std::move(factors);
  return r;
}

inline std::string canonical_key(const std::vector<Element>& f) {
  std::string key;
  for (const auto& a : f) {
    key += a.label();
    key += '{';
    for (const auto& [w, c] : a.terms()) {
      key += word_key(w);
      key += ':';
      key += c.get_str();
      key += ';';
    }
    key += '}';
  }
  return key;
}

class CenteringOracle {
 public:
  CenteringOracle(const SpecContext& ctx, OracleOptions opts) : ctx_(ctx), opts_(opts) {}

  Jet operator()(std::vector<Element> factors) { return eval(std::move(factors), 1); }

 private:
  Jet eval(std::vector<Element> factors, std::size_t depth) {
    if (opts_.trace) {
      ++opts_.trace->calls;
      opts_.trace->max_depth = std::max(opts_.trace->max_depth, depth);
    }
    auto r = reduce(std::move(factors));
    if (r.scale == 0) return Jet(ctx_.order());
    Jet value = reduced_value(r.factors, depth);
    value *= r.scale;
    return value;
  }

  Jet reduced_value(const std::vector<Element>& f, std::size_t depth) {
    const std::size_t n = f.size();
    if (n == 0) return Jet::unit(ctx_.order());
    if (n == 1) return evaluate(ctx_.phi(f[0].label()), f[0]);
    std::string key;
    if (opts_.memoize) {
      key = canonical_key(f);
      if (auto it = memo_.find(key); it != memo_.end()) {
        if (opts_.trace) ++opts_.trace->cache_hits;
        return it->second;
      }
    }
    std::vector<Jet> c;
    c.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const bool psi = ctx_.mode() == Mode::cfree && k > 0;
      c.push_back(evaluate(psi ? ctx_.psi(f[k].label()) : ctx_.phi(f[k].label()), f[k]));
    }
    Jet sum(ctx_.order());
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t s = 1; s <= full; ++s) {
      Jet coef = Jet::unit(ctx_.order());
      std::vector<Element> rest;
      int size = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (s >> k & 1u) {
          coef *= c[k];
          ++size;
        } else {
          rest.push_back(f[k]);
        }
      }
      if (coef.is_zero()) continue;
      if (opts_.trace) ++opts_.trace->terms;
      Jet term = coef * eval(std::move(rest), depth + 1);
      if (size % 2) sum += term;
      else sum -= term;
    }
    if (opts_.memoize) memo_.emplace(std::move(key), sum);
    return sum;
  }

  const SpecContext& ctx_;
  OracleOptions opts_;
  std::map<std::string, Jet> memo_;
};

}  // namespace detail

/// phi_t of the free product by the centering recursion. A c-free context is
/// read through its phi families only.
inline Jet free_oracle(const SpecContext& ctx, const std::vector<Element>& factors, OracleOptions opts = {}) {
  if (ctx.mode() != Mode::free) return detail::CenteringOracle(ctx.phi_view(), opts)(factors);
  return detail::CenteringOracle(ctx, opts)(factors);
}

/// (phi side, psi side) of the c-free product. The psi side is the free
/// product of the psi families.
inline std::pair<Jet, Jet> cfree_oracle(const SpecContext& ctx, const std::vector<Element>& factors,
                                        OracleOptions opts = {}) {
  if (ctx.mode() != Mode::cfree) throw Error(Errc::invalid_argument, "cfree_oracle needs cfree mode");
  Jet phi = detail::CenteringOracle(ctx, opts)(factors);
  const SpecContext psi_ctx = ctx.psi_view();
  Jet psi = detail::CenteringOracle(psi_ctx, opts)(factors);
  return {std::move(phi), std::move(psi)};
}

/// phi_t of the free product as a sum over noncrossing partitions with
/// label-constant blocks of products of free cumulants.
inline Jet nc_oracle(const SpecContext& ctx, const std::vector<Element>& factors) {
  auto r = detail::reduce(factors);
  if (r.scale == 0) return Jet(ctx.order());
  const auto& f = r.factors;
  const std::size_t n = f.size();
  Jet sum(ctx.order());
  if (n == 0) {
    sum = Jet::unit(ctx.order());
  } else {
    std::map<std::uint32_t, Jet> kappa;
    for (const auto& p : noncrossing_partitions(n)) {
      Jet term = Jet::unit(ctx.order());
      for (const auto& block : p) {
        const auto& label = f[block.front()].label();
        std::uint32_t mask = 0;
        bool uniform = true;
        for (auto k : block) {
          uniform = uniform && f[k].label() == label;
          mask |= std::uint32_t{1} << k;
        }
        if (!uniform) {
          term = Jet(ctx.order());
          break;
        }
        auto it = kappa.find(mask);
        if (it == kappa.end()) {
          std::vector<Element> args;
          for (auto k : block) args.push_back(f[k]);
          it = kappa.emplace(mask, free_cumulant(ctx.phi(label), args)).first;
        }
        term *= it->second;
        if (term.is_zero()) break;
      }
      sum += term;
    }
  }
  sum *= r.scale;
  return sum;
}

/// Boolean product: prod_k phi_{i_k,t}(a_k) over the merged tuple. Units are
/// not absorbed here; the Boolean product does not identify them.
inline Jet boolean_oracle(const SpecContext& ctx, const std::vector<Element>& factors) {
  std::vector<Element> merged;
  for (const auto& a : factors) {
    if (!merged.empty() && merged.back().label() == a.label()) merged.back() = merged.back() * a;
    else merged.push_back(a);
  }
  Jet out = Jet::unit(ctx.order());
  for (const auto& a : merged) out = out * evaluate(ctx.phi(a.label()), a);
  return out;
}

}  // namespace motzfree
