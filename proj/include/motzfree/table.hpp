#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motzfree/element.hpp"
#include "motzfree/error.hpp"
#include "motzfree/jet.hpp"

namespace motzfree {

enum class FunctionalKind { phi, psi };

constexpr std::string_view to_string(FunctionalKind k) noexcept { return k == FunctionalKind::phi ? "phi" : "psi"; }

/// Single-generator moment law: returns the moment of x^degree, or nothing
/// when the law does not define it.
struct Law {
  std::string name;
  Generator generator = "x";
  std::function<std::optional<Rational>(std::size_t degree)> moment;
};

struct LawParams {
  Generator generator = "x";
  std::optional<Rational> variance;  // semicircle
  std::optional<Rational> c;         // point_mass
  std::vector<Rational> moments;     // custom / zero_derivatives: m_1, m_2, ...
};

inline Rational catalan(std::size_t k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * k, k);
  return Rational(c) / Rational(static_cast<long>(k + 1));
}

/// Built-in laws: semicircle(variance), bernoulli_symmetric, point_mass(c),
/// custom(moments) and zero_derivatives(moments). The last one is a moment
/// sequence whose tables reject supplied derivative streams.
inline Law builtin_law(const std::string& name, const LawParams& params = {}) {
  Law law{name, params.generator, {}};
  if (name == "semicircle") {
    const Rational v = params.variance.value_or(Rational(1));
    law.moment = [v](std::size_t d) -> std::optional<Rational> {
      if (d % 2) return Rational(0);
      Rational p = 1;
      for (std::size_t k = 0; k < d / 2; ++k) p *= v;
      return catalan(d / 2) * p;
    };
  } else if (name == "bernoulli_symmetric") {
    law.moment = [](std::size_t d) -> std::optional<Rational> { return Rational(d % 2 ? 0 : 1); };
  } else if (name == "point_mass") {
    if (!params.c) throw Error(Errc::invalid_argument, "point_mass needs parameter c");
    const Rational c = *params.c;
    law.moment = [c](std::size_t d) -> std::optional<Rational> {
      Rational p = 1;
      for (std::size_t k = 0; k < d; ++k) p *= c;
      return p;
    };
  } else if (name == "custom" || name == "zero_derivatives") {
    const std::vector<Rational> m = params.moments;
    law.moment = [m](std::size_t d) -> std::optional<Rational> {
      if (d == 0) return Rational(1);
      if (d > m.size()) return std::nullopt;
      return m[d - 1];
    };
  } else {
    throw Error(Errc::unknown_law, "'" + name + "'");
  }
  return law;
}

/// The deformed functional t -> phi_t (or psi_t) of one algebra, as a map from
/// monomial words to jets. The unit always maps to the unit jet.
class FunctionalTable {
 public:
  using Source = std::function<std::optional<Jet>(const Word&)>;

  FunctionalTable(Label label, FunctionalKind kind, int order, Source source)
      : label_(std::move(label)), kind_(kind), order_(order), source_(std::make_shared<const Source>(std::move(source))) {
    if (order_ < 0) throw Error(Errc::invalid_argument, "negative jet order");
  }

  /// Derivative streams hold phi^{(k)} values (index k - 1); they become the
  /// Taylor coefficients phi^{(k)} / k!. Words missing from a stream have a
  /// vanishing derivative.
  using DerivativeStreams = std::vector<std::map<Word, Rational>>;

  static FunctionalTable from_moments(Label label, FunctionalKind kind, int order, std::map<Word, Rational> moments,
                                      DerivativeStreams derivatives = {}) {
    auto base = [m = std::move(moments)](const Word& w) -> std::optional<Rational> {
      auto it = m.find(w);
      if (it == m.end()) return std::nullopt;
      return it->second;
    };
    return with_derivatives(std::move(label), kind, order, std::move(base), std::move(derivatives));
  }

  static FunctionalTable from_law(Label label, FunctionalKind kind, int order, const Law& law,
                                  DerivativeStreams derivatives = {}) {
    if (law.name == "zero_derivatives" && !derivatives.empty())
      throw Error(Errc::invalid_argument, "zero_derivatives law does not take derivative streams");
    auto base = [law](const Word& w) -> std::optional<Rational> {
      for (const auto& g : w)
        if (g != law.generator) return std::nullopt;
      return law.moment(w.size());
    };
    return with_derivatives(std::move(label), kind, order, std::move(base), std::move(derivatives));
  }

  static FunctionalTable from_jets(Label label, FunctionalKind kind, int order, std::map<Word, Jet> jets) {
    for (const auto& [w, j] : jets)
      if (j.order() != order) throw Error(Errc::order_mismatch, "moment jet for '" + word_key(w) + "'");
    return FunctionalTable(std::move(label), kind, order, [m = std::move(jets)](const Word& w) -> std::optional<Jet> {
      auto it = m.find(w);
      if (it == m.end()) return std::nullopt;
      return it->second;
    });
  }

  const Label& label() const noexcept { return label_; }
  FunctionalKind kind() const noexcept { return kind_; }
  int order() const noexcept { return order_; }

  Jet moment(const Word& w) const {
    if (w.empty()) return Jet::unit(order_);
    auto j = (*source_)(w);
    if (!j)
      throw Error(Errc::missing_moment,
                  std::string(to_string(kind_)) + "_" + label_ + "(" + word_key(w) + ") is not defined");
    if (j->order() != order_) throw Error(Errc::order_mismatch, "moment jet for '" + word_key(w) + "'");
    return *j;
  }

 private:
  static FunctionalTable with_derivatives(Label label, FunctionalKind kind, int order,
                                          std::function<std::optional<Rational>(const Word&)> base,
                                          DerivativeStreams derivatives) {
    if (static_cast<int>(derivatives.size()) > order)
      throw Error(Errc::order_exceeded, "derivative streams beyond the jet order");
    std::vector<Rational> inv_fact;
    for (std::size_t k = 1; k <= derivatives.size(); ++k) inv_fact.push_back(1 / factorial(static_cast<unsigned>(k)));
    Source src = [order, base = std::move(base), d = std::move(derivatives),
                  inv_fact = std::move(inv_fact)](const Word& w) -> std::optional<Jet> {
      auto v = base(w);
      if (!v) return std::nullopt;
      Jet j = Jet::constant(*v, order);
      for (std::size_t k = 0; k < d.size(); ++k) {
        auto it = d[k].find(w);
        if (it != d[k].end()) j[k + 1] = it->second * inv_fact[k];
      }
      return j;
    };
    return FunctionalTable(std::move(label), kind, order, std::move(src));
  }

  Label label_;
  FunctionalKind kind_;
  int order_;
  std::shared_ptr<const Source> source_;
};

/// Linear extension of the table: sum of coefficient * moment jet.
inline Jet evaluate(const FunctionalTable& table, const Element& e) {
  if (e.label() != table.label())
    throw Error(Errc::label_mismatch, "element of '" + e.label() + "' under a functional of '" + table.label() + "'");
  Jet out(table.order());
  for (const auto& [w, c] : e.terms()) out += table.moment(w) * c;
  return out;
}

/// e - phi(e) 1, using the undeformed (order-0) value.
inline Element center(const Element& e, const FunctionalTable& table) {
  return e - Element::scalar(e.label(), evaluate(table, e).value());
}

inline bool is_centered(const Element& e, const FunctionalTable& table) { return evaluate(table, e).value() == 0; }

}  // namespace motzfree
