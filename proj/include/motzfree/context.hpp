#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motzfree/element.hpp"
#include "motzfree/error.hpp"
#include "motzfree/table.hpp"

namespace motzfree {

enum class Mode { free, cfree };

constexpr std::string_view to_string(Mode m) noexcept { return m == Mode::free ? "free" : "cfree"; }

struct AlgebraSpec {
  std::vector<Generator> generators;
  FunctionalTable phi;
  std::optional<FunctionalTable> psi;
};

/// A problem instance: the product mode, the jet order and, per algebra label,
/// its generators with the phi family (and the psi family in c-free mode).
class SpecContext {
 public:
  SpecContext(Mode mode, int order) : mode_(mode), order_(order) {
    if (order < 0) throw Error(Errc::invalid_argument, "negative jet order");
  }

  void add_algebra(const Label& label, std::vector<Generator> generators, FunctionalTable phi,
                   std::optional<FunctionalTable> psi = std::nullopt) {
    if (algebras_.count(label)) throw Error(Errc::invalid_argument, "duplicate algebra label '" + label + "'");
    if (mode_ == Mode::cfree && !psi) throw Error(Errc::missing_psi, "algebra '" + label + "' has no psi family");
    check_table(label, phi);
    if (psi) check_table(label, *psi);
    algebras_.emplace(label, AlgebraSpec{std::move(generators), std::move(phi), std::move(psi)});
  }

  Mode mode() const noexcept { return mode_; }
  int order() const noexcept { return order_; }
  const std::map<Label, AlgebraSpec>& algebras() const noexcept { return algebras_; }

  const AlgebraSpec& algebra(const Label& label) const {
    auto it = algebras_.find(label);
    if (it == algebras_.end()) throw Error(Errc::unknown_algebra, "'" + label + "'");
    return it->second;
  }

  const FunctionalTable& phi(const Label& label) const { return algebra(label).phi; }

  const FunctionalTable& psi(const Label& label) const {
    if (mode_ != Mode::cfree) throw Error(Errc::missing_psi, "psi queried in free mode");
    return *algebra(label).psi;
  }

  const FunctionalTable& table(const Label& label, FunctionalKind kind) const {
    return kind == FunctionalKind::phi ? phi(label) : psi(label);
  }

  /// Free-mode context whose phi family is this context's psi family; the
  /// psi side of a c-free product is the free product of the psi_i.
  SpecContext psi_view() const {
    SpecContext out(Mode::free, order_);
    for (const auto& [label, spec] : algebras_) {
      if (!spec.psi) throw Error(Errc::missing_psi, "algebra '" + label + "' has no psi family");
      out.algebras_.emplace(label, AlgebraSpec{spec.generators, *spec.psi, std::nullopt});
    }
    return out;
  }

  /// Free-mode context over the phi families alone.
  SpecContext phi_view() const {
    SpecContext out(Mode::free, order_);
    for (const auto& [label, spec] : algebras_) out.algebras_.emplace(label, AlgebraSpec{spec.generators, spec.phi, std::nullopt});
    return out;
  }

  /// Throws unless every generator of e is declared for its algebra.
  void check_element(const Element& e) const {
    const auto& gens = algebra(e.label()).generators;
    for (const auto& [w, c] : e.terms())
      for (const auto& g : w)
        if (std::find(gens.begin(), gens.end(), g) == gens.end())
          throw Error(Errc::unknown_generator, "'" + g + "' is not a generator of '" + e.label() + "'");
  }

 private:
  void check_table(const Label& label, const FunctionalTable& t) const {
    if (t.label() != label) throw Error(Errc::label_mismatch, "table for '" + t.label() + "' attached to '" + label + "'");
    if (t.order() != order_) throw Error(Errc::order_mismatch, "table order differs from the context jet order");
  }

  Mode mode_;
  int order_;
  std::map<Label, AlgebraSpec> algebras_;
};

}  // namespace motzfree
