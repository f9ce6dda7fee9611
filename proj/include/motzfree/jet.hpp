#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "motzfree/error.hpp"
#include "motzfree/rational.hpp"

namespace motzfree {

/// Truncated Taylor series f(t) = c_0 + c_1 t + ... + c_M t^M + o(t^M).
///
/// Coefficients follow the Taylor convention c_k = f^{(k)}(0) / k!, so the
/// k-th derivative at zero is k! * c_k (see derivative()). Products are
/// Cauchy products truncated at the common order M; mixing orders is an error.
class Jet {
 public:
  Jet() : coeffs_(1) {}
  explicit Jet(int order) : coeffs_(check_order(order) + 1) {}
  Jet(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) {
    if (coeffs_.empty()) coeffs_.resize(1);
  }
  explicit Jet(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.resize(1);
  }

  static Jet constant(const Rational& value, int order) {
    Jet j(order);
    j.coeffs_[0] = value;
    return j;
  }
  static Jet unit(int order) { return constant(Rational(1), order); }
  /// f(t) = t, truncated; the zero jet when order is 0.
  static Jet variable(int order) {
    Jet j(order);
    if (order >= 1) j.coeffs_[1] = 1;
    return j;
  }

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t k) const { return coeffs_.at(k); }
  Rational& operator[](std::size_t k) { return coeffs_.at(k); }
  const Rational& value() const noexcept { return coeffs_.front(); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  /// m-th derivative at t = 0, i.e. m! * c_m.
  Rational derivative(int m) const {
    if (m < 0 || m > order())
      throw Error(Errc::order_exceeded,
                  "derivative of order " + std::to_string(m) + " on a jet of order " + std::to_string(order()));
    return factorial(static_cast<unsigned>(m)) * coeffs_[static_cast<std::size_t>(m)];
  }

  Jet truncate(int order) const {
    if (order < 0 || order > this->order())
      throw Error(Errc::order_exceeded, "cannot truncate to order " + std::to_string(order));
    return Jet(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  Jet& operator+=(const Jet& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  Jet& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Jet operator*(Jet a, const Rational& s) { return a *= s; }
  friend Jet operator*(const Rational& s, Jet a) { return a *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.require_same_order(b);
    const std::size_t n = a.coeffs_.size();
    Jet out(static_cast<int>(n) - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j < n; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
  }

  friend bool operator==(const Jet& a, const Jet& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (k) s += ", ";
      s += motzfree::to_string(coeffs_[k]);
    }
    return s + ")";
  }

 private:
  static std::size_t check_order(int order) {
    if (order < 0) throw Error(Errc::invalid_argument, "negative jet order");
    return static_cast<std::size_t>(order);
  }
  void require_same_order(const Jet& o) const {
    if (o.coeffs_.size() != coeffs_.size())
      throw Error(Errc::order_mismatch,
                  "jet orders " + std::to_string(order()) + " and " + std::to_string(o.order()));
  }

  std::vector<Rational> coeffs_;
};

}  // namespace motzfree
