#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "motzfree/error.hpp"
#include "motzfree/rational.hpp"

namespace motzfree {

using Label = std::string;
using Generator = std::string;
/// A monomial word inside one algebra; the empty word is the unit.
using Word = std::vector<Generator>;

struct Monomial {
  Label algebra;
  Word word;
};

/// Words are written with generators joined by '.', the unit as "".
inline std::string word_key(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += '.';
    s += w[k];
  }
  return s;
}

inline Word parse_word_key(const std::string& key) {
  Word w;
  if (key.empty()) return w;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    w.push_back(key.substr(start, dot - start));
    if (w.back().empty()) throw Error(Errc::invalid_argument, "empty generator in word '" + key + "'");
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return w;
}

/// Noncommutative polynomial in the generators of a single algebra, kept in
/// expanded form with no zero coefficients.
class Element {
 public:
  Element() = default;
  explicit Element(Label algebra) : label_(std::move(algebra)) {}

  static Element unit(const Label& algebra) { return scalar(algebra, Rational(1)); }
  static Element scalar(const Label& algebra, const Rational& c) {
    Element e(algebra);
    e.add_term({}, c);
    return e;
  }
  static Element monomial(const Label& algebra, Word word, const Rational& c = Rational(1)) {
    Element e(algebra);
    e.add_term(std::move(word), c);
    return e;
  }
  static Element generator(const Label& algebra, const Generator& g) { return monomial(algebra, {g}); }

  const Label& label() const noexcept { return label_; }
  const std::map<Word, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of the unit monomial.
  Rational constant_term() const {
    auto it = terms_.find(Word{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  bool is_unit() const { return is_scalar() && constant_term() == 1; }

  void add_term(Word word, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(word), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Element& operator+=(const Element& o) {
    require_same_label(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    require_same_label(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  Element& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }

  /// Bilinear concatenation of words; both factors must live in one algebra.
  friend Element operator*(const Element& a, const Element& b) {
    a.require_same_label(b);
    Element out(a.label_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(std::move(w), ca * cb);
      }
    return out;
  }

  friend bool operator==(const Element&, const Element&) = default;

  /// Degree of the longest monomial (0 for scalars and the zero element).
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += motzfree::to_string(c);
      if (!w.empty()) s += "*" + word_key(w);
    }
    return s;
  }

 private:
  void require_same_label(const Element& o) const {
    if (o.label_ != label_) throw Error(Errc::label_mismatch, "elements of algebras '" + label_ + "' and '" + o.label_ + "'");
  }

  Label label_;
  std::map<Word, Rational> terms_;
};

}  // namespace motzfree
