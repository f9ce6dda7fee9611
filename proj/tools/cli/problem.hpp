#pragma once

// Problem documents: JSON in, validated SpecContext plus queries out.
//
// {
//   "mode": "free" | "cfree",
//   "jet_order": 2,
//   "algebras": [
//     {"label": "A", "generators": ["x"],
//      "phi": {"law": "semicircle", "params": {"variance": "1"}, "derivatives": {"1": {"x": "1"}}},
//      "psi": {"moments": {"x": "0", "x.x": "2"}}}
//   ],
//   "queries": [
//     {"factors": [{"label": "A", "poly": [{"coeff": "1", "word": "x"}]}],
//      "compute": ["moment", "derivative:1", "terms"]}
//   ]
// }
//
// Rationals are strings "p/q" or integers; words join generators with '.'
// and "" is the unit.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "motzfree/motzfree.hpp"

namespace motzfree::cli {

using nlohmann::json;

class ProblemError : public std::runtime_error {
 public:
  enum class Kind { syntax, schema, unknown_law, duplicate_label };

  ProblemError(Kind kind, std::string path, const std::string& what)
      : std::runtime_error(what), kind_(kind), path_(std::move(path)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::syntax: return "SyntaxError";
      case Kind::schema: return "SchemaError";
      case Kind::unknown_law: return "UnknownLaw";
      case Kind::duplicate_label: return "DuplicateLabel";
    }
    return "SchemaError";
  }

 private:
  Kind kind_;
  std::string path_;
};

struct Query {
  std::vector<Element> factors;
  std::vector<std::string> compute;
};

struct ProblemDocument {
  SpecContext ctx;
  std::vector<Query> queries;
  json canonical;  // the input with rationals in lowest terms
};

namespace detail {

[[noreturn]] inline void schema(const std::string& path, const std::string& what) {
  throw ProblemError(ProblemError::Kind::schema, path, path + ": " + what);
}

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(path + "." + key, "missing");
  return *it;
}

inline std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

inline Rational rational_at(const json& j, const std::string& path) {
  std::string text;
  if (j.is_string()) text = j.get<std::string>();
  else if (j.is_number_integer()) text = j.dump();
  else schema(path, "expected a rational string");
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

inline void check_word(const Word& w, const std::vector<Generator>& gens, const std::string& path) {
  for (const auto& g : w)
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) schema(path, "undeclared generator '" + g + "'");
}

inline Word word_at(const std::string& key, const std::vector<Generator>& gens, const std::string& path) {
  Word w;
  try {
    w = parse_word_key(key);
  } catch (const Error& e) {
    schema(path, e.what());
  }
  check_word(w, gens, path);
  return w;
}

/// Parses a {word: rational} map; echoes it canonically into `out`.
inline std::map<Word, Rational> moment_map(const json& j, const std::vector<Generator>& gens,
                                           const std::string& path, json& out) {
  if (!j.is_object()) schema(path, "expected an object of word: rational");
  std::map<Word, Rational> m;
  out = json::object();
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "[\"" + key + "\"]";
    const Rational q = rational_at(value, p);
    m[word_at(key, gens, p)] = q;
    out[key] = to_string(q);
  }
  return m;
}

inline FunctionalTable table_at(const json& j, const Label& label, FunctionalKind kind, int order,
                                const std::vector<Generator>& gens, const std::string& path, json& out) {
  if (!j.is_object()) schema(path, "expected an object");
  out = json::object();
  for (const auto& [key, value] : j.items())
    if (key != "law" && key != "params" && key != "moments" && key != "derivatives")
      schema(path + "." + key, "unknown key");

  FunctionalTable::DerivativeStreams streams;
  if (auto it = j.find("derivatives"); it != j.end()) {
    if (!it->is_object()) schema(path + ".derivatives", "expected an object keyed by order");
    std::map<int, std::map<Word, Rational>> by_order;
    out["derivatives"] = json::object();
    for (const auto& [key, value] : it->items()) {
      const std::string p = path + ".derivatives[\"" + key + "\"]";
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        schema(p, "derivative order must be an integer");
      }
      if (k < 1 || k > order) schema(p, "derivative order outside 1.." + std::to_string(order));
      json echo;
      by_order[k] = moment_map(value, gens, p, echo);
      out["derivatives"][key] = echo;
    }
    if (!by_order.empty()) {
      streams.resize(static_cast<std::size_t>(by_order.rbegin()->first));
      for (auto& [k, m] : by_order) streams[static_cast<std::size_t>(k - 1)] = std::move(m);
    }
  }

  const bool has_law = j.contains("law"), has_moments = j.contains("moments");
  if (has_law == has_moments) schema(path, "exactly one of 'law' or 'moments' is required");
  if (has_moments) {
    json echo;
    auto m = moment_map(j.at("moments"), gens, path + ".moments", echo);
    out["moments"] = echo;
    return FunctionalTable::from_moments(label, kind, order, std::move(m), std::move(streams));
  }

  const std::string name = string_at(j.at("law"), path + ".law");
  out["law"] = name;
  LawParams params;
  if (gens.size() != 1) schema(path + ".law", "built-in laws need exactly one generator");
  params.generator = gens.front();
  if (auto it = j.find("params"); it != j.end()) {
    const std::string p = path + ".params";
    if (!it->is_object()) schema(p, "expected an object");
    out["params"] = json::object();
    for (const auto& [key, value] : it->items()) {
      if (key == "variance") {
        params.variance = rational_at(value, p + ".variance");
        out["params"]["variance"] = to_string(*params.variance);
      } else if (key == "c") {
        params.c = rational_at(value, p + ".c");
        out["params"]["c"] = to_string(*params.c);
      } else if (key == "moments") {
        if (!value.is_array()) schema(p + ".moments", "expected an array");
        out["params"]["moments"] = json::array();
        for (std::size_t k = 0; k < value.size(); ++k) {
          params.moments.push_back(rational_at(value[k], p + ".moments[" + std::to_string(k) + "]"));
          out["params"]["moments"].push_back(to_string(params.moments.back()));
        }
      } else {
        schema(p + "." + key, "unknown parameter");
      }
    }
  }
  try {
    return FunctionalTable::from_law(label, kind, order, builtin_law(name, params), std::move(streams));
  } catch (const Error& e) {
    if (e.code() == Errc::unknown_law)
      throw ProblemError(ProblemError::Kind::unknown_law, path + ".law", path + ".law: unknown law '" + name + "'");
    schema(path, e.what());
  }
}

inline Element element_at(const json& j, const SpecContext& ctx, const std::string& path, json& out) {
  const Label label = string_at(field(j, "label", path), path + ".label");
  if (!ctx.algebras().count(label)) schema(path + ".label", "unknown algebra '" + label + "'");
  const auto& gens = ctx.algebra(label).generators;
  const json& poly = field(j, "poly", path);
  if (!poly.is_array()) schema(path + ".poly", "expected an array of terms");
  Element e(label);
  out = {{"label", label}, {"poly", json::array()}};
  for (std::size_t t = 0; t < poly.size(); ++t) {
    const std::string p = path + ".poly[" + std::to_string(t) + "]";
    const Rational c = rational_at(field(poly[t], "coeff", p), p + ".coeff");
    const std::string key = string_at(field(poly[t], "word", p), p + ".word");
    e.add_term(word_at(key, gens, p + ".word"), c);
    out["poly"].push_back({{"coeff", to_string(c)}, {"word", key}});
  }
  return e;
}

inline void check_compute(const std::string& what, int order, const std::string& path) {
  static const std::vector<std::string> plain{"moment",       "terms",        "leibniz",
                                              "characteristic", "boolean", "cfree_leibniz", "cfree_closed"};
  if (std::find(plain.begin(), plain.end(), what) != plain.end()) return;
  if (what.rfind("derivative:", 0) == 0) {
    const std::string k = what.substr(11);
    if (!k.empty() && k.find_first_not_of("0123456789") == std::string::npos && k.size() < 6) {
      const int m = std::stoi(k);
      if (m >= 0 && m <= order) return;
      schema(path, "derivative order " + k + " exceeds jet_order");
    }
  }
  schema(path, "unknown quantity '" + what + "'");
}

}  // namespace detail

inline ProblemDocument parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProblemError(ProblemError::Kind::syntax, "$", e.what());
  }
  using detail::field;
  using detail::schema;
  if (!doc.is_object()) schema("$", "expected an object");

  const std::string mode_text = detail::string_at(field(doc, "mode", "$"), "$.mode");
  if (mode_text != "free" && mode_text != "cfree") schema("$.mode", "expected \"free\" or \"cfree\"");
  const Mode mode = mode_text == "free" ? Mode::free : Mode::cfree;
  const json& order_j = field(doc, "jet_order", "$");
  if (!order_j.is_number_integer() || order_j.get<long>() < 0 || order_j.get<long>() > 64)
    schema("$.jet_order", "expected an integer in 0..64");
  const int order = order_j.get<int>();

  ProblemDocument out{SpecContext(mode, order), {}, {{"mode", mode_text}, {"jet_order", order}}};
  const json& algebras = field(doc, "algebras", "$");
  if (!algebras.is_array() || algebras.empty()) schema("$.algebras", "expected a nonempty array");
  out.canonical["algebras"] = json::array();
  for (std::size_t a = 0; a < algebras.size(); ++a) {
    const std::string path = "$.algebras[" + std::to_string(a) + "]";
    const json& alg = algebras[a];
    const Label label = detail::string_at(field(alg, "label", path), path + ".label");
    if (label.empty()) schema(path + ".label", "empty label");
    if (out.ctx.algebras().count(label))
      throw ProblemError(ProblemError::Kind::duplicate_label, path + ".label",
                         path + ".label: duplicate label '" + label + "'");
    const json& gens_j = field(alg, "generators", path);
    if (!gens_j.is_array() || gens_j.empty()) schema(path + ".generators", "expected a nonempty array");
    std::vector<Generator> gens;
    for (std::size_t g = 0; g < gens_j.size(); ++g) {
      const std::string p = path + ".generators[" + std::to_string(g) + "]";
      auto name = detail::string_at(gens_j[g], p);
      if (name.empty() || name.find('.') != std::string::npos) schema(p, "generator names are nonempty without '.'");
      if (std::find(gens.begin(), gens.end(), name) != gens.end()) schema(p, "repeated generator");
      gens.push_back(std::move(name));
    }
    json echo{{"label", label}, {"generators", gens}};
    json phi_echo;
    auto phi = detail::table_at(field(alg, "phi", path), label, FunctionalKind::phi, order, gens, path + ".phi",
                                phi_echo);
    echo["phi"] = phi_echo;
    std::optional<FunctionalTable> psi;
    if (alg.contains("psi")) {
      if (mode == Mode::free) schema(path + ".psi", "psi is only allowed in cfree mode");
      json psi_echo;
      psi = detail::table_at(alg.at("psi"), label, FunctionalKind::psi, order, gens, path + ".psi", psi_echo);
      echo["psi"] = psi_echo;
    } else if (mode == Mode::cfree) {
      schema(path + ".psi", "missing (required in cfree mode)");
    }
    out.ctx.add_algebra(label, gens, std::move(phi), std::move(psi));
    out.canonical["algebras"].push_back(std::move(echo));
  }

  out.canonical["queries"] = json::array();
  if (doc.contains("queries")) {
    const json& queries = doc.at("queries");
    if (!queries.is_array()) schema("$.queries", "expected an array");
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const std::string path = "$.queries[" + std::to_string(q) + "]";
      const json& factors = field(queries[q], "factors", path);
      if (!factors.is_array() || factors.empty()) schema(path + ".factors", "expected a nonempty array");
      Query query;
      json echo{{"factors", json::array()}};
      for (std::size_t k = 0; k < factors.size(); ++k) {
        json fe;
        query.factors.push_back(
            detail::element_at(factors[k], out.ctx, path + ".factors[" + std::to_string(k) + "]", fe));
        echo["factors"].push_back(std::move(fe));
      }
      if (queries[q].contains("compute")) {
        const json& compute = queries[q].at("compute");
        if (!compute.is_array()) schema(path + ".compute", "expected an array");
        for (std::size_t c = 0; c < compute.size(); ++c) {
          const std::string p = path + ".compute[" + std::to_string(c) + "]";
          auto what = detail::string_at(compute[c], p);
          detail::check_compute(what, order, p);
          query.compute.push_back(std::move(what));
        }
      } else {
        query.compute = {"moment"};
      }
      echo["compute"] = query.compute;
      out.queries.push_back(std::move(query));
      out.canonical["queries"].push_back(std::move(echo));
    }
  }
  return out;
}

}  // namespace motzfree::cli
