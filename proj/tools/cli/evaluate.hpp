#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/problem.hpp"
#include "motzfree/motzfree.hpp"

namespace motzfree::cli {

struct EvalOptions {
  CenteringPolicy policy = CenteringPolicy::enforce;
};

struct EvalReport {
  json body;
  bool had_errors = false;
};

inline json jet_json(const Jet& j) {
  json a = json::array();
  for (const auto& c : j.coeffs()) a.push_back(to_string(c));
  return a;
}

inline json error_json(const Error& e) { return {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}; }

namespace detail {

inline json closed_value(const SpecContext& ctx, const FactorTuple& f, const std::string& what, const EvalOptions& opts) {
  const auto& policy = opts.policy;
  Rational v;
  if (what == "leibniz") v = leibniz_free(ctx, f, policy);
  else if (what == "characteristic") v = characteristic_free(ctx, f, policy);
  else if (what == "cfree_leibniz") v = cfree_leibniz(ctx, f, policy);
  else v = cfree_closed(ctx, f, policy);
  return {{"value", to_string(v)}, {"hypotheses_hold", satisfies_centering(ctx, f)}};
}

}  // namespace detail

inline json evaluate_query(const SpecContext& ctx, const Query& q, std::size_t index, const EvalOptions& opts,
                           bool& had_errors) {
  json out{{"query", index}};
  FactorTuple f;
  try {
    for (const auto& e : q.factors) ctx.check_element(e);
    f = normalize_alternating(q.factors);
  } catch (const Error& e) {
    out["error"] = error_json(e);
    had_errors = true;
    return out;
  }
  out["factors"] = json::array();
  for (const auto& e : f) out["factors"].push_back({{"label", e.label()}, {"element", e.to_string()}});

  std::optional<ProductMoment> moment;
  auto get_moment = [&]() -> const ProductMoment& {
    if (!moment) moment = product_moment(ctx, f);
    return *moment;
  };
  for (const auto& what : q.compute) {
    try {
      if (what == "moment") {
        out["moment"] = jet_json(get_moment().phi);
        if (get_moment().psi) out["psi_moment"] = jet_json(*get_moment().psi);
      } else if (what.rfind("derivative:", 0) == 0) {
        const int m = std::stoi(what.substr(11));
        out["derivatives"][std::to_string(m)] = to_string(get_moment().phi.derivative(m));
        if (get_moment().psi) out["psi_derivatives"][std::to_string(m)] = to_string(get_moment().psi->derivative(m));
      } else if (what == "terms") {
        out["terms"] = json::array();
        for (const auto& t : word_terms(ctx, f)) out["terms"].push_back({{"word", t.word.to_string()}, {"value", jet_json(t.value)}});
      } else if (what == "boolean") {
        out["boolean"] = jet_json(boolean_moment(ctx, f));
      } else {
        out[what] = detail::closed_value(ctx, f, what, opts);
      }
    } catch (const Error& e) {
      out["errors"][what] = error_json(e);
      had_errors = true;
    }
  }
  return out;
}

inline EvalReport evaluate_problem(const ProblemDocument& doc, const EvalOptions& opts = {}) {
  EvalReport r;
  r.body = {{"problem", doc.canonical}, {"results", json::array()}};
  for (std::size_t q = 0; q < doc.queries.size(); ++q)
    r.body["results"].push_back(evaluate_query(doc.ctx, doc.queries[q], q, opts, r.had_errors));
  return r;
}

/// query,quantity,word,value,c0..cM with one row per jet or scalar.
inline std::string to_csv(const EvalReport& r, int order) {
  std::ostringstream os;
  os << "query,quantity,word,value";
  for (int k = 0; k <= order; ++k) os << ",c" << k;
  os << "\n";
  auto jet_row = [&](std::size_t q, const std::string& what, const std::string& word, const json& jet) {
    os << q << "," << what << "," << word << ",";
    for (const auto& c : jet) os << "," << c.get<std::string>();
    os << "\n";
  };
  auto scalar_row = [&](std::size_t q, const std::string& what, const std::string& value) {
    os << q << "," << what << ",," << value;
    for (int k = 0; k <= order; ++k) os << ",";
    os << "\n";
  };
  for (const auto& res : r.body["results"]) {
    const auto q = res["query"].get<std::size_t>();
    if (res.contains("moment")) jet_row(q, "moment", "", res["moment"]);
    if (res.contains("psi_moment")) jet_row(q, "psi_moment", "", res["psi_moment"]);
    if (res.contains("boolean")) jet_row(q, "boolean", "", res["boolean"]);
    if (res.contains("derivatives"))
      for (const auto& [m, v] : res["derivatives"].items()) scalar_row(q, "derivative:" + m, v.get<std::string>());
    if (res.contains("psi_derivatives"))
      for (const auto& [m, v] : res["psi_derivatives"].items()) scalar_row(q, "psi_derivative:" + m, v.get<std::string>());
    if (res.contains("terms"))
      for (const auto& t : res["terms"]) jet_row(q, "term", t["word"].get<std::string>(), t["value"]);
    for (const char* k : {"leibniz", "characteristic", "cfree_leibniz", "cfree_closed"})
      if (res.contains(k)) scalar_row(q, k, res[k]["value"].get<std::string>());
  }
  return os.str();
}

}  // namespace motzfree::cli
