#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/evaluate.hpp"
#include "cli/problem.hpp"
#include "cli/suites.hpp"
#include "motzfree/motzfree.hpp"

using namespace motzfree;
using namespace motzfree::cli;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int usage_error(const std::string& code, const std::string& message, const std::string& path = "") {
  json e{{"error", {{"code", code}, {"message", message}}}};
  if (!path.empty()) e["error"]["path"] = path;
  std::cerr << e.dump(2) << "\n";
  return kUsage;
}

MotzkinWord read_word(const std::string& text, bool steps) {
  return steps ? MotzkinWord::from_steps(text) : MotzkinWord::parse(text);
}

json positions_json(const std::vector<std::size_t>& p) {
  json a = json::array();
  for (auto k : p) a.push_back(k + 1);
  return a;
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motzkin-path decomposition of free, Boolean and c-free product moments"};
  app.require_subcommand(1);

  auto* enumerate = app.add_subcommand("enumerate", "list reduced Motzkin words of length n");
  std::size_t n = 0;
  bool as_steps = false, as_letters = false;
  enumerate->add_option("--n", n, "word length")->required()->check(CLI::PositiveNumber);
  auto* steps_flag = enumerate->add_flag("--steps", as_steps, "print step words (U/H/D)");
  enumerate->add_flag("--letters", as_letters, "print letter words (default)")->excludes(steps_flag);

  std::string word_text;
  bool word_steps = false;
  auto add_word = [&](CLI::App* sub) {
    sub->add_option("--word", word_text, "digit string, comma list, or U/H/D with --steps")->required();
    sub->add_flag("--steps", word_steps, "read --word as a step word");
  };
  auto* partition = app.add_subcommand("partition", "level return partition and local maxima");
  add_word(partition);
  auto* adapted = app.add_subcommand("adapted", "check a label tuple for adaptedness");
  add_word(adapted);
  std::string labels_text;
  adapted->add_option("--labels", labels_text, "comma-separated labels")->required();
  auto* classify = app.add_subcommand("classify", "flat / pyramid / pyramid_then_flat / other");
  add_word(classify);

  auto* count = app.add_subcommand("count", "number of words of length n with k local maxima");
  std::size_t count_n = 0, count_k = 0;
  count->add_option("--n", count_n, "word length")->required()->check(CLI::PositiveNumber);
  count->add_option("--local-maxima", count_k, "number of local maxima")->required();

  auto* eval = app.add_subcommand("eval", "evaluate the queries of a problem file");
  std::string input, format = "json";
  bool skip_centering = false;
  eval->add_option("--input", input, "problem file ('-' for stdin)")->required();
  eval->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  eval->add_flag("--skip-centering", skip_centering,
                 "evaluate closed forms even when the centering hypothesis fails (tagged in the output)");

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string suite = "all";
  SuiteOptions sopts;
  std::size_t n_max = 0, cases = 0;
  bool timing = false;
  std::vector<std::string> suite_names{"all"};
  for (const auto& [name, fn] : suites()) suite_names.push_back(name);
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(suite_names));
  auto* n_max_opt = verify->add_option("--n-max", n_max, "largest word length")->check(CLI::PositiveNumber);
  auto* cases_opt = verify->add_option("--cases", cases, "random cases per suite");
  verify->add_option("--seed", sopts.seed, "random seed");
  verify->add_flag("--timing", timing, "include wall-clock seconds in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*enumerate) {
      json words = json::array();
      for (const auto& w : enumerate_words(n)) words.push_back(as_steps ? w.steps() : w.to_string());
      emit({{"n", n}, {"count", words.size()}, {"words", words}});
      return kOk;
    }
    if (*partition) {
      const auto w = read_word(word_text, word_steps);
      json blocks = json::array();
      for (const auto& b : level_return_partition(w).blocks)
        blocks.push_back({{"level", b.level}, {"positions", positions_json(b.positions)}});
      emit({{"word", w.to_string()}, {"blocks", blocks}, {"local_maxima", positions_json(local_maxima(w))}});
      return kOk;
    }
    if (*adapted) {
      const auto w = read_word(word_text, word_steps);
      const auto labels = split_labels(labels_text);
      const auto report = is_adapted(w, labels);
      json out{{"word", w.to_string()}, {"labels", labels}, {"adapted", report.adapted}};
      if (report.violation) {
        const auto& v = *report.violation;
        out["violation"] = {
            {"kind", v.kind == AdaptednessViolation::Kind::label_uniformity ? "label_uniformity" : "nested_alternation"},
            {"positions", positions_json({v.first, v.second})},
            {"message", v.describe()}};
        if (v.nested_block) {
          const auto pi = level_return_partition(w);
          out["violation"]["nested_block"] = positions_json(pi.blocks[*v.nested_block].positions);
        }
      }
      emit(out);
      return kOk;
    }
    if (*classify) {
      const auto w = read_word(word_text, word_steps);
      const auto c = classify_path(w);
      json out{{"word", w.to_string()},
               {"kind", std::string(to_string(c.kind))},
               {"pyramid_compatible", c.pyramid_compatible},
               {"local_maxima", positions_json(local_maxima(w))}};
      if (c.middle) out["middle"] = *c.middle + 1;
      if (c.split) out["split"] = *c.split + 1;
      emit(out);
      return kOk;
    }
    if (*count) {
      emit({{"n", count_n}, {"local_maxima", count_k}, {"count", count_by_local_maxima(count_n, count_k)}});
      return kOk;
    }
    if (*eval) {
      std::string text;
      if (input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
      } else {
        std::ifstream in(input);
        if (!in) return usage_error("IoError", "cannot read '" + input + "'");
        text.assign(std::istreambuf_iterator<char>(in), {});
      }
      const auto doc = parse_problem(text);
      EvalOptions opts;
      if (skip_centering) opts.policy = CenteringPolicy::skip;
      const auto report = evaluate_problem(doc, opts);
      if (format == "csv") std::cout << to_csv(report, doc.ctx.order());
      else emit(report.body);
      return report.had_errors ? kUsage : kOk;
    }
    if (*verify) {
      if (*n_max_opt) sopts.n_max = n_max;
      if (*cases_opt) sopts.cases = cases;
      json out{{"seed", sopts.seed}, {"suites", json::array()}};
      bool passed = true;
      for (const auto& [name, fn] : suites()) {
        if (suite != "all" && suite != name) continue;
        const auto r = fn(sopts);
        json s{{"name", r.name},       {"passed", r.passed}, {"checks", r.checks},
               {"n_max", r.n_max},     {"cases", r.cases},   {"counterexample", r.counterexample}};
        if (timing) s["seconds"] = r.seconds;
        out["suites"].push_back(std::move(s));
        passed = passed && r.passed;
      }
      out["passed"] = passed;
      emit(out);
      return passed ? kOk : kFail;
    }
  } catch (const ProblemError& e) {
    return usage_error(e.kind_name(), e.what(), e.path());
  } catch (const Error& e) {
    return usage_error(std::string(to_string(e.code())), e.what());
  }
  return kUsage;
}
