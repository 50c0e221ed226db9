// Copyright 2026 The qpdisc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qpdisc/report.hpp"

namespace {

struct Options {
  std::string input;
  std::string priors;
  std::string format = "json";
  std::string hull_csv;
  std::optional<long> shots;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> restarts;
};

void add_common_options(CLI::App* sub, Options& opt) {
  sub->add_option("--input", opt.input, "problem file (JSON)")->required();
  sub->add_option("--priors", opt.priors, "override priors, e.g. 0.5,0.5");
  sub->add_option("--shots", opt.shots, "override simulation shot count");
  sub->add_option("--seed", opt.seed, "override simulation seed");
  sub->add_option("--tol", opt.tol, "override structural tolerance");
  sub->add_option("--restarts", opt.restarts, "override optimizer restarts");
  sub->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--hull-csv", opt.hull_csv, "write eigenphase hull data as CSV");
}

void apply_overrides(qpdisc::ProblemFile& pf, const Options& opt) {
  if (!opt.priors.empty()) {
    const auto comma = opt.priors.find(',');
    if (comma == std::string::npos)
      throw qpdisc::ParseError("--priors: expected two comma-separated numbers");
    double a = 0, b = 0;
    try {
      a = std::stod(opt.priors.substr(0, comma));
      b = std::stod(opt.priors.substr(comma + 1));
    } catch (const std::exception&) {
      throw qpdisc::ParseError("--priors: expected two comma-separated numbers");
    }
    if (a < 0 || b < 0 || std::abs(a + b - 1.0) > 1e-12)
      throw qpdisc::ValidationError("--priors: priors must be nonnegative and sum to 1");
    pf.eta1 = a;
    pf.eta2 = b;
  }
  if (opt.shots) {
    if (*opt.shots <= 0) throw qpdisc::ValidationError("--shots must be positive");
    pf.shots = *opt.shots;
  }
  if (opt.seed) pf.seed = *opt.seed;
  if (opt.tol) {
    if (*opt.tol <= 0) throw qpdisc::ValidationError("--tol must be positive");
    pf.tol = *opt.tol;
  }
  if (opt.restarts) {
    if (*opt.restarts <= 0) throw qpdisc::ValidationError("--restarts must be positive");
    pf.optimizer.restarts = *opt.restarts;
  }
}

int run(const std::string& task_name, const Options& opt) {
  qpdisc::ProblemFile pf = qpdisc::parse_problem_file(opt.input);
  apply_overrides(pf, opt);
  const qpdisc::json report = qpdisc::run_task(pf, qpdisc::task_from_string(task_name));

  if (!opt.hull_csv.empty()) {
    std::ofstream csv(opt.hull_csv);
    if (!csv) throw qpdisc::Error("cannot open '" + opt.hull_csv + "' for writing");
    csv << qpdisc::render_hull_csv(report);
  }

  if (opt.format == "text")
    std::cout << qpdisc::render_text(report);
  else
    std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-shot discrimination of quantum channel pairs"};
  app.require_subcommand(1);

  Options opt;
  std::string chosen;
  for (const char* name : {"fidelity", "min-error", "unambiguous", "bounds", "simulate",
                           "report-all"}) {
    CLI::App* sub = app.add_subcommand(name);
    add_common_options(sub, opt);
    sub->callback([&chosen, name] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run(chosen, opt);
  } catch (const qpdisc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const qpdisc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 3;
  } catch (const qpdisc::UnsupportedTask& e) {
    std::cerr << "unsupported task: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
