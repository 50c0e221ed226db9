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

#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpdisc/bounds.hpp"
#include "qpdisc/gates.hpp"
#include "qpdisc/optimizer.hpp"
#include "qpdisc/quantum.hpp"

// Problem files are JSON. Complex numbers are two-element arrays [re, im],
// matrices are row-major nested arrays of those, and channel records are
// {"type": "unitary", "matrix": ...} or {"type": "kraus", "operators": [...]}.
// The named gates I, X, Y, Z, H, CNOT, SWAP are accepted wherever a matrix
// is expected. Malformed structure raises ParseError; well-formed input
// whose numbers violate an invariant raises ValidationError.

namespace qpdisc {

using json = nlohmann::ordered_json;

struct ProblemFile {
  Channel ch1;
  Channel ch2;
  double eta1 = 0.5;
  double eta2 = 0.5;
  double tol = kDefaultTol;
  OptimizerConfig optimizer;
  long shots = 100000;
  std::uint64_t seed = 2026;

  ChannelPairProblem problem() const { return ChannelPairProblem(ch1, ch2, eta1, eta2); }
};

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

namespace detail {

inline Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(where + ": complex numbers must be two-element arrays [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto gate = named_gate(j.get<std::string>());
    if (!gate) throw ParseError(where + ": unknown named gate '" + j.get<std::string>() + "'");
    return *gate;
  }
  if (!j.is_array() || j.empty())
    throw ParseError(where + ": matrix must be a nonempty nested array or a gate name");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw ParseError(where + ": matrix rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError(where + ": matrix rows have inconsistent lengths");
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = complex_from_json(j[i][k], where + "[" + std::to_string(i) + "][" +
                                               std::to_string(k) + "]");
  }
  return m;
}

inline Channel channel_from_json(const json& jc, double tol, const std::string& where) {
  if (!jc.is_object() || !jc.contains("type") || !jc["type"].is_string())
    throw ParseError(where + ": channel records need a string 'type' field");
  const std::string type = jc["type"].get<std::string>();
  if (type == "unitary") {
    if (!jc.contains("matrix")) throw ParseError(where + ": unitary channel needs 'matrix'");
    const ComplexMatrix u = matrix_from_json(jc["matrix"], where + ".matrix");
    if (!is_square(u)) throw ValidationError(where + ": unitary matrix must be square");
    const ValidationReport rep = validate_unitary_data(u, tol);
    if (!rep.all_passed())
      throw ValidationError(where + ": unitarity residual " +
                            std::to_string(rep.checks[0].residual) + " exceeds tol");
    return Channel::unitary(u, tol);
  }
  if (type == "kraus") {
    if (!jc.contains("operators") || !jc["operators"].is_array() || jc["operators"].empty())
      throw ParseError(where + ": kraus channel needs a nonempty 'operators' array");
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < jc["operators"].size(); ++i)
      ops.push_back(matrix_from_json(jc["operators"][i],
                                     where + ".operators[" + std::to_string(i) + "]"));
    for (const auto& k : ops)
      if (!is_square(k) || k.rows() != ops.front().rows())
        throw ValidationError(where + ": kraus operators must be square of equal dimension");
    const ValidationReport rep = validate_kraus_data(ops, tol);
    if (!rep.all_passed())
      throw ValidationError(where + ": completeness residual " +
                            std::to_string(rep.checks[0].residual) + " exceeds tol");
    return Channel::kraus(std::move(ops), tol);
  }
  throw ParseError(where + ": unknown channel type '" + type + "'");
}

}  // namespace detail

inline ProblemFile parse_problem(const json& root) {
  if (!root.is_object()) throw ParseError("problem: top level must be an object");
  if (!root.contains("channels") || !root["channels"].is_array() ||
      root["channels"].size() != 2)
    throw ParseError("problem: 'channels' must be an array of exactly two records");
  if (!root.contains("priors") || !root["priors"].is_array() || root["priors"].size() != 2 ||
      !root["priors"][0].is_number() || !root["priors"][1].is_number())
    throw ParseError("problem: 'priors' must be an array of two numbers");

  double tol = kDefaultTol;
  if (root.contains("tol")) {
    if (!root["tol"].is_number() || root["tol"].get<double>() <= 0)
      throw ParseError("problem: 'tol' must be a positive number");
    tol = root["tol"].get<double>();
  }

  Channel ch1 = detail::channel_from_json(root["channels"][0], tol, "channels[0]");
  Channel ch2 = detail::channel_from_json(root["channels"][1], tol, "channels[1]");
  if (ch1.dim() != ch2.dim())
    throw ValidationError("problem: channels have different dimensions");

  const double eta1 = root["priors"][0].get<double>();
  const double eta2 = root["priors"][1].get<double>();
  if (eta1 < 0 || eta2 < 0 || std::abs(eta1 + eta2 - 1.0) > 1e-12)
    throw ValidationError("problem: priors must be nonnegative and sum to 1 (got " +
                          std::to_string(eta1) + ", " + std::to_string(eta2) + ")");

  ProblemFile pf{std::move(ch1), std::move(ch2), eta1, eta2, tol, OptimizerConfig{}, 100000,
                 2026};

  if (root.contains("shots")) {
    if (!root["shots"].is_number_integer() || root["shots"].get<long>() <= 0)
      throw ParseError("problem: 'shots' must be a positive integer");
    pf.shots = root["shots"].get<long>();
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer())
      throw ParseError("problem: 'seed' must be an integer");
    pf.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("optimizer")) {
    const json& jo = root["optimizer"];
    if (!jo.is_object()) throw ParseError("problem: 'optimizer' must be an object");
    if (jo.contains("restarts")) pf.optimizer.restarts = jo["restarts"].get<int>();
    if (jo.contains("max_iterations"))
      pf.optimizer.max_iterations = jo["max_iterations"].get<int>();
    if (jo.contains("seed")) pf.optimizer.seed = jo["seed"].get<std::uint64_t>();
    if (jo.contains("convergence_tol"))
      pf.optimizer.convergence_tol = jo["convergence_tol"].get<double>();
    if (pf.optimizer.restarts <= 0 || pf.optimizer.max_iterations <= 0 ||
        pf.optimizer.convergence_tol <= 0)
      throw ParseError("problem: optimizer counts and tolerance must be positive");
  }
  return pf;
}

inline ProblemFile parse_problem(std::istream& in) {
  json root;
  try {
    root = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
  return parse_problem(root);
}

inline ProblemFile parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("problem: cannot open '" + path + "'");
  return parse_problem(in);
}

inline json channel_to_json(const Channel& ch) {
  json jc;
  if (ch.kind() == Channel::Kind::Unitary) {
    jc["type"] = "unitary";
    jc["matrix"] = matrix_to_json(ch.unitary_matrix());
  } else {
    jc["type"] = "kraus";
    json ops = json::array();
    for (const auto& k : ch.kraus_operators()) ops.push_back(matrix_to_json(k));
    jc["operators"] = std::move(ops);
  }
  return jc;
}

/// Canonical echo of a parsed problem: gate shorthands expanded, every
/// default materialized. Re-parsing the echo reproduces the problem exactly.
inline json problem_to_json(const ProblemFile& pf) {
  json root;
  root["channels"] = json::array({channel_to_json(pf.ch1), channel_to_json(pf.ch2)});
  root["priors"] = json::array({pf.eta1, pf.eta2});
  root["tol"] = pf.tol;
  root["shots"] = pf.shots;
  root["seed"] = pf.seed;
  root["optimizer"] = {{"restarts", pf.optimizer.restarts},
                       {"max_iterations", pf.optimizer.max_iterations},
                       {"seed", pf.optimizer.seed},
                       {"convergence_tol", pf.optimizer.convergence_tol}};
  return root;
}

}  // namespace qpdisc
