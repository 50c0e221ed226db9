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

#include <utility>
#include <vector>

#include "qpdisc/matkernel.hpp"
#include "qpdisc/quantum.hpp"
#include "qpdisc/validation.hpp"

// Process POVMs: the statistics of one use of an unknown channel. Effects
// M_j live on the reference (x) system space and satisfy
// sum_j M_j = xi^T (x) I for a state xi (the reduced test state entering the
// channel). Probabilities are p_j = tr(M_j Omega_E).
//
// A test strategy (pure test state psi on ancilla (x) system plus an output
// POVM {F_j}) induces the PPOVM M_j = (B^dag (x) I) F_j (B (x) I), where
// B is the row-major d x d reshape of psi, i.e. psi = sqrt(d) (B (x) I) psi_+
// and xi^T = B^dag B.

namespace qpdisc {

struct ProcessPOVM {
  std::vector<ComplexMatrix> effects;  // d^2 x d^2 each
  int dim = 0;
  ComplexMatrix xi;  // recovered normalization state; may be invalid for bad input

  /// Builds a PPOVM from raw effects, recovering xi from the effect sum.
  /// No hard validation here; use validate_ppovm for diagnostics.
  static ProcessPOVM from_effects(std::vector<ComplexMatrix> effects, int dim) {
    ProcessPOVM p;
    p.dim = dim;
    p.effects = std::move(effects);
    const Eigen::Index d2 = static_cast<Eigen::Index>(dim) * dim;
    ComplexMatrix sum = ComplexMatrix::Zero(d2, d2);
    for (const auto& m : p.effects) {
      if (m.rows() != d2 || m.cols() != d2)
        throw DimensionMismatch("ProcessPOVM: effects must be d^2 x d^2");
      sum += m;
    }
    // sum = xi^T (x) I, so tracing out the second factor leaves d * xi^T.
    p.xi = (partial_trace(sum, dim, dim, Subsystem::A) / static_cast<double>(dim)).transpose();
    return p;
  }
};

/// One-use test of a channel: pure test state on ancilla (x) system and a
/// POVM measured on the output. The pure-state realization theorem makes an
/// ancilla of the system's dimension sufficient.
struct TestStrategy {
  ComplexVector test_state;                // on anc (x) system
  std::vector<ComplexMatrix> output_povm;  // on anc (x) system
  int anc_dim = 0;
  int sys_dim = 0;

  TestStrategy(ComplexVector psi, std::vector<ComplexMatrix> povm, int anc, int sys)
      : test_state(std::move(psi)), output_povm(std::move(povm)), anc_dim(anc), sys_dim(sys) {
    const Eigen::Index n = static_cast<Eigen::Index>(anc_dim) * sys_dim;
    if (test_state.size() != n)
      throw InvalidStrategy("TestStrategy: test state dimension is not anc*sys");
    if (std::abs(test_state.norm() - 1.0) > 1e-9)
      throw InvalidStrategy("TestStrategy: test state is not normalized");
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (const auto& f : output_povm) {
      if (f.rows() != n || f.cols() != n)
        throw InvalidStrategy("TestStrategy: POVM element dimension mismatch");
      sum += f;
    }
    if (max_abs(sum - ComplexMatrix::Identity(n, n)) > 1e-9)
      throw InvalidStrategy("TestStrategy: POVM does not sum to identity");
  }
};

/// Diagnostics: PSD-ness of each effect, the xi^T (x) I normalization, and
/// validity of the recovered xi as a state.
inline ValidationReport validate_ppovm(const ProcessPOVM& p, double tol = kDefaultTol) {
  ValidationReport report;
  const Eigen::Index d2 = static_cast<Eigen::Index>(p.dim) * p.dim;
  ComplexMatrix sum = ComplexMatrix::Zero(d2, d2);
  for (std::size_t j = 0; j < p.effects.size(); ++j) {
    const double min_eig = min_eigenvalue(p.effects[j]);
    report.add("effect_" + std::to_string(j) + "_psd", min_eig >= -tol,
               std::max(0.0, -min_eig));
    sum += p.effects[j];
  }
  const ComplexMatrix expected =
      kron(p.xi.transpose(), ComplexMatrix::Identity(p.dim, p.dim));
  const double norm_res = max_abs(sum - expected);
  report.add("normalization_xiT_otimes_I", norm_res <= 1e-9, norm_res);

  const double xi_herm = hermiticity_residual(p.xi);
  report.add("xi_hermitian", xi_herm <= tol, xi_herm);
  const double xi_min = min_eigenvalue(p.xi);
  report.add("xi_psd", xi_min >= -tol, std::max(0.0, -xi_min));
  const double xi_tr = std::abs(p.xi.trace().real() - 1.0) + std::abs(p.xi.trace().imag());
  report.add("xi_unit_trace", xi_tr <= 1e-9, xi_tr);
  return report;
}

/// Row-major reshape of the test state: B(i, j) = <i (x) j | psi>.
inline ComplexMatrix test_state_operator(const ComplexVector& psi, int anc_dim, int sys_dim) {
  ComplexMatrix b(anc_dim, sys_dim);
  for (int i = 0; i < anc_dim; ++i)
    for (int j = 0; j < sys_dim; ++j) b(i, j) = psi(static_cast<Eigen::Index>(i) * sys_dim + j);
  return b;
}

/// Converts a strategy into its PPOVM: M_j = (B^dag (x) I) F_j (B (x) I).
/// Requires ancilla dimension equal to the system dimension.
inline ProcessPOVM ppovm_of_strategy(const TestStrategy& s) {
  if (s.anc_dim != s.sys_dim)
    throw InvalidStrategy("ppovm_of_strategy: ancilla dimension must equal system dimension");
  const int d = s.sys_dim;
  const ComplexMatrix b = test_state_operator(s.test_state, d, d);
  const ComplexMatrix left = kron(b.adjoint().eval(), ComplexMatrix::Identity(d, d));
  const ComplexMatrix right = kron(b, ComplexMatrix::Identity(d, d));
  std::vector<ComplexMatrix> effects;
  effects.reserve(s.output_povm.size());
  for (const auto& f : s.output_povm) effects.push_back(left * f * right);
  return ProcessPOVM::from_effects(std::move(effects), d);
}

/// Outcome distribution of one channel use: p_j = tr(M_j Omega_E).
/// Rounding negatives within -1e-10 are clamped to zero; anything more
/// negative indicates a logic error and throws.
inline std::vector<double> outcome_probabilities(const ProcessPOVM& p, const Channel& ch) {
  if (ch.dim() != p.dim)
    throw DimensionMismatch("outcome_probabilities: channel/PPOVM dimension mismatch");
  const ComplexMatrix& omega = ch.choi();
  std::vector<double> probs;
  probs.reserve(p.effects.size());
  for (const auto& m : p.effects) {
    double pj = (m * omega).trace().real();
    if (pj < -1e-10)
      throw Error("outcome_probabilities: probability " + std::to_string(pj) +
                  " below clamping threshold");
    probs.push_back(std::max(pj, 0.0));
  }
  return probs;
}

}  // namespace qpdisc
