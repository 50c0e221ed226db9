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

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qpdisc/matkernel.hpp"
#include "qpdisc/quantum.hpp"

// Two-state discrimination: Helstrom minimum-error for arbitrary mixed
// states, and unambiguous discrimination of two pure states with arbitrary
// priors. The pure-state machinery is reused verbatim by the unitary-channel
// module, which reduces to it on the channel outputs.

namespace qpdisc {

struct TwoStateProblem {
  QuantumState rho1;
  QuantumState rho2;
  double eta1;
  double eta2;

  TwoStateProblem(QuantumState r1, QuantumState r2, double e1, double e2)
      : rho1(std::move(r1)), rho2(std::move(r2)), eta1(e1), eta2(e2) {
    if (rho1.dim() != rho2.dim())
      throw DimensionMismatch("TwoStateProblem: states have different dimensions");
    if (eta1 < 0 || eta2 < 0 || std::abs(eta1 + eta2 - 1.0) > 1e-12)
      throw ValidationError("TwoStateProblem: priors must be nonnegative and sum to 1");
  }
};

struct MinErrorSolution {
  double p_error;
  Effect effect1;
  Effect effect2;
};

/// Minimum-error measurement: p_error = (1 - ||eta1 rho1 - eta2 rho2||_tr)/2,
/// achieved by the projector onto the strictly positive eigenspace of
/// Delta = eta1 rho1 - eta2 rho2. Eigenvectors with |lambda| <= tol go to
/// effect2, which fixes the split deterministically.
inline MinErrorSolution helstrom(const TwoStateProblem& p, double tol = kDefaultTol) {
  const ComplexMatrix delta = p.eta1 * p.rho1.rho() - p.eta2 * p.rho2.rho();
  const HermitianEig eig = hermitian_eig(delta, tol);
  const int d = p.rho1.dim();

  ComplexMatrix pi_plus = ComplexMatrix::Zero(d, d);
  double tn = 0.0;
  for (int i = 0; i < d; ++i) {
    tn += std::abs(eig.eigenvalues(i));
    if (eig.eigenvalues(i) > tol)
      pi_plus += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
  }
  pi_plus = 0.5 * (pi_plus + pi_plus.adjoint());

  const double p_error = 0.5 * (1.0 - tn);
  return {p_error, Effect(pi_plus), Effect(ComplexMatrix::Identity(d, d) - pi_plus)};
}

struct UnambiguousSolution {
  double p_fail;
  Effect effect1;         // concludes state 1, never fires on state 2
  Effect effect2;         // concludes state 2, never fires on state 1
  Effect effect_inconclusive;
};

/// Optimal unambiguous discrimination of two pure states psi, phi with
/// priors eta1, eta2. With s = |<psi|phi>| and eta1 >= eta2 (handled by
/// internal relabeling):
///
///   p_fail = 2 sqrt(eta1 eta2) s   if s <= sqrt(eta2/eta1)
///   p_fail = eta2 + eta1 s^2       otherwise,
///
/// with conclusive effects c1 (Q - |phi><phi|) and c2 (Q - |psi><psi|) on
/// the two-dimensional span, the coefficients clamped to [0, 1].
inline UnambiguousSolution unambiguous_pure(const ComplexVector& psi_in,
                                            const ComplexVector& phi_in, double eta1, double eta2,
                                            double tol = kDefaultTol) {
  if (psi_in.size() != phi_in.size())
    throw DimensionMismatch("unambiguous_pure: vectors have different dimensions");
  if (std::abs(psi_in.norm() - 1.0) > tol || std::abs(phi_in.norm() - 1.0) > tol)
    throw NotNormalized("unambiguous_pure: input vectors must be unit vectors");
  if (eta1 < 0 || eta2 < 0 || std::abs(eta1 + eta2 - 1.0) > 1e-12)
    throw ValidationError("unambiguous_pure: priors must be nonnegative and sum to 1");

  const bool swapped = eta1 < eta2;
  const ComplexVector psi = phase_normalized(swapped ? phi_in : psi_in);
  const ComplexVector phi = phase_normalized(swapped ? psi_in : phi_in);
  const double ea = swapped ? eta2 : eta1;  // ea >= eb
  const double eb = swapped ? eta1 : eta2;

  const double s = std::min(1.0, std::abs(psi.dot(phi)));
  const double one_minus_s2 = 1.0 - s * s;

  double c1 = 0.0, c2 = 0.0;
  if (one_minus_s2 > 1e-14 && eb > 0.0) {
    c1 = std::min((1.0 - std::sqrt(eb / ea) * s) / one_minus_s2, 1.0);
    c2 = std::max((1.0 - std::sqrt(ea / eb) * s) / one_minus_s2, 0.0);
  } else if (one_minus_s2 > 1e-14) {
    // eb = 0: never conclude the zero-prior state.
    c1 = std::min(1.0 / one_minus_s2, 1.0);
    c2 = 0.0;
  }

  const int d = static_cast<int>(psi.size());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  // Q - |phi><phi| built as a rank-one projector onto the component of psi
  // orthogonal to phi; keeps the no-error overlaps at machine zero.
  ComplexMatrix f1 = ComplexMatrix::Zero(d, d);
  ComplexMatrix f2 = ComplexMatrix::Zero(d, d);
  ComplexVector q1 = psi - phi * phi.dot(psi);
  if (q1.norm() > 1e-12) {
    q1.normalize();
    f1 = c1 * (q1 * q1.adjoint());
  }
  ComplexVector q2 = phi - psi * psi.dot(phi);
  if (q2.norm() > 1e-12) {
    q2.normalize();
    f2 = c2 * (q2 * q2.adjoint());
  }

  double p_fail;
  const double branch = eb > 0.0 ? std::sqrt(eb / ea) : 0.0;
  if (s <= branch)
    p_fail = 2.0 * std::sqrt(ea * eb) * s;
  else
    p_fail = eb + ea * s * s;

  Effect e_psi(f1);
  Effect e_phi(f2);
  Effect e_inc(id - f1 - f2);
  if (swapped) return {p_fail, std::move(e_phi), std::move(e_psi), std::move(e_inc)};
  return {p_fail, std::move(e_psi), std::move(e_phi), std::move(e_inc)};
}

/// Bayes posterior over hypotheses given one observed outcome.
/// likelihoods[k][j] = p(outcome j | hypothesis k).
inline std::vector<double> posterior(const std::vector<double>& priors,
                                     const std::vector<std::vector<double>>& likelihoods,
                                     int outcome) {
  if (likelihoods.size() != priors.size())
    throw DimensionMismatch("posterior: table rows must match priors");
  std::vector<double> post(priors.size());
  double total = 0.0;
  for (std::size_t k = 0; k < priors.size(); ++k) {
    if (outcome < 0 || static_cast<std::size_t>(outcome) >= likelihoods[k].size())
      throw DimensionMismatch("posterior: outcome index out of range");
    post[k] = priors[k] * likelihoods[k][outcome];
    total += post[k];
  }
  if (total <= 0.0)
    throw ZeroTotalProbability("posterior: outcome has zero total probability");
  for (auto& x : post) x /= total;
  return post;
}

}  // namespace qpdisc
