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

#include <cmath>
#include <optional>
#include <utility>

#include "qpdisc/matkernel.hpp"
#include "qpdisc/optimizer.hpp"
#include "qpdisc/quantum.hpp"
#include "qpdisc/unitary_discrimination.hpp"

// Bounds for discriminating arbitrary channel pairs through their Choi
// operators. The xi-minimizations have no closed form for general channels;
// they run a seeded derivative-free search over the chart xi = L L^dag / tr,
// and every such result is reported as "numerical", never as a certified
// optimum.

namespace qpdisc {

struct ChannelPairProblem {
  Channel ch1;
  Channel ch2;
  double eta1;
  double eta2;

  ChannelPairProblem(Channel c1, Channel c2, double e1, double e2)
      : ch1(std::move(c1)), ch2(std::move(c2)), eta1(e1), eta2(e2) {
    if (ch1.dim() != ch2.dim())
      throw DimensionMismatch("ChannelPairProblem: channels have different dimensions");
    if (eta1 < 0 || eta2 < 0 || std::abs(eta1 + eta2 - 1.0) > 1e-12)
      throw ValidationError("ChannelPairProblem: priors must be nonnegative and sum to 1");
  }

  bool both_unitary() const { return ch1.is_unitary_kind() && ch2.is_unitary_kind(); }
};

namespace detail {

inline ComplexMatrix density_from_params(const Eigen::VectorXd& x, int d) {
  ComplexMatrix l(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int k = 2 * (i * d + j);
      l(i, j) = Complex(x(k), x(k + 1));
    }
  ComplexMatrix xi = l * l.adjoint();
  const double tr = xi.trace().real();
  if (tr < 1e-12) return ComplexMatrix();
  xi /= tr;
  return 0.5 * (xi + xi.adjoint());
}

inline Eigen::VectorXd identity_chart_start(int d) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * d * d);
  for (int i = 0; i < d; ++i) x(2 * (i * d + i)) = 1.0;
  return x;
}

}  // namespace detail

struct FidelityBoundResult {
  double bound;            // 2 sqrt(eta1 eta2) * trace_value
  QuantumState argmin_xi;  // minimizer found by the search
  double trace_value;      // min_xi tr|sqrt(Omega_1) (xi^T (x) I) sqrt(Omega_2)|
};

/// Fidelity-type lower bound on the unambiguous failure probability,
/// p_fail >= 2 sqrt(eta1 eta2) min_xi tr|sqrt(Omega_1)(xi^T (x) I) sqrt(Omega_2)|.
/// The minimization is numerical: the returned value is an upper estimate of
/// the true minimum, so the bound is valid only up to the optimizer gap.
inline FidelityBoundResult fidelity_lower_bound(const ChannelPairProblem& p,
                                     const OptimizerConfig& cfg = {}) {
  const int d = p.ch1.dim();
  const ComplexMatrix s1 = psd_sqrt(p.ch1.choi(), 1e-8);
  const ComplexMatrix s2 = psd_sqrt(p.ch2.choi(), 1e-8);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  auto objective = [&](const Eigen::VectorXd& x) -> double {
    const ComplexMatrix xi = detail::density_from_params(x, d);
    if (xi.size() == 0) return 1e6;
    return trace_norm(s1 * kron(xi.transpose().eval(), id) * s2);
  };

  const MinimizeResult res =
      multistart_minimize(objective, detail::identity_chart_start(d), cfg);
  const ComplexMatrix xi = detail::density_from_params(res.x, d);
  return {2.0 * std::sqrt(p.eta1 * p.eta2) * res.value, QuantumState(xi), res.value};
}

/// Error bound from the maximally entangled test state:
/// p_error <= (1 - tr|eta1 Omega_1 - eta2 Omega_2| / d) / 2. Closed form.
inline double maxent_upper_bound(const ChannelPairProblem& p) {
  const int d = p.ch1.dim();
  const double tn = trace_norm(p.eta1 * p.ch1.choi() - p.eta2 * p.ch2.choi());
  return std::clamp(0.5 * (1.0 - tn / d), 0.0, 0.5);
}

/// Error bound from ancilla-free experiments:
/// p_error <= (1 - max_psi ||(eta1 E_1 - eta2 E_2)[P_psi]||_tr) / 2.
/// The maximization over the system test vector is numerical.
inline double no_ancilla_upper_bound(const ChannelPairProblem& p,
                                     const OptimizerConfig& cfg = {}) {
  const int d = p.ch1.dim();
  auto objective = [&](const Eigen::VectorXd& x) -> double {
    ComplexVector psi(d);
    for (int i = 0; i < d; ++i) psi(i) = Complex(x(2 * i), x(2 * i + 1));
    const double nrm = psi.norm();
    if (nrm < 1e-8) return 1e6;
    psi /= nrm;
    const ComplexMatrix proj = psi * psi.adjoint();
    const ComplexMatrix delta =
        p.eta1 * p.ch1.apply_raw(proj) - p.eta2 * p.ch2.apply_raw(proj);
    return -trace_norm(delta);
  };

  Eigen::VectorXd start = Eigen::VectorXd::Zero(2 * d);
  for (int i = 0; i < d; ++i) start(2 * i) = 1.0;
  const MinimizeResult res = multistart_minimize(objective, start, cfg);
  return 0.5 * (1.0 + res.value);
}

struct SandwichResult {
  double lhs;  // 1 - ||E_1 - E_2||_cb / 2
  double mid;  // D
  double rhs;  // sqrt(1 - ||E_1 - E_2||_cb^2 / 4)
  bool holds;
};

/// Fidelity sandwich for unitary pairs at equal priors, where the cb-norm
/// has the closed form ||E_U - E_V||_cb = 2 sqrt(1 - D^2). The three members
/// do not depend on the problem's priors.
inline SandwichResult sandwich_check(const ChannelPairProblem& p) {
  if (!p.both_unitary())
    throw NotUnitary("sandwich_check: the general-channel cb-norm is out of scope");
  const UnitaryPair pair(p.ch1.unitary_matrix(), p.ch2.unitary_matrix(), 0.5, 0.5);
  const double dd = cb_process_fidelity(pair).d_value;
  const double cb = 2.0 * std::sqrt(std::max(0.0, 1.0 - dd * dd));
  const double lhs = 1.0 - 0.5 * cb;
  const double rhs = std::sqrt(std::max(0.0, 1.0 - 0.25 * cb * cb));
  const bool holds = lhs <= dd + 1e-9 && dd <= rhs + 1e-9;
  return {lhs, dd, rhs, holds};
}

struct DistinguishabilityResult {
  bool distinguishable;
  std::optional<QuantumState> witness_xi;
  double residual;  // ||Omega_1 (xi (x) I) Omega_2||_max at the best candidate
  bool exact;       // true on the unitary path, false on the numerical one
};

namespace detail {

inline double perfect_dist_residual(const ComplexMatrix& omega1, const ComplexMatrix& omega2,
                                    const ComplexMatrix& xi, int d) {
  return max_abs(omega1 * kron(xi, ComplexMatrix::Identity(d, d)) * omega2);
}

// Witness in the basis that makes Omega_U (xi (x) I) Omega_V vanish: the
// condition contracts to tr(xi (U^dag V)^T) = 0, and the transposed product
// has the conjugated eigenvectors, so the hull weights go on those.
inline ComplexMatrix unitary_zero_witness(const FidelityResult& fr) {
  const Eigen::Index d = fr.eigenvectors.rows();
  ComplexMatrix xi = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < fr.xi_weights.size(); ++k)
    if (fr.xi_weights(k) > 0.0) {
      const ComplexVector v = fr.eigenvectors.col(k).conjugate();
      xi += fr.xi_weights(k) * (v * v.adjoint());
    }
  return 0.5 * (xi + xi.adjoint());
}

}  // namespace detail

/// Decides whether the two channels can be discriminated perfectly in one
/// shot, i.e. whether Omega_1 (xi (x) I) Omega_2 = O for some state xi.
/// Unitary pairs are decided exactly through D = 0; general pairs by a
/// numerical minimization of the residual, thresholded at 1e-7.
inline DistinguishabilityResult perfect_distinguishability(const ChannelPairProblem& p,
                                                           const OptimizerConfig& cfg = {}) {
  const int d = p.ch1.dim();
  const ComplexMatrix& omega1 = p.ch1.choi();
  const ComplexMatrix& omega2 = p.ch2.choi();

  if (p.both_unitary()) {
    const UnitaryPair pair(p.ch1.unitary_matrix(), p.ch2.unitary_matrix(), 0.5, 0.5);
    const FidelityResult fr = cb_process_fidelity(pair);
    const ComplexMatrix xi = detail::unitary_zero_witness(fr);
    const double residual = detail::perfect_dist_residual(omega1, omega2, xi, d);
    if (fr.d_value == 0.0)
      return {true, QuantumState(xi), residual, true};
    return {false, std::nullopt, residual, true};
  }

  auto objective = [&](const Eigen::VectorXd& x) -> double {
    const ComplexMatrix xi = detail::density_from_params(x, d);
    if (xi.size() == 0) return 1e6;
    return detail::perfect_dist_residual(omega1, omega2, xi, d);
  };
  const MinimizeResult res =
      multistart_minimize(objective, detail::identity_chart_start(d), cfg);
  const ComplexMatrix xi = detail::density_from_params(res.x, d);
  const bool ok = res.value <= 1e-7;
  return {ok, ok ? std::optional<QuantumState>(QuantumState(xi)) : std::nullopt, res.value,
          false};
}

}  // namespace qpdisc
