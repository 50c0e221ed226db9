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
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qpdisc/matkernel.hpp"
#include "qpdisc/ppovm.hpp"
#include "qpdisc/quantum.hpp"
#include "qpdisc/state_discrimination.hpp"

// Exact discrimination of two unitary channels. Everything reduces to the
// completely bounded process fidelity
//
//   D = min over states xi of |tr(xi U^dag V)|,
//
// the distance from the origin to the convex hull of the eigenvalues of
// U^dag V on the unit circle. If the origin lies outside the hull,
// D = (1/2) min_{k,l} |e^{i theta_k} + e^{i theta_l}| and the optimal
// reduced test state carries weight 1/2 on each of the two minimizing
// eigenvectors; otherwise D = 0 and a convex witness with at most three
// weights reaches the origin. The optimal test state is the product
// |0> (x) psi_S with psi_S = sum_k sqrt(w_k) phi_k, shared by the
// minimum-error and the unambiguous task.

namespace qpdisc {

struct UnitaryPair {
  ComplexMatrix u;
  ComplexMatrix v;
  double eta_u;
  double eta_v;
  int dim;

  UnitaryPair(ComplexMatrix u_in, ComplexMatrix v_in, double eu, double ev,
              double tol = kDefaultTol)
      : u(std::move(u_in)), v(std::move(v_in)), eta_u(eu), eta_v(ev) {
    if (!is_square(u) || !is_square(v) || u.rows() != v.rows())
      throw DimensionMismatch("UnitaryPair: matrices must be square of equal dimension");
    if (!is_unitary(u, tol)) throw NotUnitary("UnitaryPair: u is not unitary within tol");
    if (!is_unitary(v, tol)) throw NotUnitary("UnitaryPair: v is not unitary within tol");
    if (eta_u < 0 || eta_v < 0 || std::abs(eta_u + eta_v - 1.0) > 1e-12)
      throw ValidationError("UnitaryPair: priors must be nonnegative and sum to 1");
    dim = static_cast<int>(u.rows());
  }
};

struct FidelityResult {
  double d_value = 0.0;
  bool zero_in_hull = false;
  // Minimizing eigenphase pair (indices into eigenphases); absent when the
  // origin lies in the hull.
  std::optional<std::pair<int, int>> optimal_pair;
  RealVector eigenphases;      // of u^dag v, ascending in (-pi, pi]
  ComplexMatrix eigenvectors;  // columns matched to eigenphases
  RealVector xi_weights;       // diagonal of the optimal xi in the eigenbasis
};

namespace detail {

// Indices of cluster representatives after deduplicating phases within
// 1e-9; the representative is the lowest index of its cluster.
inline std::vector<int> phase_cluster_reps(const RealVector& phases) {
  std::vector<int> reps;
  const int n = static_cast<int>(phases.size());
  int start = 0;
  while (start < n) {
    reps.push_back(start);
    int stop = start + 1;
    while (stop < n && phases(stop) - phases(stop - 1) < 1e-9) ++stop;
    start = stop;
  }
  // The circle closes: a cluster straddling +pi/-pi merges into the first.
  if (reps.size() > 1) {
    const double wrap = phases(reps.front()) + 2.0 * std::numbers::pi - phases(n - 1);
    if (wrap < 1e-9) reps.pop_back();
  }
  return reps;
}

// Convex weights on <= 3 unit-circle points reaching the origin. Scans
// antipodal pairs first, then lexicographic triples, and returns the first
// candidate whose combination has modulus <= 1e-9.
inline void zero_witness(const std::vector<int>& reps, const RealVector& phases,
                         RealVector& weights) {
  const int m = static_cast<int>(reps.size());
  std::vector<Complex> z(m);
  for (int i = 0; i < m; ++i)
    z[i] = Complex(std::cos(phases(reps[i])), std::sin(phases(reps[i])));

  double best_res = std::numeric_limits<double>::infinity();
  RealVector best = RealVector::Zero(weights.size());

  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const double res = 0.5 * std::abs(z[a] + z[b]);
      if (res < best_res) {
        best_res = res;
        best.setZero();
        best(reps[a]) = 0.5;
        best(reps[b]) = 0.5;
      }
      if (best_res <= 1e-9) {
        weights = best;
        return;
      }
    }

  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c) {
        Eigen::Matrix3d lhs;
        lhs << z[a].real(), z[b].real(), z[c].real(),
               z[a].imag(), z[b].imag(), z[c].imag(),
               1.0, 1.0, 1.0;
        const Eigen::Vector3d rhs(0.0, 0.0, 1.0);
        Eigen::Vector3d w = lhs.colPivHouseholderQr().solve(rhs);
        if (w.minCoeff() < -1e-12) continue;
        for (int i = 0; i < 3; ++i) w(i) = std::max(w(i), 0.0);
        w /= w.sum();
        const double res = std::abs(w(0) * z[a] + w(1) * z[b] + w(2) * z[c]);
        if (res < best_res) {
          best_res = res;
          best.setZero();
          best(reps[a]) = w(0);
          best(reps[b]) = w(1);
          best(reps[c]) = w(2);
        }
        if (best_res <= 1e-9) {
          weights = best;
          return;
        }
      }

  weights = best;  // best effort; tests pin the residual
}

}  // namespace detail

/// Completely bounded process fidelity of a unitary pair via the eigenphase
/// convex hull of u^dag v. The origin counts as contained when the largest
/// circular gap between consecutive phases is <= pi + 1e-12; an exactly-pi
/// gap yields a two-point 1/2,1/2 witness.
inline FidelityResult cb_process_fidelity(const UnitaryPair& p, double tol = kDefaultTol) {
  const ComplexMatrix w = p.u.adjoint() * p.v;
  const UnitaryEig eig = unitary_eigphases(w, std::max(10.0 * tol, 1e-12));
  const int d = p.dim;

  FidelityResult out;
  out.eigenphases = eig.phases;
  out.eigenvectors = eig.eigenvectors;
  out.xi_weights = RealVector::Zero(d);

  const std::vector<int> reps = detail::phase_cluster_reps(eig.phases);
  const int m = static_cast<int>(reps.size());

  if (m == 1) {
    out.d_value = 1.0;
    out.optimal_pair = {reps[0], reps[0]};
    out.xi_weights(reps[0]) = 1.0;
    return out;
  }

  double max_gap = 0.0;
  for (int i = 0; i + 1 < m; ++i)
    max_gap = std::max(max_gap, eig.phases(reps[i + 1]) - eig.phases(reps[i]));
  max_gap = std::max(max_gap,
                     eig.phases(reps[0]) + 2.0 * std::numbers::pi - eig.phases(reps[m - 1]));

  if (max_gap <= std::numbers::pi + 1e-12) {
    out.zero_in_hull = true;
    out.d_value = 0.0;
    detail::zero_witness(reps, eig.phases, out.xi_weights);
    return out;
  }

  double best = std::numeric_limits<double>::infinity();
  int ka = reps[0], kb = reps[0];
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const Complex za(std::cos(eig.phases(reps[a])), std::sin(eig.phases(reps[a])));
      const Complex zb(std::cos(eig.phases(reps[b])), std::sin(eig.phases(reps[b])));
      const double val = 0.5 * std::abs(za + zb);
      if (val < best) {
        best = val;
        ka = reps[a];
        kb = reps[b];
      }
    }
  out.d_value = best;
  out.optimal_pair = {ka, kb};
  out.xi_weights(ka) = 0.5;
  out.xi_weights(kb) = 0.5;
  return out;
}

/// Grid-restricted minimization of |sum_k w_k e^{i theta_k}| over the weight
/// simplex with step 1/grid_resolution. An independent check on the hull
/// geometry: always an upper estimate of the exact d_value, within about
/// 2/grid_resolution of it.
inline double fidelity_bruteforce_oracle(const UnitaryPair& p, int grid_resolution) {
  if (grid_resolution < 1) throw std::invalid_argument("grid resolution must be positive");
  const ComplexMatrix w = p.u.adjoint() * p.v;
  const UnitaryEig eig = unitary_eigphases(w, 1e-7);
  const std::vector<int> reps = detail::phase_cluster_reps(eig.phases);
  const int m = static_cast<int>(reps.size());
  if (m == 1) return 1.0;

  std::vector<Complex> z(m);
  for (int i = 0; i < m; ++i)
    z[i] = Complex(std::cos(eig.phases(reps[i])), std::sin(eig.phases(reps[i])));

  const int n = grid_resolution;
  double best_sq = std::numeric_limits<double>::infinity();
  // Counts on z[0..m-2] enumerated recursively; the remainder goes to the
  // last point. The innermost loop walks the count in unit steps so each
  // grid node costs one complex add.
  std::function<void(int, int, Complex)> scan = [&](int idx, int rem, Complex s) {
    if (idx == m - 2) {
      Complex t = s + static_cast<double>(rem) * z[m - 1];
      const Complex dz = z[idx] - z[m - 1];
      for (int c = 0; c <= rem; ++c) {
        best_sq = std::min(best_sq, std::norm(t));
        t += dz;
      }
      return;
    }
    for (int c = 0; c <= rem; ++c)
      scan(idx + 1, rem - c, s + static_cast<double>(c) * z[idx]);
  };
  scan(0, n, Complex(0, 0));
  return std::sqrt(best_sq) / n;
}

/// System-side optimal test ket psi_S = sum_k sqrt(w_k) phi_k.
inline ComplexVector optimal_system_test_ket(const FidelityResult& fr) {
  ComplexVector psi = ComplexVector::Zero(fr.eigenphases.size());
  for (Eigen::Index k = 0; k < fr.xi_weights.size(); ++k)
    if (fr.xi_weights(k) > 0.0) psi += std::sqrt(fr.xi_weights(k)) * fr.eigenvectors.col(k);
  psi.normalize();
  return psi;
}

namespace detail {

// Product strategy |0> (x) psi_S with system-side effects lifted to the
// full ancilla (x) system space.
inline TestStrategy product_strategy(const ComplexVector& psi_s,
                                     const std::vector<ComplexMatrix>& system_effects) {
  const int d = static_cast<int>(psi_s.size());
  ComplexVector anc = ComplexVector::Zero(d);
  anc(0) = 1.0;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> povm;
  povm.reserve(system_effects.size());
  for (const auto& e : system_effects) povm.push_back(kron(id, e));
  return TestStrategy(kron(anc, psi_s), std::move(povm), d, d);
}

}  // namespace detail

struct MinErrorUnitaryResult {
  double p_error;
  TestStrategy strategy;  // outcome 0 concludes U, outcome 1 concludes V
  FidelityResult fidelity;
};

/// Optimal minimum-error discrimination of two unitary channels:
/// p_error = (1 - sqrt(1 - 4 eta_u eta_v D^2)) / 2, achieved ancilla-free by
/// the test state psi_S and the Helstrom measurement on U psi_S vs V psi_S.
inline MinErrorUnitaryResult min_error_unitary(const UnitaryPair& p, double tol = kDefaultTol) {
  FidelityResult fr = cb_process_fidelity(p, tol);
  const double dd = fr.d_value;
  const double p_error =
      0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * p.eta_u * p.eta_v * dd * dd)));

  const ComplexVector psi_s = optimal_system_test_ket(fr);
  const ComplexVector out_u = p.u * psi_s;
  const ComplexVector out_v = p.v * psi_s;
  const MinErrorSolution sol = helstrom(
      TwoStateProblem(QuantumState::pure(out_u), QuantumState::pure(out_v), p.eta_u, p.eta_v));
  TestStrategy strategy =
      detail::product_strategy(psi_s, {sol.effect1.matrix(), sol.effect2.matrix()});
  return {p_error, std::move(strategy), std::move(fr)};
}

struct UnambiguousUnitaryResult {
  double p_fail;
  TestStrategy strategy;  // outcomes: conclude U, conclude V, inconclusive
  FidelityResult fidelity;
};

/// Optimal unambiguous discrimination of two unitary channels. With
/// eta_max >= eta_min, p_fail = 2 sqrt(eta_u eta_v) D when
/// D <= sqrt(eta_min/eta_max), else eta_min + eta_max D^2. The strategy is
/// the same test state with the unambiguous pure-state effects on the
/// channel outputs.
inline UnambiguousUnitaryResult unambiguous_unitary(const UnitaryPair& p,
                                                    double tol = kDefaultTol) {
  FidelityResult fr = cb_process_fidelity(p, tol);
  const double dd = fr.d_value;
  const double eta_max = std::max(p.eta_u, p.eta_v);
  const double eta_min = std::min(p.eta_u, p.eta_v);
  double p_fail;
  if (dd <= std::sqrt(eta_min / eta_max))
    p_fail = 2.0 * std::sqrt(p.eta_u * p.eta_v) * dd;
  else
    p_fail = eta_min + eta_max * dd * dd;

  const ComplexVector psi_s = optimal_system_test_ket(fr);
  const ComplexVector out_u = p.u * psi_s;
  const ComplexVector out_v = p.v * psi_s;
  const UnambiguousSolution sol = unambiguous_pure(out_u, out_v, p.eta_u, p.eta_v, tol);
  TestStrategy strategy = detail::product_strategy(
      psi_s,
      {sol.effect1.matrix(), sol.effect2.matrix(), sol.effect_inconclusive.matrix()});
  return {p_fail, std::move(strategy), std::move(fr)};
}

struct SaturationResult {
  double lower_bound;  // 2 sqrt(eta_u eta_v) D
  double p_fail;
  bool saturated;
  double gap;
};

/// Compares the achieved unambiguous failure probability against the
/// fidelity lower bound 2 sqrt(eta_u eta_v) D. Saturation holds exactly in
/// the D <= sqrt(eta_min/eta_max) branch; beyond it the gap equals
/// (sqrt(eta_min) - D sqrt(eta_max))^2.
inline SaturationResult saturation_check(const UnitaryPair& p, double tol = kDefaultTol) {
  const UnambiguousUnitaryResult res = unambiguous_unitary(p, tol);
  const double bound = 2.0 * std::sqrt(p.eta_u * p.eta_v) * res.fidelity.d_value;
  const double gap = res.p_fail - bound;
  return {bound, res.p_fail, std::abs(gap) <= 1e-9, gap};
}

}  // namespace qpdisc
