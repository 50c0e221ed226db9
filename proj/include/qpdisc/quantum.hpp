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

#include <limits>
#include <utility>
#include <vector>

#include "qpdisc/errors.hpp"
#include "qpdisc/matkernel.hpp"
#include "qpdisc/validation.hpp"

// States, effects, channels and Choi operators.
//
// Tensor convention, fixed globally: |i> (x) |j> maps to index i*dB + j, so
// the FIRST factor is the slow index. In bipartite channel objects the first
// factor is the reference/ancilla and the second is the system the channel
// acts on. Transposition is always taken in this computational basis.

namespace qpdisc {

/// Density operator: PSD with unit trace.
class QuantumState {
 public:
  explicit QuantumState(ComplexMatrix rho, double tol = kDefaultTol) : rho_(std::move(rho)) {
    if (!is_square(rho_)) throw ValidationError("QuantumState: matrix is not square");
    if (!is_psd(rho_, tol)) throw ValidationError("QuantumState: matrix is not PSD within tol");
    const double tr_res = std::abs(rho_.trace().real() - 1.0) + std::abs(rho_.trace().imag());
    if (tr_res > 1e-9)
      throw ValidationError("QuantumState: trace deviates from 1 by " + std::to_string(tr_res));
  }

  static QuantumState pure(const ComplexVector& psi, double tol = kDefaultTol) {
    const double nrm = psi.norm();
    if (std::abs(nrm - 1.0) > tol) throw NotNormalized("QuantumState::pure: vector norm != 1");
    return QuantumState((psi * psi.adjoint()) / (nrm * nrm), tol);
  }

  static QuantumState maximally_mixed(int dim) {
    return QuantumState(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  const ComplexMatrix& rho() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }

 private:
  ComplexMatrix rho_;
};

/// Measurement effect: O <= e <= I.
class Effect {
 public:
  explicit Effect(ComplexMatrix e, double tol = kDefaultTol) : e_(std::move(e)) {
    if (!is_hermitian(e_, tol)) throw ValidationError("Effect: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> s(0.5 * (e_ + e_.adjoint()));
    if (s.eigenvalues().minCoeff() < -tol || s.eigenvalues().maxCoeff() > 1.0 + tol)
      throw ValidationError("Effect: eigenvalues outside [0, 1] within tol");
  }

  const ComplexMatrix& matrix() const { return e_; }
  int dim() const { return static_cast<int>(e_.rows()); }

 private:
  ComplexMatrix e_;
};

/// Maximally entangled ket psi_+ = (1/sqrt d) sum_j |jj>.
inline ComplexVector max_entangled_ket(int d) {
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) psi(static_cast<Eigen::Index>(j) * d + j) = a;
  return psi;
}

/// Unnormalized projector Omega_+ = sum_{jk} |jj><kk| = d |psi_+><psi_+|;
/// trace d, rank 1.
inline ComplexMatrix omega_plus(int d) {
  if (d < 2) throw std::invalid_argument("omega_plus: dimension must be at least 2");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d) * d,
                                        static_cast<Eigen::Index>(d) * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      m(static_cast<Eigen::Index>(j) * d + j, static_cast<Eigen::Index>(k) * d + k) = 1.0;
  return m;
}

enum class Subsystem { A, B };

/// Partial trace of a (dA*dB)-dimensional operator, keeping one factor.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, int dA, int dB, Subsystem keep) {
  if (m.rows() != m.cols() || m.rows() != static_cast<Eigen::Index>(dA) * dB)
    throw DimensionMismatch("partial_trace: operator dimension is not dA*dB");
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dA, dA);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j)
        for (int b = 0; b < dB; ++b)
          out(i, j) += m(static_cast<Eigen::Index>(i) * dB + b,
                         static_cast<Eigen::Index>(j) * dB + b);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dB, dB);
  for (int a = 0; a < dA; ++a)
    for (int i = 0; i < dB; ++i)
      for (int j = 0; j < dB; ++j)
        out(i, j) += m(static_cast<Eigen::Index>(a) * dB + i,
                       static_cast<Eigen::Index>(a) * dB + j);
  return out;
}

/// CPTP map, stored by its constructor data (unitary matrix or Kraus list).
/// The Choi operator (identity (x) channel applied to Omega_+) is kept
/// alongside, so both representations are available by value.
class Channel {
 public:
  enum class Kind { Unitary, Kraus };

  static Channel unitary(ComplexMatrix u, double tol = kDefaultTol) {
    if (!is_square(u)) throw InvalidChannel("Channel::unitary: matrix not square");
    const double res = unitarity_residual(u);
    if (res > tol)
      throw InvalidChannel("Channel::unitary: ||u^dag u - I||_max = " + std::to_string(res));
    Channel ch;
    ch.kind_ = Kind::Unitary;
    ch.dim_ = static_cast<int>(u.rows());
    ch.unitary_ = std::move(u);
    ch.choi_ = ch.compute_choi();
    return ch;
  }

  static Channel kraus(std::vector<ComplexMatrix> ops, double tol = kDefaultTol) {
    if (ops.empty()) throw InvalidChannel("Channel::kraus: empty operator list");
    const Eigen::Index d = ops.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& k : ops) {
      if (k.rows() != d || k.cols() != d)
        throw InvalidChannel("Channel::kraus: operators must be square of equal dimension");
      sum += k.adjoint() * k;
    }
    const double res = max_abs(sum - ComplexMatrix::Identity(d, d));
    if (res > tol)
      throw InvalidChannel("Channel::kraus: ||sum K^dag K - I||_max = " + std::to_string(res));
    Channel ch;
    ch.kind_ = Kind::Kraus;
    ch.dim_ = static_cast<int>(d);
    ch.kraus_ = std::move(ops);
    ch.choi_ = ch.compute_choi();
    return ch;
  }

  static Channel identity(int d) { return unitary(ComplexMatrix::Identity(d, d)); }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_unitary_kind() const { return kind_ == Kind::Unitary; }

  const ComplexMatrix& unitary_matrix() const {
    if (kind_ != Kind::Unitary) throw InvalidChannel("Channel: not a unitary channel");
    return unitary_;
  }

  const std::vector<ComplexMatrix>& kraus_operators() const {
    if (kind_ != Kind::Kraus) throw InvalidChannel("Channel: not a Kraus channel");
    return kraus_;
  }

  /// Choi operator (identity (x) E)[Omega_+]; PSD with trace d.
  const ComplexMatrix& choi() const { return choi_; }

  /// Raw action E[x] on an arbitrary operator.
  ComplexMatrix apply_raw(const ComplexMatrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_)
      throw DimensionMismatch("Channel::apply_raw: operator dimension mismatch");
    if (kind_ == Kind::Unitary) return unitary_ * x * unitary_.adjoint();
    ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& k : kraus_) out += k * x * k.adjoint();
    return out;
  }

 private:
  Channel() = default;

  ComplexMatrix compute_choi() const {
    const int d = dim_;
    if (kind_ == Kind::Unitary) {
      ComplexVector psi_u = kron(ComplexMatrix::Identity(d, d), unitary_) * max_entangled_ket(d);
      return static_cast<double>(d) * (psi_u * psi_u.adjoint());
    }
    // Omega = sum_{jk} |j><k| (x) E[|j><k|], assembled block by block.
    ComplexMatrix omega = ComplexMatrix::Zero(static_cast<Eigen::Index>(d) * d,
                                              static_cast<Eigen::Index>(d) * d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        ComplexMatrix unit = ComplexMatrix::Zero(d, d);
        unit(j, k) = 1.0;
        omega.block(static_cast<Eigen::Index>(j) * d, static_cast<Eigen::Index>(k) * d, d, d) =
            apply_raw(unit);
      }
    return omega;
  }

  Kind kind_ = Kind::Unitary;
  int dim_ = 0;
  ComplexMatrix unitary_;
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix choi_;
};

/// Choi operator with its structural invariants checked on construction.
class ChoiOperator {
 public:
  ChoiOperator(ComplexMatrix omega, int dim, double tol = kDefaultTol)
      : omega_(std::move(omega)), dim_(dim) {
    if (omega_.rows() != omega_.cols() ||
        omega_.rows() != static_cast<Eigen::Index>(dim_) * dim_)
      throw ValidationError("ChoiOperator: dimension mismatch");
    if (!is_psd(omega_, tol)) throw ValidationError("ChoiOperator: not PSD within tol");
    if (std::abs(omega_.trace().real() - dim_) > 1e-8)
      throw ValidationError("ChoiOperator: trace differs from d");
    const ComplexMatrix marginal = partial_trace(omega_, dim_, dim_, Subsystem::A);
    if (max_abs(marginal - ComplexMatrix::Identity(dim_, dim_)) > 1e-8)
      throw ValidationError("ChoiOperator: reduced operator on the first factor is not I");
  }

  const ComplexMatrix& omega() const { return omega_; }
  int dim() const { return dim_; }

 private:
  ComplexMatrix omega_;
  int dim_;
};

inline ChoiOperator choi_of(const Channel& ch) { return ChoiOperator(ch.choi(), ch.dim()); }

/// Applies ch (optionally as identity (x) ch on an ancilla-extended input)
/// to a state.
inline QuantumState apply_channel(const Channel& ch, const QuantumState& rho,
                                  bool with_identity_on_ancilla = false, int anc_dim = 1) {
  if (!with_identity_on_ancilla) {
    if (rho.dim() != ch.dim())
      throw DimensionMismatch("apply_channel: state dimension mismatch");
    return QuantumState(ch.apply_raw(rho.rho()));
  }
  const int d = ch.dim();
  if (rho.dim() != anc_dim * d)
    throw DimensionMismatch("apply_channel: ancilla-extended dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int a = 0; a < anc_dim; ++a)
    for (int b = 0; b < anc_dim; ++b) {
      const ComplexMatrix block =
          rho.rho().block(static_cast<Eigen::Index>(a) * d, static_cast<Eigen::Index>(b) * d, d, d);
      out.block(static_cast<Eigen::Index>(a) * d, static_cast<Eigen::Index>(b) * d, d, d) =
          ch.apply_raw(block);
    }
  return QuantumState(out);
}

/// Diagnostics for raw unitary data, usable before a Channel exists.
inline ValidationReport validate_unitary_data(const ComplexMatrix& u, double tol = kDefaultTol) {
  ValidationReport report;
  if (!is_square(u)) {
    report.add("unitarity", false, std::numeric_limits<double>::infinity());
    return report;
  }
  const double res = unitarity_residual(u);
  report.add("unitarity", res <= tol, res);
  return report;
}

/// Diagnostics for a raw Kraus list (completeness sum K^dag K = I); usable
/// on defective data that the Channel factory would reject.
inline ValidationReport validate_kraus_data(const std::vector<ComplexMatrix>& ops,
                                            double tol = kDefaultTol) {
  ValidationReport report;
  if (ops.empty()) {
    report.add("kraus_completeness", false, std::numeric_limits<double>::infinity());
    return report;
  }
  const Eigen::Index d = ops.front().rows();
  for (const auto& k : ops) {
    if (k.rows() != d || k.cols() != d) {
      report.add("kraus_completeness", false, std::numeric_limits<double>::infinity());
      return report;
    }
  }
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : ops) sum += k.adjoint() * k;
  const double res = max_abs(sum - ComplexMatrix::Identity(d, d));
  report.add("kraus_completeness", res <= tol, res);
  return report;
}

/// Structural diagnostics for a raw Choi operator.
inline ValidationReport validate_choi(const ComplexMatrix& omega, int d, double tol = kDefaultTol) {
  ValidationReport report;
  const double min_eig = min_eigenvalue(omega);
  report.add("choi_psd", min_eig >= -tol, std::max(0.0, -min_eig));
  const double tr_res = std::abs(omega.trace().real() - d) + std::abs(omega.trace().imag());
  report.add("choi_trace_d", tr_res <= 1e-8, tr_res);
  const ComplexMatrix marginal = partial_trace(omega, d, d, Subsystem::A);
  const double tp_res = max_abs(marginal - ComplexMatrix::Identity(d, d));
  report.add("choi_trace_preserving", tp_res <= 1e-8, tp_res);
  return report;
}

/// Structural diagnostics for a channel: unitarity or Kraus completeness,
/// plus complete positivity via the Choi operator.
inline ValidationReport validate_channel(const Channel& ch, double tol = kDefaultTol) {
  ValidationReport report = ch.kind() == Channel::Kind::Unitary
                                ? validate_unitary_data(ch.unitary_matrix(), tol)
                                : validate_kraus_data(ch.kraus_operators(), tol);
  for (auto& check : validate_choi(ch.choi(), ch.dim(), tol).checks)
    report.checks.push_back(std::move(check));
  return report;
}

}  // namespace qpdisc
