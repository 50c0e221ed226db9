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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qpdisc/errors.hpp"

namespace qpdisc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance for all structural predicates (Hermitian/unitary/PSD).
inline constexpr double kDefaultTol = 1e-9;

inline bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

/// Largest entry modulus; the max-entry norm used for residuals throughout.
inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_residual(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol) {
  return is_square(m) && hermiticity_residual(m) <= tol;
}

inline double unitarity_residual(const ComplexMatrix& m) {
  return max_abs(m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols()));
}

inline bool is_unitary(const ComplexMatrix& m, double tol = kDefaultTol) {
  return is_square(m) && unitarity_residual(m) <= tol;
}

template <typename DerivedA, typename DerivedB>
ComplexMatrix kron(const Eigen::MatrixBase<DerivedA>& a_expr,
                   const Eigen::MatrixBase<DerivedB>& b_expr) {
  const ComplexMatrix a = a_expr;
  const ComplexMatrix b = b_expr;
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Fixes the global phase of a vector: first entry with modulus > 1e-8 is
/// made real and positive. Keeps eigenbases reproducible byte-for-byte.
inline ComplexVector phase_normalized(ComplexVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > 1e-8) {
      v *= std::conj(v(i)) / a;
      break;
    }
  }
  return v;
}

namespace detail {

// Lexicographic order on (re, im) pairs of the entries; used only to break
// exact eigenvalue ties deterministically.
inline bool lex_less(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix.
struct HermitianEig {
  RealVector eigenvalues;     // sorted descending
  ComplexMatrix eigenvectors; // orthonormal columns, matched to eigenvalues
};

/// Diagonalizes a Hermitian matrix. Eigenvalues descending; eigenvectors
/// phase-normalized, exact ties broken lexicographically.
inline HermitianEig hermitian_eig(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (!is_square(m)) throw NotSquare("hermitian_eig: matrix is not square");
  const double asym = hermiticity_residual(m);
  if (asym > tol)
    throw NotHermitian("hermitian_eig: asymmetry " + std::to_string(asym) + " exceeds tolerance");

  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver failed");

  const Eigen::Index n = m.rows();
  std::vector<std::pair<double, ComplexVector>> pairs(n);
  for (Eigen::Index i = 0; i < n; ++i)
    pairs[i] = {solver.eigenvalues()(i), phase_normalized(solver.eigenvectors().col(i))};

  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return detail::lex_less(a.second, b.second);
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = pairs[i].first;
    out.eigenvectors.col(i) = pairs[i].second;
  }
  return out;
}

/// Eigendecomposition of a unitary matrix in phase form.
struct UnitaryEig {
  RealVector phases;          // in (-pi, pi], sorted ascending
  ComplexMatrix eigenvectors; // orthonormal columns, matched to phases
};

/// Diagonalizes a unitary matrix w, returning eigenphases theta_k with
/// w v_k = e^{i theta_k} v_k. Works through the commuting Hermitian parts
/// (w + w^dag)/2 and (w - w^dag)/(2i): the first is diagonalized, then the
/// second is rediagonalized inside each degenerate eigenspace. This keeps
/// eigenvectors orthonormal within clusters by construction.
inline UnitaryEig unitary_eigphases(const ComplexMatrix& w, double tol = kDefaultTol) {
  if (!is_square(w)) throw NotSquare("unitary_eigphases: matrix is not square");
  const double res = unitarity_residual(w);
  if (res > tol)
    throw NotUnitary("unitary_eigphases: ||w^dag w - I||_max = " + std::to_string(res));

  const Eigen::Index n = w.rows();
  const ComplexMatrix h = 0.5 * (w + w.adjoint());
  const ComplexMatrix k = (w - w.adjoint()) / Complex(0.0, 2.0);

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> hsolver(h);
  if (hsolver.info() != Eigen::Success) throw Error("unitary_eigphases: eigensolver failed");

  constexpr double cluster_tol = 1e-9;
  std::vector<std::pair<double, ComplexVector>> pairs;
  pairs.reserve(n);

  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n &&
           hsolver.eigenvalues()(stop) - hsolver.eigenvalues()(stop - 1) <= cluster_tol)
      ++stop;
    const Eigen::Index width = stop - start;
    const ComplexMatrix basis = hsolver.eigenvectors().middleCols(start, width);
    ComplexMatrix kin = basis.adjoint() * k * basis;
    kin = 0.5 * (kin + kin.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ksolver(kin);
    if (ksolver.info() != Eigen::Success) throw Error("unitary_eigphases: eigensolver failed");
    const ComplexMatrix vecs = basis * ksolver.eigenvectors();
    for (Eigen::Index j = 0; j < width; ++j) {
      const ComplexVector v = phase_normalized(vecs.col(j));
      // Rayleigh quotient recovers the full complex eigenvalue.
      const Complex lambda = v.dot(w * v);
      double theta = std::atan2(lambda.imag(), lambda.real());
      if (theta <= -std::numbers::pi) theta = std::numbers::pi;
      pairs.emplace_back(theta, v);
    }
    start = stop;
  }

  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return detail::lex_less(a.second, b.second);
  });

  UnitaryEig out;
  out.phases.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.phases(i) = pairs[i].first;
    out.eigenvectors.col(i) = pairs[i].second;
  }
  return out;
}

/// Trace norm ||m||_tr = sum of singular values.
inline double trace_norm(const ComplexMatrix& m) {
  if (!is_square(m)) throw NotSquare("trace_norm: matrix is not square");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

/// PSD square root: returns Hermitian s with s*s = m. Eigenvalues in
/// [-tol, 0) are clamped to zero; anything below -tol is rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol = kDefaultTol) {
  const HermitianEig eig = hermitian_eig(m, tol);
  const Eigen::Index n = m.rows();
  RealVector roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues(i);
    if (lambda < -tol)
      throw NotPsd("psd_sqrt: eigenvalue " + std::to_string(lambda) + " below -tol");
    roots(i) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix s = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
  return 0.5 * (s + s.adjoint());
}

inline bool is_psd(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (!is_hermitian(m, tol)) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  return solver.eigenvalues().minCoeff() >= -tol;
}

/// Smallest eigenvalue of the Hermitian part; negative values measure how
/// far m is from PSD.
inline double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
  return solver.eigenvalues().minCoeff();
}

}  // namespace qpdisc
