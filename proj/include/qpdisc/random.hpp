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

#include <cstdint>
#include <random>
#include <vector>

#include "qpdisc/matkernel.hpp"
#include "qpdisc/quantum.hpp"

// Seeded generators for random problem instances. Every draw is a pure
// function of the generator state, so a fixed seed reproduces runs exactly.

namespace qpdisc {

using Rng = std::mt19937_64;

/// splitmix64 step; derives independent substream seeds from (seed, index).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double gaussian(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

inline ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(gaussian(rng), gaussian(rng));
  return m;
}

/// Haar-distributed unitary via QR of a Ginibre matrix with the standard
/// phase fix on the R diagonal.
inline ComplexMatrix random_unitary(int d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= a > 0 ? rjj / a : Complex(1, 0);
  }
  return q;
}

inline ComplexVector random_pure_ket(int d, Rng& rng) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(gaussian(rng), gaussian(rng));
  return v / v.norm();
}

/// Full-rank random density operator L L^dag / tr.
inline QuantumState random_state(int d, Rng& rng) {
  const ComplexMatrix l = ginibre(d, d, rng);
  ComplexMatrix rho = l * l.adjoint();
  rho /= rho.trace().real();
  return QuantumState(0.5 * (rho + rho.adjoint()));
}

/// Random effect with eigenvalues uniform in [0, 1].
inline Effect random_effect(int d, Rng& rng) {
  const ComplexMatrix u = random_unitary(d, rng);
  RealVector vals(d);
  for (int i = 0; i < d; ++i) vals(i) = uniform01(rng);
  ComplexMatrix e = u * vals.asDiagonal() * u.adjoint();
  return Effect(0.5 * (e + e.adjoint()));
}

/// Random CPTP map with n_kraus operators, from a Haar isometry:
/// K_j = (<j|_env (x) I) V with V the first d columns of a unitary on
/// (n_kraus * d) dimensions.
inline Channel random_kraus_channel(int d, int n_kraus, Rng& rng) {
  const ComplexMatrix big = random_unitary(d * n_kraus, rng);
  const ComplexMatrix v = big.leftCols(d);
  std::vector<ComplexMatrix> ops;
  ops.reserve(n_kraus);
  for (int j = 0; j < n_kraus; ++j)
    ops.push_back(v.middleRows(static_cast<Eigen::Index>(j) * d, d));
  return Channel::kraus(std::move(ops));
}

/// Random priors (eta, 1 - eta) with eta uniform in (lo, 1 - lo).
inline std::pair<double, double> random_priors(Rng& rng, double lo = 0.05) {
  const double eta = lo + (1.0 - 2.0 * lo) * uniform01(rng);
  return {eta, 1.0 - eta};
}

}  // namespace qpdisc
