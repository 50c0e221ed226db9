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

#include <catch2/catch_amalgamated.hpp>
#include <numbers>

#include "qpdisc/gates.hpp"
#include "qpdisc/matkernel.hpp"
#include "qpdisc/random.hpp"

using namespace qpdisc;

namespace {

ComplexMatrix random_hermitian(int d, Rng& rng) {
  const ComplexMatrix a = ginibre(d, d, rng);
  return a + a.adjoint();
}

}  // namespace

TEST_CASE("hermitian_eig on diagonal input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = -1.0;
  const HermitianEig eig = hermitian_eig(m);
  REQUIRE(eig.eigenvalues(0) == Catch::Approx(2.0));
  REQUIRE(eig.eigenvalues(1) == Catch::Approx(-1.0));
}

TEST_CASE("hermitian_eig on the identity") {
  const HermitianEig eig = hermitian_eig(ComplexMatrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) REQUIRE(eig.eigenvalues(i) == Catch::Approx(1.0));
  // Orthonormality of the returned columns.
  REQUIRE(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                  ComplexMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 4;
    const ComplexMatrix h = random_hermitian(d, rng);
    const HermitianEig eig = hermitian_eig(h);
    ComplexMatrix rec = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i)
      rec += eig.eigenvalues(i) * eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    REQUIRE(max_abs(rec - h) < 1e-10 * d);
    for (int i = 0; i + 1 < d; ++i) REQUIRE(eig.eigenvalues(i) >= eig.eigenvalues(i + 1));
  }
}

TEST_CASE("hermitian_eig rejects bad input") {
  ComplexMatrix m(2, 2);
  m << 1.0, Complex(0, 1), Complex(0, 1), 1.0;  // symmetric, not Hermitian
  REQUIRE_THROWS_AS(hermitian_eig(m), NotHermitian);
  REQUIRE_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), NotSquare);
}

TEST_CASE("hermitian_eig is deterministic") {
  Rng rng(11);
  const ComplexMatrix h = random_hermitian(5, rng);
  const HermitianEig a = hermitian_eig(h);
  const HermitianEig b = hermitian_eig(h);
  REQUIRE(a.eigenvalues == b.eigenvalues);
  REQUIRE(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("unitary_eigphases on diagonal gates") {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  const UnitaryEig eig = unitary_eigphases(z);
  REQUIRE(eig.phases(0) == Catch::Approx(0.0).margin(1e-14));
  REQUIRE(eig.phases(1) == Catch::Approx(std::numbers::pi));

  ComplexMatrix s(2, 2);
  s << 1, 0, 0, Complex(0, 1);
  const UnitaryEig eig2 = unitary_eigphases(s);
  REQUIRE(eig2.phases(0) == Catch::Approx(0.0).margin(1e-14));
  REQUIRE(eig2.phases(1) == Catch::Approx(std::numbers::pi / 2));
}

TEST_CASE("unitary_eigphases of CNOT^dag SWAP") {
  // The operator permutes the computational basis in one fixed point plus a
  // 3-cycle, so its spectrum is {1, 1, e^{2 pi i/3}, e^{-2 pi i/3}}.
  const ComplexMatrix w = cnot().adjoint() * swap_gate();
  const UnitaryEig eig = unitary_eigphases(w);
  const double third = 2.0 * std::numbers::pi / 3.0;
  REQUIRE(eig.phases(0) == Catch::Approx(-third).margin(1e-12));
  REQUIRE(eig.phases(1) == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(eig.phases(2) == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(eig.phases(3) == Catch::Approx(third).margin(1e-12));
}

TEST_CASE("unitary_eigphases eigenpair residuals and reconstruction") {
  Rng rng(23);
  for (const int d : {2, 3, 4, 8}) {
    const ComplexMatrix w = random_unitary(d, rng);
    const UnitaryEig eig = unitary_eigphases(w);
    ComplexMatrix rec = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      const Complex lambda = std::polar(1.0, eig.phases(k));
      const ComplexVector v = eig.eigenvectors.col(k);
      REQUIRE((w * v - lambda * v).norm() < 1e-8);
      rec += lambda * v * v.adjoint();
    }
    REQUIRE(max_abs(rec - w) < 1e-8);
    REQUIRE(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                    ComplexMatrix::Identity(d, d)) < 1e-10);
  }
}

TEST_CASE("unitary_eigphases keeps degenerate clusters orthonormal") {
  // Eigenvalue e^{i pi/3} is twofold degenerate.
  ComplexMatrix w = ComplexMatrix::Zero(3, 3);
  w(0, 0) = std::polar(1.0, std::numbers::pi / 3);
  w(1, 1) = std::polar(1.0, std::numbers::pi / 3);
  w(2, 2) = std::polar(1.0, -std::numbers::pi / 3);
  const ComplexMatrix q = [] {
    Rng rng(5);
    return random_unitary(3, rng);
  }();
  const ComplexMatrix conj = q * w * q.adjoint();
  const UnitaryEig eig = unitary_eigphases(conj);
  REQUIRE(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                  ComplexMatrix::Identity(3, 3)) < 1e-10);
  for (int k = 0; k < 3; ++k) {
    const Complex lambda = std::polar(1.0, eig.phases(k));
    REQUIRE((conj * eig.eigenvectors.col(k) - lambda * eig.eigenvectors.col(k)).norm() < 1e-8);
  }
}

TEST_CASE("unitary_eigphases rejects non-unitary input") {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, 2;
  REQUIRE_THROWS_AS(unitary_eigphases(m), NotUnitary);
}

TEST_CASE("trace_norm basics") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -2;
  REQUIRE(trace_norm(m) == Catch::Approx(3.0));

  Rng rng(3);
  for (const int d : {2, 3, 5}) {
    REQUIRE(trace_norm(random_unitary(d, rng)) == Catch::Approx(static_cast<double>(d)));
  }
  REQUIRE_THROWS_AS(trace_norm(ComplexMatrix::Zero(2, 3)), NotSquare);
}

TEST_CASE("trace_norm agrees with the Hermitian dilation oracle") {
  // For any m, the dilation [[0, m], [m^dag, 0]] has eigenvalues +-sigma_i,
  // so half its absolute eigenvalue sum is the trace norm of m.
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix m = ginibre(4, 4, rng);
    ComplexMatrix dil = ComplexMatrix::Zero(8, 8);
    dil.block(0, 4, 4, 4) = m;
    dil.block(4, 0, 4, 4) = m.adjoint();
    const HermitianEig eig = hermitian_eig(dil);
    const double oracle = 0.5 * eig.eigenvalues.cwiseAbs().sum();
    REQUIRE(trace_norm(m) == Catch::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("trace_norm dominates the trace on Hermitian inputs") {
  Rng rng(29);
  for (int rep = 0; rep < 30; ++rep) {
    const ComplexMatrix h = random_hermitian(3, rng);
    REQUIRE(trace_norm(h) >= std::abs(h.trace().real()) - 1e-12);
  }
}

TEST_CASE("psd_sqrt basics") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 4;
  m(1, 1) = 9;
  const ComplexMatrix s = psd_sqrt(m);
  REQUIRE(s(0, 0).real() == Catch::Approx(2.0));
  REQUIRE(s(1, 1).real() == Catch::Approx(3.0));

  Rng rng(31);
  const ComplexVector v = random_pure_ket(3, rng);
  const ComplexMatrix proj = v * v.adjoint();
  REQUIRE(max_abs(psd_sqrt(proj) - proj) < 1e-10);

  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1;
  neg(1, 1) = -1;
  REQUIRE_THROWS_AS(psd_sqrt(neg), NotPsd);
}

TEST_CASE("psd_sqrt squares back to the input") {
  Rng rng(37);
  for (const int d : {2, 4, 9, 16}) {
    const ComplexMatrix l = ginibre(d, d, rng);
    const ComplexMatrix m = l * l.adjoint();
    const ComplexMatrix s = psd_sqrt(m);
    REQUIRE(is_hermitian(s, 1e-10));
    REQUIRE(max_abs(s * s - m) < 1e-9 * d * std::max(1.0, max_abs(m)));
  }
}

TEST_CASE("predicates") {
  REQUIRE(is_hermitian(pauli_y()));
  REQUIRE(is_unitary(hadamard()));
  REQUIRE(is_psd(ComplexMatrix::Identity(3, 3)));
  REQUIRE_FALSE(is_psd(pauli_z()));
  REQUIRE_FALSE(is_unitary(2.0 * ComplexMatrix::Identity(2, 2)));
}
