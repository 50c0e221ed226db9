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

#include "qpdisc/ppovm.hpp"
#include "qpdisc/random.hpp"

using namespace qpdisc;

namespace {

// Random n-outcome POVM on dimension m: draw PSD blocks and normalize by
// the inverse square root of their sum.
std::vector<ComplexMatrix> random_povm(int m, int n, Rng& rng) {
  std::vector<ComplexMatrix> raw;
  ComplexMatrix sum = ComplexMatrix::Zero(m, m);
  for (int j = 0; j < n; ++j) {
    const ComplexMatrix g = ginibre(m, m, rng);
    raw.push_back(g * g.adjoint());
    sum += raw.back();
  }
  const ComplexMatrix s = psd_sqrt(sum, 1e-6);
  const ComplexMatrix sinv = s.inverse();
  std::vector<ComplexMatrix> povm;
  for (auto& e : raw) {
    ComplexMatrix f = sinv * e * sinv;
    povm.push_back(0.5 * (f + f.adjoint()));
  }
  return povm;
}

TestStrategy random_strategy(int d, int n_outcomes, Rng& rng) {
  return TestStrategy(random_pure_ket(d * d, rng), random_povm(d * d, n_outcomes, rng), d, d);
}

// Two-step probability rule: prepare the test state, send the system half
// through the channel, measure the output POVM.
double two_step_probability(const TestStrategy& s, const Channel& ch, int outcome) {
  const QuantumState joint = QuantumState::pure(s.test_state);
  const QuantumState out = apply_channel(ch, joint, true, s.anc_dim);
  return (s.output_povm[outcome] * out.rho()).trace().real();
}

}  // namespace

TEST_CASE("maximally entangled strategy halves the POVM") {
  Rng rng(61);
  const int d = 2;
  const std::vector<ComplexMatrix> povm = random_povm(d * d, 2, rng);
  const TestStrategy s(max_entangled_ket(d), povm, d, d);
  const ProcessPOVM p = ppovm_of_strategy(s);
  for (std::size_t j = 0; j < povm.size(); ++j)
    REQUIRE(max_abs(p.effects[j] - povm[j] / d) < 1e-12);
  REQUIRE(max_abs(p.xi - ComplexMatrix::Identity(d, d) / d) < 1e-12);
  REQUIRE(validate_ppovm(p).all_passed());
}

TEST_CASE("effects summing to I (x) I are not a valid PPOVM") {
  const int d = 2;
  const ComplexMatrix id4 = ComplexMatrix::Identity(d * d, d * d);
  const ProcessPOVM p = ProcessPOVM::from_effects({0.5 * id4, 0.5 * id4}, d);
  const ValidationReport report = validate_ppovm(p);
  REQUIRE_FALSE(report.all_passed());
  // The recovered xi is the identity: unit-trace check fails by d - 1.
  for (const auto& c : report.checks)
    if (c.name == "xi_unit_trace") {
      REQUIRE_FALSE(c.passed);
      REQUIRE(c.residual == Catch::Approx(d - 1.0));
    }
}

TEST_CASE("strategy-induced PPOVMs validate with xi the reduced test state") {
  Rng rng(67);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 2 + rep % 2;
    const TestStrategy s = random_strategy(d, 3, rng);
    const ProcessPOVM p = ppovm_of_strategy(s);
    REQUIRE(validate_ppovm(p).all_passed());
    const ComplexMatrix reduced =
        partial_trace(s.test_state * s.test_state.adjoint(), d, d, Subsystem::B);
    REQUIRE(max_abs(p.xi - reduced) < 1e-10);
  }
}

TEST_CASE("probability rules agree: effect-on-output vs PPOVM-on-choi") {
  Rng rng(71);
  for (int rep = 0; rep < 100; ++rep) {
    const int d = 2 + rep % 2;
    const TestStrategy s = random_strategy(d, 2 + rep % 3, rng);
    const Channel ch = rep % 2 == 0 ? Channel::unitary(random_unitary(d, rng))
                                    : random_kraus_channel(d, 2, rng);
    const ProcessPOVM p = ppovm_of_strategy(s);
    const std::vector<double> probs = outcome_probabilities(p, ch);
    double total = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j) {
      REQUIRE(probs[j] == Catch::Approx(two_step_probability(s, ch, static_cast<int>(j)))
                              .margin(1e-9));
      total += probs[j];
    }
    REQUIRE(total == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("identity channel with the entangled projector test") {
  const int d = 2;
  const ComplexVector psi = max_entangled_ket(d);
  const ComplexMatrix proj = psi * psi.adjoint();
  const TestStrategy s(psi, {proj, ComplexMatrix::Identity(d * d, d * d) - proj}, d, d);
  const std::vector<double> probs =
      outcome_probabilities(ppovm_of_strategy(s), Channel::identity(d));
  REQUIRE(probs[0] == Catch::Approx(1.0));
  REQUIRE(probs[1] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("single-effect PPOVM fires with certainty on any channel") {
  Rng rng(73);
  const int d = 2;
  const QuantumState xi = random_state(d, rng);
  const ProcessPOVM p = ProcessPOVM::from_effects(
      {kron(xi.rho().transpose().eval(), ComplexMatrix::Identity(d, d))}, d);
  REQUIRE(validate_ppovm(p).all_passed());
  for (int rep = 0; rep < 5; ++rep) {
    const Channel ch = random_kraus_channel(d, 3, rng);
    const std::vector<double> probs = outcome_probabilities(p, ch);
    REQUIRE(probs.size() == 1);
    REQUIRE(probs[0] == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("outcome probabilities are affine in the choi operator") {
  Rng rng(79);
  const int d = 2;
  const TestStrategy s = random_strategy(d, 3, rng);
  const ProcessPOVM p = ppovm_of_strategy(s);
  const Channel a = random_kraus_channel(d, 2, rng);
  const Channel b = random_kraus_channel(d, 2, rng);
  const double lam = 0.3;
  // Convex mixture realized as a Kraus channel by scaling the operator sets.
  std::vector<ComplexMatrix> mixed;
  for (const auto& k : a.kraus_operators()) mixed.push_back(std::sqrt(lam) * k);
  for (const auto& k : b.kraus_operators()) mixed.push_back(std::sqrt(1.0 - lam) * k);
  const Channel mix = Channel::kraus(mixed);

  const auto pa = outcome_probabilities(p, a);
  const auto pb = outcome_probabilities(p, b);
  const auto pm = outcome_probabilities(p, mix);
  for (std::size_t j = 0; j < pm.size(); ++j)
    REQUIRE(pm[j] == Catch::Approx(lam * pa[j] + (1.0 - lam) * pb[j]).margin(1e-10));
}

TEST_CASE("negative probabilities beyond rounding are rejected") {
  const int d = 2;
  // A deliberately indefinite "effect": xi^T (x) I minus twice a projector.
  const ComplexVector psi = max_entangled_ket(d);
  const ComplexMatrix proj = psi * psi.adjoint();
  const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);
  const ProcessPOVM p =
      ProcessPOVM::from_effects({0.5 * id4 - 2.0 * proj, 2.0 * proj}, d);
  REQUIRE_FALSE(validate_ppovm(p).all_passed());
  REQUIRE_THROWS_AS(outcome_probabilities(p, Channel::identity(d)), Error);
}

TEST_CASE("invalid strategies are rejected") {
  Rng rng(83);
  const int d = 2;
  const std::vector<ComplexMatrix> povm = random_povm(d * d, 2, rng);
  ComplexVector unnormalized = ComplexVector::Ones(d * d);
  REQUIRE_THROWS_AS(TestStrategy(unnormalized, povm, d, d), InvalidStrategy);

  std::vector<ComplexMatrix> short_povm = {povm[0]};
  REQUIRE_THROWS_AS(TestStrategy(max_entangled_ket(d), short_povm, d, d), InvalidStrategy);

  // Ancilla of a different dimension: accepted as a strategy but not
  // convertible to a d-ancilla PPOVM.
  const TestStrategy rect(random_pure_ket(3 * 2, rng), random_povm(6, 2, rng), 3, 2);
  REQUIRE_THROWS_AS(ppovm_of_strategy(rect), InvalidStrategy);
}

TEST_CASE("dimension mismatches are reported") {
  Rng rng(89);
  const TestStrategy s = random_strategy(2, 2, rng);
  const ProcessPOVM p = ppovm_of_strategy(s);
  REQUIRE_THROWS_AS(outcome_probabilities(p, Channel::identity(3)), DimensionMismatch);
}
