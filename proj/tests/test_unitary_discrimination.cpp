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
#include <cmath>
#include <numbers>

#include "qpdisc/gates.hpp"
#include "qpdisc/random.hpp"
#include "qpdisc/unitary_discrimination.hpp"

using namespace qpdisc;

namespace {

ComplexMatrix phase_gate(double theta) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(1, 1) = std::polar(1.0, theta);
  return m;
}

// Conditional outcome distribution of a strategy against a channel.
std::vector<double> strategy_probs(const TestStrategy& s, const ComplexMatrix& u) {
  return outcome_probabilities(ppovm_of_strategy(s), Channel::unitary(u));
}

double achieved_error(const MinErrorUnitaryResult& res, const UnitaryPair& p) {
  const auto pu = strategy_probs(res.strategy, p.u);
  const auto pv = strategy_probs(res.strategy, p.v);
  return p.eta_u * pu[1] + p.eta_v * pv[0];
}

double achieved_failure(const UnambiguousUnitaryResult& res, const UnitaryPair& p) {
  const auto pu = strategy_probs(res.strategy, p.u);
  const auto pv = strategy_probs(res.strategy, p.v);
  return p.eta_u * pu[2] + p.eta_v * pv[2];
}

double wrong_rate(const UnambiguousUnitaryResult& res, const UnitaryPair& p) {
  const auto pu = strategy_probs(res.strategy, p.u);
  const auto pv = strategy_probs(res.strategy, p.v);
  return std::max(pu[1], pv[0]);
}

// Schmidt rank across the ancilla|system cut via singular values of the
// reshaped test state.
int schmidt_rank(const ComplexVector& psi, int d) {
  const ComplexMatrix b = test_state_operator(psi, d, d);
  Eigen::JacobiSVD<ComplexMatrix> svd(b);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9) ++rank;
  return rank;
}

}  // namespace

TEST_CASE("identical unitaries have fidelity one") {
  Rng rng(91);
  const ComplexMatrix u = random_unitary(3, rng);
  const FidelityResult fr = cb_process_fidelity(UnitaryPair(u, u, 0.5, 0.5));
  REQUIRE(fr.d_value == Catch::Approx(1.0));
  REQUIRE_FALSE(fr.zero_in_hull);
  REQUIRE(fr.xi_weights.sum() == Catch::Approx(1.0));
}

TEST_CASE("qubit fidelity is half the trace") {
  for (const double theta : {0.1, 0.7, std::numbers::pi / 2, 2.9}) {
    const UnitaryPair p(ComplexMatrix::Identity(2, 2), phase_gate(theta), 0.5, 0.5);
    const FidelityResult fr = cb_process_fidelity(p);
    REQUIRE(fr.d_value == Catch::Approx(std::abs(std::cos(theta / 2))).margin(1e-12));
  }

  Rng rng(97);
  for (int rep = 0; rep < 50; ++rep) {
    const ComplexMatrix u = random_unitary(2, rng);
    const ComplexMatrix v = random_unitary(2, rng);
    const FidelityResult fr = cb_process_fidelity(UnitaryPair(u, v, 0.5, 0.5));
    REQUIRE(std::abs(fr.d_value - 0.5 * std::abs((u.adjoint() * v).trace())) < 1e-10);
  }
}

TEST_CASE("CNOT vs SWAP: perfectly distinguishable without orthogonality") {
  const UnitaryPair p(cnot(), swap_gate(), 0.5, 0.5);
  REQUIRE(std::abs((cnot().adjoint() * swap_gate()).trace()) == Catch::Approx(1.0));
  const FidelityResult fr = cb_process_fidelity(p);
  REQUIRE(fr.zero_in_hull);
  REQUIRE(fr.d_value == 0.0);
  REQUIRE_FALSE(fr.optimal_pair.has_value());

  // The witness weights reach the origin.
  Complex combo(0, 0);
  for (int k = 0; k < 4; ++k)
    combo += fr.xi_weights(k) * std::polar(1.0, fr.eigenphases(k));
  REQUIRE(std::abs(combo) <= 1e-9);
  REQUIRE(fr.xi_weights.sum() == Catch::Approx(1.0));
  REQUIRE(fr.xi_weights.minCoeff() >= 0.0);
}

TEST_CASE("antipodal pair: exact-pi gap counts as zero in hull") {
  const UnitaryPair p(ComplexMatrix::Identity(2, 2), pauli_z(), 0.5, 0.5);
  const FidelityResult fr = cb_process_fidelity(p);
  REQUIRE(fr.zero_in_hull);
  REQUIRE(fr.d_value == 0.0);
  REQUIRE(fr.xi_weights(0) == Catch::Approx(0.5));
  REQUIRE(fr.xi_weights(1) == Catch::Approx(0.5));
}

TEST_CASE("degenerate eigenphases are deduplicated deterministically") {
  // Phases (0, theta, theta): the pair minimization runs on two clusters and
  // k*, l* are the lowest indices of their clusters.
  const double theta = 0.8;
  ComplexMatrix v = ComplexMatrix::Identity(3, 3);
  v(1, 1) = std::polar(1.0, theta);
  v(2, 2) = std::polar(1.0, theta);
  const FidelityResult fr = cb_process_fidelity(UnitaryPair(ComplexMatrix::Identity(3, 3), v, 0.5, 0.5));
  REQUIRE(fr.d_value == Catch::Approx(std::cos(theta / 2)).margin(1e-12));
  REQUIRE(fr.optimal_pair.has_value());
  REQUIRE(fr.optimal_pair->first == 0);
  REQUIRE(fr.optimal_pair->second == 1);
  REQUIRE(fr.xi_weights(0) == Catch::Approx(0.5));
  REQUIRE(fr.xi_weights(1) == Catch::Approx(0.5));
  REQUIRE(fr.xi_weights(2) == 0.0);
}

TEST_CASE("brute-force oracle brackets the exact fidelity") {
  SECTION("identical channels") {
    Rng rng(103);
    const ComplexMatrix u = random_unitary(2, rng);
    REQUIRE(fidelity_bruteforce_oracle(UnitaryPair(u, u, 0.5, 0.5), 100) == Catch::Approx(1.0));
  }

  SECTION("qubit quarter rotation at resolution 1000") {
    const UnitaryPair p(ComplexMatrix::Identity(2, 2), phase_gate(std::numbers::pi / 2), 0.5,
                        0.5);
    const double oracle = fidelity_bruteforce_oracle(p, 1000);
    REQUIRE(oracle == Catch::Approx(std::sqrt(0.5)).margin(1e-3));
  }

  SECTION("CNOT vs SWAP at resolution 200") {
    const UnitaryPair p(cnot(), swap_gate(), 0.5, 0.5);
    REQUIRE(fidelity_bruteforce_oracle(p, 200) <= 5e-3);
  }

  SECTION("random pairs: oracle in [exact, exact + 2/resolution]") {
    Rng rng(107);
    const int resolution = 500;
    for (int rep = 0; rep < 15; ++rep) {
      const int d = 2 + rep % 3;
      const UnitaryPair p(random_unitary(d, rng), random_unitary(d, rng), 0.5, 0.5);
      const double exact = cb_process_fidelity(p).d_value;
      const double oracle = fidelity_bruteforce_oracle(p, resolution);
      REQUIRE(oracle >= exact - 1e-12);
      REQUIRE(oracle <= exact + 2.0 / resolution);
    }
  }
}

TEST_CASE("min_error_unitary closed-form cases") {
  Rng rng(109);
  const ComplexMatrix u = random_unitary(2, rng);
  REQUIRE(min_error_unitary(UnitaryPair(u, u, 0.5, 0.5)).p_error == Catch::Approx(0.5));

  const UnitaryPair quarter(ComplexMatrix::Identity(2, 2), phase_gate(std::numbers::pi / 2),
                            0.5, 0.5);
  REQUIRE(min_error_unitary(quarter).p_error ==
          Catch::Approx(0.5 * (1.0 - std::sqrt(0.5))).epsilon(1e-12));

  for (const double eta : {0.5, 0.2, 0.9}) {
    const UnitaryPair cs(cnot(), swap_gate(), eta, 1.0 - eta);
    const MinErrorUnitaryResult res = min_error_unitary(cs);
    REQUIRE(res.p_error == 0.0);
    REQUIRE(achieved_error(res, cs) <= 1e-9);
  }
}

TEST_CASE("unambiguous_unitary closed-form cases") {
  const UnitaryPair quarter(ComplexMatrix::Identity(2, 2), phase_gate(std::numbers::pi / 2),
                            0.5, 0.5);
  const UnambiguousUnitaryResult eq = unambiguous_unitary(quarter);
  REQUIRE(eq.p_fail == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));  // p_fail = D

  const UnitaryPair skew(ComplexMatrix::Identity(2, 2), phase_gate(std::numbers::pi / 2), 0.9,
                         0.1);
  const UnambiguousUnitaryResult res = unambiguous_unitary(skew);
  REQUIRE(res.p_fail == Catch::Approx(0.55).epsilon(1e-12));
  REQUIRE(achieved_failure(res, skew) == Catch::Approx(0.55).margin(1e-9));
  REQUIRE(wrong_rate(res, skew) <= 1e-9);

  const UnitaryPair cs(cnot(), swap_gate(), 0.7, 0.3);
  const UnambiguousUnitaryResult perfect = unambiguous_unitary(cs);
  REQUIRE(perfect.p_fail == 0.0);
  REQUIRE(achieved_failure(perfect, cs) <= 1e-9);
  REQUIRE(wrong_rate(perfect, cs) <= 1e-9);
}

TEST_CASE("achieved strategies match the formulas on random pairs") {
  Rng rng(113);
  for (int rep = 0; rep < 60; ++rep) {
    const int d = 2 + rep % 3;
    const auto [eu, ev] = random_priors(rng);
    const UnitaryPair p(random_unitary(d, rng), random_unitary(d, rng), eu, ev);

    const MinErrorUnitaryResult me = min_error_unitary(p);
    REQUIRE(achieved_error(me, p) == Catch::Approx(me.p_error).margin(1e-9));

    const UnambiguousUnitaryResult un = unambiguous_unitary(p);
    REQUIRE(achieved_failure(un, p) == Catch::Approx(un.p_fail).margin(1e-9));
    REQUIRE(wrong_rate(un, p) <= 1e-9);

    // The optimal strategies are ancilla-free products.
    REQUIRE(schmidt_rank(me.strategy.test_state, d) == 1);
    REQUIRE(schmidt_rank(un.strategy.test_state, d) == 1);

    // Weight support: at most two entries off the hull, at most three on it.
    int support = 0;
    for (int k = 0; k < d; ++k)
      if (me.fidelity.xi_weights(k) > 0.0) ++support;
    REQUIRE(support <= (me.fidelity.zero_in_hull ? 3 : 2));
    REQUIRE(me.fidelity.xi_weights.sum() == Catch::Approx(1.0));
  }
}

TEST_CASE("degenerate priors") {
  const UnitaryPair p(ComplexMatrix::Identity(2, 2), phase_gate(std::numbers::pi / 2), 1.0,
                      0.0);
  const MinErrorUnitaryResult me = min_error_unitary(p);
  REQUIRE(me.p_error == Catch::Approx(0.0).margin(1e-12));

  // Only the first channel ever occurs, but conclusions about the second
  // must still never be wrong: p_fail = D^2.
  const UnambiguousUnitaryResult un = unambiguous_unitary(p);
  REQUIRE(un.p_fail == Catch::Approx(0.5).epsilon(1e-12));
  REQUIRE(achieved_failure(un, p) == Catch::Approx(0.5).margin(1e-9));
  REQUIRE(wrong_rate(un, p) <= 1e-9);
}

TEST_CASE("saturation of the fidelity lower bound") {
  SECTION("equal priors always saturate") {
    Rng rng(127);
    for (int rep = 0; rep < 20; ++rep) {
      const int d = 2 + rep % 3;
      const UnitaryPair p(random_unitary(d, rng), random_unitary(d, rng), 0.5, 0.5);
      const SaturationResult sat = saturation_check(p);
      REQUIRE(sat.saturated);
      REQUIRE(sat.gap == Catch::Approx(0.0).margin(1e-9));
    }
  }

  SECTION("skewed priors beyond the branch point leave the known gap") {
    const UnitaryPair p(ComplexMatrix::Identity(2, 2), phase_gate(std::numbers::pi / 2), 0.9,
                        0.1);
    const SaturationResult sat = saturation_check(p);
    REQUIRE_FALSE(sat.saturated);
    REQUIRE(sat.lower_bound == Catch::Approx(0.6 * std::sqrt(0.5)).epsilon(1e-12));
    const double expect_gap =
        std::pow(std::sqrt(0.1) - std::sqrt(0.9) * std::sqrt(0.5), 2);
    REQUIRE(sat.gap == Catch::Approx(expect_gap).epsilon(1e-10));
    REQUIRE(sat.gap == Catch::Approx(0.125736).margin(1e-6));
  }

  SECTION("D = 0 saturates trivially") {
    const SaturationResult sat = saturation_check(UnitaryPair(cnot(), swap_gate(), 0.8, 0.2));
    REQUIRE(sat.saturated);
    REQUIRE(sat.lower_bound == 0.0);
    REQUIRE(sat.p_fail == 0.0);
  }
}

TEST_CASE("failure branches join continuously at D = sqrt(eta_v/eta_u)") {
  for (const double eta_u : {0.5, 0.65, 0.9}) {
    const double eta_v = 1.0 - eta_u;
    const double dd = std::sqrt(eta_v / eta_u);
    const double first = 2.0 * std::sqrt(eta_u * eta_v) * dd;
    const double second = eta_v + eta_u * dd * dd;
    REQUIRE(std::abs(first - second) <= 1e-12);
  }
}

TEST_CASE("p_error and p_fail are nondecreasing in D on a qubit sweep") {
  double last_err = -1.0, last_fail = -1.0;
  for (int i = 40; i >= 0; --i) {
    const double theta = std::numbers::pi * i / 40.0;
    const UnitaryPair p(ComplexMatrix::Identity(2, 2), phase_gate(theta), 0.5, 0.5);
    const double err = min_error_unitary(p).p_error;
    const double fail = unambiguous_unitary(p).p_fail;
    REQUIRE(err >= last_err - 1e-12);
    REQUIRE(fail >= last_fail - 1e-12);
    last_err = err;
    last_fail = fail;
  }
}

TEST_CASE("non-unitary input is rejected") {
  ComplexMatrix notu(2, 2);
  notu << 1, 0, 0, 2;
  REQUIRE_THROWS_AS(UnitaryPair(notu, ComplexMatrix::Identity(2, 2), 0.5, 0.5), NotUnitary);
  REQUIRE_THROWS_AS(UnitaryPair(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2),
                                0.5, 0.6),
                    ValidationError);
}
