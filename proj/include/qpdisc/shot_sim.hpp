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
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "qpdisc/ppovm.hpp"
#include "qpdisc/random.hpp"

// Single-shot Monte-Carlo simulation. The channel action is analytic: each
// shot samples the exact outcome distribution p_j = tr(M_j Omega) by
// inverse CDF, so the statistics are governed by the PPOVM alone.

namespace qpdisc {

enum class Conclusion { Ch1, Ch2, Inconclusive };

struct ExperimentSpec {
  std::variant<TestStrategy, ProcessPOVM> strategy;
  Channel true_channel;
  Conclusion true_label;  // which of the two hypotheses true_channel is
  long shots = 0;
  std::uint64_t seed = 0;
  std::vector<Conclusion> outcome_labels;
};

struct EmpiricalResult {
  std::vector<long> counts;
  long shots = 0;
  double empirical_error_rate = 0.0;
  double empirical_failure_rate = 0.0;
  double error_stderr = 0.0;
  double failure_stderr = 0.0;
};

namespace detail {

inline ProcessPOVM to_ppovm(const std::variant<TestStrategy, ProcessPOVM>& s) {
  if (std::holds_alternative<ProcessPOVM>(s)) return std::get<ProcessPOVM>(s);
  return ppovm_of_strategy(std::get<TestStrategy>(s));
}

inline std::vector<double> cumulative(const std::vector<double>& probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    acc += probs[j];
    cdf[j] = acc;
  }
  return cdf;
}

inline std::size_t draw(const std::vector<double>& cdf, double total, Rng& rng) {
  const double r = uniform01(rng) * total;
  for (std::size_t j = 0; j + 1 < cdf.size(); ++j)
    if (r < cdf[j]) return j;
  return cdf.size() - 1;
}

inline double binom_stderr(double rate, long shots) {
  return std::sqrt(std::max(0.0, rate * (1.0 - rate)) / static_cast<double>(shots));
}

}  // namespace detail

/// Runs `shots` i.i.d. single-shot experiments against a fixed true channel
/// and tallies conditional error/failure rates under the given labeling.
inline EmpiricalResult run_shots(const ExperimentSpec& spec) {
  if (spec.shots <= 0) throw InvalidSpec("run_shots: shot count must be positive");
  if (spec.true_label == Conclusion::Inconclusive)
    throw InvalidSpec("run_shots: the true channel must be one of the two hypotheses");

  const ProcessPOVM povm = detail::to_ppovm(spec.strategy);
  const std::vector<double> probs = outcome_probabilities(povm, spec.true_channel);
  if (spec.outcome_labels.size() != probs.size())
    throw InvalidSpec("run_shots: labels must cover all outcomes");

  const std::vector<double> cdf = detail::cumulative(probs);
  const double total = cdf.back();
  if (total <= 0.0) throw InvalidSpec("run_shots: outcome distribution has zero mass");

  Rng rng(spec.seed);
  EmpiricalResult out;
  out.counts.assign(probs.size(), 0);
  out.shots = spec.shots;
  for (long s = 0; s < spec.shots; ++s) ++out.counts[detail::draw(cdf, total, rng)];

  long wrong = 0, inconclusive = 0;
  for (std::size_t j = 0; j < out.counts.size(); ++j) {
    if (spec.outcome_labels[j] == Conclusion::Inconclusive)
      inconclusive += out.counts[j];
    else if (spec.outcome_labels[j] != spec.true_label)
      wrong += out.counts[j];
  }
  out.empirical_error_rate = static_cast<double>(wrong) / spec.shots;
  out.empirical_failure_rate = static_cast<double>(inconclusive) / spec.shots;
  out.error_stderr = detail::binom_stderr(out.empirical_error_rate, spec.shots);
  out.failure_stderr = detail::binom_stderr(out.empirical_failure_rate, spec.shots);
  return out;
}

/// Prior-weighted combination of per-channel conditional results,
/// p = sum_k eta_k p_k for both the error and the failure rate.
inline std::pair<double, double> average_over_priors(
    const std::vector<double>& priors, const std::vector<EmpiricalResult>& per_channel) {
  if (priors.size() != per_channel.size() || per_channel.size() < 2)
    throw MissingResult("average_over_priors: need one result per hypothesis");
  double err = 0.0, fail = 0.0;
  for (std::size_t k = 0; k < priors.size(); ++k) {
    err += priors[k] * per_channel[k].empirical_error_rate;
    fail += priors[k] * per_channel[k].empirical_failure_rate;
  }
  return {err, fail};
}

/// Bayesian mode: each shot first draws the true channel from the priors,
/// then samples the outcome from that channel's distribution. Error and
/// failure rates are then estimates of the prior-averaged quantities.
inline EmpiricalResult run_shots_bayes(const std::variant<TestStrategy, ProcessPOVM>& strategy,
                                       const Channel& ch1, const Channel& ch2, double eta1,
                                       double eta2,
                                       const std::vector<Conclusion>& outcome_labels, long shots,
                                       std::uint64_t seed) {
  if (shots <= 0) throw InvalidSpec("run_shots_bayes: shot count must be positive");
  if (eta1 < 0 || eta2 < 0 || std::abs(eta1 + eta2 - 1.0) > 1e-12)
    throw InvalidSpec("run_shots_bayes: invalid priors");

  const ProcessPOVM povm = detail::to_ppovm(strategy);
  const std::vector<double> p1 = outcome_probabilities(povm, ch1);
  const std::vector<double> p2 = outcome_probabilities(povm, ch2);
  if (outcome_labels.size() != p1.size())
    throw InvalidSpec("run_shots_bayes: labels must cover all outcomes");

  const std::vector<double> cdf1 = detail::cumulative(p1);
  const std::vector<double> cdf2 = detail::cumulative(p2);

  Rng rng(seed);
  EmpiricalResult out;
  out.counts.assign(p1.size(), 0);
  out.shots = shots;
  long wrong = 0, inconclusive = 0;
  for (long s = 0; s < shots; ++s) {
    const bool first = uniform01(rng) < eta1;
    const auto& cdf = first ? cdf1 : cdf2;
    const std::size_t j = detail::draw(cdf, cdf.back(), rng);
    ++out.counts[j];
    if (outcome_labels[j] == Conclusion::Inconclusive)
      ++inconclusive;
    else if (outcome_labels[j] != (first ? Conclusion::Ch1 : Conclusion::Ch2))
      ++wrong;
  }
  out.empirical_error_rate = static_cast<double>(wrong) / shots;
  out.empirical_failure_rate = static_cast<double>(inconclusive) / shots;
  out.error_stderr = detail::binom_stderr(out.empirical_error_rate, shots);
  out.failure_stderr = detail::binom_stderr(out.empirical_failure_rate, shots);
  return out;
}

}  // namespace qpdisc
