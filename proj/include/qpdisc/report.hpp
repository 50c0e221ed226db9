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
#include <cstdio>
#include <string>
#include <vector>

#include "qpdisc/problem_io.hpp"
#include "qpdisc/shot_sim.hpp"
#include "qpdisc/unitary_discrimination.hpp"

// Report assembly. Every numeric quantity carries a provenance tag:
// "exact" (closed formula), "numerical" (derivative-free optimizer, valid
// only up to its gap) or "empirical" (Monte-Carlo estimate). Reports embed
// the canonical problem echo so a run is reproducible from its own output.

namespace qpdisc {

enum class Task { Fidelity, MinError, Unambiguous, Bounds, Simulate, ReportAll };

inline Task task_from_string(const std::string& name) {
  if (name == "fidelity") return Task::Fidelity;
  if (name == "min-error") return Task::MinError;
  if (name == "unambiguous") return Task::Unambiguous;
  if (name == "bounds") return Task::Bounds;
  if (name == "simulate") return Task::Simulate;
  if (name == "report-all") return Task::ReportAll;
  throw UnsupportedTask("unknown task '" + name + "'");
}

inline std::string task_to_string(Task t) {
  switch (t) {
    case Task::Fidelity: return "fidelity";
    case Task::MinError: return "min-error";
    case Task::Unambiguous: return "unambiguous";
    case Task::Bounds: return "bounds";
    case Task::Simulate: return "simulate";
    case Task::ReportAll: return "report-all";
  }
  return "?";
}

namespace detail {

inline json tagged(double value, const char* provenance) {
  return json{{"value", value}, {"provenance", provenance}};
}

inline json fidelity_to_json(const FidelityResult& fr) {
  json j;
  j["d_value"] = tagged(fr.d_value, "exact");
  j["zero_in_hull"] = fr.zero_in_hull;
  if (fr.optimal_pair)
    j["optimal_pair"] = json::array({fr.optimal_pair->first, fr.optimal_pair->second});
  else
    j["optimal_pair"] = nullptr;
  json phases = json::array(), weights = json::array(), points = json::array();
  for (Eigen::Index k = 0; k < fr.eigenphases.size(); ++k) {
    phases.push_back(fr.eigenphases(k));
    weights.push_back(fr.xi_weights(k));
    points.push_back(json::array({std::cos(fr.eigenphases(k)), std::sin(fr.eigenphases(k))}));
  }
  j["eigenphases"] = std::move(phases);
  j["xi_weights"] = std::move(weights);
  j["hull_points"] = std::move(points);
  return j;
}

inline json strategy_to_json(const TestStrategy& s, const std::vector<std::string>& labels) {
  json j;
  j["ancilla_dim"] = s.anc_dim;
  j["system_dim"] = s.sys_dim;
  j["test_state"] = vector_to_json(s.test_state);
  json effects = json::array();
  for (const auto& f : s.output_povm) effects.push_back(matrix_to_json(f));
  j["output_effects"] = std::move(effects);
  j["outcome_labels"] = labels;
  return j;
}

inline json empirical_to_json(const EmpiricalResult& r, double predicted,
                              const char* predicted_name) {
  json j;
  j["shots"] = r.shots;
  j["counts"] = r.counts;
  j["empirical_error_rate"] = tagged(r.empirical_error_rate, "empirical");
  j["empirical_failure_rate"] = tagged(r.empirical_failure_rate, "empirical");
  j["error_stderr"] = r.error_stderr;
  j["failure_stderr"] = r.failure_stderr;
  j[predicted_name] = predicted;
  return j;
}

// Maximally entangled test strategy for an arbitrary pair: psi_+ in, the
// Helstrom measurement between the two (normalized) Choi operators out.
// Its error is exactly the maxent upper bound.
inline TestStrategy maxent_strategy(const ChannelPairProblem& p) {
  const int d = p.ch1.dim();
  const MinErrorSolution sol = helstrom(
      TwoStateProblem(QuantumState(p.ch1.choi() / static_cast<double>(d)),
                      QuantumState(p.ch2.choi() / static_cast<double>(d)), p.eta1, p.eta2));
  return TestStrategy(max_entangled_ket(d), {sol.effect1.matrix(), sol.effect2.matrix()}, d,
                      d);
}

inline double achieved_error_of(const TestStrategy& s, const ChannelPairProblem& p) {
  const ProcessPOVM povm = ppovm_of_strategy(s);
  const auto p1 = outcome_probabilities(povm, p.ch1);
  const auto p2 = outcome_probabilities(povm, p.ch2);
  return p.eta1 * p1[1] + p.eta2 * p2[0];
}

inline double achieved_failure_of(const TestStrategy& s, const ChannelPairProblem& p) {
  const ProcessPOVM povm = ppovm_of_strategy(s);
  const auto p1 = outcome_probabilities(povm, p.ch1);
  const auto p2 = outcome_probabilities(povm, p.ch2);
  return p.eta1 * p1[2] + p.eta2 * p2[2];
}

inline json bounds_to_json(const ProblemFile& pf) {
  const ChannelPairProblem p = pf.problem();
  json j;
  const FidelityBoundResult flb = fidelity_lower_bound(p, pf.optimizer);
  j["fidelity_lower_bound"] = tagged(flb.bound, "numerical");
  j["fidelity_trace_value"] = tagged(flb.trace_value, "numerical");
  j["fidelity_argmin_xi"] = matrix_to_json(flb.argmin_xi.rho());
  j["maxent_upper_bound"] = tagged(maxent_upper_bound(p), "exact");
  j["no_ancilla_upper_bound"] = tagged(no_ancilla_upper_bound(p, pf.optimizer), "numerical");
  if (p.both_unitary()) {
    const SandwichResult sw = sandwich_check(p);
    j["sandwich"] = {{"lhs", sw.lhs},
                     {"mid", sw.mid},
                     {"rhs", sw.rhs},
                     {"holds", sw.holds},
                     {"provenance", "exact"}};
  }
  const DistinguishabilityResult dist = perfect_distinguishability(p, pf.optimizer);
  json jd;
  jd["distinguishable"] = dist.distinguishable;
  jd["residual"] = dist.residual;
  jd["provenance"] = dist.exact ? "exact" : "numerical";
  jd["witness_xi"] = dist.witness_xi ? matrix_to_json(dist.witness_xi->rho()) : json(nullptr);
  j["perfect_distinguishability"] = std::move(jd);
  return j;
}

inline json simulate_to_json(const ProblemFile& pf) {
  const ChannelPairProblem p = pf.problem();
  json j;
  j["shots"] = pf.shots;
  j["seed"] = pf.seed;
  j["mode"] = "bayes";
  if (p.both_unitary()) {
    const UnitaryPair pair(p.ch1.unitary_matrix(), p.ch2.unitary_matrix(), p.eta1, p.eta2);
    const MinErrorUnitaryResult me = min_error_unitary(pair);
    const EmpiricalResult me_run =
        run_shots_bayes(me.strategy, p.ch1, p.ch2, p.eta1, p.eta2,
                        {Conclusion::Ch1, Conclusion::Ch2}, pf.shots, pf.seed);
    j["min_error"] = empirical_to_json(me_run, me.p_error, "predicted_error");

    const UnambiguousUnitaryResult un = unambiguous_unitary(pair);
    const EmpiricalResult un_run = run_shots_bayes(
        un.strategy, p.ch1, p.ch2, p.eta1, p.eta2,
        {Conclusion::Ch1, Conclusion::Ch2, Conclusion::Inconclusive}, pf.shots,
        substream_seed(pf.seed, 1));
    json ju = empirical_to_json(un_run, un.p_fail, "predicted_failure");
    ju["wrong_conclusions"] =
        static_cast<long>(un_run.empirical_error_rate * static_cast<double>(un_run.shots) + 0.5);
    j["unambiguous"] = std::move(ju);
  } else {
    const TestStrategy maxent = maxent_strategy(p);
    const EmpiricalResult run =
        run_shots_bayes(maxent, p.ch1, p.ch2, p.eta1, p.eta2,
                        {Conclusion::Ch1, Conclusion::Ch2}, pf.shots, pf.seed);
    j["maxent_min_error"] = empirical_to_json(run, maxent_upper_bound(p), "predicted_error");
  }
  return j;
}

}  // namespace detail

/// Runs one task against a parsed problem and assembles the machine report.
/// Exact formulas require a unitary pair; the fidelity and unambiguous tasks
/// reject Kraus channels, while min-error degrades to a bounds-only report.
inline json run_task(const ProblemFile& pf, Task task) {
  const bool unitary = pf.ch1.is_unitary_kind() && pf.ch2.is_unitary_kind();

  if (!unitary && (task == Task::Fidelity || task == Task::Unambiguous))
    throw UnsupportedTask(task_to_string(task) +
                          ": exact solutions exist for unitary pairs only; run 'bounds' for "
                          "the numerical fidelity and the failure lower bound");

  json report;
  report["task"] = task_to_string(task);
  report["dim"] = pf.ch1.dim();
  report["unitary_pair"] = unitary;

  const auto pair = [&] {
    return UnitaryPair(pf.ch1.unitary_matrix(), pf.ch2.unitary_matrix(), pf.eta1, pf.eta2,
                       pf.tol);
  };

  switch (task) {
    case Task::Fidelity: {
      report["fidelity"] = detail::fidelity_to_json(cb_process_fidelity(pair(), pf.tol));
      break;
    }
    case Task::MinError: {
      if (unitary) {
        const MinErrorUnitaryResult res = min_error_unitary(pair(), pf.tol);
        report["fidelity"] = detail::fidelity_to_json(res.fidelity);
        json jm;
        jm["p_error"] = detail::tagged(res.p_error, "exact");
        jm["strategy"] = detail::strategy_to_json(res.strategy, {"ch1", "ch2"});
        report["min_error"] = std::move(jm);
      } else {
        const ChannelPairProblem p = pf.problem();
        json jm;
        jm["maxent_upper_bound"] = detail::tagged(maxent_upper_bound(p), "exact");
        jm["no_ancilla_upper_bound"] =
            detail::tagged(no_ancilla_upper_bound(p, pf.optimizer), "numerical");
        report["min_error_bounds"] = std::move(jm);
      }
      break;
    }
    case Task::Unambiguous: {
      const UnambiguousUnitaryResult res = unambiguous_unitary(pair(), pf.tol);
      report["fidelity"] = detail::fidelity_to_json(res.fidelity);
      json ju;
      ju["p_fail"] = detail::tagged(res.p_fail, "exact");
      ju["strategy"] =
          detail::strategy_to_json(res.strategy, {"ch1", "ch2", "inconclusive"});
      const SaturationResult sat = saturation_check(pair(), pf.tol);
      ju["saturation"] = {{"lower_bound", sat.lower_bound},
                          {"p_fail", sat.p_fail},
                          {"saturated", sat.saturated},
                          {"gap", sat.gap},
                          {"provenance", "exact"}};
      report["unambiguous"] = std::move(ju);
      break;
    }
    case Task::Bounds: {
      report["bounds"] = detail::bounds_to_json(pf);
      break;
    }
    case Task::Simulate: {
      report["simulation"] = detail::simulate_to_json(pf);
      break;
    }
    case Task::ReportAll: {
      const ChannelPairProblem p = pf.problem();
      if (unitary) {
        const MinErrorUnitaryResult me = min_error_unitary(pair(), pf.tol);
        const UnambiguousUnitaryResult un = unambiguous_unitary(pair(), pf.tol);
        report["fidelity"] = detail::fidelity_to_json(me.fidelity);
        json jm;
        jm["p_error"] = detail::tagged(me.p_error, "exact");
        jm["strategy"] = detail::strategy_to_json(me.strategy, {"ch1", "ch2"});
        report["min_error"] = std::move(jm);
        json ju;
        ju["p_fail"] = detail::tagged(un.p_fail, "exact");
        ju["strategy"] = detail::strategy_to_json(un.strategy, {"ch1", "ch2", "inconclusive"});
        const SaturationResult sat = saturation_check(pair(), pf.tol);
        ju["saturation"] = {{"lower_bound", sat.lower_bound},
                            {"p_fail", sat.p_fail},
                            {"saturated", sat.saturated},
                            {"gap", sat.gap},
                            {"provenance", "exact"}};
        report["unambiguous"] = std::move(ju);
        report["bounds"] = detail::bounds_to_json(pf);

        json checks;
        checks["achieved_min_error_delta"] =
            detail::achieved_error_of(me.strategy, p) - me.p_error;
        checks["achieved_unambiguous_delta"] =
            detail::achieved_failure_of(un.strategy, p) - un.p_fail;
        checks["maxent_gap"] = report["bounds"]["maxent_upper_bound"]["value"].get<double>() -
                               me.p_error;
        checks["no_ancilla_gap"] =
            report["bounds"]["no_ancilla_upper_bound"]["value"].get<double>() - me.p_error;
        checks["fidelity_bound_vs_p_fail"] =
            report["bounds"]["fidelity_lower_bound"]["value"].get<double>() - un.p_fail;
        if (report["bounds"].contains("sandwich"))
          checks["sandwich_rhs_slack"] =
              report["bounds"]["sandwich"]["rhs"].get<double>() -
              report["bounds"]["sandwich"]["mid"].get<double>();
        report["cross_checks"] = std::move(checks);
      } else {
        report["bounds"] = detail::bounds_to_json(pf);
      }
      if (pf.shots > 0) report["simulation"] = detail::simulate_to_json(pf);
      break;
    }
  }

  report["problem"] = problem_to_json(pf);
  report["meta"] = {{"tol", pf.tol}, {"format_version", 1}};
  return report;
}

/// Eigenphase/hull data as CSV for external plotting. Requires a report
/// with a fidelity section (i.e. a unitary pair).
inline std::string render_hull_csv(const json& report) {
  if (!report.contains("fidelity"))
    throw UnsupportedTask("hull data exists for unitary pairs only");
  const json& f = report["fidelity"];
  std::string out = "k,theta,re,im,weight,role\n";
  const bool zero = f["zero_in_hull"].get<bool>();
  int ka = -1, kb = -1;
  if (!f["optimal_pair"].is_null()) {
    ka = f["optimal_pair"][0].get<int>();
    kb = f["optimal_pair"][1].get<int>();
  }
  char buf[160];
  for (std::size_t k = 0; k < f["eigenphases"].size(); ++k) {
    const double w = f["xi_weights"][k].get<double>();
    const char* role = "";
    if (zero && w > 0.0)
      role = "witness";
    else if (static_cast<int>(k) == ka || static_cast<int>(k) == kb)
      role = "pair";
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%s\n", k,
                  f["eigenphases"][k].get<double>(), f["hull_points"][k][0].get<double>(),
                  f["hull_points"][k][1].get<double>(), w, role);
    out += buf;
  }
  return out;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string describe(const json& tagged_value) {
  return fmt(tagged_value["value"].get<double>()) + " (" +
         tagged_value["provenance"].get<std::string>() + ")";
}

}  // namespace detail

/// Human-readable rendering of a machine report.
inline std::string render_text(const json& report) {
  std::string out;
  out += "task:        " + report["task"].get<std::string>() + "\n";
  out += "dimension:   " + std::to_string(report["dim"].get<int>()) + "\n";
  out += "unitary:     " + std::string(report["unitary_pair"].get<bool>() ? "yes" : "no") +
         "\n";
  if (report.contains("fidelity")) {
    const json& f = report["fidelity"];
    out += "D:           " + detail::describe(f["d_value"]) +
           (f["zero_in_hull"].get<bool>() ? "  [origin in hull]" : "") + "\n";
    out += "eigenphases:";
    for (const auto& t : f["eigenphases"]) out += " " + detail::fmt(t.get<double>());
    out += "\n";
  }
  if (report.contains("min_error"))
    out += "p_error:     " + detail::describe(report["min_error"]["p_error"]) + "\n";
  if (report.contains("min_error_bounds")) {
    out += "p_error <=   " +
           detail::describe(report["min_error_bounds"]["maxent_upper_bound"]) +
           "  [maximally entangled test]\n";
    out += "p_error <=   " +
           detail::describe(report["min_error_bounds"]["no_ancilla_upper_bound"]) +
           "  [no-ancilla test]\n";
  }
  if (report.contains("unambiguous")) {
    const json& u = report["unambiguous"];
    out += "p_fail:      " + detail::describe(u["p_fail"]) + "\n";
    out += "saturation:  bound " + detail::fmt(u["saturation"]["lower_bound"].get<double>()) +
           ", gap " + detail::fmt(u["saturation"]["gap"].get<double>()) +
           (u["saturation"]["saturated"].get<bool>() ? " (saturated)" : "") + "\n";
  }
  if (report.contains("bounds")) {
    const json& b = report["bounds"];
    out += "fid. lower:  " + detail::describe(b["fidelity_lower_bound"]) + "\n";
    out += "maxent:      " + detail::describe(b["maxent_upper_bound"]) + "\n";
    out += "no-ancilla:  " + detail::describe(b["no_ancilla_upper_bound"]) + "\n";
    if (b.contains("sandwich"))
      out += "sandwich:    " + detail::fmt(b["sandwich"]["lhs"].get<double>()) + " <= " +
             detail::fmt(b["sandwich"]["mid"].get<double>()) + " <= " +
             detail::fmt(b["sandwich"]["rhs"].get<double>()) +
             (b["sandwich"]["holds"].get<bool>() ? " (holds)" : " (VIOLATED)") + "\n";
    const json& pd = b["perfect_distinguishability"];
    out += "perfect:     " +
           std::string(pd["distinguishable"].get<bool>() ? "yes" : "no") + " (residual " +
           detail::fmt(pd["residual"].get<double>()) + ", " +
           pd["provenance"].get<std::string>() + ")\n";
  }
  if (report.contains("simulation")) {
    const json& s = report["simulation"];
    out += "simulation:  " + std::to_string(s["shots"].get<long>()) + " shots, seed " +
           std::to_string(s["seed"].get<std::uint64_t>()) + "\n";
    for (const char* key : {"min_error", "unambiguous", "maxent_min_error"}) {
      if (!s.contains(key)) continue;
      const json& r = s[key];
      out += std::string("  ") + key + ": error " +
             detail::fmt(r["empirical_error_rate"]["value"].get<double>()) + ", failure " +
             detail::fmt(r["empirical_failure_rate"]["value"].get<double>()) + "\n";
    }
  }
  if (report.contains("cross_checks")) {
    out += "cross-checks:\n";
    for (const auto& [key, value] : report["cross_checks"].items())
      out += "  " + key + ": " + detail::fmt(value.get<double>()) + "\n";
  }
  return out;
}

}  // namespace qpdisc
