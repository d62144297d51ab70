#include "core/solver.hpp"
#include "json.hpp"

namespace qkron {
namespace {

using json = nlohmann::ordered_json;

json census_json(const GateStats& s) {
  return json{{"single_qubit", s.single_qubit},
              {"controlled_unitary", s.controlled_unitary},
              {"phase_gates", s.phase_gates},
              {"qft_blocks", s.qft_blocks},
              {"adder_calls", s.adder_calls},
              {"multiplier_calls", s.multiplier_calls},
              {"inverse_multiplier_calls", s.inverse_multiplier_calls},
              {"depth_units", s.depth_units}};
}

}  // namespace

std::string report_json(const SolveReport& rep) {
  json j;
  j["schema"] = "qkron-report/1";
  j["kind"] = rep.stats_only ? "stats" : "solve";
  j["instance"] = json{{"n", rep.n},          {"m", rep.m},
                       {"d", rep.d},          {"kappa", rep.kappa},
                       {"b_norm", rep.b_norm}, {"warnings", rep.warnings}};
  j["config"] = json{{"eps", rep.eps},
                     {"mode", evo_mode_name(rep.mode)},
                     {"seed", rep.seed},
                     {"seed_source", rep.seed_from_entropy ? "entropy" : "user"},
                     {"repeats", rep.repeats},
                     {"fraction_bits", rep.fraction_bits},
                     {"c_q", rep.c_q},
                     {"c_r", rep.c_r}};
  j["schedule"] = json{{"q", rep.q},
                       {"v_a", rep.va},
                       {"v_b", rep.vb},
                       {"gap_min", rep.gap_min},
                       {"t_bound", rep.t_bound}};
  j["prep"] = json{{"qubits", rep.prep_qubits}, {"success_prob", rep.prep_success_prob}};
  j["resources"] = json{{"segments_total", rep.segments_total},
                        {"census", census_json(rep.census)},
                        {"emulation_qubits", rep.emulation_qubits},
                        {"full_qubits_max", rep.full_qubits_max}};
  if (!rep.stats_only) {
    json reps = json::array();
    for (const RepeatResult& r : rep.repeat_results) {
      reps.push_back(json{{"rep", r.rep},
                          {"segments", r.segments},
                          {"fidelity", r.fidelity},
                          {"trace_distance", r.trace_distance},
                          {"success_prob", r.success_prob},
                          {"solution_error", r.solution_error}});
    }
    j["results"] = json{{"repeats", reps},
                        {"trace_distance",
                         json{{"mean", rep.trace.mean},
                              {"median", rep.trace.median},
                              {"max", rep.trace.max}}},
                        {"eps_met", rep.eps_met}};
  }
  return j.dump(2) + "\n";
}

std::string verify_json(const VerifyReport& rep) {
  json j;
  j["schema"] = "qkron-verify/1";
  json checks = json::array();
  for (const VerifyCheck& c : rep.checks) {
    checks.push_back(json{{"name", c.name},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"bound", c.bound},
                          {"detail", c.detail}});
  }
  j["checks"] = checks;
  j["all_pass"] = rep.all_pass;
  return j.dump(2) + "\n";
}

}  // namespace qkron
