#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/circuit.hpp"
#include "core/dense.hpp"
#include "core/problem.hpp"
#include "core/schedule.hpp"
#include "core/simulator.hpp"

namespace qkron {

// End-to-end pipeline: normalize, condition, schedule, prepare, evolve,
// read out, aggregate. Everything downstream of the seed is deterministic.

enum class EvoMode { ExactExpm, TrotterExactData, TrotterFixedPoint };

const char* evo_mode_name(EvoMode m);
std::optional<EvoMode> parse_evo_mode(const std::string& name);

struct SolveConfig {
  double eps = 0.1;
  EvoMode mode = EvoMode::TrotterFixedPoint;
  int repeats = 1;
  std::uint64_t seed = 0;
  bool seed_from_entropy = false;
  std::optional<int> p_bits;  // fraction bits; derived from eps when absent
  double c_q = kDefaultCq;
  double c_r = kDefaultCr;
};

// State preparation network for the b assembly, registers [prep | system].
// Post-selecting the prep register on |0...0> leaves the system proportional
// to b with probability (|b| / B)^2, B the sum of term norms.
struct PrepResult {
  Circuit circuit;
  int prep_qubits = 0;
  double success_prob = 1.0;
  double big_b = 0.0;
};
PrepResult prepare_b_circuit(const Instance& inst);

struct RepeatResult {
  int rep = 0;
  long long segments = 0;
  double fidelity = 0.0;        // against |0> x x(1)
  double trace_distance = 0.0;  // sqrt(1 - fidelity^2)
  double success_prob = 0.0;    // block readout projection mass
  double solution_error = 0.0;  // phase-aligned l2 gap of the readout
};

struct TraceSummary {
  double mean = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct SolveReport {
  // instance
  int n = 0, m = 0, d = 0;
  double kappa = 0.0;
  double b_norm = 0.0;
  std::vector<std::string> warnings;
  // configuration echo
  double eps = 0.0;
  EvoMode mode = EvoMode::TrotterFixedPoint;
  std::uint64_t seed = 0;
  bool seed_from_entropy = false;
  int repeats = 0;
  int fraction_bits = 0;
  double c_q = 0.0, c_r = 0.0;
  // schedule
  long long q = 0;
  double va = 0.0, vb = 0.0;
  double gap_min = 0.0;
  double t_bound = 0.0;  // 2 pi / gap_min
  // preparation
  int prep_qubits = 0;
  double prep_success_prob = 1.0;
  // resources
  long long segments_total = 0;
  GateStats census;  // fixed-point gate census across all repeats
  int emulation_qubits = 0;
  int full_qubits_max = 0;
  // outcomes (solve only; empty for stats)
  bool stats_only = false;
  std::vector<RepeatResult> repeat_results;
  TraceSummary trace;
  bool eps_met = false;
};

SolveReport solve(const Instance& inst, const SolveConfig& cfg);
// Identical accounting path with evolution skipped.
SolveReport predict_stats(const Instance& inst, const SolveConfig& cfg);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;   // measured defect or probability
  double bound = 0.0;   // acceptance threshold where meaningful
  std::string detail;
};
struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass = false;
};
// Structural self-checks of one instance against the dense oracles:
// normalization invariants, decomposition defect, kernel states at the
// endpoints, preparation network output.
VerifyReport run_verify(const Instance& inst);

std::string report_json(const SolveReport& rep);
std::string verify_json(const VerifyReport& rep);

}  // namespace qkron
