#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/fixedpoint.hpp"
#include "core/twobytwo.hpp"

namespace qkron {

// Gate-level circuit model.
//
// Qubit convention: big-endian. Qubit 0 owns the most significant bit of a
// basis index; a w-qubit register listed [q0 .. q_{w-1}] holds the value
// sum_i bit(q_i) * 2^{w-1-i}.
//
// Leaf gates: single-qubit unitaries, multiply-controlled single-qubit
// unitaries (control set with per-control polarity), and phase gates that
// multiply by e^{i*angle} on the subspace where every control matches
// (an empty control set is a global phase).
//
// Composite gates carry parameters and operand qubit lists; their gate-level
// bodies are generated on demand in global coordinates:
//   Qft / Iqft  - exact DFT / inverse DFT on the listed register
//   CAdd        - Fourier-space shifted addition (lives inside multipliers)
//   Mul         - out-of-place fixed-point multiplier (optional controls)
//   DiagEvo     - evolution under a tensor-diagonal (payload below)

enum class GateKind { Unitary1, Controlled1, Phase, Composite };
enum class CompositeTag { None, Qft, Iqft, CAdd, Mul, DiagEvo };

struct Control {
  int qubit = -1;
  int value = 1;  // 0 or 1
};

// Evolution payload: exp(-i t H) for H = scale * D_0 x ... x D_{nd-1},
// D_k = diag(signs[k][0] * 1, signs[k][1] * sigma[k]), sigma in [0,1].
// sigma[k] == 1.0 marks a structurally-unit entry (never encoded); every
// sigma[k] < 1.0 participates in the fixed-point product chain at p bits.
struct DiagSpec {
  int n_data = 0;
  std::vector<double> sigma;
  std::vector<std::array<int, 2>> signs;
  double scale = 1.0;
  double t = 0.0;
  int p = 4;
};

struct Gate {
  GateKind kind = GateKind::Unitary1;

  int target = -1;
  std::array<cplx, 4> u{};  // row-major 2x2
  std::vector<Control> controls;
  double angle = 0.0;

  CompositeTag tag = CompositeTag::None;
  std::vector<int> qubits;  // composite operands, role-ordered
  int param_p = 0;
  int param_k = 0;
  bool inverted = false;  // Mul: uncomputation direction
  std::shared_ptr<const DiagSpec> diag;
};

struct Circuit {
  int n_data = 0;   // externally meaningful qubits, always the low indices
  int n_total = 0;  // n_data plus work ancillas (enter and leave as |0>)
  std::vector<Gate> gates;
};

Gate gate_u1(int target, const TwoByTwo& u);
Gate gate_cu1(std::vector<Control> controls, int target, const TwoByTwo& u);
Gate gate_x(int target);
Gate gate_cx(std::vector<Control> controls, int target);
Gate gate_phase(std::vector<Control> controls, double angle);

// --- builders -------------------------------------------------------------

// DFT on k qubits (includes the output-order swap layer); k >= 1.
Circuit build_qft(int k);
Circuit build_iqft(int k);

// In-place signed fixed-point adder. Register layout (documented choice):
//   [0]          overflow bit of the result (weight 2^0)
//   [1 .. p]     target fraction bits (nu^1 in, result out)
//   [p+1]        low guard bit, weight 2^-(p+1); never toggles
//   [p+2]        source sign bit (two's-complement top weight)
//   [p+3..2p+2]  source fraction bits (nu^2, preserved)
// The result [0..p] reads nu^1 + nu^2 for nonnegative inputs; signed
// sources wrap mod 4 two's-complement style. Census: one QFT_{p+2}, one
// IQFT_{p+2}, (p+1)(p+2)/2 controlled phase gates.
Circuit build_adder(int p);

// Out-of-place multiplier: |0>_{2p} |nu1> |nu2> -> |nu1*nu2> |nu1> |nu2>.
//   [0]            overflow bit (stays 0 for in-range products)
//   [1 .. 2p]      product fraction bits
//   [2p+1]         low guard bit
//   [2p+2..3p+1]   nu^1
//   [3p+2..4p+1]   nu^2
// Census: one QFT_{2p+2}, p controlled adders, one IQFT_{2p+2}.
Circuit build_multiplier(int p);

// exp(-i t Sigma) for a DiagSpec. Data qubits first, then work registers:
// product accumulator(s), one reusable constant register, one sign-parity
// qubit when any factor carries opposite eigen-signs. Forward multiplier
// chain uses (#active - 1) calls; uncomputation mirrors them in reverse.
Circuit build_diag_evolution(const DiagSpec& spec);

// Work-register layout of a DiagSpec evolution (shared by the builder, the
// census and the tests).
struct DiagLayout {
  std::vector<int> actives;  // data qubits with sigma < 1, ascending
  std::vector<int> flips;    // data qubits with opposite eigen-signs
  int base_sign = +1;        // product of signs[k][0]
  int r1 = -1;               // first selected-value register (p bits)
  int creg = -1;             // constant operand register (p bits)
  std::vector<int> outs;     // multiplier output registers (2p+2 each)
  int parity = -1;           // sign-parity ancilla
  int n_total = 0;
  std::vector<FixedPoint> enc;  // encode(sigma, p) per active qubit
};
DiagLayout diag_layout(const DiagSpec& spec);

// Classical fast path: the diagonal phase this circuit applies to a data
// basis state (identical, bit for bit, to the gate expansion).
double diag_phase(const DiagSpec& spec, std::uint64_t basis);

// Sandwich evolution exp(-i t H) = U exp(-i t Sigma) U^dagger for a
// tensor H with per-qubit eigenbasis basis[q].
struct Type1EvoSpec {
  std::vector<TwoByTwo> basis;
  DiagSpec diag;
};
Circuit build_type1_evolution(const Type1EvoSpec& spec);

// Block off-diagonal evolution [[0, M],[M^dagger, 0]] with tensor M over
// qubits 1..n_data-1. With per-factor SVDs M_k = u_k s_k v_k^dagger the
// block rotation applies u (controlled on block qubit 0 being 0) and v
// (controlled on it being 1); H on qubit 0 then diagonalizes the inner X.
struct Type2EvoSpec {
  std::vector<TwoByTwo> u;  // qubits 1..n_data-1, block-0 side
  std::vector<TwoByTwo> v;  // same span, block-1 side
  DiagSpec diag;            // qubit 0 carries sigma 1 with signs (+1,-1)
};
Circuit build_type2_evolution(const Type2EvoSpec& spec);

// --- expansion and accounting ----------------------------------------------

// Gate-level body of one composite gate, in global coordinates.
std::vector<Gate> composite_body(const Gate& g);

// Recursively expand every composite into leaf gates.
Circuit expand_fully(const Circuit& c);

struct GateStats {
  long long single_qubit = 0;
  long long controlled_unitary = 0;
  long long phase_gates = 0;
  long long qft_blocks = 0;
  long long adder_calls = 0;
  long long multiplier_calls = 0;          // forward direction only
  long long inverse_multiplier_calls = 0;  // uncomputation reruns
  long long depth_units = 0;  // Mul p^3, CAdd p^2, Qft leaf count, leaf 1

  GateStats& operator+=(const GateStats& o);
  GateStats operator*(long long reps) const;
  bool operator==(const GateStats& o) const = default;
};

// Top-level census: leaf gates counted directly, composites by tag (their
// interiors are charged to depth but not to the leaf counters). DiagEvo
// composites contribute their full interior census analytically.
GateStats gate_stats(const Circuit& c);

// One gate per line, versioned header; stable across runs.
std::string dump(const Circuit& c);

}  // namespace qkron
