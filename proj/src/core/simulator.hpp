#pragma once

#include <cstdint>
#include <vector>

#include "core/circuit.hpp"
#include "core/common.hpp"
#include "core/dense.hpp"

namespace qkron {

// Big-endian state vector: qubit 0 owns the most significant index bit.
struct StateVector {
  int n = 0;
  std::vector<cplx> amp;

  static StateVector zero_state(int n);
  static StateVector basis_state(int n, std::uint64_t idx);
  double norm2() const;
};

// Full mode expands every composite to leaf gates and needs a state spanning
// n_total qubits. Emulation mode spans n_data qubits: leaf gates may touch
// data qubits only, and DiagEvo composites act through their exact per-basis
// fixed-point phase model (bit-identical to the gate expansion).
enum class SimMode { Full, Emulation };

void apply_circuit(const Circuit& c, StateVector* psi, SimMode mode);

// Run on a data-register state. Full mode pads work ancillas in |0>, checks
// they return there (leaked norm above 1e-9 is an internal error), and strips
// them again.
StateVector run_on_data(const Circuit& c, const StateVector& data, SimMode mode);

cplx inner(const StateVector& a, const StateVector& b);  // <a|b>
double fidelity(const StateVector& a, const StateVector& b);
double l2_distance(const StateVector& a, const StateVector& b);
// Trace distance between the two pure states: sqrt(1 - F^2).
double trace_distance_pure(const StateVector& a, const StateVector& b);

// Column-by-column unitary of the circuit on its data register.
Mat dense_unitary(const Circuit& c, SimMode mode);

}  // namespace qkron
