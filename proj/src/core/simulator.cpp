#include "core/simulator.hpp"

#include <cmath>

namespace qkron {
namespace {

// Qubit q of an n-qubit register owns index bit n-1-q.
std::uint64_t bit_mask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
};

ControlMask control_mask(int n, const std::vector<Control>& cs) {
  ControlMask cm;
  for (const Control& c : cs) {
    if (c.qubit < 0 || c.qubit >= n) fail(Status::InternalError, "control off register");
    const std::uint64_t m = bit_mask(n, c.qubit);
    if (cm.mask & m) fail(Status::InternalError, "duplicate control qubit");
    cm.mask |= m;
    if (c.value) cm.value |= m;
  }
  return cm;
}

void apply_pair_update(StateVector* psi, int target, const std::array<cplx, 4>& u,
                       const ControlMask& cm) {
  const int n = psi->n;
  if (target < 0 || target >= n) fail(Status::InternalError, "target off register");
  const std::uint64_t tm = bit_mask(n, target);
  if (cm.mask & tm) fail(Status::InternalError, "target doubles as control");
  const std::uint64_t dim = psi->amp.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tm) continue;
    if ((i & cm.mask) != cm.value) continue;
    const cplx a0 = psi->amp[i];
    const cplx a1 = psi->amp[i | tm];
    psi->amp[i] = u[0] * a0 + u[1] * a1;
    psi->amp[i | tm] = u[2] * a0 + u[3] * a1;
  }
}

void apply_phase(StateVector* psi, double angle, const ControlMask& cm) {
  const cplx f = std::polar(1.0, angle);
  const std::uint64_t dim = psi->amp.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cm.mask) == cm.value) psi->amp[i] *= f;
  }
}

void apply_gate_full(const Gate& g, StateVector* psi) {
  switch (g.kind) {
    case GateKind::Unitary1:
      apply_pair_update(psi, g.target, g.u, ControlMask{});
      break;
    case GateKind::Controlled1:
      apply_pair_update(psi, g.target, g.u, control_mask(psi->n, g.controls));
      break;
    case GateKind::Phase:
      apply_phase(psi, g.angle, control_mask(psi->n, g.controls));
      break;
    case GateKind::Composite:
      for (const Gate& b : composite_body(g)) apply_gate_full(b, psi);
      break;
  }
}

void require_data_only(const Gate& g, int n_data) {
  if (g.kind != GateKind::Phase && g.target >= n_data)
    fail(Status::BadArgument, "emulation cannot touch work qubits");
  for (const Control& c : g.controls)
    if (c.qubit >= n_data) fail(Status::BadArgument, "emulation cannot touch work qubits");
}

void apply_gate_emulated(const Gate& g, StateVector* psi) {
  if (g.kind == GateKind::Composite) {
    if (g.tag != CompositeTag::DiagEvo)
      fail(Status::BadArgument, "emulation handles diagonal composites only");
    const DiagSpec& spec = *g.diag;
    if (spec.n_data != psi->n) fail(Status::BadArgument, "diag width mismatch");
    const std::uint64_t dim = psi->amp.size();
    for (std::uint64_t i = 0; i < dim; ++i)
      psi->amp[i] *= std::polar(1.0, diag_phase(spec, i));
    return;
  }
  require_data_only(g, psi->n);
  apply_gate_full(g, psi);
}

}  // namespace

StateVector StateVector::zero_state(int n) { return basis_state(n, 0); }

StateVector StateVector::basis_state(int n, std::uint64_t idx) {
  if (n < 1 || n > kFullSimCap) fail(Status::CapExceeded, "state width out of range");
  StateVector s;
  s.n = n;
  s.amp.assign(std::uint64_t{1} << n, cplx{0.0, 0.0});
  s.amp[idx] = 1.0;
  return s;
}

double StateVector::norm2() const {
  double t = 0.0;
  for (const cplx& a : amp) t += std::norm(a);
  return t;
}

void apply_circuit(const Circuit& c, StateVector* psi, SimMode mode) {
  const int want = (mode == SimMode::Full) ? c.n_total : c.n_data;
  if (psi->n != want) fail(Status::BadArgument, "state width does not match circuit");
  for (const Gate& g : c.gates) {
    if (mode == SimMode::Full)
      apply_gate_full(g, psi);
    else
      apply_gate_emulated(g, psi);
  }
}

StateVector run_on_data(const Circuit& c, const StateVector& data, SimMode mode) {
  if (data.n != c.n_data) fail(Status::BadArgument, "state width does not match circuit");
  if (mode == SimMode::Emulation || c.n_total == c.n_data) {
    StateVector out = data;
    apply_circuit(c, &out, mode);
    return out;
  }
  if (c.n_total > kFullSimCap) fail(Status::CapExceeded, "full simulation above qubit cap");

  const int extra = c.n_total - c.n_data;
  StateVector full = StateVector::zero_state(c.n_total);
  full.amp.assign(full.amp.size(), cplx{0.0, 0.0});
  for (std::uint64_t i = 0; i < data.amp.size(); ++i) full.amp[i << extra] = data.amp[i];
  apply_circuit(c, &full, SimMode::Full);

  StateVector out;
  out.n = c.n_data;
  out.amp.resize(data.amp.size());
  double leak = 0.0;
  const std::uint64_t anc = (std::uint64_t{1} << extra) - 1;
  for (std::uint64_t i = 0; i < full.amp.size(); ++i) {
    if (i & anc)
      leak += std::norm(full.amp[i]);
    else
      out.amp[i >> extra] = full.amp[i];
  }
  if (leak > 1e-9) fail(Status::InternalError, "work register failed to uncompute");
  return out;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) fail(Status::BadArgument, "state width mismatch");
  cplx t{0.0, 0.0};
  for (std::uint64_t i = 0; i < a.amp.size(); ++i) t += std::conj(a.amp[i]) * b.amp[i];
  return t;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::abs(inner(a, b)); }

double l2_distance(const StateVector& a, const StateVector& b) {
  if (a.n != b.n) fail(Status::BadArgument, "state width mismatch");
  double t = 0.0;
  for (std::uint64_t i = 0; i < a.amp.size(); ++i) t += std::norm(a.amp[i] - b.amp[i]);
  return std::sqrt(t);
}

double trace_distance_pure(const StateVector& a, const StateVector& b) {
  const double f = std::min(1.0, fidelity(a, b));
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

Mat dense_unitary(const Circuit& c, SimMode mode) {
  if (c.n_data > kDenseUnitaryCap) fail(Status::CapExceeded, "dense unitary above qubit cap");
  const std::uint64_t dim = std::uint64_t{1} << c.n_data;
  Mat u(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    const StateVector out = run_on_data(c, StateVector::basis_state(c.n_data, col), mode);
    for (std::uint64_t row = 0; row < dim; ++row) u(row, col) = out.amp[row];
  }
  return u;
}

}  // namespace qkron
