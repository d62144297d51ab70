#include "core/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

namespace qkron {
namespace {

constexpr double kIdentityTol = 1e-14;

TwoByTwo x_mat() { return TwoByTwo::from_rows(0, 1, 1, 0); }

TwoByTwo h_mat() {
  const double s = std::sqrt(0.5);
  return TwoByTwo::from_rows(s, s, s, -s);
}

bool is_identity(const TwoByTwo& u) { return u.near(TwoByTwo::identity(), kIdentityTol); }

Gate invert_gate(const Gate& g) {
  Gate out = g;
  switch (g.kind) {
    case GateKind::Unitary1:
    case GateKind::Controlled1: {
      TwoByTwo t;
      t.m = g.u;
      out.u = t.dagger().m;
      break;
    }
    case GateKind::Phase:
      out.angle = -g.angle;
      break;
    case GateKind::Composite:
      switch (g.tag) {
        case CompositeTag::Qft:
          out.tag = CompositeTag::Iqft;
          break;
        case CompositeTag::Iqft:
          out.tag = CompositeTag::Qft;
          break;
        case CompositeTag::CAdd:
        case CompositeTag::Mul:
          out.inverted = !g.inverted;
          break;
        default:
          fail(Status::InternalError, "cannot invert composite");
      }
      break;
  }
  return out;
}

// DFT on the listed register, textbook layout: per qubit a Hadamard followed
// by phases controlled from every less significant qubit, then the
// bit-reversal swap layer (three CX each). The inverse is the reversed list
// with negated phase angles.
std::vector<Gate> gen_qft(const std::vector<int>& q, bool inverse) {
  const int k = static_cast<int>(q.size());
  std::vector<Gate> g;
  for (int i = 0; i < k; ++i) {
    g.push_back(gate_u1(q[i], h_mat()));
    for (int j = i + 1; j < k; ++j) {
      g.push_back(gate_phase({{q[j], 1}, {q[i], 1}}, 2.0 * kPi / std::ldexp(1.0, j - i + 1)));
    }
  }
  for (int i = 0; i < k / 2; ++i) {
    const int a = q[i];
    const int b = q[k - 1 - i];
    g.push_back(gate_cx({{a, 1}}, b));
    g.push_back(gate_cx({{b, 1}}, a));
    g.push_back(gate_cx({{a, 1}}, b));
  }
  if (inverse) {
    std::reverse(g.begin(), g.end());
    for (Gate& gg : g) gg = invert_gate(gg);
  }
  return g;
}

// Fourier-space addition of one source bit worth 2^e target units into a
// w-wide target. A power-of-two addend leaves a rotation on Fourier wire jt
// only when jt >= e; everything below is an integer multiple of 2*pi.
void push_fourier_add(std::vector<Gate>* g, const std::vector<int>& out, int src, int e,
                      const std::vector<Control>& extra, double sgn) {
  const int w = static_cast<int>(out.size());
  for (int jt = e; jt < w; ++jt) {
    std::vector<Control> c = extra;
    c.push_back({src, 1});
    c.push_back({out[jt], 1});
    g->push_back(gate_phase(std::move(c), sgn * 2.0 * kPi * std::ldexp(1.0, e - jt - 1)));
  }
}

std::vector<Gate> gen_cadd(const Gate& g) {
  const int p = g.param_p;
  const int k = g.param_k;
  const int w = 2 * p + 2;
  std::vector<int> out(g.qubits.begin(), g.qubits.begin() + w);
  const double sgn = g.inverted ? -1.0 : 1.0;
  std::vector<Gate> body;
  for (int j = 1; j <= p; ++j) {
    const int src = g.qubits[w + j - 1];
    push_fourier_add(&body, out, src, 2 * p + 1 - k - j, g.controls, sgn);
  }
  return body;
}

std::vector<Gate> gen_mul(const Gate& g) {
  const int p = g.param_p;
  const int w = 2 * p + 2;
  std::vector<int> out(g.qubits.begin(), g.qubits.begin() + w);
  std::vector<int> in1(g.qubits.begin() + w, g.qubits.begin() + w + p);
  std::vector<int> in2(g.qubits.begin() + w + p, g.qubits.begin() + w + 2 * p);

  std::vector<Gate> body;
  Gate qft;
  qft.kind = GateKind::Composite;
  qft.tag = CompositeTag::Qft;
  qft.qubits = out;
  body.push_back(qft);

  // The Fourier wrap needs no controls: an unfired rotation block leaves
  // QFT then IQFT, which cancel exactly.
  std::vector<int> order(p);
  for (int k = 1; k <= p; ++k) order[k - 1] = k;
  if (g.inverted) std::reverse(order.begin(), order.end());
  for (int k : order) {
    Gate cadd;
    cadd.kind = GateKind::Composite;
    cadd.tag = CompositeTag::CAdd;
    cadd.qubits = out;
    cadd.qubits.insert(cadd.qubits.end(), in2.begin(), in2.end());
    cadd.controls = g.controls;
    cadd.controls.push_back({in1[k - 1], 1});
    cadd.param_p = p;
    cadd.param_k = k;
    cadd.inverted = g.inverted;
    body.push_back(std::move(cadd));
  }

  Gate iqft = qft;
  iqft.tag = CompositeTag::Iqft;
  body.push_back(std::move(iqft));
  return body;
}

void check_diag_spec(const DiagSpec& spec) {
  if (spec.n_data < 1 || spec.n_data > 62) fail(Status::BadArgument, "diag width out of range");
  if (static_cast<int>(spec.sigma.size()) != spec.n_data ||
      static_cast<int>(spec.signs.size()) != spec.n_data)
    fail(Status::BadArgument, "diag payload sizes disagree");
  if (spec.p < 1 || spec.p > kMaxFractionBits) fail(Status::BadArgument, "fraction bits out of range");
  for (int k = 0; k < spec.n_data; ++k) {
    const double s = spec.sigma[k];
    if (!(s >= 0.0 && s <= 1.0)) fail(Status::BadArgument, "sigma outside [0,1]");
    for (int b = 0; b < 2; ++b)
      if (spec.signs[k][b] != 1 && spec.signs[k][b] != -1)
        fail(Status::BadArgument, "eigen-sign must be +1 or -1");
  }
  if (!std::isfinite(spec.scale) || !std::isfinite(spec.t))
    fail(Status::BadArgument, "nonfinite diag scale or time");
}

// Chain-register slice holding the accumulated product after stage s
// (1-based): R1 for the first stage, the fraction window of the stage's
// multiplier output after that.
std::vector<int> stage_slice(const DiagLayout& lay, int p, int s) {
  std::vector<int> q(p);
  const int base = (s == 1) ? lay.r1 : lay.outs[s - 2] + 1;
  for (int b = 0; b < p; ++b) q[b] = base + b;
  return q;
}

std::vector<Gate> gen_diag(const DiagSpec& spec) {
  const DiagLayout lay = diag_layout(spec);
  const int p = spec.p;
  const int L = static_cast<int>(lay.actives.size());

  std::vector<Gate> fwd;
  for (int f : lay.flips) fwd.push_back(gate_cx({{f, 1}}, lay.parity));

  if (L >= 1) {
    for (int b = 1; b <= p; ++b)
      if (lay.enc[0].bit(b)) fwd.push_back(gate_cx({{lay.actives[0], 1}}, lay.r1 + b - 1));
  }

  for (int i = 2; i <= L; ++i) {
    const int k = lay.actives[i - 1];
    const std::vector<int> prev = stage_slice(lay, p, i - 1);
    const int out0 = lay.outs[i - 2];

    std::vector<Gate> load;
    for (int b = 1; b <= p; ++b)
      if (lay.enc[i - 1].bit(b)) load.push_back(gate_x(lay.creg + b - 1));
    fwd.insert(fwd.end(), load.begin(), load.end());

    Gate mul;
    mul.kind = GateKind::Composite;
    mul.tag = CompositeTag::Mul;
    mul.controls = {{k, 1}};
    mul.param_p = p;
    for (int b = 0; b < 2 * p + 2; ++b) mul.qubits.push_back(out0 + b);
    mul.qubits.insert(mul.qubits.end(), prev.begin(), prev.end());
    for (int b = 0; b < p; ++b) mul.qubits.push_back(lay.creg + b);
    fwd.push_back(std::move(mul));

    // First selected factor: write the constant straight into the output;
    // the multiplier above saw an all-zero chain and left it untouched.
    std::vector<Control> first(1, Control{k, 1});
    for (int j = 0; j < i - 1; ++j) first.push_back({lay.actives[j], 0});
    for (int b = 1; b <= p; ++b)
      if (lay.enc[i - 1].bit(b)) fwd.push_back(gate_cx(first, out0 + b));

    // Unselected factor: carry the chain forward unchanged.
    for (int b = 1; b <= p; ++b)
      fwd.push_back(gate_cx({{k, 0}, {prev[b - 1], 1}}, out0 + b));

    // Return the shared constant register for the next stage.
    fwd.insert(fwd.end(), load.begin(), load.end());
  }

  std::vector<Gate> gates = fwd;

  const double s_eff = spec.scale * lay.base_sign;
  struct Branch {
    std::vector<Control> extra;
    double sign;
  };
  std::vector<Branch> branches;
  if (lay.flips.empty()) {
    branches.push_back({{}, 1.0});
  } else {
    branches.push_back({{{lay.parity, 0}}, 1.0});
    branches.push_back({{{lay.parity, 1}}, -1.0});
  }
  if (L >= 1) {
    const std::vector<int> fin = stage_slice(lay, p, L);
    for (int b = 1; b <= p; ++b) {
      for (const Branch& br : branches) {
        std::vector<Control> c = br.extra;
        c.push_back({fin[b - 1], 1});
        gates.push_back(gate_phase(std::move(c), -spec.t * s_eff * br.sign * std::ldexp(1.0, -b)));
      }
    }
  }
  for (const Branch& br : branches) {
    std::vector<Control> c = br.extra;
    for (int k : lay.actives) c.push_back({k, 0});
    gates.push_back(gate_phase(std::move(c), -spec.t * s_eff * br.sign));
  }

  for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) gates.push_back(invert_gate(*it));
  return gates;
}

void append_census(const Circuit& c, GateStats* s);

void append_gate_census(const Gate& g, GateStats* s) {
  switch (g.kind) {
    case GateKind::Unitary1:
      ++s->single_qubit;
      ++s->depth_units;
      break;
    case GateKind::Controlled1:
      ++s->controlled_unitary;
      ++s->depth_units;
      break;
    case GateKind::Phase:
      ++s->phase_gates;
      ++s->depth_units;
      break;
    case GateKind::Composite:
      switch (g.tag) {
        case CompositeTag::Qft:
        case CompositeTag::Iqft: {
          ++s->qft_blocks;
          const long long k = static_cast<long long>(g.qubits.size());
          s->depth_units += k + k * (k - 1) / 2 + 3 * (k / 2);
          break;
        }
        case CompositeTag::CAdd:
          ++s->adder_calls;
          s->depth_units += static_cast<long long>(g.param_p) * g.param_p;
          break;
        case CompositeTag::Mul:
          if (g.inverted)
            ++s->inverse_multiplier_calls;
          else
            ++s->multiplier_calls;
          s->depth_units += static_cast<long long>(g.param_p) * g.param_p * g.param_p;
          break;
        case CompositeTag::DiagEvo: {
          Circuit body;
          body.gates = gen_diag(*g.diag);
          append_census(body, s);
          break;
        }
        default:
          fail(Status::InternalError, "census on unknown composite");
      }
      break;
  }
}

void append_census(const Circuit& c, GateStats* s) {
  for (const Gate& g : c.gates) append_gate_census(g, s);
}

void expand_into(const Gate& g, std::vector<Gate>* out) {
  if (g.kind != GateKind::Composite) {
    out->push_back(g);
    return;
  }
  for (const Gate& b : composite_body(g)) expand_into(b, out);
}

std::string fmt_c(const cplx& z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", z.real(), z.imag());
  return buf;
}

std::string fmt_controls(const std::vector<Control>& cs) {
  std::string s = "[";
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(cs[i].qubit) + ":" + std::to_string(cs[i].value);
  }
  return s + "]";
}

std::string fmt_qubits(const std::vector<int>& qs) {
  std::string s = "[";
  for (size_t i = 0; i < qs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(qs[i]);
  }
  return s + "]";
}

}  // namespace

Gate gate_u1(int target, const TwoByTwo& u) {
  Gate g;
  g.kind = GateKind::Unitary1;
  g.target = target;
  g.u = u.m;
  return g;
}

Gate gate_cu1(std::vector<Control> controls, int target, const TwoByTwo& u) {
  Gate g;
  g.kind = GateKind::Controlled1;
  g.controls = std::move(controls);
  g.target = target;
  g.u = u.m;
  return g;
}

Gate gate_x(int target) { return gate_u1(target, x_mat()); }

Gate gate_cx(std::vector<Control> controls, int target) {
  return gate_cu1(std::move(controls), target, x_mat());
}

Gate gate_phase(std::vector<Control> controls, double angle) {
  Gate g;
  g.kind = GateKind::Phase;
  g.controls = std::move(controls);
  g.angle = angle;
  return g;
}

Circuit build_qft(int k) {
  if (k < 1 || k > 30) fail(Status::BadArgument, "qft width out of range");
  Circuit c;
  c.n_data = c.n_total = k;
  Gate g;
  g.kind = GateKind::Composite;
  g.tag = CompositeTag::Qft;
  for (int i = 0; i < k; ++i) g.qubits.push_back(i);
  c.gates.push_back(std::move(g));
  return c;
}

Circuit build_iqft(int k) {
  Circuit c = build_qft(k);
  c.gates[0].tag = CompositeTag::Iqft;
  return c;
}

Circuit build_adder(int p) {
  if (p < 1 || p > kMaxFractionBits) fail(Status::BadArgument, "fraction bits out of range");
  Circuit c;
  c.n_data = c.n_total = 2 * p + 3;
  std::vector<int> target(p + 2);
  for (int i = 0; i < p + 2; ++i) target[i] = i;

  Gate qft;
  qft.kind = GateKind::Composite;
  qft.tag = CompositeTag::Qft;
  qft.qubits = target;
  c.gates.push_back(qft);

  // Source fraction bit j carries weight 2^{-j}, i.e. 2^{p+1-j} guard units.
  for (int j = 1; j <= p; ++j)
    push_fourier_add(&c.gates, target, p + 2 + j, p + 1 - j, {}, 1.0);
  // Two's-complement sign bit: -2^{p+1} and +2^{p+1} units agree mod 2^{p+2}.
  push_fourier_add(&c.gates, target, p + 2, p + 1, {}, 1.0);

  Gate iqft = qft;
  iqft.tag = CompositeTag::Iqft;
  c.gates.push_back(std::move(iqft));
  return c;
}

Circuit build_multiplier(int p) {
  if (p < 1 || p > kMaxFractionBits) fail(Status::BadArgument, "fraction bits out of range");
  Circuit c;
  c.n_data = c.n_total = 4 * p + 2;
  Gate mul;
  mul.kind = GateKind::Composite;
  mul.tag = CompositeTag::Mul;
  mul.param_p = p;
  for (int i = 0; i < 4 * p + 2; ++i) mul.qubits.push_back(i);
  c.gates = gen_mul(mul);
  return c;
}

DiagLayout diag_layout(const DiagSpec& spec) {
  check_diag_spec(spec);
  DiagLayout lay;
  for (int k = 0; k < spec.n_data; ++k) {
    if (spec.sigma[k] < 1.0) {
      lay.actives.push_back(k);
      lay.enc.push_back(encode(spec.sigma[k], spec.p));
    }
    if (spec.signs[k][0] != spec.signs[k][1]) lay.flips.push_back(k);
    lay.base_sign *= spec.signs[k][0];
  }
  const int L = static_cast<int>(lay.actives.size());
  int base = spec.n_data;
  if (L >= 1) {
    lay.r1 = base;
    base += spec.p;
  }
  if (L >= 2) {
    lay.creg = base;
    base += spec.p;
    for (int i = 0; i < L - 1; ++i) {
      lay.outs.push_back(base);
      base += 2 * spec.p + 2;
    }
  }
  if (!lay.flips.empty()) lay.parity = base++;
  lay.n_total = base;
  return lay;
}

double diag_phase(const DiagSpec& spec, std::uint64_t basis) {
  check_diag_spec(spec);
  double sgn = 1.0;
  FixedPoint acc{0, spec.p};
  bool have = false;
  for (int k = 0; k < spec.n_data; ++k) {
    const int bit = static_cast<int>((basis >> (spec.n_data - 1 - k)) & 1u);
    sgn *= spec.signs[k][bit];
    if (bit == 1 && spec.sigma[k] < 1.0) {
      const FixedPoint e = encode(spec.sigma[k], spec.p);
      acc = have ? fp_truncate(fp_mul(acc, e), spec.p) : e;
      have = true;
    }
  }
  const double v = have ? acc.value() : 1.0;
  return -spec.t * spec.scale * sgn * v;
}

Circuit build_diag_evolution(const DiagSpec& spec) {
  const DiagLayout lay = diag_layout(spec);
  Circuit c;
  c.n_data = spec.n_data;
  c.n_total = lay.n_total;
  Gate g;
  g.kind = GateKind::Composite;
  g.tag = CompositeTag::DiagEvo;
  g.diag = std::make_shared<const DiagSpec>(spec);
  c.gates.push_back(std::move(g));
  return c;
}

Circuit build_type1_evolution(const Type1EvoSpec& spec) {
  const int nd = spec.diag.n_data;
  if (static_cast<int>(spec.basis.size()) != nd)
    fail(Status::BadArgument, "eigenbasis list width mismatch");
  Circuit c = build_diag_evolution(spec.diag);
  std::vector<Gate> pre, post;
  for (int q = 0; q < nd; ++q) {
    if (is_identity(spec.basis[q])) continue;
    pre.push_back(gate_u1(q, spec.basis[q].dagger()));
    post.push_back(gate_u1(q, spec.basis[q]));
  }
  c.gates.insert(c.gates.begin(), pre.begin(), pre.end());
  c.gates.insert(c.gates.end(), post.begin(), post.end());
  return c;
}

Circuit build_type2_evolution(const Type2EvoSpec& spec) {
  const int nd = spec.diag.n_data;
  if (nd < 2) fail(Status::BadArgument, "block evolution needs a block and an ext qubit");
  if (static_cast<int>(spec.u.size()) != nd - 1 || static_cast<int>(spec.v.size()) != nd - 1)
    fail(Status::BadArgument, "singular-basis list width mismatch");

  Circuit c = build_diag_evolution(spec.diag);
  std::vector<Gate> pre, post;
  for (int q = 1; q < nd; ++q) {
    const TwoByTwo& u = spec.u[q - 1];
    if (is_identity(u)) continue;
    pre.push_back(gate_cu1({{0, 0}}, q, u.dagger()));
    post.push_back(gate_cu1({{0, 0}}, q, u));
  }
  for (int q = 1; q < nd; ++q) {
    const TwoByTwo& v = spec.v[q - 1];
    if (is_identity(v)) continue;
    pre.push_back(gate_cu1({{0, 1}}, q, v.dagger()));
    post.push_back(gate_cu1({{0, 1}}, q, v));
  }
  pre.push_back(gate_u1(0, h_mat()));
  post.insert(post.begin(), gate_u1(0, h_mat()));

  c.gates.insert(c.gates.begin(), pre.begin(), pre.end());
  c.gates.insert(c.gates.end(), post.begin(), post.end());
  return c;
}

std::vector<Gate> composite_body(const Gate& g) {
  if (g.kind != GateKind::Composite) fail(Status::BadArgument, "not a composite gate");
  switch (g.tag) {
    case CompositeTag::Qft:
      return gen_qft(g.qubits, false);
    case CompositeTag::Iqft:
      return gen_qft(g.qubits, true);
    case CompositeTag::CAdd:
      return gen_cadd(g);
    case CompositeTag::Mul:
      return gen_mul(g);
    case CompositeTag::DiagEvo:
      return gen_diag(*g.diag);
    default:
      fail(Status::InternalError, "composite with no body");
  }
}

Circuit expand_fully(const Circuit& c) {
  Circuit out;
  out.n_data = c.n_data;
  out.n_total = c.n_total;
  for (const Gate& g : c.gates) expand_into(g, &out.gates);
  return out;
}

GateStats& GateStats::operator+=(const GateStats& o) {
  single_qubit += o.single_qubit;
  controlled_unitary += o.controlled_unitary;
  phase_gates += o.phase_gates;
  qft_blocks += o.qft_blocks;
  adder_calls += o.adder_calls;
  multiplier_calls += o.multiplier_calls;
  inverse_multiplier_calls += o.inverse_multiplier_calls;
  depth_units += o.depth_units;
  return *this;
}

GateStats GateStats::operator*(long long reps) const {
  GateStats s = *this;
  s.single_qubit *= reps;
  s.controlled_unitary *= reps;
  s.phase_gates *= reps;
  s.qft_blocks *= reps;
  s.adder_calls *= reps;
  s.multiplier_calls *= reps;
  s.inverse_multiplier_calls *= reps;
  s.depth_units *= reps;
  return s;
}

GateStats gate_stats(const Circuit& c) {
  GateStats s;
  append_census(c, &s);
  return s;
}

std::string dump(const Circuit& c) {
  std::string out = "qkron-circuit 1\n";
  out += "qubits " + std::to_string(c.n_data) + " " + std::to_string(c.n_total) + "\n";
  char buf[128];
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Unitary1:
        out += "u1 " + std::to_string(g.target);
        for (const cplx& z : g.u) out += " " + fmt_c(z);
        out += "\n";
        break;
      case GateKind::Controlled1:
        out += "cu1 " + fmt_controls(g.controls) + " " + std::to_string(g.target);
        for (const cplx& z : g.u) out += " " + fmt_c(z);
        out += "\n";
        break;
      case GateKind::Phase:
        std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
        out += "phase " + fmt_controls(g.controls) + " " + buf + "\n";
        break;
      case GateKind::Composite:
        switch (g.tag) {
          case CompositeTag::Qft:
            out += "qft " + fmt_qubits(g.qubits) + "\n";
            break;
          case CompositeTag::Iqft:
            out += "iqft " + fmt_qubits(g.qubits) + "\n";
            break;
          case CompositeTag::CAdd:
            std::snprintf(buf, sizeof(buf), "cadd p=%d k=%d inv=%d ", g.param_p, g.param_k,
                          g.inverted ? 1 : 0);
            out += buf + fmt_controls(g.controls) + " " + fmt_qubits(g.qubits) + "\n";
            break;
          case CompositeTag::Mul:
            std::snprintf(buf, sizeof(buf), "mul p=%d inv=%d ", g.param_p, g.inverted ? 1 : 0);
            out += buf + fmt_controls(g.controls) + " " + fmt_qubits(g.qubits) + "\n";
            break;
          case CompositeTag::DiagEvo: {
            std::snprintf(buf, sizeof(buf), "diag p=%d t=%.17g scale=%.17g sigma=[", g.diag->p,
                          g.diag->t, g.diag->scale);
            out += buf;
            for (int k = 0; k < g.diag->n_data; ++k) {
              std::snprintf(buf, sizeof(buf), "%s%.17g", k ? " " : "", g.diag->sigma[k]);
              out += buf;
            }
            out += "] signs=[";
            for (int k = 0; k < g.diag->n_data; ++k) {
              std::snprintf(buf, sizeof(buf), "%s%d,%d", k ? " " : "", g.diag->signs[k][0],
                            g.diag->signs[k][1]);
              out += buf;
            }
            out += "]\n";
            break;
          }
          default:
            out += "composite?\n";
            break;
        }
        break;
    }
  }
  return out;
}

}  // namespace qkron
