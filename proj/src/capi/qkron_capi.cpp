#include "qkron.h"

#include <random>
#include <string>

#include "core/common.hpp"
#include "core/problem.hpp"
#include "core/solver.hpp"

struct qk_instance {
  qkron::Instance inst;
};

struct qk_report {
  std::string json;
  bool ok = false;
};

namespace {

thread_local std::string g_last_error;

qk_status to_c_status(qkron::Status s) { return static_cast<qk_status>(static_cast<int>(s)); }

template <typename Fn>
qk_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QK_OK;
  } catch (const qkron::Error& e) {
    g_last_error = e.what();
    return to_c_status(e.status());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QK_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown failure";
    return QK_INTERNAL_ERROR;
  }
}

qk_status require(bool cond, const char* what) {
  if (cond) return QK_OK;
  g_last_error = what;
  return QK_BAD_ARGUMENT;
}

qk_status build_config(const qk_solve_options* opts, qkron::SolveConfig* cfg) {
  qkron::SolveConfig out;
  if (opts) {
    if (opts->eps != 0.0) out.eps = opts->eps;
    if (opts->mode) {
      const auto m = qkron::parse_evo_mode(opts->mode);
      if (!m) {
        g_last_error = std::string("unknown mode: ") + opts->mode;
        return QK_BAD_ARGUMENT;
      }
      out.mode = *m;
    }
    if (opts->repeats != 0) out.repeats = opts->repeats;
    if (opts->seed_is_set) {
      out.seed = opts->seed;
    } else {
      std::random_device rd;
      out.seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
      out.seed_from_entropy = true;
    }
    if (opts->fraction_bits != 0) out.p_bits = opts->fraction_bits;
    if (opts->c_q != 0.0) out.c_q = opts->c_q;
    if (opts->c_r != 0.0) out.c_r = opts->c_r;
  } else {
    std::random_device rd;
    out.seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    out.seed_from_entropy = true;
  }
  *cfg = out;
  return QK_OK;
}

}  // namespace

extern "C" {

const char* qk_status_name(qk_status s) {
  switch (s) {
    case QK_OK:
      return "ok";
    case QK_PARSE_ERROR:
      return "parse-error";
    case QK_INVALID_INSTANCE:
      return "invalid-instance";
    case QK_SINGULAR:
      return "singular";
    case QK_CAP_EXCEEDED:
      return "cap-exceeded";
    case QK_IO_ERROR:
      return "io-error";
    case QK_BAD_ARGUMENT:
      return "bad-argument";
    case QK_INTERNAL_ERROR:
      return "internal-error";
  }
  return "unknown";
}

const char* qk_last_error(void) { return g_last_error.c_str(); }

qk_status qk_instance_parse(const char* json_text, qk_instance** out) {
  if (qk_status s = require(json_text && out, "null argument"); s != QK_OK) return s;
  *out = nullptr;
  return guarded([&] { *out = new qk_instance{qkron::parse_instance(json_text)}; });
}

qk_status qk_instance_load(const char* path, qk_instance** out) {
  if (qk_status s = require(path && out, "null argument"); s != QK_OK) return s;
  *out = nullptr;
  return guarded([&] { *out = new qk_instance{qkron::load_instance(path)}; });
}

void qk_instance_free(qk_instance* inst) { delete inst; }

qk_status qk_instance_normalize(qk_instance* inst) {
  if (qk_status s = require(inst != nullptr, "null argument"); s != QK_OK) return s;
  return guarded([&] { inst->inst = qkron::normalize(inst->inst); });
}

qk_status qk_instance_dims(const qk_instance* inst, int* n, int* m, int* d) {
  if (qk_status s = require(inst != nullptr, "null argument"); s != QK_OK) return s;
  if (n) *n = inst->inst.n;
  if (m) *m = inst->inst.m();
  if (d) *d = inst->inst.d();
  return QK_OK;
}

qk_status qk_condition_number(const qk_instance* inst, double* kappa) {
  if (qk_status s = require(inst && kappa, "null argument"); s != QK_OK) return s;
  return guarded([&] { *kappa = qkron::condition_number(inst->inst); });
}

void qk_solve_options_init(qk_solve_options* opts) {
  if (!opts) return;
  *opts = qk_solve_options{};
}

qk_status qk_solve(const qk_instance* inst, const qk_solve_options* opts, qk_report** out) {
  if (qk_status s = require(inst && out, "null argument"); s != QK_OK) return s;
  *out = nullptr;
  qkron::SolveConfig cfg;
  if (qk_status s = build_config(opts, &cfg); s != QK_OK) return s;
  return guarded([&] {
    const qkron::SolveReport rep = qkron::solve(inst->inst, cfg);
    *out = new qk_report{qkron::report_json(rep), rep.eps_met};
  });
}

qk_status qk_stats(const qk_instance* inst, const qk_solve_options* opts, qk_report** out) {
  if (qk_status s = require(inst && out, "null argument"); s != QK_OK) return s;
  *out = nullptr;
  qkron::SolveConfig cfg;
  if (qk_status s = build_config(opts, &cfg); s != QK_OK) return s;
  return guarded([&] {
    const qkron::SolveReport rep = qkron::predict_stats(inst->inst, cfg);
    *out = new qk_report{qkron::report_json(rep), true};
  });
}

qk_status qk_verify(const qk_instance* inst, qk_report** out) {
  if (qk_status s = require(inst && out, "null argument"); s != QK_OK) return s;
  *out = nullptr;
  return guarded([&] {
    const qkron::VerifyReport rep = qkron::run_verify(inst->inst);
    *out = new qk_report{qkron::verify_json(rep), rep.all_pass};
  });
}

const char* qk_report_json(const qk_report* rep) { return rep ? rep->json.c_str() : ""; }

int qk_report_ok(const qk_report* rep) { return rep && rep->ok ? 1 : 0; }

void qk_report_free(qk_report* rep) { delete rep; }

}  // extern "C"
