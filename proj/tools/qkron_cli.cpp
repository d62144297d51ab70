// Command-line front end. Talks to the library exclusively through the C
// interface so the shipped header stays honest.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qkron.h"

namespace {

// 0 success, 2 bad flags or arguments, 3 anything wrong with the instance
// (unreadable, malformed, singular, past a desk-scale cap), 4 is reserved for
// a verify run whose checks fail.
int exit_code_for(qk_status s) {
  switch (s) {
    case QK_OK:
      return 0;
    case QK_PARSE_ERROR:
    case QK_INVALID_INSTANCE:
    case QK_SINGULAR:
    case QK_CAP_EXCEEDED:
    case QK_IO_ERROR:
      return 3;
    default:
      return 2;  // bad argument, internal
  }
}

struct CommonOpts {
  std::string instance_path;
  std::string report_path;
  bool quiet = false;
};

struct SolveOpts {
  double eps = 0.0;
  std::string mode;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int repeats = 0;
  int p_bits = 0;
  double c_q = 0.0;
  double c_r = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts* c) {
  cmd->add_option("--instance", c->instance_path, "instance JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--report", c->report_path, "also write the JSON report to this file");
  cmd->add_flag("--quiet", c->quiet, "suppress the JSON report on stdout");
}

void add_solve(CLI::App* cmd, SolveOpts* s) {
  cmd->add_option("--eps", s->eps, "target trace-distance error in (0,1); default 0.1");
  cmd->add_option("--mode", s->mode,
                  "exact-expm | trotter-exact-data | trotter-fixedpoint (default)");
  cmd->add_option("--seed", s->seed, "random seed; omitted: drawn from entropy and reported")
      ->trigger_on_parse()
      ->each([s](const std::string&) { s->seed_set = true; });
  cmd->add_option("--repeats", s->repeats, "independent randomized runs; default 1");
  cmd->add_option("--p-bits,--p_bits", s->p_bits,
                  "fixed-point fraction bits; default derived from eps");
  cmd->add_option("--c-q,--c_q", s->c_q, "schedule step constant override");
  cmd->add_option("--c-r,--c_r", s->c_r, "segment count constant override");
}

qk_solve_options to_options(const SolveOpts& s) {
  qk_solve_options o;
  qk_solve_options_init(&o);
  o.eps = s.eps;
  o.mode = s.mode.empty() ? nullptr : s.mode.c_str();
  o.repeats = s.repeats;
  o.seed = s.seed;
  o.seed_is_set = s.seed_set ? 1 : 0;
  o.fraction_bits = s.p_bits;
  o.c_q = s.c_q;
  o.c_r = s.c_r;
  return o;
}

int emit(const CommonOpts& c, qk_report* rep, int fail_exit_when_not_ok) {
  const std::string json = qk_report_json(rep);
  if (!c.quiet) std::cout << json;
  if (!c.report_path.empty()) {
    std::ofstream out(c.report_path);
    if (!out) {
      std::cerr << "error: cannot write " << c.report_path << "\n";
      qk_report_free(rep);
      return 2;
    }
    out << json;
  }
  const int rc = qk_report_ok(rep) ? 0 : fail_exit_when_not_ok;
  qk_report_free(rep);
  return rc;
}

int fail_with(qk_status s, const char* verb) {
  std::cerr << "error: " << verb << " failed: " << qk_status_name(s) << ": " << qk_last_error()
            << "\n";
  return exit_code_for(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor-format linear-system walk simulator"};
  app.require_subcommand(1);

  CommonOpts solve_c, stats_c, verify_c;
  SolveOpts solve_s, stats_s;

  CLI::App* solve = app.add_subcommand("solve", "run the randomized walk pipeline");
  add_common(solve, &solve_c);
  add_solve(solve, &solve_s);

  CLI::App* stats = app.add_subcommand("stats", "predict resources without simulating");
  add_common(stats, &stats_c);
  add_solve(stats, &stats_s);

  CLI::App* verify = app.add_subcommand("verify", "structural self-checks against dense oracles");
  add_common(verify, &verify_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Fold CLI11's exit-code zoo into the documented contract: usage problems
    // are 2, --help stays 0.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  qk_instance* inst = nullptr;
  const CommonOpts& common = solve->parsed() ? solve_c : stats->parsed() ? stats_c : verify_c;
  if (qk_status s = qk_instance_load(common.instance_path.c_str(), &inst); s != QK_OK)
    return fail_with(s, "load");

  qk_report* rep = nullptr;
  int rc = 0;
  if (solve->parsed()) {
    const qk_solve_options o = to_options(solve_s);
    if (qk_status s = qk_solve(inst, &o, &rep); s != QK_OK)
      rc = fail_with(s, "solve");
    else
      rc = emit(common, rep, /*fail_exit_when_not_ok=*/0);  // verdict lives in the report
  } else if (stats->parsed()) {
    const qk_solve_options o = to_options(stats_s);
    if (qk_status s = qk_stats(inst, &o, &rep); s != QK_OK)
      rc = fail_with(s, "stats");
    else
      rc = emit(common, rep, 0);
  } else {
    if (qk_status s = qk_verify(inst, &rep); s != QK_OK)
      rc = fail_with(s, "verify");
    else
      rc = emit(common, rep, /*fail_exit_when_not_ok=*/4);
  }
  qk_instance_free(inst);
  return rc;
}
