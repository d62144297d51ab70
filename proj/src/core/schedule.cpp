#include "core/schedule.hpp"

#include <cmath>

#include "core/fixedpoint.hpp"
#include "core/rng.hpp"

namespace qkron {
namespace {

constexpr std::uint64_t kStreamSchedule = 1;
constexpr long long kMaxSteps = 10'000'000;

void check_kappa(double kappa) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) fail(Status::BadArgument, "kappa must be >= 1");
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(Status::BadArgument, "eps must lie in (0,1)");
}

double log2_factor(double kappa) { return std::log2(std::max(kappa, 2.0)); }

long long ceil_to_count(double x, const char* what) {
  if (!(x >= 0.0) || x > 9.0e15) fail(Status::CapExceeded, what);
  const double c = std::ceil(x);
  return c < 1.0 ? 1 : static_cast<long long>(c);
}

}  // namespace

double schedule_va(double kappa) {
  check_kappa(kappa);
  const double root = std::sqrt(1.0 + kappa * kappa);
  return std::sqrt(2.0) * kappa / root * std::log(kappa * root - kappa * kappa);
}

double schedule_vb(double kappa) {
  check_kappa(kappa);
  const double root = std::sqrt(1.0 + kappa * kappa);
  return std::sqrt(2.0) * kappa / root * std::log(root + 1.0);
}

double schedule_s(double kappa, double v) {
  check_kappa(kappa);
  const double k2 = kappa * kappa;
  const double c = std::sqrt(1.0 + k2) / (std::sqrt(2.0) * kappa);
  const double s = (std::exp(v * c) + 2.0 * k2 - k2 * std::exp(-v * c)) / (2.0 * (1.0 + k2));
  return std::min(1.0, std::max(0.0, s));
}

double gap_lower_bound(double kappa, double s) {
  check_kappa(kappa);
  if (!(s >= 0.0 && s <= 1.0)) fail(Status::BadArgument, "interpolation point outside [0,1]");
  const double a = 1.0 - s;
  const double b = s / kappa;
  return std::sqrt(a * a + b * b);
}

double min_gap(double kappa) {
  check_kappa(kappa);
  return 1.0 / std::sqrt(1.0 + kappa * kappa);
}

long long required_steps(double kappa, double eps, double c_q) {
  check_kappa(kappa);
  check_eps(eps);
  if (!(c_q > 0.0)) fail(Status::BadArgument, "c_q must be positive");
  const double l = log2_factor(kappa);
  return ceil_to_count(c_q * l * l / eps, "schedule step count overflows");
}

int default_fraction_bits(double kappa, double eps) {
  check_kappa(kappa);
  check_eps(eps);
  const double l = log2_factor(kappa);
  const double eps0 = eps * eps / (kappa * l * l);
  return required_bits(eps0);
}

Schedule build_schedule(const ScheduleParams& params) {
  check_kappa(params.kappa);
  check_eps(params.eps);
  if (params.m < 1 || params.d < 1) fail(Status::BadArgument, "term counts must be positive");
  if (!(params.c_r > 0.0)) fail(Status::BadArgument, "c_r must be positive");
  if (params.rep < 0) fail(Status::BadArgument, "repeat index must be nonnegative");

  Schedule sch;
  sch.va = schedule_va(params.kappa);
  sch.vb = schedule_vb(params.kappa);
  sch.q = required_steps(params.kappa, params.eps, params.c_q);
  if (sch.q > kMaxSteps) fail(Status::CapExceeded, "schedule too long to simulate");

  const double l = log2_factor(params.kappa);
  const double md = static_cast<double>(params.m) * params.m * params.d * params.d *
                    params.d * params.d;
  const double delta = (sch.vb - sch.va) / static_cast<double>(sch.q);

  for (long long j = 1; j <= sch.q; ++j) {
    SchedulePoint pt;
    pt.j = static_cast<int>(j);
    pt.v = sch.va + static_cast<double>(j) * delta;
    pt.s = schedule_s(params.kappa, pt.v);
    pt.gap = gap_lower_bound(params.kappa, pt.s);
    const std::uint64_t counter =
        (static_cast<std::uint64_t>(params.rep) << 32) | static_cast<std::uint64_t>(j);
    const double u = counter_uniform(params.seed, kStreamSchedule, counter);
    pt.t = u * 2.0 * kPi / pt.gap;
    pt.r = ceil_to_count(params.c_r * md * pt.t * pt.t * l * l / (params.eps * params.eps),
                         "segment count overflows");
    sch.total_segments += pt.r;
    sch.points.push_back(pt);
  }
  return sch;
}

}  // namespace qkron
