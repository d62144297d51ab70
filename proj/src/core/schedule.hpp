#pragma once

#include <cstdint>
#include <vector>

#include "core/common.hpp"

namespace qkron {

// Adiabatic reparameterization tuned to the condition number.
//   c    = sqrt(1+k^2) / (sqrt(2) k)
//   s(v) = [e^{vc} + 2 k^2 - k^2 e^{-vc}] / (2 (1+k^2))
//   v_a  = (sqrt(2) k / sqrt(1+k^2)) log(k sqrt(1+k^2) - k^2)  gives s = 0
//   v_b  = (sqrt(2) k / sqrt(1+k^2)) log(sqrt(1+k^2) + 1)      gives s = 1
// The walk matrix keeps a spectral gap of at least
//   gap(s) = sqrt((1-s)^2 + (s/k)^2) >= 1 / sqrt(1+k^2),
// minimized at s* = k^2 / (1+k^2).

double schedule_va(double kappa);
double schedule_vb(double kappa);
double schedule_s(double kappa, double v);  // clamped into [0,1]
double gap_lower_bound(double kappa, double s);
double min_gap(double kappa);

// Walk step count q = ceil(c_q log2^2(max(kappa,2)) / eps).
long long required_steps(double kappa, double eps, double c_q);

// Fraction bits soaking up arithmetic error: eps0 = eps^2 / (kappa
// log2^2(max(kappa,2))), then bits(eps0). May exceed kMaxFractionBits;
// callers clamp and warn.
int default_fraction_bits(double kappa, double eps);

inline constexpr double kDefaultCq = 2.0;
inline constexpr double kDefaultCr = 1.5;

struct SchedulePoint {
  int j = 0;  // 1-based step index
  double v = 0.0;
  double s = 0.0;
  double gap = 0.0;
  double t = 0.0;     // drawn from U[0, 2 pi / gap)
  long long r = 0;    // product-formula segments for this step
};

struct ScheduleParams {
  double kappa = 1.0;
  double eps = 0.1;
  int m = 1;
  int d = 1;
  double c_q = kDefaultCq;
  double c_r = kDefaultCr;
  std::uint64_t seed = 0;
  int rep = 0;  // repeat index; distinct repeats draw distinct times
};

struct Schedule {
  double va = 0.0;
  double vb = 0.0;
  long long q = 0;
  std::vector<SchedulePoint> points;
  long long total_segments = 0;
};

// Deterministic in (seed, rep): time draws come from the counter-based
// generator at counter (rep << 32) | j.
Schedule build_schedule(const ScheduleParams& params);

}  // namespace qkron
