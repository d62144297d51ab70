#include "core/fixedpoint.hpp"

#include <cmath>

namespace qkron {

double FixedPoint::value() const { return std::ldexp(double(num), -p); }

int FixedPoint::bit(int i) const {
  const std::int64_t mag = num < 0 ? -num : num;
  return static_cast<int>((mag >> (p - i)) & 1);
}

namespace {
void check_p(int p) {
  if (p < 1 || p > kMaxFractionBits)
    fail(Status::BadArgument, "fraction bits must be in [1, " +
                                  std::to_string(kMaxFractionBits) + "]");
}
}  // namespace

FixedPoint encode(double value, int p) {
  check_p(p);
  if (!(std::fabs(value) < 1.0))
    fail(Status::BadArgument,
         "encode: |value| must be < 1 (unit factors are structural)");
  const double scaled = std::ldexp(value, p);
  FixedPoint out;
  out.num = static_cast<std::int64_t>(std::trunc(scaled));
  out.p = p;
  return out;
}

FixedPoint fp_add(const FixedPoint& a, const FixedPoint& b) {
  if (a.p != b.p) fail(Status::BadArgument, "fp_add: mismatched precision");
  return FixedPoint{a.num + b.num, a.p};
}

FixedPoint fp_mul(const FixedPoint& a, const FixedPoint& b) {
  const __int128 wide = static_cast<__int128>(a.num) * b.num;
  if (wide > INT64_MAX || wide < INT64_MIN)
    fail(Status::CapExceeded, "fp_mul: product numerator overflows");
  return FixedPoint{static_cast<std::int64_t>(wide), a.p + b.p};
}

FixedPoint fp_truncate(const FixedPoint& x, int p_out) {
  if (p_out < 1 || p_out > x.p)
    fail(Status::BadArgument, "fp_truncate: bad target precision");
  const int drop = x.p - p_out;
  std::int64_t mag = x.num < 0 ? -x.num : x.num;
  mag >>= drop;
  return FixedPoint{x.num < 0 ? -mag : mag, p_out};
}

ChainResult mul_chain(const std::vector<double>& values, int p) {
  check_p(p);
  if (values.empty()) fail(Status::BadArgument, "mul_chain: no values");
  const double eps = std::ldexp(1.0, -p);
  const std::size_t k = values.size();
  if (k >= 2 && static_cast<double>(k) * eps >= 1.0 / 3.0)
    fail(Status::BadArgument, "mul_chain: K * 2^-p must be < 1/3");
  for (double v : values)
    if (!(v >= 0.0 && v < 1.0))
      fail(Status::BadArgument, "mul_chain: values must lie in [0, 1)");

  ChainResult out;
  out.value = encode(values[0], p);
  double tight = eps;
  for (std::size_t i = 1; i < k; ++i) {
    out.value = fp_truncate(fp_mul(out.value, encode(values[i], p)), p);
    tight = 2.0 * eps + tight * (1.0 + eps);
  }
  out.bound_simple = 3.0 * static_cast<double>(k) * eps;
  out.bound_tight = tight;
  return out;
}

int required_bits(double eps) {
  if (!(eps > 0.0) || eps > 1.0)
    fail(Status::BadArgument, "required_bits: eps must be in (0, 1]");
  const int p = static_cast<int>(std::ceil(1.0 - std::log2(eps)));
  return p < 1 ? 1 : p;
}

}  // namespace qkron
