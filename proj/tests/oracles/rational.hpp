#pragma once

// Exact dyadic-rational reference arithmetic on __int128. Every finite double
// is a dyadic rational, so encode/multiply/truncate chains can be replayed
// with no rounding at all and compared numerator-for-numerator against the
// production fixed-point path.

#include <cmath>
#include <cstdint>
#include <vector>

namespace refq {

struct Dyadic {
  __int128 num = 0;  // value = num * 2^-bits
  int bits = 0;
};

// Exact: frexp splits v = m * 2^e with m in [0.5, 1), and m * 2^53 is an
// integer for every normal double.
inline Dyadic dyadic_from_double(double v) {
  if (v == 0.0) return {0, 0};
  int e = 0;
  const double m = std::frexp(v, &e);
  Dyadic d;
  d.num = static_cast<__int128>(std::ldexp(m, 53));
  d.bits = 53 - e;
  return d;
}

// Drop `drop` fraction bits toward zero; negative drop is an exact upshift.
inline __int128 shift_toward_zero(__int128 num, int drop) {
  if (drop <= 0) return num << (-drop);
  const bool neg = num < 0;
  __int128 mag = neg ? -num : num;
  mag >>= drop;
  return neg ? -mag : mag;
}

// Numerator of v at p fraction bits, truncated toward zero.
inline __int128 encode_num(double v, int p) {
  const Dyadic d = dyadic_from_double(v);
  return shift_toward_zero(d.num, d.bits - p);
}

// ((v0 v1)_trunc v2)_trunc ... with every intermediate kept at p bits.
inline __int128 chain_num(const std::vector<double>& vs, int p) {
  __int128 acc = encode_num(vs[0], p);
  for (std::size_t i = 1; i < vs.size(); ++i)
    acc = shift_toward_zero(acc * encode_num(vs[i], p), p);
  return acc;
}

inline double dyadic_value(__int128 num, int bits) {
  return std::ldexp(static_cast<double>(num), -bits);
}

// Register-level adder semantics. The target register [ovf f1..fp guard]
// holds T in guard units (2^-(p+1)); the source register [sign f1..fp],
// read big-endian as an integer in [0, 2^(p+1)), contributes
// sign * 2^(p+1) + fracs * 2 units; the sum wraps mod 2^(p+2).
inline std::uint64_t adder_expected(std::uint64_t t_units, std::uint64_t src_reg, int p) {
  const std::uint64_t fracs = src_reg & ((std::uint64_t{1} << p) - 1);
  const std::uint64_t sign = (src_reg >> p) & 1;
  const std::uint64_t add = (sign << (p + 1)) + (fracs << 1);
  return (t_units + add) & ((std::uint64_t{1} << (p + 2)) - 1);
}

// Register-level multiplier semantics: the 2p+2 wide output register gains
// nu1 * nu2 = num1 * num2 * 2 guard units (guard unit 2^-(2p+1)), wrapping.
inline std::uint64_t mul_expected(std::uint64_t t_units, std::uint64_t num1, std::uint64_t num2,
                                  int p) {
  const std::uint64_t add = 2 * num1 * num2;
  return (t_units + add) & ((std::uint64_t{1} << (2 * p + 2)) - 1);
}

}  // namespace refq
