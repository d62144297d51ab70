#pragma once

#include <cstdint>
#include <vector>

#include "core/common.hpp"

namespace qkron {

// Signed binary fraction with p fraction bits: value = num * 2^-p.
// Encoding truncates magnitudes toward zero, so |encode(v) - v| <= 2^-p and
// exactly representable values round-trip. The integer numerator is allowed
// to grow past 2^p (sums carry one extra high bit, products are exact at
// 2p bits); bit() exposes magnitude bits for circuit register loads.
struct FixedPoint {
  std::int64_t num = 0;
  int p = 0;

  double value() const;
  // Magnitude bit at weight 2^-i, i in [1, p]. Valid when |num| < 2^p.
  int bit(int i) const;
};

inline constexpr int kMaxFractionBits = 30;

// |value| < 1 required; the value 1.0 is deliberately not representable
// (unit factors are handled structurally, never encoded).
FixedPoint encode(double value, int p);

// Exact sum; both operands must carry the same p.
FixedPoint fp_add(const FixedPoint& a, const FixedPoint& b);

// Exact product at a.p + b.p fraction bits.
FixedPoint fp_mul(const FixedPoint& a, const FixedPoint& b);

// Drop fraction bits (toward zero) down to p_out <= x.p; error <= 2^-p_out.
FixedPoint fp_truncate(const FixedPoint& x, int p_out);

struct ChainResult {
  FixedPoint value;      // ((v0*v1)_trunc * v2)_trunc ... at p bits
  double bound_simple;   // 3 * K * 2^-p
  double bound_tight;    // eps_{k+1} = 2 eps + eps_k (1 + eps), eps_1 = eps
};

// Left-to-right fold of encode/multiply/truncate over K values in [0, 1).
// Requires K * 2^-p < 1/3 when K >= 2 (the regime the simple bound covers).
ChainResult mul_chain(const std::vector<double>& values, int p);

// Smallest p with 2^-p <= eps/2, i.e. ceil(1 - log2(eps)).
int required_bits(double eps);

}  // namespace qkron
