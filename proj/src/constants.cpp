#include <coarse_minor/partition.hpp>

namespace coarse_minor {

namespace {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw PartitionError("constant overflows 64 bits");
  return out;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw PartitionError("constant overflows 64 bits");
  return out;
}

std::uint64_t power(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  while (exp--) out = mul(out, base);
  return out;
}

void require_range(std::uint32_t t, std::uint64_t k) {
  if (t < 3)
    throw PartitionError("t = " + std::to_string(t) +
                         " is not supported: the construction needs t >= 3 (smaller t reduces to other results)");
  if (k < 1) throw PartitionError("K must be at least 1");
}

std::uint64_t formula_N(std::uint32_t t) {
  std::uint64_t c = mul(power(t - 1, 3), t - 2);
  return (c + 1) / 2;
}

std::uint64_t formula_L(std::uint64_t k, std::uint64_t N) { return add((3 * k + 1) / 2, mul(mul(3, k), N)); }

std::uint64_t formula_L_prime(std::uint64_t k, std::uint64_t N, std::uint64_t L) {
  return add(add(mul(N, add(mul(4, L), mul(5, k))), mul(2, L)), mul(3, k));
}

// n D + (n - 1)(2r + n d), the diameter bound after merging n sets.
std::uint64_t merged_diameter(std::uint64_t n, std::uint64_t D, std::uint64_t r, std::uint64_t d) {
  if (n == 0) return 0;
  return add(mul(n, D), mul(n - 1, add(mul(2, r), mul(n, d))));
}

}  // namespace

ConstantsProfile compute_constants(std::uint32_t t, std::uint64_t k, ProfileMode mode) {
  if (mode == ProfileMode::Scaled) return scaled_profile(t, k);
  require_range(t, k);
  ConstantsProfile p;
  p.mode = ProfileMode::PaperExact;
  p.t = t;
  p.k = k;
  p.N = formula_N(t);
  p.L = formula_L(k, p.N);
  p.L_prime = formula_L_prime(k, p.N, p.L);
  p.R0 = add(mul(mul(15, power(t, 12)), k), mul(mul(18, power(t, 9)), k));
  p.R = add(p.R0, mul(2, p.L_prime));
  return p;
}

ConstantsProfile scaled_profile(std::uint32_t t, std::uint64_t k, const ScaledOverrides& o) {
  require_range(t, k);
  ConstantsProfile p;
  p.mode = ProfileMode::Scaled;
  p.t = t;
  p.k = k;
  p.N = o.N.value_or(2);
  if (p.N < 1) throw PartitionError("scaled profile needs N >= 1");
  p.L = o.L.value_or(formula_L(k, p.N));
  p.L_prime = o.L_prime.value_or(formula_L_prime(k, p.N, p.L));
  if (o.R0) {
    p.R0 = *o.R0;
  } else {
    const std::uint64_t n = 2 * p.N;
    const std::uint64_t D = 18 * std::uint64_t{t} * k - 12 * k - 2;
    const std::uint64_t D1 = merged_diameter(n, D, (3 * k + 1) / 2, 3 * k);
    p.R0 = merged_diameter(n, D1, add(p.L, 2 * k), add(mul(4, p.L), mul(5, k)));
  }
  if (p.L_prime < add(p.L, 2 * k))
    throw PartitionError("scaled profile violates L' >= L + 2K (L = " + std::to_string(p.L) +
                         ", L' = " + std::to_string(p.L_prime) + ")");
  p.R = add(p.R0, mul(2, p.L_prime));
  p.hypotheses_enforceable = p.L_prime >= add(mul(2, p.L), mul(3, k)) && p.L >= (3 * k + 1) / 2;
  return p;
}

}  // namespace coarse_minor
