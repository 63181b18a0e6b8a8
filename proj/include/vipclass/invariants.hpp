#pragma once

// Numerical invariants of X = (C_1 x ... x C_n)/G: chi(O_X), K_X^n, the
// topological Euler number, and Hodge numbers through G-invariants of the
// Kuenneth decomposition of H^{p,q}(C_1 x ... x C_n).

#include <cstdint>
#include <vector>

#include "vipclass/covering_data.hpp"

namespace vipclass {

struct HodgeNumbers {
  std::int64_t h30 = 0, h20 = 0, h10 = 0, h11 = 0, h21 = 0;

  friend bool operator==(const HodgeNumbers&, const HodgeNumbers&) = default;
  friend auto operator<=>(const HodgeNumbers&, const HodgeNumbers&) = default;
};

struct InvariantSet {
  std::int64_t chi_O = 0;
  std::int64_t canonical_self_intersection = 0;  // K^3 (n = 3) or K^2 (n = 2)
  std::int64_t euler_number = 0;
  HodgeNumbers hodge;  // only filled for n = 3
  std::vector<int> genera;
};

/// prod (1 - g_i) / |G|.
std::int64_t euler_char_sheaf(const AlgebraicDatum& D);
/// prod (2 - 2 g_i) / |G|.
std::int64_t topological_euler(const AlgebraicDatum& D);
/// -48 chi(O) for n = 3, 8 chi(O) for n = 2, checked against n! prod(2g_i - 2)/|G|.
std::int64_t canonical_self_intersection(const AlgebraicDatum& D);

/// h^{p,q}(X) for an arbitrary n: number of G-invariants in the Kuenneth
/// decomposition of H^{p,q}(C_1 x ... x C_n).
std::int64_t hodge_number(const AlgebraicDatum& D, int p, int q);
/// (h30, h20, h10, h11, h21) for n = 3.
HodgeNumbers hodge_numbers(const AlgebraicDatum& D);

/// Everything above; for n = 3 also checks the chi(O) and e(X) identities in
/// terms of Hodge numbers (ConsistencyError on failure).
InvariantSet compute_invariants(const AlgebraicDatum& D);

}  // namespace vipclass
